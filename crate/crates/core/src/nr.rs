//! Nonrelativistic reference packets with `m = ħ = 1`: the Gaussian
//! localizing sequence, its freely spread density, the free Green function
//! and the Schrödinger current on sampled fields.

use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::vec3::Vec3;

/// Parameters of `χₙ(q) = (n/σ√π)^{3/2} e^{−n²(q−a)²/2σ²} e^{iv·q}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NRPacketParams {
    pub n: u32,
    /// Length scale `σ > 0`.
    pub sigma: f64,
    pub a: Vec3,
    pub v: Vec3,
}

impl NRPacketParams {
    pub fn new(n: u32, sigma: f64, a: Vec3, v: Vec3) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidLabel("sequence index n must be at least 1"));
        }
        if !(sigma > 0.0) || !sigma.is_finite() {
            return Err(Error::NonPositiveWidth(sigma));
        }
        if !a.is_finite() || !v.is_finite() {
            return Err(Error::InvalidLabel("components must be finite"));
        }
        Ok(NRPacketParams { n, sigma, a, v })
    }

    /// Amplitude width `w = σ/n` at `t = 0`.
    pub fn width(&self) -> f64 {
        self.sigma / self.n as f64
    }

    /// `Δ_q = √3·σ/(n√2)`.
    pub fn delta_q(&self) -> f64 {
        (1.5f64).sqrt() * self.width()
    }

    /// Per-axis density width `(σ⁴ + n⁴t²)^{1/2}/(nσ)`, growing for
    /// `t > 0`.
    pub fn spread_width(&self, t: f64) -> f64 {
        let n = self.n as f64;
        let s2 = self.sigma * self.sigma;
        (s2 * s2 + n.powi(4) * t * t).sqrt() / (n * self.sigma)
    }
}

/// `χₙ(q)` at `t = 0`.
pub fn nr_gaussian_state(params: &NRPacketParams, q: Vec3) -> Complex64 {
    let w = params.width();
    let amp = (w * PI.sqrt()).powf(-1.5) * (-0.5 * (q - params.a).norm_sqr() / (w * w)).exp();
    Complex64::from_polar(amp, params.v.dot(q))
}

/// Closed-form freely spread density
/// `n³σ³/[π(σ⁴+n⁴t²)]^{3/2} · exp(−n²σ²|q−a−vt|²/(σ⁴+n⁴t²))`.
pub fn nr_density_analytic(params: &NRPacketParams, q: Vec3, t: f64) -> f64 {
    let n = params.n as f64;
    let s = params.sigma;
    let d = s.powi(4) + n.powi(4) * t * t;
    let c = q - params.a - params.v * t;
    n.powi(3) * s.powi(3) / (PI * d).powf(1.5) * (-n * n * s * s * c.norm_sqr() / d).exp()
}

/// The freely evolved amplitude `χₙ(q, t)`, a product of the standard
/// one-dimensional spreading Gaussians.
pub fn nr_state_evolved(params: &NRPacketParams, q: Vec3, t: f64) -> Complex64 {
    let w2 = params.width() * params.width();
    let z = Complex64::new(1.0, t / w2);
    let mut acc = Complex64::new((PI * w2).powf(-0.75), 0.0) * z.powf(-1.5);
    let shift = q - params.a - params.v * t;
    let exponent =
        -shift.norm_sqr() / (2.0 * w2 * z) + Complex64::new(0.0, params.v.dot(q) - 0.5 * params.v.norm_sqr() * t);
    acc *= exponent.exp();
    acc
}

/// Free propagator `(1/2πit)^{3/2} e^{i|q−a|²/2t}`.
pub fn nr_green(q: Vec3, a: Vec3, t: f64) -> Result<Complex64> {
    if !(t > 0.0) {
        return Err(Error::NonPositiveTime(t));
    }
    let modulus = (2.0 * PI * t).powf(-1.5);
    Ok(Complex64::from_polar(
        modulus,
        -0.75 * PI + 0.5 * (q - a).norm_sqr() / t,
    ))
}

/// Row-major shape of a sampled 3-D field: index `(i·ny + j)·nz + k` with
/// `i` along `q₁`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FieldShape {
    pub dims: [usize; 3],
}

impl FieldShape {
    pub fn new(dims: [usize; 3]) -> Self {
        FieldShape { dims }
    }

    pub fn len(&self) -> usize {
        self.dims[0] * self.dims[1] * self.dims[2]
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn index(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dims[1] + j) * self.dims[2] + k
    }

    #[inline]
    fn stride(&self, axis: usize) -> usize {
        match axis {
            0 => self.dims[1] * self.dims[2],
            1 => self.dims[2],
            _ => 1,
        }
    }
}

/// `∂χ/∂q_axis` at flat index `idx`: centred differences inside, second
/// order one-sided stencils on the faces.
fn derivative(chi: &[Complex64], shape: &FieldShape, idx: usize, pos: usize, axis: usize, h: f64) -> Complex64 {
    let s = shape.stride(axis);
    let m = shape.dims[axis];
    if pos == 0 {
        (chi[idx] * -3.0 + chi[idx + s] * 4.0 - chi[idx + 2 * s]) / (2.0 * h)
    } else if pos == m - 1 {
        (chi[idx] * 3.0 - chi[idx - s] * 4.0 + chi[idx - 2 * s]) / (2.0 * h)
    } else {
        (chi[idx + s] - chi[idx - s]) / (2.0 * h)
    }
}

/// `j = −(i/2)(χ*∇χ − χ∇χ*) = Im(χ*∇χ)` on a uniform grid with spacing `h`.
pub fn nr_current(chi: &[Complex64], shape: FieldShape, h: f64) -> Result<Vec<Vec3>> {
    if chi.len() != shape.len() || shape.dims.iter().any(|&d| d < 3) {
        return Err(Error::ShapeMismatch);
    }
    let mut out = Vec::with_capacity(chi.len());
    for i in 0..shape.dims[0] {
        for j in 0..shape.dims[1] {
            for k in 0..shape.dims[2] {
                let idx = shape.index(i, j, k);
                let c = chi[idx].conj();
                let g = [
                    derivative(chi, &shape, idx, i, 0, h),
                    derivative(chi, &shape, idx, j, 1, h),
                    derivative(chi, &shape, idx, k, 2, h),
                ];
                out.push(Vec3::new((c * g[0]).im, (c * g[1]).im, (c * g[2]).im));
            }
        }
    }
    Ok(out)
}
