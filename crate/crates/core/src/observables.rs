//! Observables: pointwise density and current of spinor fields, moments and
//! mean velocities of momentum-space states, overlaps, the convolution
//! `Rₙ(p)` and its `p = 0` limit `Aₙ`.

use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;
use num_traits::Float;

use crate::dirac::{energy, spin_eigenspinor, SpinLabel};
use crate::error::{Error, Result};
use crate::profile::MomentumProfile;
use crate::quadrature::{geometric_breakpoints, SphericalOrder, SphericalRule};
use crate::spinor::Spinor4;
use crate::state::{MomentumState, STATE_QUADRATURE};
use crate::vec3::{Momentum, Vec3};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `ψ†ψ`.
#[inline]
pub fn spinor_density(s: &Spinor4) -> f64 {
    s.norm_sqr()
}

/// `ψ†αψ`, written out for the Dirac–Pauli `α` matrices.
#[inline]
pub fn spinor_current(s: &Spinor4) -> Vec3 {
    let [a, b, c, d] = s.0;
    Vec3::new(
        2.0 * (a.conj() * d + b.conj() * c).re,
        2.0 * (a.conj() * d - b.conj() * c).im,
        2.0 * (a.conj() * c - b.conj() * d).re,
    )
}

/// `ρ(x) = ψ†ψ` at every sample.
pub fn density(psi: &[Spinor4]) -> Vec<f64> {
    psi.iter().map(spinor_density).collect()
}

/// `j(x) = ψ†αψ` at every sample.
pub fn current(psi: &[Spinor4]) -> Vec<Vec3> {
    psi.iter().map(spinor_current).collect()
}

/// Sampled `(ρ, j)` at one time.
#[derive(Clone, Debug, PartialEq)]
pub struct FourVectorDensity {
    pub rho: Vec<f64>,
    pub j: Vec<Vec3>,
    pub time: f64,
}

impl FourVectorDensity {
    pub fn new(rho: Vec<f64>, j: Vec<Vec3>, time: f64) -> Result<Self> {
        if rho.len() != j.len() {
            return Err(Error::ShapeMismatch);
        }
        Ok(FourVectorDensity { rho, j, time })
    }

    pub fn from_spinors(psi: &[Spinor4], time: f64) -> Self {
        FourVectorDensity {
            rho: density(psi),
            j: current(psi),
            time,
        }
    }

    pub fn len(&self) -> usize {
        self.rho.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rho.is_empty()
    }

    /// `max_x (|j(x)| − ρ(x))`; nonpositive when no flow exceeds `c`.
    pub fn causality_margin(&self) -> f64 {
        causality_margin(&self.rho, &self.j)
    }
}

/// `max_x (|j(x)| − ρ(x))` over paired samples.
pub fn causality_margin(rho: &[f64], j: &[Vec3]) -> f64 {
    rho.iter()
        .zip(j)
        .map(|(r, j)| j.norm() - r)
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Norm, first and second position moments and mean velocity of a state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MomentSet {
    pub norm: f64,
    /// `⟨x⟩` in `λ_C`.
    pub mean_x: Vec3,
    /// `Δ_x = (⟨|x|²⟩ − |⟨x⟩|²)^{1/2}` in `λ_C`.
    pub delta_x: f64,
    /// `⟨α⟩` in units of `c`.
    pub mean_velocity: Vec3,
}

/// Moments from the momentum-space representation, where `x = i∇_p`:
/// `⟨x⟩ = Re∫φ†i∇φ` and `⟨|x − a|²⟩ = ∫|(∇ + ia)φ|²`.
pub fn momentum_moments(state: &MomentumState, order: SphericalOrder) -> MomentSet {
    let a = state.label().a;
    let mut norm = 0.0;
    let mut first = Vec3::ZERO;
    let mut second = 0.0;
    let mut vel = Vec3::ZERO;
    state.quadrature(order).for_each(|p, w| {
        let phi = state.eval(p);
        let grad = state.gradient(p);
        norm += w * phi.norm_sqr();
        vel += spinor_current(&phi) * w;
        let mut fx = [0.0; 3];
        for k in 0..3 {
            fx[k] = -phi.inner(&grad[k]).im;
            second += w * (grad[k] + phi.scale(I * a[k])).norm_sqr();
        }
        first += Vec3::from_array(fx) * w;
    });
    let mean_x = first / norm;
    let offset = mean_x - a;
    let var = second / norm - offset.norm_sqr();
    MomentSet {
        norm,
        mean_x,
        delta_x: var.max(0.0).sqrt(),
        mean_velocity: vel / norm,
    }
}

/// [`momentum_moments`] with the default state quadrature.
pub fn moments(state: &MomentumState) -> MomentSet {
    momentum_moments(state, STATE_QUADRATURE)
}

/// `(∫φ†αφ, ∫(p/E)φ†φ)` on the same quadrature nodes. The two agree for
/// positive-energy states.
pub fn mean_velocity_two_ways(state: &MomentumState) -> (Vec3, Vec3) {
    let mut spinor = Vec3::ZERO;
    let mut scalar = Vec3::ZERO;
    state.quadrature(STATE_QUADRATURE).for_each(|p, w| {
        let phi = state.eval(p);
        spinor += spinor_current(&phi) * w;
        scalar += p * (w * phi.norm_sqr() / energy(p));
    });
    (spinor, scalar)
}

/// `(φ, φ′) = ∫φ†φ′ d³p`.
///
/// Same-spin Gaussian states at equal times have a closed form (`u†u = 1`
/// and the time phases cancel); anything else goes to quadrature.
pub fn overlap(phi: &MomentumState, phi_prime: &MomentumState) -> Complex64 {
    if phi.label().spin == phi_prime.label().spin && phi.time() == phi_prime.time() {
        overlap_closed_form(phi, phi_prime)
    } else {
        overlap_quadrature(phi, phi_prime, STATE_QUADRATURE)
    }
}

/// Gaussian product formula for same-spin, equal-time states.
pub fn overlap_closed_form(phi: &MomentumState, phi_prime: &MomentumState) -> Complex64 {
    let (n1, n2) = (phi.n() as f64, phi_prime.n() as f64);
    let (f1, f2) = (phi.profile(), phi_prime.profile());
    let s1 = n1 * f1.width();
    let s2 = n2 * f2.width();
    let c1 = f1.center() * n1;
    let c2 = f2.center() * n2;
    let amp = f1.amplitude() * f2.amplitude() * (n1 * n2).powf(-1.5);
    let sum = s1 * s1 + s2 * s2;
    let s_sq = s1 * s1 * s2 * s2 / sum;
    let c = (c1 * (1.0 / (s1 * s1)) + c2 * (1.0 / (s2 * s2))) * s_sq;
    let delta = phi.label().a - phi_prime.label().a;
    let modulus = amp
        * (2.0 * PI).powf(1.5)
        * s_sq.powf(1.5)
        * (-(c1 - c2).norm_sqr() / (2.0 * sum) - 0.5 * s_sq * delta.norm_sqr()).exp();
    Complex64::from_polar(modulus, delta.dot(c))
}

/// Overlap by spherical quadrature over the union of both supports.
pub fn overlap_quadrature(phi: &MomentumState, phi_prime: &MomentumState, order: SphericalOrder) -> Complex64 {
    let mut b = phi.radial_breakpoints();
    b.extend(phi_prime.radial_breakpoints());
    b.sort_by(|x, y| x.partial_cmp(y).unwrap());
    b.dedup();
    let rule = SphericalRule::new(&b, phi.profile().axis(), order);
    let mut acc = Complex64::new(0.0, 0.0);
    rule.for_each(|p, w| acc += phi.eval(p).inner(&phi_prime.eval(p)) * w);
    acc
}

/// The matrix `Q` in `Rₙ(p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConvolutionOperator {
    Identity,
    /// `α_{k+1}`, `k ∈ {0, 1, 2}`.
    Alpha(usize),
}

impl ConvolutionOperator {
    /// `Qψ`.
    #[inline]
    pub fn apply(self, s: &Spinor4) -> Spinor4 {
        let [a, b, c, d] = s.0;
        match self {
            ConvolutionOperator::Identity => *s,
            ConvolutionOperator::Alpha(0) => Spinor4([d, c, b, a]),
            ConvolutionOperator::Alpha(1) => Spinor4([-I * d, I * c, -I * b, I * a]),
            ConvolutionOperator::Alpha(_) => Spinor4([c, -d, a, -b]),
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.trim() {
            "identity" | "1" | "I" => Some(ConvolutionOperator::Identity),
            "alpha1" => Some(ConvolutionOperator::Alpha(0)),
            "alpha2" => Some(ConvolutionOperator::Alpha(1)),
            "alpha3" => Some(ConvolutionOperator::Alpha(2)),
            _ => None,
        }
    }
}

/// Base node counts for `Rₙ`; the doubled rule must agree to
/// [`RN_DOUBLING_TOLERANCE`].
pub const RN_QUADRATURE: SphericalOrder = SphericalOrder::new(16, 32, 32);

pub const RN_DOUBLING_TOLERANCE: f64 = 1e-6;

/// `Rₙ(p) = ∫ f(r − p/n) f(r) u†(nr − p) Q u(nr) d³r` for a real profile.
///
/// Evaluated at [`RN_QUADRATURE`] and at twice its node counts; the finer
/// value is returned if the two agree.
pub fn convolution_rn(
    f: &MomentumProfile,
    n: u32,
    p: Momentum,
    q: ConvolutionOperator,
    spin: SpinLabel,
) -> Result<Complex64> {
    let coarse = convolution_rn_with(f, n, p, q, spin, RN_QUADRATURE);
    let fine = convolution_rn_with(f, n, p, q, spin, RN_QUADRATURE.doubled());
    let change = (fine - coarse).norm();
    if !(change <= RN_DOUBLING_TOLERANCE) {
        return Err(Error::QuadratureNotConverged {
            change,
            tolerance: RN_DOUBLING_TOLERANCE,
        });
    }
    Ok(fine)
}

/// `Rₙ(p)` on one fixed rule.
pub fn convolution_rn_with(
    f: &MomentumProfile,
    n: u32,
    p: Momentum,
    q: ConvolutionOperator,
    spin: SpinLabel,
    order: SphericalOrder,
) -> Complex64 {
    let nf = n as f64;
    let shift = p / nf;
    let k = f.center().norm();
    let s = f.width();
    let h = shift.norm();
    let end = k + h + (crate::profile::CUTOFF_WIDTHS + 1.0) * s;
    let extra = [
        h - 3.0 / nf,
        h - 1.0 / nf,
        h + 1.0 / nf,
        h + 3.0 / nf,
        k - 4.0 * s,
        k - 2.0 * s,
        k,
        k + 2.0 * s,
        k + 4.0 * s,
        k + h,
    ];
    let b = geometric_breakpoints((0.25 / nf).min(0.25 * s), end, &extra);
    let axis = shift.normalized().unwrap_or(f.axis());
    let rule = SphericalRule::new(&b, axis, order);
    let mut acc = Complex64::new(0.0, 0.0);
    rule.for_each(|r, w| {
        let weight = f.eval(r - shift) * f.eval(r);
        if weight == 0.0 {
            return;
        }
        let left = spin_eigenspinor(r * nf - p, spin);
        let right = q.apply(&spin_eigenspinor(r * nf, spin));
        acc += left.inner(&right) * (w * weight);
    });
    acc
}

/// `Aₙ = ∫|f(r)|² r_i/√(|r|² + 1/n²) d³r`, the `p = 0`, `Q = α_i` value
/// of `Rₙ`.
pub fn a_n_limit(f: &MomentumProfile, n: u32, axis: usize) -> f64 {
    let nf = n as f64;
    let rule = SphericalRule::new(&f.radial_breakpoints(1, 0.25 / nf), f.axis(), STATE_QUADRATURE);
    let inv_n2 = 1.0 / (nf * nf);
    rule.integrate(|r| {
        let v = f.eval(r);
        v * v * r[axis] / (r.norm_sqr() + inv_n2).sqrt()
    })
}
