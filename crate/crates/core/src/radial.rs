//! Radial reduction of the position-space wavefunction for spherically
//! symmetric profiles at `a = 0`, `v = 0`.
//!
//! With `F(p) = n^{−3/2} f(p/n)` the upper component of `ψₙ` is
//! `g0(r) = √(2/π)∫F (E+1)/𝓔 j₀(pr) p² dp` and the lower pair has modulus
//! `g1(r) = √(2/π)∫F p/𝓔 j₁(pr) p² dp`, so `ρₙ(r) = g0² + g1²` for either
//! spin.

use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;
use num_traits::Float;

use crate::bessel::{j0, j1};
use crate::error::{Error, Result};
use crate::profile::MomentumProfile;
use crate::quadrature::{geometric_breakpoints, CompositeRule, GaussLegendre};

/// Gauss–Legendre nodes on `[0, p_max]`.
pub const RADIAL_NODES: usize = 2048;

/// Agreement required between `RADIAL_NODES` and twice as many.
pub const DOUBLING_TOLERANCE: f64 = 1e-8;

/// Which momentum-space spinor weights enter the transform.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RadialKernel {
    /// The positive-energy spinor `u₊(p)`.
    Dirac,
    /// `m → ∞`: `(E+1)/𝓔 → 1`, `p/𝓔 → 0`.
    StaticLimit,
}

/// Strictly increasing, nonnegative radii (units `λ_C`).
#[derive(Clone, Debug, PartialEq)]
pub struct RadialGrid {
    r: Vec<f64>,
}

impl RadialGrid {
    pub fn new(r: Vec<f64>) -> Result<Self> {
        let ok = !r.is_empty() && r.iter().all(|x| x.is_finite() && *x >= 0.0) && r.windows(2).all(|w| w[1] > w[0]);
        if ok {
            Ok(RadialGrid { r })
        } else {
            Err(Error::InvalidRadialGrid)
        }
    }

    /// `count` equispaced points on `[0, r_max]`.
    pub fn uniform(r_max: f64, count: usize) -> Result<Self> {
        if count < 2 || !(r_max > 0.0) {
            return Err(Error::InvalidRadialGrid);
        }
        let h = r_max / (count - 1) as f64;
        RadialGrid::new((0..count).map(|i| i as f64 * h).collect())
    }

    pub fn points(&self) -> &[f64] {
        &self.r
    }

    pub fn len(&self) -> usize {
        self.r.len()
    }

    pub fn is_empty(&self) -> bool {
        self.r.is_empty()
    }

    pub fn r_max(&self) -> f64 {
        self.r[self.r.len() - 1]
    }
}

/// Precomputed momentum quadrature for the two radial Bessel integrals.
#[derive(Clone, Debug)]
pub struct RadialTransform {
    n: u32,
    /// `(p, w·F·(E+1)/𝓔·p², w·F·p/𝓔·p²)`, prefactor `√(2/π)` included.
    nodes: Vec<(f64, f64, f64)>,
}

impl RadialTransform {
    pub fn new(profile: &MomentumProfile, n: u32) -> Result<Self> {
        RadialTransform::with_options(profile, n, RADIAL_NODES, RadialKernel::Dirac)
    }

    pub fn with_options(profile: &MomentumProfile, n: u32, nodes: usize, kernel: RadialKernel) -> Result<Self> {
        if !profile.is_spherically_symmetric() {
            return Err(Error::AsymmetricProfile);
        }
        if n == 0 {
            return Err(Error::InvalidLabel("sequence index n must be at least 1"));
        }
        let nf = n as f64;
        let scale = (2.0 / PI).sqrt() * nf.powf(-1.5);
        let p_max = profile.scaled_cutoff(n);
        let gl = GaussLegendre::new(nodes);
        let nodes = gl
            .mapped(0.0, p_max)
            .map(|(p, w)| {
                let weight = w * scale * profile.eval(crate::vec3::Vec3::new(p / nf, 0.0, 0.0)) * p * p;
                let (upper, lower) = match kernel {
                    RadialKernel::Dirac => {
                        let e = (p * p + 1.0).sqrt();
                        let cal_e = (2.0 * e * (e + 1.0)).sqrt();
                        ((e + 1.0) / cal_e, p / cal_e)
                    }
                    RadialKernel::StaticLimit => (1.0, 0.0),
                };
                (p, weight * upper, weight * lower)
            })
            .collect();
        Ok(RadialTransform { n, nodes })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `(g0(r), g1(r))`, both real for a real profile.
    pub fn components(&self, r: f64) -> (f64, f64) {
        let mut g0 = 0.0;
        let mut g1 = 0.0;
        for &(p, w0, w1) in &self.nodes {
            let x = p * r;
            g0 += w0 * j0(x);
            g1 += w1 * j1(x);
        }
        (g0, g1)
    }

    /// `ρ(r) = g0² + g1²`.
    pub fn density(&self, r: f64) -> f64 {
        let (g0, g1) = self.components(r);
        g0 * g0 + g1 * g1
    }

    /// `∫_{lo}^{hi} 4π r^{2+k} ρ(r) dr` by composite Gauss–Legendre, with
    /// panels refined near the origin on the scale `1/n`.
    pub fn radial_moment(&self, lo: f64, hi: f64, k: i32) -> f64 {
        if hi <= lo {
            return 0.0;
        }
        let first = (0.05 / self.n as f64).min(hi - lo);
        let mut extra = Vec::new();
        let mut x = 0.5;
        while x < hi - lo {
            extra.push(x);
            x += 0.5;
        }
        let rule = CompositeRule::new(&geometric_breakpoints(first, hi - lo, &extra), 32);
        rule.integrate(|s| {
            let r = lo + s;
            4.0 * PI * r * r * r.powi(k) * self.density(r)
        })
    }
}

/// `(g0(r), g1(r))` for profile `f` dilated by `n`.
pub fn radial_components(profile: &MomentumProfile, n: u32, r: f64) -> Result<(Complex64, Complex64)> {
    if !(r >= 0.0) || !r.is_finite() {
        return Err(Error::InvalidRadius(r));
    }
    let (g0, g1) = RadialTransform::new(profile, n)?.components(r);
    Ok((Complex64::new(g0, 0.0), Complex64::new(g1, 0.0)))
}

/// Largest change in `ρ` over `radii` when the momentum nodes are doubled.
pub fn doubling_change(profile: &MomentumProfile, n: u32, radii: &[f64]) -> Result<f64> {
    let base = RadialTransform::new(profile, n)?;
    let fine = RadialTransform::with_options(profile, n, 2 * RADIAL_NODES, RadialKernel::Dirac)?;
    Ok(radii
        .iter()
        .map(|&r| (base.density(r) - fine.density(r)).abs())
        .fold(0.0, f64::max))
}

/// Distance beyond the table's last radius covered by the tail estimate.
const TAIL_EXTENT: f64 = 40.0;

/// Tabulated `ρₙ(r)` with integrals taken from the underlying transform.
#[derive(Clone, Debug)]
pub struct RadialDensityTable {
    pub grid: RadialGrid,
    pub rho: Vec<f64>,
    pub n: u32,
    /// `∫₀^{r_max} 4πr²ρ dr`.
    pub norm_inside: f64,
    /// `∫_{r_max}^{r_max+40} 4πr²ρ dr`, a bound on the neglected tail.
    pub tail: f64,
    /// `⟨r²⟩` over the same range, tail included.
    pub second_moment: f64,
    /// Probability inside `r < 1`.
    pub prob_inside_unit: f64,
}

impl RadialDensityTable {
    /// Total norm including the tail estimate.
    pub fn norm(&self) -> f64 {
        self.norm_inside + self.tail
    }

    /// `Δ_x = √⟨r²⟩` (the mean position vanishes by symmetry).
    pub fn delta_x(&self) -> f64 {
        self.second_moment.max(0.0).sqrt()
    }

    pub fn rho_at_origin(&self) -> f64 {
        self.rho[0]
    }

    /// Least-squares slope of `ln ρ` against `r` over tabulated points in
    /// `[lo, hi]`; `None` if fewer than two usable points.
    pub fn log_slope(&self, lo: f64, hi: f64) -> Option<f64> {
        let pts: Vec<(f64, f64)> = self
            .grid
            .points()
            .iter()
            .zip(&self.rho)
            .filter(|(r, rho)| **r >= lo && **r <= hi && **rho > 0.0)
            .map(|(r, rho)| (*r, rho.ln()))
            .collect();
        if pts.len() < 2 {
            return None;
        }
        let m = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
        Some(sxy / sxx)
    }
}

/// `ρₙ` on `grid` together with its norm, tail, `⟨r²⟩` and `P(r < 1)`.
pub fn radial_density(profile: &MomentumProfile, n: u32, grid: &RadialGrid) -> Result<RadialDensityTable> {
    let t = RadialTransform::new(profile, n)?;
    let rho = grid.points().iter().map(|&r| t.density(r)).collect();
    let r_max = grid.r_max();
    let norm_inside = t.radial_moment(0.0, r_max, 0);
    let tail = t.radial_moment(r_max, r_max + TAIL_EXTENT, 0);
    let second_moment = t.radial_moment(0.0, r_max + TAIL_EXTENT, 2);
    let prob_inside_unit = t.radial_moment(0.0, 1.0, 0);
    Ok(RadialDensityTable {
        grid: grid.clone(),
        rho,
        n,
        norm_inside,
        tail,
        second_moment,
        prob_inside_unit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn fig_profile() -> MomentumProfile {
        MomentumProfile::gaussian(1.0).unwrap()
    }

    #[test]
    fn g1_vanishes_at_origin() {
        let (_, g1) = radial_components(&fig_profile(), 5, 0.0).unwrap();
        assert_eq!(g1.norm(), 0.0);
    }

    #[test]
    fn static_limit_is_gaussian_transform() {
        // (2π)^{-3/2} ∫ n^{-3/2} π^{-3/4} e^{-p²/2n²} e^{ix·p} d³p
        //   = n^{3/2} π^{-3/4} e^{-n²r²/2}
        let n = 3;
        let t = RadialTransform::with_options(&fig_profile(), n, RADIAL_NODES, RadialKernel::StaticLimit).unwrap();
        for r in [0.0, 0.1, 0.35, 0.8] {
            let (g0, g1) = t.components(r);
            let nf = n as f64;
            let exact = nf.powf(1.5) * PI.powf(-0.75) * (-0.5 * nf * nf * r * r).exp();
            assert_abs_diff_eq!(g0, exact, epsilon = 1e-12);
            assert_eq!(g1, 0.0);
        }
    }

    #[test]
    fn normalized_with_tail() {
        let grid = RadialGrid::uniform(6.0, 61).unwrap();
        for n in [5, 7, 10] {
            let table = radial_density(&fig_profile(), n, &grid).unwrap();
            assert_abs_diff_eq!(table.norm(), 1.0, epsilon = 1e-6);
            assert!(table.tail < 1e-4);
        }
    }

    #[test]
    fn densities_sharpen_with_n() {
        let grid = RadialGrid::uniform(6.0, 61).unwrap();
        let t: Vec<_> = [5, 7, 10]
            .iter()
            .map(|&n| radial_density(&fig_profile(), n, &grid).unwrap())
            .collect();
        assert!(t[2].rho_at_origin() > t[1].rho_at_origin());
        assert!(t[1].rho_at_origin() > t[0].rho_at_origin());
        assert!(t[2].prob_inside_unit > t[0].prob_inside_unit);
        assert!(t[2].delta_x() < t[1].delta_x() && t[1].delta_x() < t[0].delta_x());
    }

    #[test]
    fn tails_positive_and_decaying() {
        let grid = RadialGrid::uniform(10.0, 101).unwrap();
        let table = radial_density(&fig_profile(), 5, &grid).unwrap();
        assert!(table.rho.iter().all(|&x| x > 0.0));
        assert!(table.log_slope(3.0, 6.0).unwrap() < 0.0);
    }

    #[test]
    fn node_doubling_converged() {
        let radii: Vec<f64> = (0..=40).map(|i| i as f64 * 0.15).collect();
        for n in [5, 10] {
            assert!(doubling_change(&fig_profile(), n, &radii).unwrap() < DOUBLING_TOLERANCE);
        }
    }

    #[test]
    fn rejects_bad_input() {
        let shifted = MomentumProfile::boosted_gaussian(crate::vec3::Vec3::new(0.0, 0.0, 0.3), 1.0).unwrap();
        assert_eq!(radial_components(&shifted, 5, 1.0), Err(Error::AsymmetricProfile));
        assert_eq!(
            radial_components(&fig_profile(), 5, -1.0),
            Err(Error::InvalidRadius(-1.0))
        );
        assert!(RadialGrid::new(alloc::vec![0.0, 1.0, 1.0]).is_err());
        assert!(RadialGrid::new(alloc::vec![]).is_err());
    }
}
