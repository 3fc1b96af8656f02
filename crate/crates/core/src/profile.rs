//! Momentum profiles `f(p)`: normalized Gaussians, optionally shifted so
//! that the mean of `p/|p|` equals a chosen velocity.

use core::f64::consts::PI;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::quadrature::{geometric_breakpoints, CompositeRule, SphericalOrder, SphericalRule};
use crate::vec3::Vec3;

/// Largest supported `|v|` for a boosted profile. The required shift grows
/// without bound as `|v| → 1`.
pub const MAX_PROFILE_SPEED: f64 = 0.99;

/// Iteration budget of the shift root finder.
pub const ROOT_MAX_ITERATIONS: usize = 100;

/// Profile tails are treated as zero beyond this many widths.
pub const CUTOFF_WIDTHS: f64 = 8.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProfileKind {
    Gaussian,
    BoostedGaussian,
}

/// `f(q) = A exp(−|q − k|²/2σ²)` with `A = (σ√π)^{−3/2}` for a normalized
/// profile.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MomentumProfile {
    kind: ProfileKind,
    width: f64,
    center: Vec3,
    amplitude: f64,
    target_velocity: Vec3,
}

impl MomentumProfile {
    /// Normalized Gaussian centred at the origin. `width = 1` is
    /// `π^{−3/4} e^{−p²/2}`.
    pub fn gaussian(width: f64) -> Result<Self> {
        check_width(width)?;
        Ok(MomentumProfile {
            kind: ProfileKind::Gaussian,
            width,
            center: Vec3::ZERO,
            amplitude: gaussian_amplitude(width),
            target_velocity: Vec3::ZERO,
        })
    }

    /// Normalized Gaussian shifted along `v̂` so that
    /// `∫|f|² p/|p| d³p = v_target`.
    pub fn boosted_gaussian(v_target: Vec3, width: f64) -> Result<Self> {
        check_width(width)?;
        let speed = v_target.norm();
        if !speed.is_finite() || speed > MAX_PROFILE_SPEED {
            return Err(Error::VelocityOutOfRange {
                speed,
                limit: MAX_PROFILE_SPEED,
            });
        }
        let Some(dir) = v_target.normalized() else {
            return Ok(MomentumProfile {
                kind: ProfileKind::BoostedGaussian,
                ..MomentumProfile::gaussian(width)?
            });
        };
        let kappa = solve_shift(speed)? * width;
        Ok(MomentumProfile {
            kind: ProfileKind::BoostedGaussian,
            width,
            center: dir * kappa,
            amplitude: gaussian_amplitude(width),
            target_velocity: v_target,
        })
    }

    /// The same profile multiplied by `factor` (no longer normalized).
    pub fn scaled(mut self, factor: f64) -> Self {
        self.amplitude *= factor;
        self
    }

    pub fn kind(&self) -> ProfileKind {
        self.kind
    }

    /// `σ_p` in units of `mc`.
    pub fn width(&self) -> f64 {
        self.width
    }

    /// Gaussian centre `k`.
    pub fn center(&self) -> Vec3 {
        self.center
    }

    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    /// The velocity this profile was constructed to realize.
    pub fn target_velocity(&self) -> Vec3 {
        self.target_velocity
    }

    pub fn is_spherically_symmetric(&self) -> bool {
        self.center == Vec3::ZERO
    }

    #[inline]
    pub fn eval(&self, q: Vec3) -> f64 {
        let d = q - self.center;
        self.amplitude * (-0.5 * d.norm_sqr() / (self.width * self.width)).exp()
    }

    #[inline]
    pub fn gradient(&self, q: Vec3) -> Vec3 {
        let d = q - self.center;
        d * (-self.eval(q) / (self.width * self.width))
    }

    /// Radius beyond which `f` is negligible: `|k| + 8σ`.
    pub fn cutoff(&self) -> f64 {
        self.center.norm() + CUTOFF_WIDTHS * self.width
    }

    /// Cutoff for the dilated profile `f(p/n)`: `n(|k| + 8σ)`.
    pub fn scaled_cutoff(&self, n: u32) -> f64 {
        n as f64 * self.cutoff()
    }

    /// Panel edges for radial quadrature of `|f(p/n)|²`-weighted integrands
    /// that also carry structure on the scale `inner` near the origin.
    pub fn radial_breakpoints(&self, n: u32, inner: f64) -> alloc::vec::Vec<f64> {
        let nf = n as f64;
        let end = nf * (self.center.norm() + (CUTOFF_WIDTHS + 1.0) * self.width);
        let c = nf * self.center.norm();
        let s = nf * self.width;
        let extra = [c - 4.0 * s, c - 2.0 * s, c, c + 2.0 * s, c + 4.0 * s];
        geometric_breakpoints(inner.min(0.25 * s), end, &extra)
    }

    /// Polar axis for spherical quadrature: along the centre, else `z`.
    pub fn axis(&self) -> Vec3 {
        self.center.normalized().unwrap_or(Vec3::Z)
    }
}

fn check_width(width: f64) -> Result<()> {
    if width.is_finite() && width > 0.0 {
        Ok(())
    } else {
        Err(Error::NonPositiveWidth(width))
    }
}

fn gaussian_amplitude(width: f64) -> f64 {
    (width * PI.sqrt()).powf(-1.5)
}

/// Mean of `cos θ` under `|f|²` for a unit-width Gaussian shifted by `κ`,
/// reduced to one radial integral by doing the angular integral in closed
/// form.
pub fn mean_direction_of_shift(kappa: f64) -> f64 {
    if kappa == 0.0 {
        return 0.0;
    }
    let norm2 = PI.powf(-1.5);
    let rule = CompositeRule::new(&geometric_breakpoints(0.5, kappa + 10.0, &[kappa]), 48);
    let integral = rule.integrate(|p| {
        let b = 2.0 * p * kappa;
        let base = -(p * p + kappa * kappa);
        let ang = if b < 0.1 {
            let b2 = b * b;
            base.exp() * 2.0 * b * (1.0 / 3.0 + b2 * (1.0 / 30.0 + b2 * (1.0 / 840.0 + b2 / 45360.0)))
        } else {
            let em = (-(p - kappa) * (p - kappa)).exp();
            let ep = (-(p + kappa) * (p + kappa)).exp();
            (em * (b - 1.0) + ep * (b + 1.0)) / (b * b)
        };
        p * p * ang
    });
    2.0 * PI * norm2 * integral
}

/// Shift `κ/σ` solving `mean_direction_of_shift(κ/σ) = speed`, by bisection.
pub fn solve_shift(speed: f64) -> Result<f64> {
    if speed == 0.0 {
        return Ok(0.0);
    }
    let mut hi = 1.0;
    while mean_direction_of_shift(hi) < speed {
        hi *= 2.0;
        if hi > 1e3 {
            return Err(Error::RootNotConverged {
                iterations: 0,
                residual: f64::INFINITY,
            });
        }
    }
    let mut lo = 0.0;
    for _ in 0..ROOT_MAX_ITERATIONS {
        let mid = 0.5 * (lo + hi);
        if mean_direction_of_shift(mid) < speed {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 {
            break;
        }
    }
    let root = 0.5 * (lo + hi);
    let residual = (mean_direction_of_shift(root) - speed).abs();
    if residual > 1e-10 {
        return Err(Error::RootNotConverged {
            iterations: ROOT_MAX_ITERATIONS,
            residual,
        });
    }
    Ok(root)
}

/// The two integrals constrained for admissible profiles.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProfileConditions {
    /// `∫|f|² d³p`
    pub norm: f64,
    /// `∫|f|² p/|p| d³p`
    pub mean_direction: Vec3,
}

/// Evaluates both profile conditions by direct 3-D quadrature.
pub fn check_profile_conditions(f: &MomentumProfile) -> ProfileConditions {
    let b = f.radial_breakpoints(1, 0.25);
    let rule = SphericalRule::new(&b, f.axis(), SphericalOrder::new(24, 64, 16));
    let mut norm = 0.0;
    let mut dir = Vec3::ZERO;
    rule.for_each(|p, w| {
        let d = f.eval(p);
        let wd = w * d * d;
        norm += wd;
        dir += p * (wd / p.norm());
    });
    ProfileConditions {
        norm,
        mean_direction: dir,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn unit_gaussian_matches_closed_form() {
        let f = MomentumProfile::gaussian(1.0).unwrap();
        let p = Vec3::new(0.3, -0.1, 0.7);
        let expected = PI.powf(-0.75) * (-0.5 * p.norm_sqr()).exp();
        assert_abs_diff_eq!(f.eval(p), expected, epsilon = 1e-15);
    }

    #[test]
    fn unit_gaussian_conditions() {
        let c = check_profile_conditions(&MomentumProfile::gaussian(1.0).unwrap());
        assert_abs_diff_eq!(c.norm, 1.0, epsilon = 1e-8);
        assert!(c.mean_direction.norm() < 1e-8);
    }

    #[test]
    fn wide_gaussian_is_normalized() {
        let c = check_profile_conditions(&MomentumProfile::gaussian(2.0).unwrap());
        assert_abs_diff_eq!(c.norm, 1.0, epsilon = 1e-8);
    }

    #[test]
    fn scaling_squares_the_norm() {
        let c = check_profile_conditions(&MomentumProfile::gaussian(1.0).unwrap().scaled(2.0));
        assert_abs_diff_eq!(c.norm, 4.0, epsilon = 1e-8);
    }

    #[test]
    fn zero_velocity_is_plain_gaussian() {
        let f = MomentumProfile::boosted_gaussian(Vec3::ZERO, 1.0).unwrap();
        assert_eq!(f.center(), Vec3::ZERO);
        assert!(f.is_spherically_symmetric());
    }

    #[test]
    fn boosted_profile_realizes_velocity() {
        let v = Vec3::new(0.0, 0.0, 0.5);
        let f = MomentumProfile::boosted_gaussian(v, 1.0).unwrap();
        assert!(f.center().z > 0.0 && f.center().x == 0.0);
        let c = check_profile_conditions(&f);
        assert_abs_diff_eq!(c.norm, 1.0, epsilon = 1e-8);
        assert!((c.mean_direction - v).norm() < 1e-6, "{:?}", c.mean_direction);
    }

    #[test]
    fn boosted_profile_off_axis() {
        let v = Vec3::new(0.2, -0.3, 0.1);
        let f = MomentumProfile::boosted_gaussian(v, 0.7).unwrap();
        let c = check_profile_conditions(&f);
        assert!((c.mean_direction - v).norm() < 1e-6);
    }

    #[test]
    fn mean_direction_is_monotone() {
        let mut last = 0.0;
        for i in 1..60 {
            let m = mean_direction_of_shift(i as f64 * 0.1);
            assert!(m > last);
            last = m;
        }
        assert!(last < 1.0);
    }

    #[test]
    fn speed_limit_enforced() {
        assert!(matches!(
            MomentumProfile::boosted_gaussian(Vec3::new(0.0, 0.0, 0.995), 1.0),
            Err(Error::VelocityOutOfRange { .. })
        ));
        assert!(MomentumProfile::boosted_gaussian(Vec3::new(0.0, 0.0, 0.99), 1.0).is_ok());
    }

    #[test]
    fn nonpositive_width_rejected() {
        assert_eq!(MomentumProfile::gaussian(0.0), Err(Error::NonPositiveWidth(0.0)));
        assert!(MomentumProfile::gaussian(-1.0).is_err());
        assert!(MomentumProfile::gaussian(f64::NAN).is_err());
    }
}
