//! Momentum-space wavefunctions of a localizing sequence,
//! `φₙ(p) = n^{−3/2} f(p/n) u_s(p) e^{−ia·p}`, optionally evolved freely to
//! time `t` by the positive-energy phase `e^{−iE(p)t}`.

use alloc::vec::Vec;
use num_complex::Complex64;
use num_traits::Float;

use crate::dirac::{energy, spin_eigenspinor, spin_eigenspinor_gradient, SpinLabel};
use crate::error::{Error, Result};
use crate::profile::MomentumProfile;
use crate::quadrature::{SphericalOrder, SphericalRule};
use crate::spinor::Spinor4;
use crate::vec3::{Momentum, Vec3};

/// Labels one element of an `(a, v)`-localizing sequence.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LocalizationLabel {
    /// Localization point, units `λ_C`.
    pub a: Vec3,
    /// Mean velocity, units `c`, `|v| < 1`.
    pub v: Vec3,
    pub spin: SpinLabel,
    /// Sequence index, `n ≥ 1`.
    pub n: u32,
}

impl LocalizationLabel {
    pub fn new(a: Vec3, v: Vec3, spin: SpinLabel, n: u32) -> Result<Self> {
        let label = LocalizationLabel { a, v, spin, n };
        label.validate()?;
        Ok(label)
    }

    /// `(0, 0)`-localizing, spin up.
    pub fn at_origin(n: u32) -> Result<Self> {
        LocalizationLabel::new(Vec3::ZERO, Vec3::ZERO, SpinLabel::Up, n)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.a.is_finite() || !self.v.is_finite() {
            return Err(Error::InvalidLabel("components must be finite"));
        }
        if self.v.norm() >= 1.0 {
            return Err(Error::InvalidLabel("|v| must be below the speed of light"));
        }
        if self.n == 0 {
            return Err(Error::InvalidLabel("sequence index n must be at least 1"));
        }
        Ok(())
    }

    pub fn with_n(mut self, n: u32) -> Self {
        self.n = n;
        self
    }

    pub fn with_a(mut self, a: Vec3) -> Self {
        self.a = a;
        self
    }

    pub fn with_spin(mut self, spin: SpinLabel) -> Self {
        self.spin = spin;
        self
    }
}

/// Tolerance for agreement between a label's velocity and the velocity its
/// profile was built for.
const VELOCITY_MATCH_TOL: f64 = 1e-9;

/// Default node counts for integrals over a state's momentum density.
pub const STATE_QUADRATURE: SphericalOrder = SphericalOrder::new(24, 48, 32);

/// A positive-energy state in momentum space.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MomentumState {
    label: LocalizationLabel,
    profile: MomentumProfile,
    time: f64,
}

impl MomentumState {
    pub fn new(label: LocalizationLabel, profile: MomentumProfile) -> Result<Self> {
        label.validate()?;
        if (label.v - profile.target_velocity()).norm() > VELOCITY_MATCH_TOL {
            return Err(Error::LabelProfileMismatch {
                label: label.v,
                profile: profile.target_velocity(),
            });
        }
        Ok(MomentumState {
            label,
            profile,
            time: 0.0,
        })
    }

    /// Builds the Gaussian profile of width `width` realizing `label.v`.
    pub fn from_label(label: LocalizationLabel, width: f64) -> Result<Self> {
        let profile = if label.v == Vec3::ZERO {
            MomentumProfile::gaussian(width)?
        } else {
            MomentumProfile::boosted_gaussian(label.v, width)?
        };
        MomentumState::new(label, profile)
    }

    pub fn label(&self) -> &LocalizationLabel {
        &self.label
    }

    pub fn profile(&self) -> &MomentumProfile {
        &self.profile
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn n(&self) -> u32 {
        self.label.n
    }

    /// Free evolution by `dt`: `φ(p) → e^{−iE(p)dt} φ(p)`.
    pub fn evolved(&self, dt: f64) -> MomentumState {
        MomentumState {
            time: self.time + dt,
            ..*self
        }
    }

    /// Scalar envelope `n^{−3/2} f(p/n)`.
    #[inline]
    pub fn envelope(&self, p: Momentum) -> f64 {
        let n = self.label.n as f64;
        n.powf(-1.5) * self.profile.eval(p / n)
    }

    #[inline]
    fn phase(&self, p: Momentum) -> Complex64 {
        Complex64::from_polar(1.0, -self.label.a.dot(p) - energy(p) * self.time)
    }

    /// `φ(p)`.
    #[inline]
    pub fn eval(&self, p: Momentum) -> Spinor4 {
        spin_eigenspinor(p, self.label.spin).scale(self.phase(p) * self.envelope(p))
    }

    /// `∂φ/∂p_k` for `k = 1, 2, 3`.
    pub fn gradient(&self, p: Momentum) -> [Spinor4; 3] {
        let n = self.label.n as f64;
        let envelope = self.envelope(p);
        let d_env = self.profile.gradient(p / n) * n.powf(-2.5);
        let u = spin_eigenspinor(p, self.label.spin);
        let du = spin_eigenspinor_gradient(p, self.label.spin);
        let phase = self.phase(p);
        let d_theta = -self.label.a - p * (self.time / energy(p));
        core::array::from_fn(|k| {
            let chain = u.scale(Complex64::new(d_env[k], envelope * d_theta[k]));
            (chain + du[k].scale_real(envelope)).scale(phase)
        })
    }

    /// Radius beyond which `φ` is negligible, `n(|k| + 8σ)`.
    pub fn momentum_cutoff(&self) -> f64 {
        self.profile.scaled_cutoff(self.label.n)
    }

    /// Radial panel edges suited to this state's momentum density.
    pub fn radial_breakpoints(&self) -> Vec<f64> {
        self.profile.radial_breakpoints(self.label.n, 0.25)
    }

    /// Spherical product rule covering the state's momentum support.
    pub fn quadrature(&self, order: SphericalOrder) -> SphericalRule {
        SphericalRule::new(&self.radial_breakpoints(), self.profile.axis(), order)
    }
}

/// `φₙ(p)` for a label and an explicit profile, without the consistency
/// check between `label.v` and the profile.
pub fn build_phi(label: &LocalizationLabel, f: &MomentumProfile, p: Momentum) -> Spinor4 {
    let n = label.n as f64;
    let envelope = n.powf(-1.5) * f.eval(p / n);
    spin_eigenspinor(p, label.spin).scale(Complex64::from_polar(envelope, -label.a.dot(p)))
}
