//! Dirac-matrix algebra, free-particle kinematics, the positive-energy
//! projector and the Pryce spin eigenspinors.
//!
//! Everything is in natural units `ħ = c = m = 1`: momenta in `mc`, energies
//! in `mc²`. Matrices use the Dirac–Pauli representation with `β` diagonal.

use alloc::vec::Vec;
use num_complex::Complex64;
use num_traits::Float;

use crate::error::{Error, Result};
use crate::spinor::{Matrix4, Spinor4};
use crate::vec3::{Momentum, Vec3};

const I: Complex64 = Complex64::new(0.0, 1.0);

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Spin eigenvalue of the Pryce operator `S̃₃`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpinLabel {
    Up,
    Down,
}

impl SpinLabel {
    /// `+½` or `−½`.
    pub fn value(self) -> f64 {
        match self {
            SpinLabel::Up => 0.5,
            SpinLabel::Down => -0.5,
        }
    }

    pub fn flipped(self) -> SpinLabel {
        match self {
            SpinLabel::Up => SpinLabel::Down,
            SpinLabel::Down => SpinLabel::Up,
        }
    }

    /// Parses `+1/2`, `1/2`, `0.5`, `up` and their negatives.
    pub fn parse(s: &str) -> Option<SpinLabel> {
        match s.trim() {
            "up" | "+" | "+1/2" | "1/2" | "0.5" | "+0.5" => Some(SpinLabel::Up),
            "down" | "-" | "-1/2" | "-0.5" => Some(SpinLabel::Down),
            _ => None,
        }
    }
}

/// The standard Dirac–Pauli matrices.
#[derive(Clone, Copy, Debug)]
pub struct DiracMatrices {
    pub alpha: [Matrix4; 3],
    pub beta: Matrix4,
}

impl DiracMatrices {
    pub fn standard() -> Self {
        let z = c(0.0);
        let o = c(1.0);
        // α_i = [[0, σ_i], [σ_i, 0]]
        let a1 = Matrix4([[z, z, z, o], [z, z, o, z], [z, o, z, z], [o, z, z, z]]);
        let a2 = Matrix4([[z, z, z, -I], [z, z, I, z], [z, -I, z, z], [I, z, z, z]]);
        let a3 = Matrix4([[z, z, o, z], [z, z, z, -o], [o, z, z, z], [z, -o, z, z]]);
        DiracMatrices {
            alpha: [a1, a2, a3],
            beta: Matrix4::diagonal([1.0, 1.0, -1.0, -1.0]),
        }
    }

    /// Rest-frame spin matrix `−½ i α₁α₂ = ½ Σ₃`.
    pub fn spin3(&self) -> Matrix4 {
        (self.alpha[0] * self.alpha[1]).scale(Complex64::new(0.0, -0.5))
    }
}

/// `E(p) = √(|p|² + 1)`.
#[inline]
pub fn energy(p: Momentum) -> f64 {
    (p.norm_sqr() + 1.0).sqrt()
}

/// `𝓔(p) = √(2E(E + 1))`, the eigenspinor normalization.
#[inline]
pub fn spinor_normalization(p: Momentum) -> f64 {
    let e = energy(p);
    (2.0 * e * (e + 1.0)).sqrt()
}

/// Free Dirac Hamiltonian in momentum space, `H(p) = α·p + β`.
pub fn hamiltonian_matrix(p: Momentum) -> Matrix4 {
    let d = DiracMatrices::standard();
    d.alpha[0].scale_real(p.x) + d.alpha[1].scale_real(p.y) + d.alpha[2].scale_real(p.z) + d.beta
}

/// Positive-energy projector `P⁺(p) = (E + H)/2E`.
pub fn positive_projector(p: Momentum) -> Matrix4 {
    let e = energy(p);
    (Matrix4::identity().scale_real(e) + hamiltonian_matrix(p)).scale_real(0.5 / e)
}

/// `U(p) = (E I₄ + Hβ)/𝓔`, the unitary taking β-eigenvectors to
/// H-eigenvectors.
pub fn pryce_u_matrix(p: Momentum) -> Matrix4 {
    let d = DiracMatrices::standard();
    let e = energy(p);
    (Matrix4::identity().scale_real(e) + hamiltonian_matrix(p) * d.beta).scale_real(1.0 / spinor_normalization(p))
}

/// Third component of the Pryce spin operator, `S̃₃ = U(−½iα₁α₂)U†`.
pub fn pryce_spin3(p: Momentum) -> Matrix4 {
    let u = pryce_u_matrix(p);
    u * DiracMatrices::standard().spin3() * u.adjoint()
}

/// Positive-energy eigenspinor of `S̃₃(p)` with the given spin, normalized
/// to `u†u = 1`.
///
/// Spin up is `(E+1, 0, p₃, p₁+ip₂)/𝓔`; spin down is `U(p)e₂ =
/// (0, E+1, p₁−ip₂, −p₃)/𝓔`.
pub fn spin_eigenspinor(p: Momentum, s: SpinLabel) -> Spinor4 {
    let e = energy(p);
    let inv = 1.0 / (2.0 * e * (e + 1.0)).sqrt();
    let raw = match s {
        SpinLabel::Up => [c(e + 1.0), c(0.0), c(p.z), Complex64::new(p.x, p.y)],
        SpinLabel::Down => [c(0.0), c(e + 1.0), Complex64::new(p.x, -p.y), c(-p.z)],
    };
    Spinor4(raw.map(|x| x * inv))
}

/// Analytic momentum gradient `∂u/∂p_k`, `k = 1, 2, 3`.
pub fn spin_eigenspinor_gradient(p: Momentum, s: SpinLabel) -> [Spinor4; 3] {
    let e = energy(p);
    let cal = (2.0 * e * (e + 1.0)).sqrt();
    let inv = 1.0 / cal;
    let raw = spin_eigenspinor(p, s).scale_real(cal);
    core::array::from_fn(|k| {
        let pk = p[k];
        let d_inv = -(2.0 * e + 1.0) * pk / (e * cal * cal * cal);
        let dn = match s {
            SpinLabel::Up => [
                c(pk / e),
                c(0.0),
                c(if k == 2 { 1.0 } else { 0.0 }),
                match k {
                    0 => c(1.0),
                    1 => I,
                    _ => c(0.0),
                },
            ],
            SpinLabel::Down => [
                c(0.0),
                c(pk / e),
                match k {
                    0 => c(1.0),
                    1 => -I,
                    _ => c(0.0),
                },
                c(if k == 2 { -1.0 } else { 0.0 }),
            ],
        };
        Spinor4(core::array::from_fn(|a| dn[a] * inv + raw.0[a] * d_inv))
    })
}

/// Result of checking the first-order bounds on the components of `u†`.
#[derive(Clone, Debug, PartialEq)]
pub struct DerivativeBoundReport {
    pub samples: usize,
    /// `max |u†_a|` (bound 1).
    pub max_component: f64,
    /// `max |∂_k u†_a|` (bound `2/m`).
    pub max_derivative: f64,
    /// `max |s|·|∂_k u†_a|` (bound 2).
    pub max_scaled_derivative: f64,
    /// Samples where at least one bound fails beyond the slack.
    pub violations: Vec<Momentum>,
}

impl DerivativeBoundReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Finite-difference step for [`spinor_derivative_bounds`].
pub const BOUND_FD_STEP: f64 = 1e-5;

/// Checks `|u†_a| ≤ 1`, `|∂_k u†_a| < 2` and `|∂_k u†_a| < 2/|s|` for the
/// spin-up eigenspinor at every sample, using central differences.
pub fn spinor_derivative_bounds(samples: &[Momentum], slack: f64) -> Result<DerivativeBoundReport> {
    if samples.is_empty() {
        return Err(Error::EmptySampleSet);
    }
    let mut report = DerivativeBoundReport {
        samples: samples.len(),
        max_component: 0.0,
        max_derivative: 0.0,
        max_scaled_derivative: 0.0,
        violations: Vec::new(),
    };
    let h = BOUND_FD_STEP;
    for &s in samples {
        let norm = s.norm();
        if norm == 0.0 {
            return Err(Error::ZeroMomentumSample(s));
        }
        let u = spin_eigenspinor(s, SpinLabel::Up);
        let comp = u.0.iter().map(|x| x.norm()).fold(0.0, f64::max);
        let mut deriv: f64 = 0.0;
        for k in 0..3 {
            let mut step = Vec3::ZERO;
            match k {
                0 => step.x = h,
                1 => step.y = h,
                _ => step.z = h,
            }
            let plus = spin_eigenspinor(s + step, SpinLabel::Up);
            let minus = spin_eigenspinor(s - step, SpinLabel::Up);
            for a in 0..4 {
                // |∂ u†_a| = |∂ u_a|
                deriv = deriv.max(((plus.0[a] - minus.0[a]) / (2.0 * h)).norm());
            }
        }
        let ok = comp <= 1.0 + slack && deriv < 2.0 + slack && deriv < 2.0 / norm + slack;
        report.max_component = report.max_component.max(comp);
        report.max_derivative = report.max_derivative.max(deriv);
        report.max_scaled_derivative = report.max_scaled_derivative.max(deriv * norm);
        if !ok {
            report.violations.push(s);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn close(a: Complex64, re: f64, im: f64) -> bool {
        (a - Complex64::new(re, im)).norm() < 1e-14
    }

    #[test]
    fn energy_examples() {
        assert_eq!(energy(Vec3::ZERO), 1.0);
        assert_abs_diff_eq!(energy(Vec3::new(0.0, 0.0, 1.0)), 2f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(energy(Vec3::new(3.0, 0.0, 4.0)), 26f64.sqrt(), epsilon = 1e-14);
    }

    #[test]
    fn dirac_algebra_is_exact() {
        let d = DiracMatrices::standard();
        for i in 0..3 {
            for j in 0..3 {
                let expected = if i == j {
                    Matrix4::identity().scale_real(2.0)
                } else {
                    Matrix4::ZERO
                };
                assert_eq!((d.alpha[i].anticommutator(&d.alpha[j]) - expected).max_abs(), 0.0);
            }
            assert_eq!(d.alpha[i].anticommutator(&d.beta).max_abs(), 0.0);
            assert!(d.alpha[i].is_hermitian(0.0));
        }
        assert_eq!((d.beta * d.beta - Matrix4::identity()).max_abs(), 0.0);
        assert_eq!((d.spin3() - Matrix4::diagonal([0.5, -0.5, 0.5, -0.5])).max_abs(), 0.0);
    }

    #[test]
    fn hamiltonian_at_rest_is_beta() {
        assert_eq!(hamiltonian_matrix(Vec3::ZERO), DiracMatrices::standard().beta);
    }

    #[test]
    fn projector_at_rest() {
        assert_eq!(positive_projector(Vec3::ZERO), Matrix4::diagonal([1.0, 1.0, 0.0, 0.0]));
    }

    #[test]
    fn pryce_u_at_rest_is_identity() {
        assert!((pryce_u_matrix(Vec3::ZERO) - Matrix4::identity()).max_abs() < 1e-15);
    }

    #[test]
    fn pryce_u_first_column_along_z() {
        let p = Vec3::new(0.0, 0.0, 1.0);
        let r2 = 2f64.sqrt();
        let cal = (2.0 * r2 * (r2 + 1.0)).sqrt();
        let col = pryce_u_matrix(p).column(0);
        assert!(close(col[0], (r2 + 1.0) / cal, 0.0));
        assert!(close(col[1], 0.0, 0.0));
        assert!(close(col[2], 1.0 / cal, 0.0));
        assert!(close(col[3], 0.0, 0.0));
        // norm check (√2+1)² + 1 = 𝓔²
        assert_abs_diff_eq!((r2 + 1.0).powi(2) + 1.0, cal * cal, epsilon = 1e-13);
        let u = spin_eigenspinor(p, SpinLabel::Up);
        assert!(u.distance(&col) < 1e-15);
    }

    #[test]
    fn eigenspinor_at_rest() {
        assert_eq!(spin_eigenspinor(Vec3::ZERO, SpinLabel::Up), Spinor4::basis(0));
        assert_eq!(spin_eigenspinor(Vec3::ZERO, SpinLabel::Down), Spinor4::basis(1));
    }

    #[test]
    fn spin_down_orthonormal_example() {
        let p = Vec3::new(1.0, 2.0, 0.5);
        let up = spin_eigenspinor(p, SpinLabel::Up);
        let down = spin_eigenspinor(p, SpinLabel::Down);
        assert_abs_diff_eq!(down.norm_sqr(), 1.0, epsilon = 1e-14);
        assert!(up.inner(&down).norm() < 1e-15);
        // U(p)e₂ route
        let via_u = pryce_u_matrix(p).column(1);
        assert!(via_u.distance(&down) < 1e-14);
    }

    #[test]
    fn hamiltonian_eigen_along_z() {
        let p = Vec3::new(0.0, 0.0, 1.0);
        let u = spin_eigenspinor(p, SpinLabel::Up);
        let hu = hamiltonian_matrix(p) * u;
        assert!(hu.distance(&u.scale_real(2f64.sqrt())) < 1e-14);
    }

    #[test]
    fn projector_fixes_spinor() {
        let p = Vec3::new(1.0, 1.0, 1.0);
        for s in [SpinLabel::Up, SpinLabel::Down] {
            let u = spin_eigenspinor(p, s);
            assert!((positive_projector(p) * u).distance(&u) < 1e-14);
        }
        let proj = positive_projector(p);
        assert_abs_diff_eq!(proj.trace().re, 2.0, epsilon = 1e-14);
    }

    #[test]
    fn analytic_gradient_matches_central_differences() {
        let h = 1e-6;
        for p in [
            Vec3::new(0.3, -1.2, 0.7),
            Vec3::new(5.0, 2.0, -3.0),
            Vec3::new(0.0, 0.0, 0.0),
        ] {
            for s in [SpinLabel::Up, SpinLabel::Down] {
                let g = spin_eigenspinor_gradient(p, s);
                for (k, gk) in g.iter().enumerate() {
                    let mut step = Vec3::ZERO;
                    match k {
                        0 => step.x = h,
                        1 => step.y = h,
                        _ => step.z = h,
                    }
                    let fd = (spin_eigenspinor(p + step, s) - spin_eigenspinor(p - step, s)).scale_real(0.5 / h);
                    assert!(fd.distance(gk) < 1e-8, "p={p:?} k={k}");
                }
            }
        }
    }

    #[test]
    fn derivative_bound_along_axis() {
        let p = Vec3::new(0.0, 0.0, 10.0);
        let report = spinor_derivative_bounds(&[p], 1e-3).unwrap();
        assert!(report.passed());
        assert!(report.max_derivative < 2.0 / 10.0 + 1e-3);
    }

    #[test]
    fn derivative_bounds_reject_bad_input() {
        assert_eq!(spinor_derivative_bounds(&[], 1e-3), Err(Error::EmptySampleSet));
        assert!(matches!(
            spinor_derivative_bounds(&[Vec3::ZERO], 1e-3),
            Err(Error::ZeroMomentumSample(_))
        ));
    }

    #[test]
    fn spin_label_parsing() {
        assert_eq!(SpinLabel::parse("+1/2"), Some(SpinLabel::Up));
        assert_eq!(SpinLabel::parse("-0.5"), Some(SpinLabel::Down));
        assert_eq!(SpinLabel::parse("sideways"), None);
        assert_eq!(SpinLabel::Up.flipped().value(), -0.5);
    }
}
