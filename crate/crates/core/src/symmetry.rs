//! Space-time transformations of localization labels and of the point-like
//! limiting densities, with boosts along the 3-axis.

use num_traits::Float;

use crate::error::{Error, Result};
use crate::state::LocalizationLabel;
use crate::vec3::Vec3;

/// `(a, v) → (a + b, v)`.
pub fn translate(label: &LocalizationLabel, b: Vec3) -> LocalizationLabel {
    LocalizationLabel {
        a: label.a + b,
        ..*label
    }
}

/// `(a, v) → (Ra, Rv)`. The spin label is carried through unchanged.
pub fn rotate(label: &LocalizationLabel, r: &Rotation) -> LocalizationLabel {
    LocalizationLabel {
        a: r.apply(label.a),
        v: r.apply(label.v),
        ..*label
    }
}

/// `(a, v) → (−a, −v)`, spin unchanged.
pub fn parity(label: &LocalizationLabel) -> LocalizationLabel {
    LocalizationLabel {
        a: -label.a,
        v: -label.v,
        ..*label
    }
}

/// `(a, v, s) → (a, −v, −s)`. Time reversal is antiunitary and flips the
/// Pryce spin; keeping `s` gives a state whose density differs from the
/// reversed one at the percent level when `v` has transverse components.
pub fn time_reverse(label: &LocalizationLabel) -> LocalizationLabel {
    LocalizationLabel {
        v: -label.v,
        spin: label.spin.flipped(),
        ..*label
    }
}

/// Largest allowed deviation of `RᵀR` from the identity and of `det R`
/// from one.
pub const ROTATION_TOLERANCE: f64 = 1e-12;

/// A proper rotation matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rotation {
    m: [[f64; 3]; 3],
}

impl Rotation {
    pub fn new(m: [[f64; 3]; 3]) -> Result<Self> {
        let mut dev: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                let dot: f64 = (0..3).map(|k| m[k][i] * m[k][j]).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                dev = dev.max((dot - target).abs());
            }
        }
        let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        dev = dev.max((det - 1.0).abs());
        if !(dev <= ROTATION_TOLERANCE) {
            return Err(Error::InvalidRotation(dev));
        }
        Ok(Rotation { m })
    }

    pub fn identity() -> Self {
        Rotation {
            m: [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
        }
    }

    /// Counter-clockwise by `angle` about the 3-axis.
    pub fn about_z(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Rotation {
            m: [[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]],
        }
    }

    /// Counter-clockwise by `angle` about the 1-axis.
    pub fn about_x(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Rotation {
            m: [[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]],
        }
    }

    pub fn matrix(&self) -> [[f64; 3]; 3] {
        self.m
    }

    pub fn apply(&self, v: Vec3) -> Vec3 {
        let m = &self.m;
        Vec3::new(
            m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z,
        )
    }

    pub fn inverse(&self) -> Rotation {
        let m = &self.m;
        Rotation {
            m: core::array::from_fn(|i| core::array::from_fn(|j| m[j][i])),
        }
    }
}

/// A boost along the 3-axis with rapidity `σ`:
/// `x₃′ = x₃ cosh σ + t sinh σ`, `t′ = t cosh σ + x₃ sinh σ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoostParams {
    rapidity: f64,
}

impl BoostParams {
    pub fn new(rapidity: f64) -> Result<Self> {
        if rapidity.is_finite() {
            Ok(BoostParams { rapidity })
        } else {
            Err(Error::InvalidLabel("boost rapidity must be finite"))
        }
    }

    /// The boost taking a particle at rest to speed `speed` along `+x₃`.
    pub fn from_velocity(speed: f64) -> Result<Self> {
        if !(speed.abs() < 1.0) {
            return Err(Error::VelocityOutOfRange { speed, limit: 1.0 });
        }
        BoostParams::new(speed.atanh())
    }

    pub fn rapidity(&self) -> f64 {
        self.rapidity
    }

    /// `(t′, x′)`.
    pub fn apply_event(&self, t: f64, x: Vec3) -> (f64, Vec3) {
        let (ch, sh) = (self.rapidity.cosh(), self.rapidity.sinh());
        (t * ch + x.z * sh, Vec3::new(x.x, x.y, x.z * ch + t * sh))
    }

    /// Relativistic velocity transformation.
    pub fn apply_velocity(&self, v: Vec3) -> Vec3 {
        let (ch, sh) = (self.rapidity.cosh(), self.rapidity.sinh());
        let g = ch + v.z * sh;
        Vec3::new(v.x / g, v.y / g, (v.z * ch + sh) / g)
    }

    /// `(ρ, j) → (ρ cosh σ + j₃ sinh σ, j₁, j₂, ρ sinh σ + j₃ cosh σ)`.
    pub fn apply_four_vector(&self, rho: f64, j: Vec3) -> (f64, Vec3) {
        let (ch, sh) = (self.rapidity.cosh(), self.rapidity.sinh());
        (rho * ch + j.z * sh, Vec3::new(j.x, j.y, rho * sh + j.z * ch))
    }
}

/// The point-particle limit of a localizing sequence: where it sits on a
/// spacelike hyperplane `t = x₃ tanh η`, how fast it moves, and the
/// coefficient of `δ³` in its density on that hyperplane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PointDensityLimit {
    /// Total charge (probability) `e`.
    pub charge: f64,
    /// Time coordinate of the particle's crossing of the hyperplane.
    pub time: f64,
    /// Spatial position of the crossing.
    pub point: Vec3,
    pub velocity: Vec3,
    /// Rapidity `η` of the hyperplane `t = x₃ tanh η`.
    pub hyperplane_rapidity: f64,
}

impl PointDensityLimit {
    /// The limit of an `(a, v)`-localizing sequence at `t = 0`.
    pub fn at_time_zero(a: Vec3, v: Vec3) -> Result<Self> {
        if !(v.norm() < 1.0) {
            return Err(Error::InvalidLabel("|v| must be below the speed of light"));
        }
        Ok(PointDensityLimit {
            charge: 1.0,
            time: 0.0,
            point: a,
            velocity: v,
            hyperplane_rapidity: 0.0,
        })
    }

    pub fn from_label(label: &LocalizationLabel) -> Result<Self> {
        PointDensityLimit::at_time_zero(label.a, label.v)
    }

    /// Coefficient of `δ³(x − point)` in `ρ` on the hyperplane,
    /// `e·cosh η/(cosh η − v₃ sinh η)`.
    pub fn weight(&self) -> f64 {
        let (ch, sh) = (self.hyperplane_rapidity.cosh(), self.hyperplane_rapidity.sinh());
        self.charge * ch / (ch - self.velocity.z * sh)
    }

    /// `(ρ, j)` coefficients, `weight·(1, v)`.
    pub fn four_current(&self) -> (f64, Vec3) {
        let w = self.weight();
        (w, self.velocity * w)
    }

    /// Residual of `t = x₃ tanh η` at the stored crossing.
    pub fn hyperplane_residual(&self) -> f64 {
        self.time - self.point.z * self.hyperplane_rapidity.tanh()
    }
}

/// Applies `boost` to the crossing event and the velocity; the hyperplane
/// rapidity adds.
pub fn boost_label(limit: &PointDensityLimit, boost: &BoostParams) -> PointDensityLimit {
    let (time, point) = boost.apply_event(limit.time, limit.point);
    PointDensityLimit {
        charge: limit.charge,
        time,
        point,
        velocity: boost.apply_velocity(limit.velocity),
        hyperplane_rapidity: limit.hyperplane_rapidity + boost.rapidity(),
    }
}

/// Integrals of a boosted four-current field sampled at `t = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoostedFieldSummary {
    /// `∫ρ d³x` before the boost.
    pub weight: f64,
    /// `∫ρ′ d³x / ∫ρ d³x`, measured against the original coordinates.
    pub weight_ratio: f64,
    /// `∫ρ′ d³x′` with `x′ = (x₁, x₂, x₃ cosh σ)`.
    pub hyperplane_weight: f64,
    /// `∫x′ρ′ / ∫ρ′`.
    pub first_moment: Vec3,
}

/// Transforms sampled `(ρ, j)` pointwise and maps every `t = 0` sample to
/// `x′ = (x₁, x₂, x₃ cosh σ)` on the boosted hyperplane.
pub fn summarize_boosted_field(
    positions: &[Vec3],
    rho: &[f64],
    j: &[Vec3],
    cell_volume: f64,
    boost: &BoostParams,
) -> Result<BoostedFieldSummary> {
    if positions.len() != rho.len() || rho.len() != j.len() {
        return Err(Error::ShapeMismatch);
    }
    let ch = boost.rapidity().cosh();
    let mut w0 = 0.0;
    let mut w1 = 0.0;
    let mut m1 = Vec3::ZERO;
    for ((x, r), jj) in positions.iter().zip(rho).zip(j) {
        let (rp, _) = boost.apply_four_vector(*r, *jj);
        w0 += r;
        w1 += rp;
        m1 += Vec3::new(x.x, x.y, x.z * ch) * rp;
    }
    Ok(BoostedFieldSummary {
        weight: w0 * cell_volume,
        weight_ratio: w1 / w0,
        hyperplane_weight: w1 * cell_volume * ch,
        first_moment: m1 / w1,
    })
}
