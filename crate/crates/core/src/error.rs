use crate::vec3::Vec3;

/// Errors raised by the numerical kernels.
#[derive(thiserror::Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("profile width must be positive and finite, got {0}")]
    NonPositiveWidth(f64),
    #[error("target velocity magnitude {speed} is outside the supported range [0, {limit}]")]
    VelocityOutOfRange { speed: f64, limit: f64 },
    #[error("root finder did not converge after {iterations} iterations (residual {residual:e})")]
    RootNotConverged { iterations: usize, residual: f64 },
    #[error("invalid localization label: {0}")]
    InvalidLabel(&'static str),
    #[error("label velocity {label:?} does not match the profile mean direction {profile:?}")]
    LabelProfileMismatch { label: Vec3, profile: Vec3 },
    #[error("operation requires a spherically symmetric profile centred at the origin")]
    AsymmetricProfile,
    #[error("radius must be nonnegative and finite, got {0}")]
    InvalidRadius(f64),
    #[error("radial grid must be nonempty, nonnegative and strictly increasing")]
    InvalidRadialGrid,
    #[error("quadrature did not converge: node doubling changed the result by {change:e} (tolerance {tolerance:e})")]
    QuadratureNotConverged { change: f64, tolerance: f64 },
    #[error("matrix is not a proper rotation (deviation {0:e})")]
    InvalidRotation(f64),
    #[error("time must be positive, got {0}")]
    NonPositiveTime(f64),
    #[error("field arrays have inconsistent sizes")]
    ShapeMismatch,
    #[error("sample set is empty")]
    EmptySampleSet,
    #[error("sample {0:?} is the zero momentum, where the 1/|s| derivative bound is undefined")]
    ZeroMomentumSample(Vec3),
}

pub type Result<T> = core::result::Result<T, Error>;
