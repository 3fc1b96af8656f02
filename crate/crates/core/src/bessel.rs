//! Spherical Bessel functions `j₀` and `j₁`.

use num_traits::Float;

/// Below this argument the closed forms lose digits to cancellation and the
/// Taylor series is used instead.
const SERIES_CUTOFF: f64 = 1e-2;

/// `j₀(x) = sin x / x`.
pub fn j0(x: f64) -> f64 {
    let ax = x.abs();
    if ax < SERIES_CUTOFF {
        let x2 = x * x;
        1.0 - x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0))
    } else {
        x.sin() / x
    }
}

/// `j₁(x) = sin x / x² − cos x / x`.
pub fn j1(x: f64) -> f64 {
    let ax = x.abs();
    if ax < SERIES_CUTOFF {
        let x2 = x * x;
        x / 3.0 * (1.0 - x2 / 10.0 * (1.0 - x2 / 28.0 * (1.0 - x2 / 54.0)))
    } else {
        let (s, c) = x.sin_cos();
        (s / x - c) / x
    }
}
