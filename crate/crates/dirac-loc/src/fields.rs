//! Symmetry and boost checks on densities sampled on a grid.

use dirac_loc_core::symmetry::{self, summarize_boosted_field, BoostParams, BoostedFieldSummary, Rotation};
use dirac_loc_core::{LocalizationLabel, MomentumState, Vec3};

use crate::error::Result;
use crate::grid::{position_state_cartesian, CartesianGrid};

/// Densities of two states on one grid.
fn densities(a: &MomentumState, b: &MomentumState, grid: &CartesianGrid) -> Result<(Vec<f64>, Vec<f64>)> {
    Ok((
        position_state_cartesian(a, grid)?.density(),
        position_state_cartesian(b, grid)?.density(),
    ))
}

fn with_label(state: &MomentumState, label: LocalizationLabel) -> Result<MomentumState> {
    let profile = if label.v == state.label().v {
        *state.profile()
    } else if label.v == Vec3::ZERO {
        dirac_loc_core::MomentumProfile::gaussian(state.profile().width())?
    } else {
        dirac_loc_core::MomentumProfile::boosted_gaussian(label.v, state.profile().width())?
    };
    Ok(MomentumState::new(label, profile)?.evolved(state.time()))
}

/// `max |a[map(i)] − b[i]| / max b`.
fn mapped_residual(a: &[f64], b: &[f64], map: impl Fn(usize) -> usize) -> f64 {
    let scale = b.iter().copied().fold(0.0, f64::max);
    let worst = (0..b.len()).map(|i| (a[map(i)] - b[i]).abs()).fold(0.0, f64::max);
    worst / scale
}

/// Relative residual of `ρ_P(x) = ρ(−x)` for the parity-image label.
pub fn parity_residual(state: &MomentumState, grid: &CartesianGrid) -> Result<f64> {
    let image = with_label(state, symmetry::parity(state.label()))?;
    let (rho, rho_p) = densities(state, &image, grid)?;
    Ok(mapped_residual(&rho_p, &rho, |i| grid.reflected_index(i)))
}

/// Relative residual of `ρ_R(Rx) = ρ(x)` for a quarter turn about `z`.
pub fn rotation_residual(state: &MomentumState, grid: &CartesianGrid) -> Result<f64> {
    let r = Rotation::about_z(core::f64::consts::FRAC_PI_2);
    let image = with_label(state, symmetry::rotate(state.label(), &r))?;
    let (rho, rho_r) = densities(state, &image, grid)?;
    let n = grid.points;
    // (x, y) -> (−y, x)
    Ok(mapped_residual(&rho_r, &rho, |idx| {
        let [i, j, k] = grid.unflatten(idx);
        grid.index((n - j) % n, i, k)
    }))
}

/// Relative residual of `ρ_b(x + b) = ρ(x)` for a translation by whole
/// grid cells along each axis.
pub fn translation_residual(state: &MomentumState, grid: &CartesianGrid, cells: [usize; 3]) -> Result<f64> {
    let h = grid.spacing();
    let b = Vec3::new(cells[0] as f64 * h, cells[1] as f64 * h, cells[2] as f64 * h);
    let image = with_label(state, symmetry::translate(state.label(), b))?;
    let (rho, rho_b) = densities(state, &image, grid)?;
    let n = grid.points;
    Ok(mapped_residual(&rho_b, &rho, |idx| {
        let [i, j, k] = grid.unflatten(idx);
        grid.index((i + cells[0]) % n, (j + cells[1]) % n, (k + cells[2]) % n)
    }))
}

/// Relative residual of `ρ_T(x, t) = ρ(x, −t)` for the time-reversed label.
pub fn time_reversal_residual(state: &MomentumState, grid: &CartesianGrid, t: f64) -> Result<f64> {
    let label = symmetry::time_reverse(state.label());
    time_reversal_residual_for(state, grid, t, label)
}

/// As [`time_reversal_residual`], but with the spin label left unchanged.
pub fn time_reversal_residual_spin_kept(state: &MomentumState, grid: &CartesianGrid, t: f64) -> Result<f64> {
    let label = symmetry::time_reverse(state.label());
    time_reversal_residual_for(state, grid, t, label.with_spin(state.label().spin))
}

fn time_reversal_residual_for(
    state: &MomentumState,
    grid: &CartesianGrid,
    t: f64,
    label: LocalizationLabel,
) -> Result<f64> {
    let image = with_label(state, label)?.evolved(t);
    let (rho_back, rho_t) = densities(&state.evolved(-t), &image, grid)?;
    Ok(mapped_residual(&rho_t, &rho_back, |i| i))
}

/// Boosts the sampled `(ρ, j)` of `state` along `z` and integrates it on
/// the image of the `t = 0` hyperplane.
pub fn boosted_field_summary(
    state: &MomentumState,
    grid: &CartesianGrid,
    rapidity: f64,
) -> Result<BoostedFieldSummary> {
    let field = position_state_cartesian(state, grid)?.four_vector();
    let boost = BoostParams::new(rapidity)?;
    Ok(summarize_boosted_field(
        &grid.positions(),
        &field.rho,
        &field.j,
        grid.cell_volume(),
        &boost,
    )?)
}
