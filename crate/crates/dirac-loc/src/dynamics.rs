//! Free evolution on grids: relativistic reports with causality diagnostics
//! and the spectral Schrödinger oracle for the nonrelativistic packets.

use dirac_loc_core::nr::{nr_gaussian_state, NRPacketParams};
use dirac_loc_core::{Complex64, MomentumState, Vec3};
use rayon::prelude::*;
use rustfft::FftDirection;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{fft3, position_state_cartesian, CartesianGrid, PositionState};

/// Per-time diagnostics of a freely evolving state.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EvolutionReport {
    pub grid: CartesianGrid,
    pub n: u32,
    pub r0: f64,
    pub times: Vec<f64>,
    pub norms: Vec<f64>,
    pub mean_x: Vec<[f64; 3]>,
    pub delta_x: Vec<f64>,
    pub mean_velocity: Vec<[f64; 3]>,
    /// `max(|j| − ρ)` over the grid.
    pub causality_margin: Vec<f64>,
    /// Probability outside `r0 + t` at `t` minus that outside `r0` at 0.
    pub leakage: Vec<f64>,
}

impl EvolutionReport {
    pub fn max_margin(&self) -> f64 {
        self.causality_margin.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn max_leakage(&self) -> f64 {
        self.leakage.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

/// `P(|x − c| > r0 + t | ρt) − P(|x − c| > r0 | ρ0)`.
pub fn lightcone_leakage(
    grid: &CartesianGrid,
    rho0: &[f64],
    rho_t: &[f64],
    center: Vec3,
    r0: f64,
    t: f64,
) -> Result<f64> {
    if rho0.len() != grid.len() || rho_t.len() != grid.len() {
        return Err(Error::Core(dirac_loc_core::Error::ShapeMismatch));
    }
    if !(t >= 0.0) {
        return Err(Error::Core(dirac_loc_core::Error::NonPositiveTime(t)));
    }
    let mut out0 = 0.0;
    let mut out_t = 0.0;
    for idx in 0..grid.len() {
        let r = (grid.position(idx) - center).norm();
        if r > r0 {
            out0 += rho0[idx];
        }
        if r > r0 + t {
            out_t += rho_t[idx];
        }
    }
    Ok((out_t - out0) * grid.cell_volume())
}

/// Evolves `state` to each of `times` (exact phase in momentum space),
/// transforms to `grid` and records moments, causality margins and
/// light-cone leakage about the label's point.
pub fn evolve_report(state: &MomentumState, grid: &CartesianGrid, times: &[f64], r0: f64) -> Result<EvolutionReport> {
    let center = state.label().a;
    let rho0 = position_state_cartesian(state, grid)?.density();
    let mut report = EvolutionReport {
        grid: *grid,
        n: state.n(),
        r0,
        times: times.to_vec(),
        norms: vec![],
        mean_x: vec![],
        delta_x: vec![],
        mean_velocity: vec![],
        causality_margin: vec![],
        leakage: vec![],
    };
    for &t in times {
        let psi = evolved_position_state(state, grid, t)?;
        let field = psi.four_vector();
        let m = crate::grid::grid_moments(grid, &field.rho, Some(&field.j));
        report.norms.push(m.norm);
        report.mean_x.push(m.mean_x.to_array());
        report.delta_x.push(m.delta_x);
        report.mean_velocity.push(m.mean_velocity.to_array());
        report.causality_margin.push(field.causality_margin());
        report
            .leakage
            .push(lightcone_leakage(grid, &rho0, &field.rho, center, r0, t)?);
    }
    Ok(report)
}

pub fn evolved_position_state(state: &MomentumState, grid: &CartesianGrid, t: f64) -> Result<PositionState> {
    position_state_cartesian(&state.evolved(t), grid)
}

/// `χₙ(q)` at `t = 0` on the grid.
pub fn sample_nr_state(params: &NRPacketParams, grid: &CartesianGrid) -> Vec<Complex64> {
    (0..grid.len())
        .into_par_iter()
        .map(|idx| nr_gaussian_state(params, grid.position(idx)))
        .collect()
}

/// Free Schrödinger evolution of grid samples by the exact spectral
/// propagator `e^{−ip²t/2}`.
pub fn nr_spectral_evolve(chi: &[Complex64], grid: &CartesianGrid, t: f64) -> Vec<Complex64> {
    let n = grid.points;
    let mut data = chi.to_vec();
    fft3(&mut data, n, FftDirection::Forward);
    let norm = 1.0 / grid.len() as f64;
    data.par_iter_mut().enumerate().for_each(|(idx, c)| {
        let p2 = grid.momentum(idx).norm_sqr();
        *c *= Complex64::from_polar(norm, -0.5 * p2 * t);
    });
    fft3(&mut data, n, FftDirection::Inverse);
    data
}
