//! Periodic Cartesian grids, 3-D FFTs and position-space spinor fields.

use std::f64::consts::PI;

use dirac_loc_core::observables::{spinor_current, spinor_density, FourVectorDensity, MomentSet};
use dirac_loc_core::{Complex64, LocalizationLabel, MomentumState, Spinor4, Vec3};
use rayon::prelude::*;
use rustfft::{Fft, FftDirection, FftPlanner};

use crate::error::{Error, Result};

/// Nyquist coverage demanded of a grid, in scaled profile widths beyond the
/// scaled centre: `πN/L ≥ n(|k| + 3.5σ)`.
pub const NYQUIST_WIDTHS: f64 = 3.5;

/// `N` points per axis on the periodic box `[−L/2, L/2)³`.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct CartesianGrid {
    pub points: usize,
    pub length: f64,
}

impl CartesianGrid {
    pub fn new(points: usize, length: f64) -> Result<Self> {
        if points < 8 || !points.is_power_of_two() {
            return Err(Error::InvalidGrid(format!(
                "points per axis must be a power of two >= 8, got {points}"
            )));
        }
        if !(length > 0.0) || !length.is_finite() {
            return Err(Error::InvalidGrid(format!("box length must be positive, got {length}")));
        }
        Ok(CartesianGrid { points, length })
    }

    /// The smallest of `64/16`, `128/16` that covers `state`; otherwise
    /// `N = 128` with `L` shrunk to the largest multiple of 0.5 that does.
    pub fn auto_for(state: &MomentumState) -> Result<Self> {
        let need = required_nyquist(state);
        for points in [64, 128] {
            let g = CartesianGrid::new(points, 16.0)?;
            if g.nyquist() >= need {
                return Ok(g);
            }
        }
        let length = (PI * 128.0 / need * 2.0).floor() / 2.0;
        CartesianGrid::new(128, length)
    }

    pub fn spacing(&self) -> f64 {
        self.length / self.points as f64
    }

    pub fn cell_volume(&self) -> f64 {
        self.spacing().powi(3)
    }

    /// `πN/L`.
    pub fn nyquist(&self) -> f64 {
        PI * self.points as f64 / self.length
    }

    pub fn len(&self) -> usize {
        self.points.pow(3)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn index(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.points + j) * self.points + k
    }

    #[inline]
    pub fn unflatten(&self, idx: usize) -> [usize; 3] {
        let n = self.points;
        [idx / (n * n), (idx / n) % n, idx % n]
    }

    /// `−L/2 + i·h`.
    #[inline]
    pub fn coordinate(&self, i: usize) -> f64 {
        -0.5 * self.length + i as f64 * self.spacing()
    }

    #[inline]
    pub fn position(&self, idx: usize) -> Vec3 {
        let [i, j, k] = self.unflatten(idx);
        Vec3::new(self.coordinate(i), self.coordinate(j), self.coordinate(k))
    }

    /// Signed FFT frequency index of slot `i`.
    #[inline]
    pub fn frequency(&self, i: usize) -> i64 {
        let n = self.points as i64;
        let i = i as i64;
        if i < n / 2 {
            i
        } else {
            i - n
        }
    }

    #[inline]
    pub fn wavenumber(&self, i: usize) -> f64 {
        2.0 * PI * self.frequency(i) as f64 / self.length
    }

    #[inline]
    pub fn momentum(&self, idx: usize) -> Vec3 {
        let [i, j, k] = self.unflatten(idx);
        Vec3::new(self.wavenumber(i), self.wavenumber(j), self.wavenumber(k))
    }

    pub fn positions(&self) -> Vec<Vec3> {
        (0..self.len()).map(|idx| self.position(idx)).collect()
    }

    /// Index of `−x` on the periodic grid.
    pub fn reflected_index(&self, idx: usize) -> usize {
        let n = self.points;
        let [i, j, k] = self.unflatten(idx);
        self.index((n - i) % n, (n - j) % n, (n - k) % n)
    }

    pub fn check_covers(&self, state: &MomentumState) -> Result<()> {
        let required = required_nyquist(state);
        if self.nyquist() < required {
            return Err(Error::NyquistViolation {
                nyquist: self.nyquist(),
                required,
            });
        }
        Ok(())
    }
}

/// `n(|k| + 3.5σ)`.
pub fn required_nyquist(state: &MomentumState) -> f64 {
    let f = state.profile();
    state.n() as f64 * (f.center().norm() + NYQUIST_WIDTHS * f.width())
}

/// In-place 3-D FFT on a row-major `N³` array. Unnormalized in both
/// directions.
pub fn fft3(data: &mut [Complex64], n: usize, direction: FftDirection) {
    assert_eq!(data.len(), n * n * n);
    let fft: std::sync::Arc<dyn Fft<f64>> = FftPlanner::new().plan_fft(n, direction);
    // contiguous axis
    data.par_chunks_mut(n).for_each(|line| fft.process(line));
    // middle axis, one slab at a time
    data.par_chunks_mut(n * n).for_each(|slab| {
        let mut line = vec![Complex64::new(0.0, 0.0); n];
        for k in 0..n {
            for j in 0..n {
                line[j] = slab[j * n + k];
            }
            fft.process(&mut line);
            for j in 0..n {
                slab[j * n + k] = line[j];
            }
        }
    });
    // slowest axis
    let mut line = vec![Complex64::new(0.0, 0.0); n];
    for jk in 0..n * n {
        for i in 0..n {
            line[i] = data[i * n * n + jk];
        }
        fft.process(&mut line);
        for i in 0..n {
            data[i * n * n + jk] = line[i];
        }
    }
}

/// `ψ(x)` sampled on a grid, with the label it was built from.
#[derive(Clone, Debug)]
pub struct PositionState {
    pub grid: CartesianGrid,
    pub psi: Vec<Spinor4>,
    pub label: LocalizationLabel,
    pub time: f64,
}

/// `ψ(x) = (2π)^{−3/2}∫φ(p)e^{ix·p}d³p` on `grid`, by sampling `φ` on the
/// reciprocal lattice and inverse-transforming each component.
pub fn position_state_cartesian(state: &MomentumState, grid: &CartesianGrid) -> Result<PositionState> {
    grid.check_covers(state)?;
    let n = grid.points;
    let scale = (2.0 * PI).powf(-1.5) * (2.0 * PI / grid.length).powi(3);
    let samples: Vec<Spinor4> = (0..grid.len())
        .into_par_iter()
        .map(|idx| {
            let [i, j, k] = grid.unflatten(idx);
            let sign = if (grid.frequency(i) + grid.frequency(j) + grid.frequency(k)).rem_euclid(2) == 0 {
                scale
            } else {
                -scale
            };
            state.eval(grid.momentum(idx)).scale_real(sign)
        })
        .collect();
    let mut psi = samples;
    let mut component = vec![Complex64::new(0.0, 0.0); grid.len()];
    for c in 0..4 {
        component
            .par_iter_mut()
            .zip(psi.par_iter())
            .for_each(|(dst, s)| *dst = s.0[c]);
        fft3(&mut component, n, FftDirection::Inverse);
        psi.par_iter_mut()
            .zip(component.par_iter())
            .for_each(|(s, src)| s.0[c] = *src);
    }
    Ok(PositionState {
        grid: *grid,
        psi,
        label: *state.label(),
        time: state.time(),
    })
}

impl PositionState {
    /// `Σψ†ψ ΔV`.
    pub fn norm(&self) -> f64 {
        self.psi.iter().map(|s| s.norm_sqr()).sum::<f64>() * self.grid.cell_volume()
    }

    pub fn density(&self) -> Vec<f64> {
        self.psi.par_iter().map(spinor_density).collect()
    }

    pub fn current(&self) -> Vec<Vec3> {
        self.psi.par_iter().map(spinor_current).collect()
    }

    pub fn four_vector(&self) -> FourVectorDensity {
        FourVectorDensity {
            rho: self.density(),
            j: self.current(),
            time: self.time,
        }
    }

    /// Trapezoidal (periodic) moments of `ρ` and `j`.
    pub fn moments(&self) -> MomentSet {
        grid_moments(&self.grid, &self.density(), Some(&self.current()))
    }
}

/// Norm, `⟨x⟩`, `Δ_x` and (if `j` is given) `∫j` from sampled fields.
pub fn grid_moments(grid: &CartesianGrid, rho: &[f64], j: Option<&[Vec3]>) -> MomentSet {
    let dv = grid.cell_volume();
    let mut norm = 0.0;
    let mut first = Vec3::ZERO;
    for (idx, r) in rho.iter().enumerate() {
        norm += r;
        first += grid.position(idx) * *r;
    }
    let mean_x = first / norm;
    let mut var = 0.0;
    for (idx, r) in rho.iter().enumerate() {
        var += (grid.position(idx) - mean_x).norm_sqr() * r;
    }
    let mean_velocity = match j {
        Some(j) => j.iter().fold(Vec3::ZERO, |acc, v| acc + *v) * dv,
        None => Vec3::ZERO,
    };
    MomentSet {
        norm: norm * dv,
        mean_x,
        delta_x: (var / norm).max(0.0).sqrt(),
        mean_velocity,
    }
}

/// Probability in `|x − center| < radius`.
pub fn probability_inside(grid: &CartesianGrid, rho: &[f64], center: Vec3, radius: f64) -> f64 {
    rho.iter()
        .enumerate()
        .filter(|(idx, _)| (grid.position(*idx) - center).norm() < radius)
        .map(|(_, r)| r)
        .sum::<f64>()
        * grid.cell_volume()
}

/// `(2π)^{−3/2}∫ρ(x)e^{−ip·x}d³x` by direct summation.
pub fn density_fourier(grid: &CartesianGrid, rho: &[f64], p: Vec3) -> Complex64 {
    let sum = rho.iter().enumerate().fold(Complex64::new(0.0, 0.0), |acc, (idx, r)| {
        acc + Complex64::from_polar(*r, -p.dot(grid.position(idx)))
    });
    sum * grid.cell_volume() * (2.0 * PI).powf(-1.5)
}

/// Mean of paired values over spherical shells `[edges[b], edges[b+1])`
/// about `center`. Returns `(shell centre, mean of a, mean of b)` for
/// every nonempty shell.
pub fn shell_averages(
    grid: &CartesianGrid,
    center: Vec3,
    edges: &[f64],
    mut values: impl FnMut(usize, f64) -> (f64, f64),
) -> Vec<(f64, f64, f64)> {
    let bins = edges.len().saturating_sub(1);
    let mut acc = vec![(0.0, 0.0, 0usize); bins];
    let r_max = edges[bins];
    for idx in 0..grid.len() {
        let r = (grid.position(idx) - center).norm();
        if r < edges[0] || r >= r_max {
            continue;
        }
        let b = edges.partition_point(|e| *e <= r) - 1;
        let (a, c) = values(idx, r);
        acc[b].0 += a;
        acc[b].1 += c;
        acc[b].2 += 1;
    }
    acc.iter()
        .enumerate()
        .filter(|(_, s)| s.2 > 0)
        .map(|(b, s)| (0.5 * (edges[b] + edges[b + 1]), s.0 / s.2 as f64, s.1 / s.2 as f64))
        .collect()
}
