//! The `verify` suite: named numerical checks, each compared with a
//! tolerance that can be overridden by name.

use dirac_loc_core::dirac::{
    energy, hamiltonian_matrix, positive_projector, pryce_spin3, spin_eigenspinor, spinor_derivative_bounds,
};
use dirac_loc_core::nr::{nr_density_analytic, NRPacketParams};
use dirac_loc_core::observables::{convolution_rn, mean_velocity_two_ways, moments, overlap, ConvolutionOperator};
use dirac_loc_core::profile::check_profile_conditions;
use dirac_loc_core::symmetry::{boost_label, BoostParams, PointDensityLimit};
use dirac_loc_core::{Complex64, MomentumState, SpinLabel, Vec3};
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::dynamics::{nr_spectral_evolve, sample_nr_state};
use crate::error::Result;
use crate::grid::{position_state_cartesian, CartesianGrid};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub bound: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    fn push(&mut self, config: &RunConfig, name: &str, value: f64) {
        let bound = config.tolerance(name);
        self.checks.push(Check {
            name: name.into(),
            value,
            bound,
            passed: value.is_finite() && value <= bound,
        });
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Fixed momentum samples: a skewed lattice in `|p| ≤ 6` plus a few large
/// momenta.
pub fn momentum_samples() -> Vec<Vec3> {
    let mut out = Vec::new();
    for i in -3..=3 {
        for j in -3..=3 {
            for k in -3..=3 {
                out.push(Vec3::new(
                    0.9 * i as f64 + 0.11,
                    1.1 * j as f64 - 0.07,
                    1.3 * k as f64 + 0.03,
                ));
            }
        }
    }
    out.extend([
        Vec3::new(19.0, -3.0, 2.0),
        Vec3::new(0.0, 0.0, 15.0),
        Vec3::new(-1e-3, 2e-3, 0.0),
    ]);
    out
}

fn count_nonmonotone(values: &[f64]) -> f64 {
    values.windows(2).filter(|w| !(w[1] < w[0])).count() as f64
}

const SEQUENCE: [u32; 4] = [2, 4, 8, 16];

pub fn run_verify(config: &RunConfig) -> Result<VerifyReport> {
    let mut r = VerifyReport::default();
    let samples = momentum_samples();

    let mut idem: f64 = 0.0;
    let mut eig: f64 = 0.0;
    let mut spin: f64 = 0.0;
    for &p in &samples {
        let proj = positive_projector(p);
        idem = idem.max((proj * proj - proj).max_abs());
        let h = hamiltonian_matrix(p);
        let s3 = pryce_spin3(p);
        for s in [SpinLabel::Up, SpinLabel::Down] {
            let u = spin_eigenspinor(p, s);
            eig = eig
                .max((h * u - u.scale_real(energy(p))).norm())
                .max((u.norm_sqr() - 1.0).abs());
            spin = spin.max((s3 * u - u.scale_real(s.value())).norm());
        }
    }
    r.push(config, "projector_idempotence", idem);
    r.push(config, "eigenspinor_residual", eig);
    r.push(config, "pryce_spin_residual", spin);

    let bounded: Vec<Vec3> = samples.iter().copied().filter(|p| p.norm() <= 20.0).collect();
    r.push(
        config,
        "derivative_bound_violations",
        spinor_derivative_bounds(&bounded, 1e-3)?.violations.len() as f64,
    );

    let profile = config.profile()?;
    let cond = check_profile_conditions(&profile);
    r.push(config, "profile_norm", (cond.norm - 1.0).abs());
    r.push(
        config,
        "profile_mean_direction",
        (cond.mean_direction - profile.target_velocity()).norm(),
    );

    let mut norm_err: f64 = 0.0;
    let mut rn0: f64 = 0.0;
    let mut vel: f64 = 0.0;
    let mut opposite: f64 = 0.0;
    let mut margin = f64::NEG_INFINITY;
    let mut grid_norm: f64 = 0.0;
    for &n in &config.label.n {
        let state = config.state(n)?;
        norm_err = norm_err.max((moments(&state).norm - 1.0).abs());
        let r0 = convolution_rn(
            &profile,
            n,
            Vec3::ZERO,
            ConvolutionOperator::Identity,
            state.label().spin,
        )?;
        rn0 = rn0.max((r0 - Complex64::new(1.0, 0.0)).norm());
        let (a, b) = mean_velocity_two_ways(&state);
        vel = vel.max((a - b).norm());
        let flipped = MomentumState::new(state.label().with_spin(state.label().spin.flipped()), profile)?;
        opposite = opposite.max(overlap(&state, &flipped).norm());
        let grid = config.grid_for(&state)?;
        let field = position_state_cartesian(&state, &grid)?;
        let four = field.four_vector();
        margin = margin.max(four.causality_margin());
        grid_norm = grid_norm.max((four.rho.iter().sum::<f64>() * grid.cell_volume() - 1.0).abs());
    }
    r.push(config, "state_norm", norm_err);
    r.push(config, "rn_at_origin", rn0);
    r.push(config, "velocity_identity", vel);
    r.push(config, "causality_margin", margin);
    r.push(config, "grid_norm", grid_norm);
    r.push(config, "opposite_spin_overlap", opposite);

    let base = config.label(1)?;
    let mut rn_err = Vec::new();
    let mut ov = Vec::new();
    for n in SEQUENCE {
        let v = convolution_rn(
            &profile,
            n,
            Vec3::new(1.0, 0.0, 0.0),
            ConvolutionOperator::Identity,
            base.spin,
        )?;
        rn_err.push((v - Complex64::new(1.0, 0.0)).norm());
        let s = MomentumState::new(base.with_n(n), profile)?;
        let shifted = MomentumState::new(base.with_n(n).with_a(base.a + Vec3::new(2.0, 0.0, 0.0)), profile)?;
        ov.push(overlap(&s, &shifted).norm());
    }
    r.push(config, "rn_nonmonotone_steps", count_nonmonotone(&rn_err));
    r.push(config, "overlap_nonmonotone_steps", count_nonmonotone(&ov));

    let params = NRPacketParams::new(1, 1.0, Vec3::new(0.5, 0.0, 0.0), Vec3::new(0.5, 0.0, 0.25))?;
    let g = CartesianGrid::new(64, 24.0)?;
    let t = 0.1;
    let chi = nr_spectral_evolve(&sample_nr_state(&params, &g), &g, t);
    let nr = chi
        .iter()
        .enumerate()
        .map(|(idx, c)| (c.norm_sqr() - nr_density_analytic(&params, g.position(idx), t)).abs())
        .fold(0.0, f64::max);
    r.push(config, "nr_oracle", nr);

    let half = BoostParams::from_velocity(0.5)?;
    r.push(
        config,
        "velocity_addition",
        (half.apply_velocity(Vec3::new(0.0, 0.0, 0.5)).z - 0.8).abs(),
    );

    let mut comp: f64 = 0.0;
    for (a, v) in [
        (Vec3::new(1.0, -2.0, 0.5), Vec3::new(0.1, 0.2, 0.3)),
        (Vec3::new(0.0, 0.0, -3.0), Vec3::new(0.0, -0.4, -0.6)),
    ] {
        let limit = PointDensityLimit::at_time_zero(a, v)?;
        let (s1, s2) = (BoostParams::new(0.3)?, BoostParams::new(-0.7)?);
        let twice = boost_label(&boost_label(&limit, &s1), &s2);
        let once = boost_label(&limit, &BoostParams::new(0.3 - 0.7)?);
        comp = comp
            .max((twice.point - once.point).norm())
            .max((twice.velocity - once.velocity).norm())
            .max((twice.time - once.time).abs())
            .max((twice.hyperplane_rapidity - once.hyperplane_rapidity).abs());
    }
    r.push(config, "boost_composition", comp);

    r.passed = r.checks.iter().all(|c| c.passed);
    Ok(r)
}
