//! One function per CLI subcommand. Each writes its tables under the
//! configured output directory.

use dirac_loc_core::observables::{convolution_rn, moments, overlap, ConvolutionOperator};
use dirac_loc_core::radial::{radial_density, RadialGrid};
use dirac_loc_core::{MomentumState, Vec3};
use std::f64::consts::PI;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::dynamics::{evolve_report, evolved_position_state};
use crate::error::{Error, Result};
use crate::output::{ensure_dir, read_csv, Written};
use crate::verify::{run_verify, VerifyReport};

/// What a command produced.
#[derive(Debug, Default)]
pub struct Outcome {
    pub written: Written,
    /// Set when a verification step did not meet its tolerance.
    pub failed: bool,
    pub message: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RadialRow {
    pub r: f64,
    pub rho: f64,
}

/// Scalars of one emitted `ρₙ(r)` table. Integrals use Simpson's rule over
/// the table points, so re-reading the CSV reproduces them exactly.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Figure1Summary {
    pub n: u32,
    /// `∫4πr²ρ dr` over the table.
    pub norm: f64,
    pub rho_at_origin: f64,
    /// Spread about the origin, from the table.
    pub delta_x: f64,
    /// `∫4πr²ρ dr` over table points with `r ≤ 1`.
    pub prob_inside_unit: f64,
    /// Least-squares slope of `ln ρ` against `r` for `3 ≤ r ≤ 6`.
    pub log_slope: Option<f64>,
}

/// Simpson's rule on uniform samples; a trailing odd interval is added by
/// the trapezoid rule.
fn simpson(h: f64, f: &[f64]) -> f64 {
    if f.len() < 2 {
        return 0.0;
    }
    let even = if (f.len() - 1).is_multiple_of(2) {
        f.len()
    } else {
        f.len() - 1
    };
    let mut s = 0.0;
    if even >= 3 {
        s += f[0] + f[even - 1];
        for (i, v) in f[1..even - 1].iter().enumerate() {
            s += if i % 2 == 0 { 4.0 * v } else { 2.0 * v };
        }
        s *= h / 3.0;
    }
    if even < f.len() {
        s += 0.5 * h * (f[even - 1] + f[even]);
    }
    s
}

pub fn summarize_radial(n: u32, rows: &[RadialRow]) -> Figure1Summary {
    let h = if rows.len() > 1 { rows[1].r - rows[0].r } else { 0.0 };
    let shell = |k: i32| -> Vec<f64> { rows.iter().map(|w| 4.0 * PI * w.r.powi(2 + k) * w.rho).collect() };
    let mass = shell(0);
    let norm = simpson(h, &mass);
    let inside = rows.iter().take_while(|w| w.r <= 1.0 + 1e-12).count();
    let second = simpson(h, &shell(2));
    let tail: Vec<(f64, f64)> = rows
        .iter()
        .filter(|w| w.r >= 3.0 && w.r <= 6.0 && w.rho > 0.0)
        .map(|w| (w.r, w.rho.ln()))
        .collect();
    let log_slope = (tail.len() >= 2).then(|| {
        let m = tail.len() as f64;
        let (sx, sy) = tail.iter().fold((0.0, 0.0), |a, p| (a.0 + p.0, a.1 + p.1));
        let (mx, my) = (sx / m, sy / m);
        let (num, den) = tail.iter().fold((0.0, 0.0), |a, p| {
            (a.0 + (p.0 - mx) * (p.1 - my), a.1 + (p.0 - mx).powi(2))
        });
        num / den
    });
    Figure1Summary {
        n,
        norm,
        rho_at_origin: rows.first().map_or(0.0, |w| w.rho),
        delta_x: (second / norm).max(0.0).sqrt(),
        prob_inside_unit: simpson(h, &mass[..inside]),
        log_slope,
    }
}

pub fn figure1_csv_name(n: u32) -> String {
    format!("figure1_n{n}.csv")
}

/// Radial densities `ρₙ(r)` for each `n`. Needs a label at the origin and
/// a spherically symmetric profile.
pub fn figure1(config: &RunConfig) -> Result<Outcome> {
    if config.label.a != [0.0; 3] || config.label.v != [0.0; 3] {
        return Err(Error::config("figure1 needs a = 0 and v = 0"));
    }
    let dir = &config.output_dir;
    ensure_dir(dir)?;
    let profile = config.profile()?;
    if !profile.is_spherically_symmetric() {
        return Err(Error::config("figure1 needs a spherically symmetric profile"));
    }
    let grid = RadialGrid::uniform(config.grid.r_max, config.grid.r_count)?;
    let mut out = Outcome::default();
    let mut summary = Vec::new();
    for &n in &config.label.n {
        let table = radial_density(&profile, n, &grid)?;
        let rows: Vec<RadialRow> = grid
            .points()
            .iter()
            .zip(&table.rho)
            .map(|(&r, &rho)| RadialRow { r, rho })
            .collect();
        out.written.csv(dir, &figure1_csv_name(n), &rows)?;
        summary.push(summarize_radial(n, &rows));
    }
    out.written.json(dir, "figure1_summary.json", &summary)?;
    out.message = summary
        .iter()
        .map(|s| {
            format!(
                "n = {}: norm {:.8}, P(r < 1) {:.5}, rho(0) {:.4}",
                s.n, s.norm, s.prob_inside_unit, s.rho_at_origin
            )
        })
        .collect::<Vec<_>>()
        .join("\n");
    Ok(out)
}

/// Re-reads the tables written by [`figure1`] and summarizes them again.
pub fn resummarize_figure1(dir: &Path, ns: &[u32]) -> Result<Vec<Figure1Summary>> {
    ns.iter()
        .map(|&n| {
            Ok(summarize_radial(
                n,
                &read_csv::<RadialRow>(&dir.join(figure1_csv_name(n)))?,
            ))
        })
        .collect()
}

pub fn verify(config: &RunConfig) -> Result<(Outcome, VerifyReport)> {
    let dir = &config.output_dir;
    ensure_dir(dir)?;
    let report = run_verify(config)?;
    let mut out = Outcome::default();
    out.written.json(dir, "verify.json", &report)?;
    out.failed = !report.passed;
    out.message = report
        .checks
        .iter()
        .map(|c| {
            format!(
                "{} {}: {:.3e} (bound {:.1e})",
                if c.passed { "ok  " } else { "FAIL" },
                c.name,
                c.value,
                c.bound
            )
        })
        .collect::<Vec<_>>()
        .join("\n");
    Ok((out, report))
}

#[derive(Serialize)]
struct SliceRow {
    t: f64,
    x: f64,
    y: f64,
    rho: f64,
}

/// Free evolution with causality and light-cone diagnostics, plus the
/// `z = 0` density slice at every time.
pub fn evolve(config: &RunConfig) -> Result<Outcome> {
    let dir = &config.output_dir;
    ensure_dir(dir)?;
    let mut out = Outcome::default();
    let mut lines = Vec::new();
    for &n in &config.label.n {
        let state = config.state(n)?;
        let grid = config.grid_for(&state)?;
        let report = evolve_report(&state, &grid, &config.evolve.times, config.evolve.r0)?;
        out.written.json(dir, &format!("evolve_n{n}.json"), &report)?;
        let mut rows = Vec::new();
        let mid = grid.points / 2;
        for &t in &config.evolve.times {
            let rho = evolved_position_state(&state, &grid, t)?.density();
            for i in 0..grid.points {
                for j in 0..grid.points {
                    rows.push(SliceRow {
                        t,
                        x: grid.coordinate(i),
                        y: grid.coordinate(j),
                        rho: rho[grid.index(i, j, mid)],
                    });
                }
            }
        }
        out.written.csv(dir, &format!("evolve_n{n}_slice.csv"), &rows)?;
        lines.push(format!(
            "n = {n}: grid {}/{}, max |j| - rho {:.2e}, max leakage {:.2e}",
            grid.points,
            grid.length,
            report.max_margin(),
            report.max_leakage()
        ));
    }
    out.message = lines.join("\n");
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RnRow {
    pub n: u32,
    pub px: f64,
    pub py: f64,
    pub pz: f64,
    pub operator: String,
    pub re: f64,
    pub im: f64,
    pub target: f64,
    pub abs_err: f64,
}

/// `Rₙ(p)` on the configured momenta and `n`.
pub fn rn(config: &RunConfig) -> Result<Outcome> {
    let dir = &config.output_dir;
    ensure_dir(dir)?;
    let profile = config.profile()?;
    let q = config.operator()?;
    let spin = config.spin()?;
    let target = match q {
        ConvolutionOperator::Identity => 1.0,
        ConvolutionOperator::Alpha(i) => profile.target_velocity()[i],
    };
    let mut rows = Vec::new();
    for &n in &config.label.n {
        for p in &config.rn.p {
            let v = convolution_rn(&profile, n, Vec3::from_array(*p), q, spin)?;
            rows.push(RnRow {
                n,
                px: p[0],
                py: p[1],
                pz: p[2],
                operator: config.rn.q.clone(),
                re: v.re,
                im: v.im,
                target,
                abs_err: (v - target).norm(),
            });
        }
    }
    let mut out = Outcome::default();
    out.written.csv(dir, "rn.csv", &rows)?;
    out.message = format!("{} values of R_n", rows.len());
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MomentRow {
    pub n: u32,
    pub norm: f64,
    pub mean_x: [f64; 3],
    pub delta_x: f64,
    pub mean_velocity: [f64; 3],
}

/// Norm, `⟨x⟩`, `Δ_x` and `⟨ẋ⟩` for each `n`.
pub fn moment_table(config: &RunConfig) -> Result<Vec<MomentRow>> {
    config
        .label
        .n
        .iter()
        .map(|&n| {
            let m = moments(&config.state(n)?);
            Ok(MomentRow {
                n,
                norm: m.norm,
                mean_x: m.mean_x.to_array(),
                delta_x: m.delta_x,
                mean_velocity: m.mean_velocity.to_array(),
            })
        })
        .collect()
}

pub fn moments_cmd(config: &RunConfig) -> Result<Outcome> {
    let dir = &config.output_dir;
    ensure_dir(dir)?;
    let rows = moment_table(config)?;
    let mut out = Outcome::default();
    out.written.json(dir, "moments.json", &rows)?;
    out.message = rows
        .iter()
        .map(|r| format!("n = {}: norm {:.8}, delta_x {:.5}", r.n, r.norm, r.delta_x))
        .collect::<Vec<_>>()
        .join("\n");
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OverlapRow {
    pub n: u32,
    pub re: f64,
    pub im: f64,
    pub abs: f64,
}

/// `(φₙ, φ′ₙ)` between the configured label and one displaced to
/// `overlap.a_prime` with spin `overlap.spin_prime`.
pub fn overlap_cmd(config: &RunConfig) -> Result<Outcome> {
    let dir = &config.output_dir;
    ensure_dir(dir)?;
    let spin_prime = config.spin_prime()?;
    let a_prime = Vec3::from_array(config.overlap.a_prime);
    let mut rows = Vec::new();
    for &n in &config.label.n {
        let s = config.state(n)?;
        let other = MomentumState::new(s.label().with_a(a_prime).with_spin(spin_prime), *s.profile())?;
        let v = overlap(&s, &other);
        rows.push(OverlapRow {
            n,
            re: v.re,
            im: v.im,
            abs: v.norm(),
        });
    }
    let mut out = Outcome::default();
    out.written.json(dir, "overlap.json", &rows)?;
    out.message = rows
        .iter()
        .map(|r| format!("n = {}: |overlap| {:.3e}", r.n, r.abs))
        .collect::<Vec<_>>()
        .join("\n");
    Ok(out)
}
