//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use dirac_loc::dynamics::{evolve_report, nr_spectral_evolve, sample_nr_state};
use dirac_loc::fields::{parity_residual, rotation_residual, time_reversal_residual};
use dirac_loc::grid::{density_fourier, position_state_cartesian, probability_inside, shell_averages, CartesianGrid};
use dirac_loc_core::dirac::{
    energy, hamiltonian_matrix, positive_projector, pryce_spin3, spin_eigenspinor, spinor_derivative_bounds,
};
use dirac_loc_core::nr::{
    nr_current, nr_density_analytic, nr_gaussian_state, nr_state_evolved, FieldShape, NRPacketParams,
};
use dirac_loc_core::observables::{
    convolution_rn, mean_velocity_two_ways, moments, overlap, overlap_quadrature, ConvolutionOperator,
};
use dirac_loc_core::radial::{radial_density, RadialGrid, RadialTransform};
use dirac_loc_core::state::STATE_QUADRATURE;
use dirac_loc_core::symmetry::{boost_label, BoostParams, PointDensityLimit};
use dirac_loc_core::{Complex64, LocalizationLabel, MomentumProfile, MomentumState, SpinLabel, Vec3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(bool, String), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn gaussian() -> MomentumProfile {
    MomentumProfile::gaussian(1.0).unwrap()
}

fn state(a: Vec3, v: Vec3, spin: SpinLabel, n: u32) -> Result<MomentumState, String> {
    MomentumState::from_label(LocalizationLabel::new(a, v, spin, n).map_err(err)?, 1.0).map_err(err)
}

fn strictly_decreasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] < w[0])
}

fn fmt_list(v: &[f64]) -> String {
    v.iter().map(|x| format!("{x:.4e}")).collect::<Vec<_>>().join(", ")
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let grid = RadialGrid::uniform(6.0, 601).map_err(err)?;
    let mut norms = Vec::new();
    let mut rho0 = Vec::new();
    let mut inside = Vec::new();
    let mut inside_3d = Vec::new();
    for n in [5, 7, 10] {
        let t = radial_density(&gaussian(), n, &grid).map_err(err)?;
        norms.push(t.norm());
        rho0.push(t.rho_at_origin());
        inside.push(t.prob_inside_unit);
        let s = state(Vec3::ZERO, Vec3::ZERO, SpinLabel::Up, n)?;
        let g = CartesianGrid::auto_for(&s).map_err(err)?;
        let rho = position_state_cartesian(&s, &g).map_err(err)?.density();
        inside_3d.push(probability_inside(&g, &rho, Vec3::ZERO, 1.0));
    }
    let elapsed = start.elapsed().as_secs_f64();
    let norm_ok = norms.iter().all(|x| (x - 1.0).abs() <= 1e-4);
    let peak_ok = rho0[2] > rho0[1] && rho0[1] > rho0[0];
    let inside_ok = inside[0] < inside[1] && inside[1] < inside[2] && inside[2] > 0.9;
    let oracle_gap = inside
        .iter()
        .zip(&inside_3d)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let oracle_ok =
        oracle_gap <= 5e-3 && inside_3d[0] < inside_3d[1] && inside_3d[1] < inside_3d[2] && inside_3d[2] > 0.9;
    let ok = norm_ok && peak_ok && inside_ok && oracle_ok && elapsed < 60.0;
    Ok((
        ok,
        format!(
            "n=5,7,10 norms [{}], rho(0) [{}], P(r<1) [{}], 3-D P(r<1) [{}] (max gap {:.1e}), {:.1}s",
            fmt_list(&norms.iter().map(|x| x - 1.0).collect::<Vec<_>>()),
            fmt_list(&rho0),
            fmt_list(&inside),
            fmt_list(&inside_3d),
            oracle_gap,
            elapsed
        ),
    ))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let n = 5;
    let s = state(Vec3::ZERO, Vec3::ZERO, SpinLabel::Up, n)?;
    let g = CartesianGrid::new(128, 16.0).map_err(err)?;
    let rho3d = position_state_cartesian(&s, &g).map_err(err)?.density();
    let transform = RadialTransform::new(&gaussian(), n).map_err(err)?;
    // fine table, linearly interpolated at the grid radii
    let dr = 1e-3;
    let table: Vec<f64> = (0..=4200).map(|i| transform.density(i as f64 * dr)).collect();
    let radial_at = |r: f64| {
        let x = r / dr;
        let i = (x.floor() as usize).min(table.len() - 2);
        let t = x - i as f64;
        table[i] * (1.0 - t) + table[i + 1] * t
    };
    let edges: Vec<f64> = (0..=40).map(|i| i as f64 * 0.1).collect();
    let shells = shell_averages(&g, Vec3::ZERO, &edges, |idx, r| (rho3d[idx], radial_at(r)));
    let num: f64 = shells.iter().map(|s| (s.1 - s.2).powi(2)).sum();
    let den: f64 = shells.iter().map(|s| s.2 * s.2).sum();
    let rel = (num / den).sqrt();
    let elapsed = start.elapsed().as_secs_f64();
    Ok((
        rel <= 1e-2 && elapsed < 120.0,
        format!("relative L2 {rel:.3e} over {} shells, {elapsed:.1}s", shells.len()),
    ))
}

fn criterion_3() -> Outcome {
    let ns = [2u32, 4, 8, 16];
    let mut detail = Vec::new();
    let mut ok = true;
    let mut spread_a0 = Vec::new();
    for a in [Vec3::ZERO, Vec3::new(1.0, 0.0, 0.0)] {
        let mut spread = Vec::new();
        let mut offset: f64 = 0.0;
        for &n in &ns {
            let m = moments(&state(a, Vec3::ZERO, SpinLabel::Up, n)?);
            spread.push(m.delta_x);
            offset = offset.max((m.mean_x - a).norm());
        }
        // least squares Δ ≈ c/n
        let c = ns.iter().zip(&spread).map(|(&n, d)| d / n as f64).sum::<f64>()
            / ns.iter().map(|&n| 1.0 / (n as f64).powi(2)).sum::<f64>();
        let fitted: Vec<f64> = ns.iter().map(|&n| c / n as f64).collect();
        let l2 = (spread.iter().zip(&fitted).map(|(d, f)| (d - f).powi(2)).sum::<f64>()
            / fitted.iter().map(|f| f * f).sum::<f64>())
        .sqrt();
        let worst = spread
            .iter()
            .zip(&fitted)
            .map(|(d, f)| ((d - f) / f).abs())
            .fold(0.0, f64::max);
        ok &= strictly_decreasing(&spread) && c > 0.0 && l2 < 0.1 && offset <= 1e-4;
        detail.push(format!(
            "a=({},{},{}): delta_x [{}], c {c:.4}, fit residual {:.1}% (max pointwise {:.1}%), |<x>-a| {offset:.1e}",
            a.x,
            a.y,
            a.z,
            fmt_list(&spread),
            100.0 * l2,
            100.0 * worst
        ));
        if a == Vec3::ZERO {
            spread_a0 = spread;
        }
    }
    // second route: radial quadrature of ⟨r²⟩
    let grid = RadialGrid::uniform(6.0, 61).map_err(err)?;
    let mut gap: f64 = 0.0;
    for (&n, d) in ns.iter().zip(&spread_a0) {
        gap = gap.max((radial_density(&gaussian(), n, &grid).map_err(err)?.delta_x() - d).abs() / d);
    }
    ok &= gap <= 1e-4;
    detail.push(format!("radial route agrees to {gap:.1e}"));
    Ok((ok, detail.join("; ")))
}

fn criterion_4() -> Outcome {
    let ns = [2u32, 4, 8, 16];
    let momenta = [Vec3::ZERO, Vec3::new(1.0, 0.0, 0.0), Vec3::new(0.0, 0.0, 2.0)];
    let boosted = MomentumProfile::boosted_gaussian(Vec3::new(0.0, 0.0, 0.5), 1.0).map_err(err)?;
    let mut ok = true;
    let mut detail = Vec::new();
    for p in momenta {
        let mut id = Vec::new();
        let mut a3 = Vec::new();
        for &n in &ns {
            let r = convolution_rn(&gaussian(), n, p, ConvolutionOperator::Identity, SpinLabel::Up).map_err(err)?;
            id.push((r - 1.0).norm());
            let r = convolution_rn(&boosted, n, p, ConvolutionOperator::Alpha(2), SpinLabel::Up).map_err(err)?;
            a3.push((r - 0.5).norm());
        }
        if p == Vec3::ZERO {
            // Rₙ(0) = ‖φₙ‖² = 1 for every n, so |Rₙ − 1| is rounding noise
            ok &= id.iter().all(|d| *d <= 1e-8);
        } else {
            ok &= strictly_decreasing(&id);
        }
        ok &= strictly_decreasing(&a3);
        detail.push(format!(
            "p=({},{},{}) |R-1| [{}] |R-0.5| [{}]",
            p.x,
            p.y,
            p.z,
            fmt_list(&id),
            fmt_list(&a3)
        ));
    }
    // second route: Fourier transform of the grid density at n = 2
    let s = state(Vec3::ZERO, Vec3::ZERO, SpinLabel::Up, 2)?;
    let g = CartesianGrid::new(64, 16.0).map_err(err)?;
    let rho = position_state_cartesian(&s, &g).map_err(err)?.density();
    let p = Vec3::new(1.0, 0.0, 0.0);
    let from_grid = density_fourier(&g, &rho, p) * (2.0 * PI).powf(1.5);
    let direct = convolution_rn(&gaussian(), 2, p, ConvolutionOperator::Identity, SpinLabel::Up).map_err(err)?;
    let gap = (from_grid - direct).norm();
    ok &= gap <= 1e-3;
    detail.push(format!("grid Fourier route gap {gap:.1e}"));
    Ok((ok, detail.join("; ")))
}

fn criterion_5() -> Outcome {
    let cases = [
        (Vec3::ZERO, Vec3::ZERO, SpinLabel::Up, 3),
        (Vec3::ZERO, Vec3::new(0.0, 0.0, 0.3), SpinLabel::Up, 4),
        (Vec3::new(1.0, -0.5, 0.2), Vec3::new(0.2, 0.1, 0.0), SpinLabel::Down, 2),
        (Vec3::new(0.0, 2.0, 0.0), Vec3::new(-0.4, 0.0, 0.2), SpinLabel::Down, 6),
        (Vec3::new(-1.0, 0.0, 3.0), Vec3::new(0.0, 0.5, 0.0), SpinLabel::Up, 10),
    ];
    let mut worst: f64 = 0.0;
    for (a, v, spin, n) in cases {
        let (spinor, scalar) = mean_velocity_two_ways(&state(a, v, spin, n)?);
        worst = worst.max((spinor - scalar).norm());
    }
    Ok((worst <= 1e-8, format!("5 states, max |spinor - scalar| {worst:.2e}")))
}

fn criterion_6() -> Outcome {
    let s = state(Vec3::ZERO, Vec3::new(0.0, 0.0, 0.3), SpinLabel::Up, 5)?;
    let g = CartesianGrid::new(128, 16.0).map_err(err)?;
    let report = evolve_report(&s, &g, &[0.0, 0.5, 1.0], 3.0).map_err(err)?;
    let margin = report.max_margin();
    let leak = report.max_leakage();
    let drift = report
        .norms
        .iter()
        .map(|x| (x - report.norms[0]).abs())
        .fold(0.0, f64::max);
    Ok((
        margin <= 1e-10 && leak <= 1e-3,
        format!("n=5 v=(0,0,0.3) on 128/16: max |j|-rho {margin:.2e}, max leakage {leak:.2e}, norm drift {drift:.1e}"),
    ))
}

fn nr_case(n: u32, t: f64, points: usize, length: f64) -> Result<(f64, f64), String> {
    let p = NRPacketParams::new(n, 1.0, Vec3::new(0.5, 0.0, 0.0), Vec3::new(0.5, 0.0, 0.25)).map_err(err)?;
    let g = CartesianGrid::new(points, length).map_err(err)?;
    let chi = nr_spectral_evolve(&sample_nr_state(&p, &g), &g, t);
    let mut dens: f64 = 0.0;
    let mut amp: f64 = 0.0;
    for (idx, c) in chi.iter().enumerate() {
        let q = g.position(idx);
        dens = dens.max((c.norm_sqr() - nr_density_analytic(&p, q, t)).abs());
        amp = amp.max((c - nr_state_evolved(&p, q, t)).norm());
    }
    Ok((dens, amp))
}

/// `max |j − v|χ|²|` for samples on `[−6, 6]³` with `m + 1` points per axis.
fn nr_current_error(p: &NRPacketParams, m: usize) -> Result<(f64, f64), String> {
    let h = 12.0 / m as f64;
    let dims = m + 1;
    let shape = FieldShape::new([dims; 3]);
    let mut chi = vec![Complex64::new(0.0, 0.0); shape.len()];
    for i in 0..dims {
        for j in 0..dims {
            for k in 0..dims {
                let q = Vec3::new(-6.0 + i as f64 * h, -6.0 + j as f64 * h, -6.0 + k as f64 * h);
                chi[shape.index(i, j, k)] = nr_gaussian_state(p, q);
            }
        }
    }
    let j = nr_current(&chi, shape, h).map_err(err)?;
    let worst = j
        .iter()
        .zip(&chi)
        .map(|(jj, c)| (*jj - p.v * c.norm_sqr()).norm())
        .fold(0.0, f64::max);
    Ok((h, worst))
}

fn criterion_7() -> Outcome {
    let cases = [
        (1, 0.1, 64, 24.0),
        (1, 1.0, 64, 24.0),
        (4, 0.1, 128, 12.0),
        (4, 1.0, 256, 32.0),
    ];
    let mut ok = true;
    let mut detail = Vec::new();
    for (n, t, points, length) in cases {
        let (dens, amp) = nr_case(n, t, points, length)?;
        ok &= dens <= 1e-6;
        detail.push(format!(
            "n={n} t={t} ({points}/{length}): density {dens:.1e}, amplitude {amp:.1e}"
        ));
    }
    let p = NRPacketParams::new(2, 1.0, Vec3::new(0.5, 0.0, 0.0), Vec3::new(0.5, 0.0, 0.25)).map_err(err)?;
    let errs: Vec<(f64, f64)> = [32, 64, 128]
        .iter()
        .map(|&m| nr_current_error(&p, m))
        .collect::<Result<_, _>>()?;
    let orders: Vec<f64> = errs
        .windows(2)
        .map(|w| (w[0].1 / w[1].1).ln() / (w[0].0 / w[1].0).ln())
        .collect();
    let order = *orders.last().unwrap();
    ok &= order >= 1.8;
    detail.push(format!(
        "current errors [{}], orders [{}]",
        fmt_list(&errs.iter().map(|e| e.1).collect::<Vec<_>>()),
        orders.iter().map(|o| format!("{o:.3}")).collect::<Vec<_>>().join(", ")
    ));
    Ok((ok, detail.join("; ")))
}

fn criterion_8() -> Outcome {
    let a = Vec3::ZERO;
    let shifted = Vec3::new(2.0, 0.0, 0.0);
    let mut same = Vec::new();
    let mut opposite: f64 = 0.0;
    let mut route_gap: f64 = 0.0;
    for n in [2u32, 4, 8, 16] {
        let s = state(a, Vec3::ZERO, SpinLabel::Up, n)?;
        let t = state(shifted, Vec3::ZERO, SpinLabel::Up, n)?;
        let v = overlap(&s, &t);
        same.push(v.norm());
        if n <= 4 {
            route_gap = route_gap.max((overlap_quadrature(&s, &t, STATE_QUADRATURE.doubled()) - v).norm());
        }
        for b in [a, shifted] {
            let down = state(b, Vec3::ZERO, SpinLabel::Down, n)?;
            opposite = opposite.max(overlap(&s, &down).norm());
        }
    }
    let ok = strictly_decreasing(&same) && same[3] < 0.05 && opposite <= 1e-10 && route_gap <= 1e-8;
    Ok((
        ok,
        format!(
            "|overlap| [{}], opposite spin max {opposite:.1e}, quadrature vs closed form {route_gap:.1e}",
            fmt_list(&same)
        ),
    ))
}

fn criterion_9() -> Outcome {
    let half = BoostParams::from_velocity(0.5).map_err(err)?;
    let added = half.apply_velocity(Vec3::new(0.0, 0.0, 0.5)).z;
    let textbook = (0.5 + 0.5) / (1.0 + 0.5 * 0.5);
    let addition = (added - 0.8).abs().max((added - textbook).abs());

    let mut composition: f64 = 0.0;
    for (a, v, s1, s2) in [
        (Vec3::new(1.0, -2.0, 0.5), Vec3::new(0.1, 0.2, 0.3), 0.3, -0.7),
        (Vec3::new(0.0, 0.0, -3.0), Vec3::new(0.0, -0.4, -0.6), 1.2, 0.4),
        (Vec3::new(0.5, 0.5, 2.0), Vec3::ZERO, -0.9, 2.1),
    ] {
        let limit = PointDensityLimit::at_time_zero(a, v).map_err(err)?;
        let b1 = BoostParams::new(s1).map_err(err)?;
        let b2 = BoostParams::new(s2).map_err(err)?;
        let twice = boost_label(&boost_label(&limit, &b1), &b2);
        let once = boost_label(&limit, &BoostParams::new(s1 + s2).map_err(err)?);
        composition = composition
            .max((twice.point - once.point).norm())
            .max((twice.velocity - once.velocity).norm())
            .max((twice.time - once.time).abs());
    }

    let g = CartesianGrid::new(32, 8.0).map_err(err)?;
    let s = state(Vec3::new(0.5, -0.25, 0.0), Vec3::new(0.2, 0.0, 0.5), SpinLabel::Up, 2)?;
    let parity = parity_residual(&s, &g).map_err(err)?;
    let rotation = rotation_residual(&s, &g).map_err(err)?;
    let reversal = time_reversal_residual(&s, &g, 0.5).map_err(err)?;
    let ok = addition <= 1e-12 && composition <= 1e-12 && parity <= 1e-3 && rotation <= 1e-3 && reversal <= 1e-3;
    Ok((
        ok,
        format!(
            "0.5+0.5 -> {added:.15}, composition {composition:.1e}, parity {parity:.1e}, rotation {rotation:.1e}, time reversal {reversal:.1e}"
        ),
    ))
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let samples: Vec<Vec3> = (0..1000)
        .map(|_| loop {
            let p = Vec3::new(
                rng.gen_range(-10.0..10.0),
                rng.gen_range(-10.0..10.0),
                rng.gen_range(-10.0..10.0),
            );
            if p.norm() > 0.0 {
                break p;
            }
        })
        .collect();
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
    let bounds = spinor_derivative_bounds(&samples, 1e-3).map_err(err)?;
    let ok = idem <= 1e-12 && eig <= 1e-10 && spin <= 1e-10 && bounds.passed();
    Ok((
        ok,
        format!(
            "1000 samples: idempotence {idem:.1e}, eigen {eig:.1e}, spin {spin:.1e}, bound violations {} (max |du| {:.3})",
            bounds.violations.len(),
            bounds.max_derivative
        ),
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("radial densities", criterion_1),
        ("radial vs 3-D", criterion_2),
        ("sequence limits", criterion_3),
        ("R_n convergence", criterion_4),
        ("velocity identity", criterion_5),
        ("causality", criterion_6),
        ("nonrelativistic suite", criterion_7),
        ("orthogonality decay", criterion_8),
        ("symmetries", criterion_9),
        ("spinor identities", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let (ok, detail) = match f() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "criterion {}: {} {name}: {detail}",
            i + 1,
            if ok { "PASS" } else { "FAIL" }
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
