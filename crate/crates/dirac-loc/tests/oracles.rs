use dirac_loc::dynamics::{nr_spectral_evolve, sample_nr_state};
use dirac_loc::fields::boosted_field_summary;
use dirac_loc::grid::CartesianGrid;
use dirac_loc_core::nr::{nr_gaussian_state, nr_green, nr_state_evolved, NRPacketParams};
use dirac_loc_core::quadrature::GaussLegendre;
use dirac_loc_core::{Complex64, LocalizationLabel, MomentumState, SpinLabel, Vec3};

/// `χ(q, t) = ∫G(q, q′, t)χ(q′, 0)d³q′` by tensor Gauss–Legendre, against
/// both the closed form and the spectral propagator.
#[test]
fn green_function_propagates_packet() {
    let p = NRPacketParams::new(1, 1.0, Vec3::new(0.5, 0.0, 0.0), Vec3::new(0.5, 0.0, 0.25)).unwrap();
    let t = 1.0;
    let rule: Vec<(f64, f64)> = GaussLegendre::new(120).mapped(-8.0, 8.0).collect();
    let g = CartesianGrid::new(64, 24.0).unwrap();
    let spectral = nr_spectral_evolve(&sample_nr_state(&p, &g), &g, t);
    for idx in [g.index(32, 32, 32), g.index(36, 30, 33), g.index(40, 32, 28)] {
        let q = g.position(idx);
        let mut acc = Complex64::new(0.0, 0.0);
        for &(x, wx) in &rule {
            for &(y, wy) in &rule {
                for &(z, wz) in &rule {
                    let src = Vec3::new(x, y, z);
                    acc += nr_green(q, src, t).unwrap() * nr_gaussian_state(&p, src) * (wx * wy * wz);
                }
            }
        }
        let exact = nr_state_evolved(&p, q, t);
        assert!((acc - exact).norm() < 1e-4, "{acc} vs {exact}");
        assert!((spectral[idx] - exact).norm() < 1e-8);
    }
}

#[test]
fn green_function_rejects_nonpositive_time() {
    assert!(nr_green(Vec3::ZERO, Vec3::ZERO, 0.0).is_err());
}

/// The boosted time component integrates to `cosh σ + v₃ sinh σ` in the
/// limit; the hyperplane weight carries the extra `cosh σ`.
#[test]
fn boosted_field_weight_approaches_point_limit() {
    let sigma: f64 = 0.5;
    let a = Vec3::new(0.3, 0.0, 0.5);
    let v = Vec3::new(0.0, 0.0, 0.4);
    let target = sigma.cosh() + v.z * sigma.sinh();
    let mut ratio_err = Vec::new();
    let mut moment_err = Vec::new();
    for n in [4, 8] {
        let s = MomentumState::from_label(LocalizationLabel::new(a, v, SpinLabel::Up, n).unwrap(), 1.0).unwrap();
        let g = CartesianGrid::auto_for(&s).unwrap();
        let b = boosted_field_summary(&s, &g, sigma).unwrap();
        ratio_err.push((b.weight_ratio - target).abs());
        assert!((b.hyperplane_weight - sigma.cosh() * b.weight_ratio * b.weight).abs() < 1e-12);
        let expected = Vec3::new(a.x, a.y, a.z * sigma.cosh());
        moment_err.push((b.first_moment - expected).norm());
    }
    assert!(ratio_err[1] < ratio_err[0], "{ratio_err:?}");
    // the first moment already sits at the point limit for finite n; what is
    // left is grid truncation
    assert!(moment_err.iter().all(|e| *e < 1e-6), "{moment_err:?}");
}
