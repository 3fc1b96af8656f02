//! Gauss–Legendre rules and the composite/spherical product rules built on
//! them.

use alloc::vec::Vec;
use core::f64::consts::PI;
use num_traits::Float;

use crate::vec3::Vec3;

/// An `n`-point Gauss–Legendre rule on `[-1, 1]`.
#[derive(Clone, Debug)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Nodes by Newton iteration on the three-term Legendre recurrence.
    pub fn new(n: usize) -> Self {
        assert!(n > 0, "Gauss-Legendre rule needs at least one node");
        let mut nodes = alloc::vec![0.0; n];
        let mut weights = alloc::vec![0.0; n];
        let m = n.div_ceil(2);
        let nf = n as f64;
        for i in 0..m {
            let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Nodes and weights affinely mapped onto `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (b + a);
        self.nodes
            .iter()
            .zip(self.weights.iter())
            .map(move |(&x, &w)| (mid + half * x, half * w))
    }

    pub fn integrate(&self, a: f64, b: f64, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.mapped(a, b).map(|(x, w)| w * f(x)).sum()
    }
}

/// `(P_n(x), P_n'(x))`.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Composite Gauss–Legendre over consecutive panels `[b_i, b_{i+1}]`.
#[derive(Clone, Debug)]
pub struct CompositeRule {
    points: Vec<(f64, f64)>,
}

impl CompositeRule {
    pub fn new(breakpoints: &[f64], per_panel: usize) -> Self {
        let gl = GaussLegendre::new(per_panel);
        let mut points = Vec::with_capacity(per_panel * breakpoints.len());
        for pair in breakpoints.windows(2) {
            if pair[1] > pair[0] {
                points.extend(gl.mapped(pair[0], pair[1]));
            }
        }
        CompositeRule { points }
    }

    /// Panels doubling in width from `first` up to `end`, starting at 0.
    ///
    /// Resolves integrands with structure on the scale `first` near the
    /// origin and smooth decay further out.
    pub fn geometric(first: f64, end: f64, per_panel: usize) -> Self {
        CompositeRule::new(&geometric_breakpoints(first, end, &[]), per_panel)
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.points.iter().map(|&(x, w)| w * f(x)).sum()
    }
}

/// `0, first, 2·first, 4·first, …, end`, merged with any extra interior
/// breakpoints.
pub fn geometric_breakpoints(first: f64, end: f64, extra: &[f64]) -> Vec<f64> {
    let mut b = alloc::vec![0.0];
    let mut x = first.min(end);
    while x < end {
        b.push(x);
        x *= 2.0;
    }
    b.push(end);
    for &e in extra {
        if e > 0.0 && e < end {
            b.push(e);
        }
    }
    b.sort_by(|a, c| a.partial_cmp(c).unwrap());
    b.dedup_by(|a, c| (*a - *c).abs() < 1e-12 * end.max(1.0));
    b
}

/// Node counts for a [`SphericalRule`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SphericalOrder {
    /// Gauss–Legendre nodes per radial panel.
    pub radial_per_panel: usize,
    /// Gauss–Legendre nodes in `cos θ`.
    pub polar: usize,
    /// Equispaced azimuthal nodes (trapezoid, spectrally accurate).
    pub azimuthal: usize,
}

impl SphericalOrder {
    pub const fn new(radial_per_panel: usize, polar: usize, azimuthal: usize) -> Self {
        SphericalOrder {
            radial_per_panel,
            polar,
            azimuthal,
        }
    }

    pub fn doubled(self) -> Self {
        SphericalOrder {
            radial_per_panel: 2 * self.radial_per_panel,
            polar: 2 * self.polar,
            azimuthal: 2 * self.azimuthal,
        }
    }
}

/// Product rule for `∫ g(x) d³x` in spherical coordinates about the origin,
/// with a configurable polar axis.
#[derive(Clone, Debug)]
pub struct SphericalRule {
    radial: CompositeRule,
    directions: Vec<(Vec3, f64)>,
}

impl SphericalRule {
    /// `breakpoints` are the radial panel edges (first must be 0).
    pub fn new(breakpoints: &[f64], axis: Vec3, order: SphericalOrder) -> Self {
        let radial = CompositeRule::new(breakpoints, order.radial_per_panel);
        let axis = axis.normalized().unwrap_or(Vec3::Z);
        let (e1, e2) = axis.orthonormal_complement();
        let polar = GaussLegendre::new(order.polar);
        let dphi = 2.0 * PI / order.azimuthal as f64;
        let mut directions = Vec::with_capacity(order.polar * order.azimuthal);
        for (&mu, &wmu) in polar.nodes().iter().zip(polar.weights()) {
            let sin_t = (1.0 - mu * mu).max(0.0).sqrt();
            for k in 0..order.azimuthal {
                let phi = (k as f64 + 0.5) * dphi;
                let d = e1 * (sin_t * phi.cos()) + e2 * (sin_t * phi.sin()) + axis * mu;
                directions.push((d, wmu * dphi));
            }
        }
        SphericalRule { radial, directions }
    }

    pub fn len(&self) -> usize {
        self.radial.len() * self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Calls `f(x, w)` for every node `x` with volume weight `w`
    /// (including the `r²` Jacobian).
    pub fn for_each(&self, mut f: impl FnMut(Vec3, f64)) {
        for &(r, wr) in self.radial.points() {
            let wr = wr * r * r;
            for &(d, wd) in &self.directions {
                f(d * r, wr * wd);
            }
        }
    }

    pub fn integrate(&self, mut g: impl FnMut(Vec3) -> f64) -> f64 {
        let mut acc = 0.0;
        self.for_each(|x, w| acc += w * g(x));
        acc
    }
}
