//! Gauss–Legendre rules and composite helpers built on them.

use std::f64::consts::PI;

/// An `n`-point Gauss–Legendre rule on `[-1, 1]`.
#[derive(Clone, Debug)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Nodes are found by Newton iteration on `P_n` from the Tricomi initial guesses.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "a Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() <= 1e-16 * x.abs().max(1.0) {
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
        Self { nodes, weights }
    }

    /// Nodes and weights mapped affinely onto `[lo, hi]`.
    pub fn mapped(&self, lo: f64, hi: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&t, &w)| (mid + half * t, half * w))
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, lo: f64, hi: f64, mut f: F) -> f64 {
        self.mapped(lo, hi).map(|(x, w)| w * f(x)).sum()
    }
}

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

/// Ratio between consecutive panels of a geometrically graded mesh.
pub(crate) const GRADING_RATIO: f64 = 0.15;

/// Panels on `[lo, hi]` shrinking geometrically toward `lo`.
///
/// The innermost panel ends at distance `(hi - lo) * ratio^levels` from `lo`.
pub(crate) fn graded_panels_toward_lo(lo: f64, hi: f64, levels: usize) -> Vec<(f64, f64)> {
    let width = hi - lo;
    let mut panels = Vec::with_capacity(levels + 1);
    let mut outer = 1.0;
    for _ in 0..levels {
        let inner = outer * GRADING_RATIO;
        panels.push((lo + width * inner, lo + width * outer));
        outer = inner;
    }
    panels.push((lo, lo + width * outer));
    panels
}

/// Integrates `f` on `[lo, hi]` with panels graded toward both ends.
///
/// Handles integrable endpoint singularities (logarithmic, inverse square root after
/// substitution) and near-endpoint spikes.
pub(crate) fn integrate_graded<F: FnMut(f64) -> f64>(
    rule: &GaussLegendre,
    lo: f64,
    hi: f64,
    levels: usize,
    mut f: F,
) -> f64 {
    if hi <= lo {
        return 0.0;
    }
    let mid = 0.5 * (lo + hi);
    let mut sum = 0.0;
    for (p, q) in graded_panels_toward_lo(lo, mid, levels) {
        sum += rule.integrate(p, q, &mut f);
    }
    for (p, q) in graded_panels_toward_lo(lo, mid, levels) {
        // mirror onto [mid, hi]
        let (mp, mq) = (hi - (q - lo), hi - (p - lo));
        sum += rule.integrate(mp, mq, &mut f);
    }
    sum
}
