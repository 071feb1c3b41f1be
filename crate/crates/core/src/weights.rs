//! Truncated generalized Hermite weights `|x|^{2λ} e^{-x²} / C_λ` and quadrature against them.
//!
//! Two supports are modelled: the half line `[a, ∞)` and the symmetric truncation
//! `(-∞, -a] ∪ [a, ∞)`. Integrals are computed with composite Gauss–Legendre panels on the
//! positive half of the support (the symmetric case folds `x ↦ -x`), geometrically graded
//! toward the origin when `|x|^{2λ}` is not smooth there. Beyond the cutoff the tail of the
//! weight is bounded by the majorant
//!
//! ```text
//! ∫_T^∞ x^{2λ} e^{-x²} dx  ≤  T^{2λ-1} e^{-T²} / (2 - (2λ-1)/T²),
//! ```
//!
//! and panels are appended until that bound drops below the requested tolerance.

use crate::error::{Error, Result};
use crate::gauss::{graded_panels_toward_lo, GaussLegendre, GRADING_RATIO};

/// Width of the uniform panels at refinement level zero.
const BASE_PANEL_WIDTH: f64 = 0.5;
/// Hard limit on how far the outward panel sweep may run past the initial cutoff.
const MAX_TAIL_EXTENSION: f64 = 200.0;

/// Where the weight lives.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SupportKind {
    /// `[a, +∞)`.
    HalfLine { a: f64 },
    /// `(-∞, -a] ∪ [a, +∞)` with `a ≥ 0`.
    SymmetricTruncated { a: f64 },
}

impl SupportKind {
    pub fn half_line(a: f64) -> Self {
        SupportKind::HalfLine { a }
    }

    pub fn symmetric(a: f64) -> Self {
        SupportKind::SymmetricTruncated { a }
    }

    /// The truncation point `a`.
    pub fn truncation(&self) -> f64 {
        match *self {
            SupportKind::HalfLine { a } | SupportKind::SymmetricTruncated { a } => a,
        }
    }

    pub fn is_symmetric(&self) -> bool {
        matches!(self, SupportKind::SymmetricTruncated { .. })
    }

    /// Same kind, different truncation point.
    pub fn with_truncation(&self, a: f64) -> Self {
        match self {
            SupportKind::HalfLine { .. } => SupportKind::HalfLine { a },
            SupportKind::SymmetricTruncated { .. } => SupportKind::SymmetricTruncated { a },
        }
    }

    /// Closed-support membership.
    pub fn contains(&self, x: f64) -> bool {
        match *self {
            SupportKind::HalfLine { a } => x >= a,
            SupportKind::SymmetricTruncated { a } => x.abs() >= a,
        }
    }

    pub fn interior_contains(&self, x: f64) -> bool {
        match *self {
            SupportKind::HalfLine { a } => x > a,
            SupportKind::SymmetricTruncated { a } => x.abs() > a,
        }
    }

    /// Short label used in file formats: `half` or `sym`.
    pub fn label(&self) -> &'static str {
        match self {
            SupportKind::HalfLine { .. } => "half",
            SupportKind::SymmetricTruncated { .. } => "sym",
        }
    }
}

/// A truncated generalized Hermite weight.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeightSpec {
    pub lambda: f64,
    pub support: SupportKind,
}

impl WeightSpec {
    pub fn new(lambda: f64, support: SupportKind) -> Result<Self> {
        let spec = WeightSpec { lambda, support };
        spec.validate()?;
        Ok(spec)
    }

    pub fn half_line(lambda: f64, a: f64) -> Result<Self> {
        Self::new(lambda, SupportKind::HalfLine { a })
    }

    pub fn symmetric(lambda: f64, a: f64) -> Result<Self> {
        Self::new(lambda, SupportKind::SymmetricTruncated { a })
    }

    pub fn validate(&self) -> Result<()> {
        let a = self.support.truncation();
        if !self.lambda.is_finite() || self.lambda <= -0.5 {
            return Err(Error::Domain(format!(
                "exponent lambda = {} must be finite and > -1/2",
                self.lambda
            )));
        }
        if !a.is_finite() {
            return Err(Error::Domain(format!("truncation point a = {a} is not finite")));
        }
        match self.support {
            SupportKind::SymmetricTruncated { a } if a < 0.0 => {
                Err(Error::Domain(format!("symmetric truncation needs a >= 0, got {a}")))
            }
            SupportKind::HalfLine { a } if a < 0.0 && self.lambda != 0.0 => Err(Error::Domain(format!(
                "half-line weight with lambda = {} must exclude 0 from its interior (a = {a} < 0)",
                self.lambda
            ))),
            _ => Ok(()),
        }
    }

    /// `ln(|x|^{2λ} e^{-x²})`; the `λ`-term is dropped exactly when `λ = 0`.
    pub fn log_unnormalized(&self, x: f64) -> f64 {
        if self.lambda == 0.0 {
            -x * x
        } else {
            2.0 * self.lambda * x.abs().ln() - x * x
        }
    }

    /// Left end of the positive half of the support (`a` itself for the half line).
    fn start(&self) -> f64 {
        self.support.truncation()
    }
}

/// Controls for the composite Gauss–Legendre quadrature.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureScheme {
    /// Gauss–Legendre nodes per panel.
    pub panel_nodes: usize,
    /// Distance beyond the bulk of the weight at which the uniform panels stop.
    pub tail_cutoff: f64,
    pub rel_tol: f64,
    /// Number of panel-width halvings allowed before giving up.
    pub max_doublings: u32,
}

impl Default for QuadratureScheme {
    fn default() -> Self {
        QuadratureScheme {
            panel_nodes: 40,
            tail_cutoff: (1e16f64).ln().sqrt() + 2.0,
            rel_tol: 1e-12,
            max_doublings: 12,
        }
    }
}

impl QuadratureScheme {
    pub fn validate(&self) -> Result<()> {
        if self.panel_nodes < 2 {
            return Err(Error::Domain("panel node count must be at least 2".into()));
        }
        if !(self.rel_tol > 0.0) {
            return Err(Error::Domain("relative tolerance must be positive".into()));
        }
        if !(self.tail_cutoff > 0.0) {
            return Err(Error::Domain("tail cutoff must be positive".into()));
        }
        Ok(())
    }

    /// The same scheme with twice as many nodes per panel.
    pub fn doubled(&self) -> Self {
        QuadratureScheme {
            panel_nodes: 2 * self.panel_nodes,
            ..*self
        }
    }
}

fn needs_grading(spec: &WeightSpec) -> bool {
    spec.start() == 0.0 && (2.0 * spec.lambda).fract() != 0.0
}

/// Number of graded levels so the unresolved sliver `[0, δ]` carries relative mass < 1e-17.
fn grading_levels(lambda: f64) -> usize {
    let exponent = 2.0 * lambda + 1.0;
    let levels = 17.0 * std::f64::consts::LN_10 / (exponent * (1.0 / GRADING_RATIO).ln());
    (levels.ceil() as usize).clamp(8, 400)
}

/// Panels covering `[start, upper]` for the positive half of the support.
fn panel_layout(spec: &WeightSpec, upper: f64, width: f64) -> Vec<(f64, f64)> {
    let start = spec.start();
    let mut panels = Vec::new();
    let mut uniform_from = start;
    if needs_grading(spec) {
        let graded_end = width.min(upper);
        panels.extend(graded_panels_toward_lo(0.0, graded_end, grading_levels(spec.lambda)));
        uniform_from = graded_end;
    }
    if upper > uniform_from {
        let count = ((upper - uniform_from) / width).ceil().max(1.0) as usize;
        let h = (upper - uniform_from) / count as f64;
        for k in 0..count {
            let lo = uniform_from + k as f64 * h;
            let hi = if k + 1 == count { upper } else { lo + h };
            panels.push((lo, hi));
        }
    }
    panels
}

/// `ln ∫_T^∞ x^{2λ} e^{-x²} dx` upper bound, valid for `T > 0`, `2T² > 2λ - 1`.
fn log_tail_majorant(lambda: f64, t: f64) -> f64 {
    let e = 2.0 * lambda - 1.0;
    let denom = 2.0 - e.max(0.0) / (t * t);
    if t <= 0.0 || denom <= 0.0 {
        return f64::INFINITY;
    }
    e * t.ln() - t * t - denom.ln()
}

/// Point where `|x|^{2λ} e^{-x²}` peaks on the positive half of the support.
fn peak_location(spec: &WeightSpec) -> f64 {
    let start = spec.start();
    let free = if spec.lambda > 0.0 { spec.lambda.sqrt() } else { 0.0 };
    free.max(start)
}

/// `ln C_λ` where `C_λ = ∫ |x|^{2λ} e^{-x²} dx` over the support.
pub fn ln_normalization_constant(lambda: f64, support: SupportKind) -> Result<f64> {
    let spec = WeightSpec::new(lambda, support)?;
    let peak = peak_location(&spec);
    let shift = if lambda < 0.0 { 0.0 } else { spec.log_unnormalized(peak) };
    let upper = peak.max(0.0) + 12.0;
    let rule = GaussLegendre::new(40);
    let sum_at = |width: f64| -> f64 {
        panel_layout(&spec, upper, width)
            .into_iter()
            .map(|(lo, hi)| rule.integrate(lo, hi, |x| (spec.log_unnormalized(x) - shift).exp()))
            .sum()
    };
    let coarse = sum_at(BASE_PANEL_WIDTH);
    let fine = sum_at(0.5 * BASE_PANEL_WIDTH);
    if !(fine > 0.0) || (fine - coarse).abs() > 1e-13 * fine {
        return Err(Error::QuadratureFailure {
            last: fine,
            previous: coarse,
        });
    }
    let half = shift + fine.ln();
    Ok(if support.is_symmetric() {
        half + std::f64::consts::LN_2
    } else {
        half
    })
}

/// `C_λ = ∫ |x|^{2λ} e^{-x²} dx` over the support.
///
/// For `a = 0` this is `Γ(λ+½)/2` on the half line and `Γ(λ+½)` on the symmetric support.
pub fn normalization_constant(lambda: f64, support: SupportKind) -> Result<f64> {
    if !(lambda > -0.5) {
        return Err(Error::Domain(format!("lambda = {lambda} must exceed -1/2")));
    }
    ln_normalization_constant(lambda, support).map(f64::exp)
}

/// Nodes and weights discretizing the normalized weight on the positive half of the support.
///
/// For the symmetric support the nodes are the positive ones only and the weights carry the
/// mass of both mirror images, so `Σ wᵢ g(xᵢ) = ∫ g w` for every even `g`.
#[derive(Clone, Debug)]
pub struct DiscreteMeasure {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub mirrored: bool,
}

impl DiscreteMeasure {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

fn bulk_width(lambda: f64, degree: usize) -> f64 {
    (2.0 * degree as f64 + 2.0 * lambda.max(0.0) + 1.0).sqrt()
}

/// A grid that integrates `p · w` exactly (to rounding) for polynomials up to `degree`.
pub fn discretize(spec: &WeightSpec, degree: usize, scheme: &QuadratureScheme) -> Result<DiscreteMeasure> {
    spec.validate()?;
    scheme.validate()?;
    let ln_c = ln_normalization_constant(spec.lambda, spec.support)?;
    let ln_c_half = if spec.mirrored() {
        ln_c - std::f64::consts::LN_2
    } else {
        ln_c
    };
    let start = spec.start();
    let upper = start.max(0.0) + bulk_width(spec.lambda, degree) + scheme.tail_cutoff;
    // keep roughly eight panels per oscillation scale of the highest-degree polynomial
    let width = BASE_PANEL_WIDTH.min(4.0 / (degree as f64 + 1.0).sqrt());
    let rule = GaussLegendre::new(scheme.panel_nodes);
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    for (lo, hi) in panel_layout(spec, upper, width) {
        for (x, w) in rule.mapped(lo, hi) {
            let v = w * (spec.log_unnormalized(x) - ln_c_half).exp();
            if v > 0.0 {
                nodes.push(x);
                weights.push(v);
            }
        }
    }
    let total: f64 = weights.iter().sum();
    if !(total > 0.0) || (total - 1.0).abs() > 1e-10 {
        return Err(Error::QuadratureFailure {
            last: total,
            previous: 1.0,
        });
    }
    weights.iter_mut().for_each(|w| *w /= total);
    Ok(DiscreteMeasure {
        nodes,
        weights,
        mirrored: spec.mirrored(),
    })
}

impl WeightSpec {
    fn mirrored(&self) -> bool {
        self.support.is_symmetric()
    }

    /// The normalized weight `w_λ(x)`, zero off the support.
    pub fn density(&self, x: f64) -> Result<f64> {
        if !self.support.contains(x) {
            return Ok(0.0);
        }
        let ln_c = ln_normalization_constant(self.lambda, self.support)?;
        Ok(self.density_with_log_norm(x, ln_c))
    }

    pub(crate) fn density_with_log_norm(&self, x: f64, ln_c: f64) -> f64 {
        if self.lambda > 0.0 && x == 0.0 {
            return 0.0;
        }
        (self.log_unnormalized(x) - ln_c).exp()
    }
}

/// One pass of the composite rule at a given panel width; returns `(∫ f w, ∫ |f| w)`.
fn composite_pass<F: Fn(f64) -> f64>(
    f: &F,
    spec: &WeightSpec,
    rule: &GaussLegendre,
    ln_c_half: f64,
    width: f64,
    cutoff: f64,
    tol: f64,
) -> (f64, f64) {
    let symmetric = spec.support.is_symmetric();
    let eval = |x: f64| -> f64 {
        if symmetric {
            0.5 * (f(x) + f(-x))
        } else {
            f(x)
        }
    };
    let eval_abs = |x: f64| -> f64 {
        if symmetric {
            0.5 * (f(x).abs() + f(-x).abs())
        } else {
            f(x).abs()
        }
    };
    let mut sum = 0.0;
    let mut abs_sum = 0.0;
    let panel = |lo: f64, hi: f64| -> (f64, f64) {
        let mut s = 0.0;
        let mut sa = 0.0;
        for (x, w) in rule.mapped(lo, hi) {
            let wx = w * (spec.log_unnormalized(x) - ln_c_half).exp();
            if wx == 0.0 {
                continue;
            }
            s += wx * eval(x);
            sa += wx * eval_abs(x);
        }
        (s, sa)
    };
    for (lo, hi) in panel_layout(spec, cutoff, width) {
        let (s, sa) = panel(lo, hi);
        sum += s;
        abs_sum += sa;
    }
    // outward sweep: stop once a panel is negligible and the weight tail is certified small
    let mut lo = cutoff;
    while lo < cutoff + MAX_TAIL_EXTENSION {
        let hi = lo + width;
        let (s, sa) = panel(lo, hi);
        sum += s;
        abs_sum += sa;
        let tail = (log_tail_majorant(spec.lambda, hi) - ln_c_half).exp();
        if sa <= 1e-3 * tol * abs_sum && tail <= 1e-3 * tol {
            break;
        }
        lo = hi;
    }
    (sum, abs_sum)
}

/// `∫ f(x) w_λ(x) dx` over the support of `spec`, to the scheme's relative tolerance.
///
/// Panel widths are halved until two successive estimates agree to `rel_tol` relative to
/// `∫ |f| w` (so integrands that cancel to zero converge too).
pub fn integrate<F: Fn(f64) -> f64>(f: F, spec: &WeightSpec, scheme: &QuadratureScheme) -> Result<f64> {
    spec.validate()?;
    scheme.validate()?;
    let ln_c = ln_normalization_constant(spec.lambda, spec.support)?;
    let ln_c_half = if spec.mirrored() {
        ln_c - std::f64::consts::LN_2
    } else {
        ln_c
    };
    let rule = GaussLegendre::new(scheme.panel_nodes);
    let cutoff = spec.start().max(0.0) + bulk_width(spec.lambda, 0) + scheme.tail_cutoff;
    let mut previous: Option<f64> = None;
    let mut width = BASE_PANEL_WIDTH;
    for _ in 0..=scheme.max_doublings {
        let (value, scale) = composite_pass(&f, spec, &rule, ln_c_half, width, cutoff, scheme.rel_tol);
        if !value.is_finite() {
            return Err(Error::QuadratureFailure {
                last: value,
                previous: previous.unwrap_or(f64::NAN),
            });
        }
        if let Some(prev) = previous {
            if (value - prev).abs() <= scheme.rel_tol * scale.max(f64::MIN_POSITIVE) {
                return Ok(value);
            }
        }
        previous = Some(value);
        width *= 0.5;
    }
    let last = previous.unwrap_or(f64::NAN);
    let (value, _) = composite_pass(&f, spec, &rule, ln_c_half, width, cutoff, scheme.rel_tol);
    Err(Error::QuadratureFailure {
        last: value,
        previous: last,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn scheme() -> QuadratureScheme {
        QuadratureScheme::default()
    }

    #[test]
    fn constant_integrates_to_one() {
        for spec in [
            WeightSpec::half_line(0.0, 0.0).unwrap(),
            WeightSpec::half_line(2.5, 0.5).unwrap(),
            WeightSpec::half_line(0.0, -1.0).unwrap(),
            WeightSpec::symmetric(1.0, 0.0).unwrap(),
            WeightSpec::symmetric(0.3, 0.0).unwrap(),
            WeightSpec::symmetric(-0.25, 0.0).unwrap(),
        ] {
            let v = integrate(|_| 1.0, &spec, &scheme()).unwrap();
            assert!((v - 1.0).abs() < 1e-12, "{spec:?}: {v}");
        }
    }

    #[test]
    fn odd_integrand_vanishes_on_symmetric_support() {
        let spec = WeightSpec::symmetric(0.0, 0.0).unwrap();
        let v = integrate(|x| x, &spec, &scheme()).unwrap();
        assert!(v.abs() < 1e-14, "{v}");
    }

    #[test]
    fn first_moment_of_half_gaussian() {
        let spec = WeightSpec::half_line(0.0, 0.0).unwrap();
        let v = integrate(|x| x, &spec, &scheme()).unwrap();
        assert!((v - 1.0 / PI.sqrt()).abs() < 1e-13, "{v}");
    }

    #[test]
    fn normalization_constants_at_zero_truncation() {
        let c = normalization_constant(0.0, SupportKind::half_line(0.0)).unwrap();
        assert!((c - PI.sqrt() / 2.0).abs() < 1e-14);
        let c = normalization_constant(0.0, SupportKind::symmetric(0.0)).unwrap();
        assert!((c - PI.sqrt()).abs() < 1e-14);
        let c = normalization_constant(1.0, SupportKind::half_line(0.0)).unwrap();
        assert!((c - PI.sqrt() / 4.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(
            normalization_constant(-0.5, SupportKind::half_line(0.0)),
            Err(Error::Domain(_))
        ));
        assert!(WeightSpec::symmetric(0.0, -1.0).is_err());
        assert!(WeightSpec::half_line(1.0, -0.5).is_err());
        assert!(WeightSpec::half_line(0.0, -0.5).is_ok());
        let bad = QuadratureScheme {
            panel_nodes: 1,
            ..QuadratureScheme::default()
        };
        assert!(integrate(|_| 1.0, &WeightSpec::half_line(0.0, 0.0).unwrap(), &bad).is_err());
    }

    #[test]
    fn tail_majorant_bounds_the_gaussian_tail() {
        // ∫_3^∞ e^{-x²} dx = √π/2 · erfc(3) ≈ 1.9577193e-5
        let exact = 1.957_719_3e-5;
        let bound = log_tail_majorant(0.0, 3.0).exp();
        assert!(bound >= exact && bound < 1.1 * exact, "{bound}");
    }

    #[test]
    fn discrete_measure_matches_adaptive_quadrature() {
        let spec = WeightSpec::half_line(1.0, 0.5).unwrap();
        let grid = discretize(&spec, 30, &scheme()).unwrap();
        let m4: f64 = grid.nodes.iter().zip(&grid.weights).map(|(x, w)| w * x.powi(4)).sum();
        let want = integrate(|x| x.powi(4), &spec, &scheme()).unwrap();
        assert!((m4 - want).abs() < 1e-12 * want);
    }
}
