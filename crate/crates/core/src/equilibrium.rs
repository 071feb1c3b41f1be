//! Equilibrium measures of `Q_α(x) = x² + 2α log(1/|x|)` on `[a, ∞)` and on `|x| ≥ a`.
//!
//! Every case has an explicit density on `[σ, b]` (mirrored to `[−b, −σ]` for the symmetric
//! support). All integrals against a density use the substitution `x = σ + L sin²(θ/2)`,
//! `L = b − σ`, which removes the square-root behaviour at both edges, followed by a
//! Gauss–Legendre rule graded toward the ends of the `θ` interval.

use std::f64::consts::{PI, SQRT_2};
use std::fmt;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::format::sig17;
use crate::gauss::{integrate_graded, GaussLegendre};
use crate::weights::SupportKind;

/// The seven closed-form regimes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CaseTag {
    /// Half line, `α > 0`, truncation inactive (`a ≤ σ₀`).
    HL1,
    /// Half line, `α > 0`, hard edge at `σ = a`.
    HL2,
    /// Half line, `α = 0`.
    HL3,
    /// Symmetric, `α > 0`, `a = 0`.
    SYM1,
    /// Symmetric, `α > 0`, `0 < a ≤ σ₀`.
    SYM2,
    /// Symmetric, `α > 0`, hard edges at `±a`.
    SYM3,
    /// Symmetric, `α = 0`.
    SYM4,
}

impl CaseTag {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::HL1 => "HL1",
            CaseTag::HL2 => "HL2",
            CaseTag::HL3 => "HL3",
            CaseTag::SYM1 => "SYM1",
            CaseTag::SYM2 => "SYM2",
            CaseTag::SYM3 => "SYM3",
            CaseTag::SYM4 => "SYM4",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The external field `Q_α(x) = x² + 2α log(1/|x|)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FieldSpec {
    pub alpha: f64,
}

impl FieldSpec {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha >= 0.0 && alpha.is_finite()) {
            return Err(Error::Domain(format!("alpha must be >= 0, got {alpha}")));
        }
        Ok(Self { alpha })
    }

    /// `Q_α(x)`; the logarithmic term is dropped exactly when `α = 0`.
    pub fn q(&self, x: f64) -> f64 {
        if self.alpha == 0.0 {
            x * x
        } else {
            x * x - 2.0 * self.alpha * x.abs().ln()
        }
    }
}

/// An equilibrium measure with its case and endpoints.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EquilibriumMeasure {
    pub support: SupportKind,
    pub alpha: f64,
    pub case: CaseTag,
    /// Left end of the (positive piece of the) support.
    pub sigma: f64,
    /// Right end of the support.
    pub b: f64,
}

/// `(σ₀, b)` for the half line with an inactive truncation.
pub fn critical_sigma0_halfline(alpha: f64) -> Result<(f64, f64)> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::Domain(format!("critical point needs alpha > 0, got {alpha}")));
    }
    let beta = (1.0 + 2.0 * alpha + 4.0 * alpha * alpha).sqrt();
    let inner = 2.0 + 4.0 * alpha - 4.0 * alpha * alpha + 2.0 * (1.0 + alpha) * beta;
    let s2 = 5.0 / 3.0 + 5.0 * alpha / 3.0 - beta / 3.0 - 2.0 / 3.0 * inner.sqrt();
    let b_of = |s: f64| 2.0 / 3.0 * ((6.0 * (alpha + 1.0) - 2.0 * s * s).sqrt() - s / 2.0);
    // the closed form loses all digits of σ₀² to cancellation once α is small
    let b_free = 2.0 / 3.0 * 6f64.sqrt();
    let mut s = if s2 > 1e-6 {
        s2.sqrt()
    } else {
        4.0 * alpha * alpha / b_free.powi(3)
    };
    let mut b = b_of(s);
    for _ in 0..60 {
        let (f1, f2) = halfline_system(alpha, s, b);
        let sb = s * b;
        let j11 = -1.5 * (b - s) + (b - 2.0 * s) + alpha / sb.sqrt();
        let j12 = 1.5 * (b - s) + s - alpha * s.sqrt() / b.powf(1.5);
        let j21 = 1.0 + alpha / (s.powf(1.5) * b.sqrt());
        let j22 = 1.0 + alpha / (s.sqrt() * b.powf(1.5));
        let det = j11 * j22 - j12 * j21;
        let ds = (f1 * j22 - f2 * j12) / det;
        let db = (j11 * f2 - j21 * f1) / det;
        let mut s_new = s - ds;
        if s_new <= 0.0 {
            s_new = 0.5 * s;
        }
        let done = (s_new - s).abs() <= 1e-15 * s && db.abs() <= 1e-15 * b;
        s = s_new;
        b -= db;
        if done {
            break;
        }
    }
    let (f1, f2) = halfline_system(alpha, s, b);
    if !(f1.abs() < 1e-10 && f2.abs() < 1e-10 && s > 0.0 && b > s) {
        return Err(Error::Infeasible(format!(
            "critical endpoints for alpha = {alpha} did not converge (residuals {f1:e}, {f2:e})"
        )));
    }
    Ok((s, b))
}

/// The two endpoint equations of the inactive-truncation half-line case.
fn halfline_system(alpha: f64, s: f64, b: f64) -> (f64, f64) {
    (
        halfline_endpoint_equation(alpha, s, b),
        b + s - 2.0 * alpha / (s * b).sqrt(),
    )
}

/// `¾(b−σ)² + σ(b−σ) + 2α√(σ/b) − 2α − 2`.
pub fn halfline_endpoint_equation(alpha: f64, sigma: f64, b: f64) -> f64 {
    let d = b - sigma;
    let root = if alpha == 0.0 {
        0.0
    } else {
        2.0 * alpha * (sigma / b).sqrt()
    };
    0.75 * d * d + sigma * d + root - 2.0 * alpha - 2.0
}

/// `b²/2 + ασ/b − σ²/2 − α − 1`.
pub fn symmetric_endpoint_equation(alpha: f64, sigma: f64, b: f64) -> f64 {
    0.5 * b * b + alpha * sigma / b - 0.5 * sigma * sigma - alpha - 1.0
}

/// `(σ₀, b₀)` for the symmetric support with an inactive truncation.
pub fn critical_sigma0_symmetric(alpha: f64) -> Result<(f64, f64)> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::Domain(format!("critical point needs alpha > 0, got {alpha}")));
    }
    let r = (1.0 + 2.0 * alpha).sqrt();
    let b2 = 1.0 + alpha + r;
    // σ₀² = (1+α)² − (1+2α) over b₀², free of cancellation
    let s2 = alpha * alpha / b2;
    Ok((s2.sqrt(), b2.sqrt()))
}

/// Root of a function that is negative at `lo` and positive at `hi`:
/// bisection to a 1e−6 bracket, then Newton with a bracket safeguard.
fn bracketed_root<F: Fn(f64) -> f64, D: Fn(f64) -> f64>(f: F, df: D, mut lo: f64, mut hi: f64) -> Result<f64> {
    let (flo, fhi) = (f(lo), f(hi));
    if !(flo < 0.0 && fhi > 0.0) {
        return Err(Error::Infeasible(format!(
            "no sign change on [{lo}, {hi}] (values {flo:e}, {fhi:e})"
        )));
    }
    while hi - lo > 1e-6 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..50 {
        let fx = f(x);
        if fx < 0.0 {
            lo = lo.max(x);
        } else {
            hi = hi.min(x);
        }
        let mut next = x - fx / df(x);
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        let step = (next - x).abs();
        x = next;
        if step <= 1e-13 * x.abs().max(1.0) {
            break;
        }
    }
    Ok(x)
}

fn right_bracket(sigma: f64, alpha: f64) -> (f64, f64) {
    (sigma + 1e-9, sigma + 10.0 * (1.0 + (alpha + 1.0).sqrt()))
}

/// Selects the case for `(α, a)` and computes its endpoints.
pub fn solve_endpoints(alpha: f64, a: f64, kind: SupportKind) -> Result<EquilibriumMeasure> {
    FieldSpec::new(alpha)?;
    if !a.is_finite() {
        return Err(Error::Domain(format!("truncation must be finite, got {a}")));
    }
    let support = kind.with_truncation(a);
    let measure = |case, sigma, b| EquilibriumMeasure {
        support,
        alpha,
        case,
        sigma,
        b,
    };
    match kind {
        SupportKind::HalfLine { .. } => {
            if alpha == 0.0 {
                let sigma = a.max(-SQRT_2);
                return Ok(measure(CaseTag::HL3, sigma, halfline_alpha_zero_b(sigma)));
            }
            if a < 0.0 {
                return Err(Error::Domain(format!("alpha > 0 requires a >= 0, got a = {a}")));
            }
            let (s0, b0) = critical_sigma0_halfline(alpha)?;
            if a <= s0 {
                return Ok(measure(CaseTag::HL1, s0, b0));
            }
            let (lo, hi) = right_bracket(a, alpha);
            let b = bracketed_root(
                |b| halfline_endpoint_equation(alpha, a, b),
                |b| 1.5 * (b - a) + a - alpha * a.sqrt() / b.powf(1.5),
                lo,
                hi,
            )?;
            let slack = b + a - 2.0 * alpha / (a * b).sqrt();
            if slack < -1e-12 {
                return Err(Error::Infeasible(format!(
                    "b + sigma - 2 alpha / sqrt(sigma b) = {slack:e} < 0 at sigma = {a}, b = {b}"
                )));
            }
            Ok(measure(CaseTag::HL2, a, b))
        }
        SupportKind::SymmetricTruncated { .. } => {
            if a < 0.0 {
                return Err(Error::Domain(format!("symmetric truncation must be >= 0, got {a}")));
            }
            if alpha == 0.0 {
                return Ok(measure(CaseTag::SYM4, a, (a * a + 2.0).sqrt()));
            }
            let (s0, b0) = critical_sigma0_symmetric(alpha)?;
            if a == 0.0 {
                return Ok(measure(CaseTag::SYM1, s0, b0));
            }
            if a <= s0 {
                return Ok(measure(CaseTag::SYM2, s0, b0));
            }
            let (lo, hi) = right_bracket(a, alpha);
            let b = bracketed_root(
                |b| symmetric_endpoint_equation(alpha, a, b),
                |b| b - alpha * a / (b * b),
                lo,
                hi,
            )?;
            if a * b - alpha < -1e-12 {
                return Err(Error::Infeasible(format!(
                    "sigma b - alpha = {:e} < 0 at sigma = {a}, b = {b}",
                    a * b - alpha
                )));
            }
            Ok(measure(CaseTag::SYM3, a, b))
        }
    }
}

/// `b = (2/3)(√(σ²+6) + σ/2)`.
fn halfline_alpha_zero_b(sigma: f64) -> f64 {
    2.0 / 3.0 * ((sigma * sigma + 6.0).sqrt() + 0.5 * sigma)
}

/// Closed-form energy of the half-line `α = 0` measure; `a` below `−√2` is clamped.
pub fn halfline_alpha_zero_energy(a: f64) -> f64 {
    let a = a.max(-SQRT_2);
    let r = (6.0 + a * a).sqrt();
    let a2 = a * a;
    (81.0 + 72.0 * a2 - 2.0 * a2 * a2 + (30.0 * a + 2.0 * a2 * a) * r - 108.0 * ((r - a) / 6.0).ln()) / 108.0
}

/// Behaviour of the density at the left end of `[σ, b]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum LeftEdge {
    /// `√(x − σ)` vanishing.
    Soft,
    /// `1/√(x − σ)` blow-up.
    Hard,
    /// Finite and nonzero (the two symmetric pieces meet at `σ = 0`).
    Open,
}

/// Integrals on `[σ, b]` need this many levels of grading toward each end.
const GRADING_LEVELS: usize = 18;
const RULE_POINTS: usize = 24;

fn rule() -> &'static GaussLegendre {
    static RULE: std::sync::OnceLock<GaussLegendre> = std::sync::OnceLock::new();
    RULE.get_or_init(|| GaussLegendre::new(RULE_POINTS))
}

impl EquilibriumMeasure {
    pub fn field(&self) -> FieldSpec {
        FieldSpec { alpha: self.alpha }
    }

    pub fn truncation(&self) -> f64 {
        self.support.truncation()
    }

    /// Closed intervals carrying the density.
    pub fn intervals(&self) -> Vec<(f64, f64)> {
        if self.support.is_symmetric() {
            vec![(-self.b, -self.sigma), (self.sigma, self.b)]
        } else {
            vec![(self.sigma, self.b)]
        }
    }

    fn edge(&self) -> LeftEdge {
        match self.case {
            CaseTag::HL1 | CaseTag::SYM1 | CaseTag::SYM2 => LeftEdge::Soft,
            CaseTag::HL2 | CaseTag::SYM3 => LeftEdge::Hard,
            CaseTag::HL3 if self.sigma <= -SQRT_2 => LeftEdge::Soft,
            CaseTag::HL3 => LeftEdge::Hard,
            CaseTag::SYM4 if self.sigma == 0.0 => LeftEdge::Open,
            CaseTag::SYM4 => LeftEdge::Hard,
        }
    }

    /// The smooth factor `h` with `f = √((x−σ)(b−x)) h`, `√((b−x)/(x−σ)) h` or `√(b−x) h`
    /// depending on the left edge; `x` is on the positive piece.
    fn smooth_factor(&self, x: f64) -> f64 {
        let (s, b, al) = (self.sigma, self.b, self.alpha);
        let log_term = |x: f64| if al == 0.0 { 0.0 } else { 2.0 * al * (s / b).sqrt() / x };
        match (self.case, self.edge()) {
            (CaseTag::HL1, _) => (1.0 + al / ((s * b).sqrt() * x)) / PI,
            (CaseTag::HL3, LeftEdge::Soft) => 1.0 / PI,
            (CaseTag::HL2 | CaseTag::HL3, _) => (2.0 * x + b - s - log_term(x)) / (2.0 * PI),
            (CaseTag::SYM1 | CaseTag::SYM2, _) => ((b + x) * (x + s)).sqrt() / (PI * x),
            (CaseTag::SYM4, LeftEdge::Open) => (b + x).sqrt() / PI,
            (CaseTag::SYM3 | CaseTag::SYM4, _) => ((b + x) / (x + s)).sqrt() * (x * x - al * s / b) / (PI * x),
        }
    }

    /// `(t, f(t) dt/dθ)` at `θ ∈ [0, π]` on the positive piece.
    fn theta_point(&self, theta: f64) -> (f64, f64) {
        let l = self.b - self.sigma;
        let (sn, cs) = (0.5 * theta).sin_cos();
        let t = if theta < 0.5 * PI {
            self.sigma + l * sn * sn
        } else {
            self.b - l * cs * cs
        };
        let h = self.smooth_factor(t);
        let jac = match self.edge() {
            LeftEdge::Soft => l * l * sn * sn * cs * cs,
            LeftEdge::Hard => l * cs * cs,
            LeftEdge::Open => l * l.sqrt() * sn * cs * cs,
        };
        (t, jac * h)
    }

    /// `θ` with `σ + L sin²(θ/2) = x` for `x ∈ [σ, b]`.
    fn theta_of(&self, x: f64) -> f64 {
        let l = self.b - self.sigma;
        let left = ((x - self.sigma) / l).clamp(0.0, 1.0);
        if left <= 0.5 {
            2.0 * left.sqrt().asin()
        } else {
            let right = ((self.b - x) / l).clamp(0.0, 1.0);
            2.0 * right.sqrt().acos()
        }
    }

    /// `∫ g(t) f(t) dt` over the positive piece restricted to `θ ∈ [θ0, θ1]`.
    fn piece_integral<G: Fn(f64) -> f64>(&self, th0: f64, th1: f64, g: G) -> f64 {
        integrate_graded(rule(), th0, th1, GRADING_LEVELS, |th| {
            let (t, fw) = self.theta_point(th);
            if fw == 0.0 {
                0.0
            } else {
                g(t) * fw
            }
        })
    }

    /// Mass factor of the positive piece: 1 on the half line, ½ per piece on the symmetric support.
    fn pieces(&self) -> f64 {
        if self.support.is_symmetric() {
            2.0
        } else {
            1.0
        }
    }

    /// `∫ g dμ`.
    pub fn integrate<G: Fn(f64) -> f64>(&self, g: G) -> f64 {
        let pos = self.piece_integral(0.0, PI, &g);
        if self.support.is_symmetric() {
            pos + self.piece_integral(0.0, PI, |t| g(-t))
        } else {
            pos
        }
    }

    /// Density at `x`; zero at a vanishing edge and `+∞` at a hard edge.
    pub fn density(&self, x: f64) -> Result<f64> {
        let y = if self.support.is_symmetric() { x.abs() } else { x };
        if !(y >= self.sigma && y <= self.b) {
            return Err(Error::Domain(format!("x = {x} is outside the support of the measure")));
        }
        let (dl, dr) = (y - self.sigma, self.b - y);
        let h = self.smooth_factor(y);
        let f = match self.edge() {
            LeftEdge::Soft => (dl * dr).sqrt() * h,
            LeftEdge::Open => dr.sqrt() * h,
            LeftEdge::Hard if dl == 0.0 => {
                if h.abs() <= 1e-14 {
                    0.0
                } else {
                    f64::INFINITY
                }
            }
            LeftEdge::Hard => (dr / dl).sqrt() * h,
        };
        Ok(if f < 0.0 && f > -1e-14 { 0.0 } else { f })
    }

    /// `μ((−∞, x])`.
    pub fn cdf(&self, x: f64) -> f64 {
        let partial = |y: f64| -> f64 {
            if y <= self.sigma {
                0.0
            } else if y >= self.b {
                self.piece_integral(0.0, PI, |_| 1.0)
            } else {
                self.piece_integral(0.0, self.theta_of(y), |_| 1.0)
            }
        };
        if self.support.is_symmetric() {
            let half = self.piece_integral(0.0, PI, |_| 1.0);
            if x >= 0.0 {
                half + partial(x)
            } else {
                half - partial(-x)
            }
        } else {
            partial(x)
        }
    }

    /// `|μ(ℝ) − 1|`.
    pub fn mass_error(&self) -> f64 {
        (self.pieces() * self.piece_integral(0.0, PI, |_| 1.0) - 1.0).abs()
    }

    pub fn mean(&self) -> f64 {
        if self.support.is_symmetric() {
            0.0
        } else {
            self.integrate(|t| t)
        }
    }

    /// `U(x) = ∫ log(1/|x − t|) dμ(t)`.
    pub fn log_potential(&self, x: f64) -> Result<f64> {
        if !x.is_finite() {
            return Err(Error::Domain(format!("potential at non-finite x = {x}")));
        }
        let y = if self.support.is_symmetric() { x.abs() } else { x };
        // a node can round onto the singularity itself; its weight is negligible
        let kernel = |t: f64| if t == y { 0.0 } else { -(y - t).abs().ln() };
        let mut u = if y > self.sigma && y < self.b {
            let th = self.theta_of(y);
            self.piece_integral(0.0, th, kernel) + self.piece_integral(th, PI, kernel)
        } else {
            self.piece_integral(0.0, PI, kernel)
        };
        if self.support.is_symmetric() {
            u += self.piece_integral(0.0, PI, |t| if t == -y { 0.0 } else { -(y + t).abs().ln() });
        }
        if !u.is_finite() {
            return Err(Error::QuadratureFailure {
                last: u,
                previous: f64::NAN,
            });
        }
        Ok(u)
    }

    /// Points of the admissible set off the support where `U + Q/2 ≥ C` is checked,
    /// keeping `1e−3` away from every endpoint.
    pub fn exterior_points(&self) -> Vec<f64> {
        const GAP: f64 = 1e-3;
        let a = self.truncation();
        // left gap inside the admissible set
        let lo = if self.support.is_symmetric() || self.alpha > 0.0 {
            // Q is infinite at 0; start the gap a little to its right
            a.max(0.0) + 0.02 * (self.sigma - a.max(0.0))
        } else {
            a
        };
        let gap = self.sigma - GAP - (lo + GAP);
        let mut pts = Vec::new();
        let right = if gap > 1e-2 {
            for i in 0..10 {
                pts.push(lo + GAP + gap * i as f64 / 9.0);
            }
            10
        } else {
            20
        };
        for i in 0..right {
            let u = i as f64 / (right - 1) as f64;
            pts.push(self.b + GAP + 3.0 * u * u);
        }
        pts
    }

    /// Evaluates `U + Q/2` across the support and at exterior points of the admissible set.
    pub fn robin_constant(&self) -> Result<RobinReport> {
        const INTERIOR: usize = 50;
        let q = self.field();
        let l = self.b - self.sigma;
        let mut values = Vec::with_capacity(INTERIOR);
        for i in 0..INTERIOR {
            let th = PI * (i as f64 + 0.5) / INTERIOR as f64;
            let x = self.sigma + 0.5 * l * (1.0 - th.cos());
            values.push(self.log_potential(x)? + 0.5 * q.q(x));
        }
        let c = values.iter().sum::<f64>() / INTERIOR as f64;
        let max_deviation = values.iter().fold(0.0f64, |m, v| m.max((v - c).abs()));
        let mut exterior_slack = f64::INFINITY;
        for x in self.exterior_points() {
            let v = self.log_potential(x)? + 0.5 * q.q(x);
            exterior_slack = exterior_slack.min(v - c);
        }
        Ok(RobinReport {
            constant: c,
            max_deviation,
            exterior_slack,
        })
    }

    /// `E* = C + ½ ∫ Q dμ`.
    pub fn equilibrium_energy(&self) -> Result<f64> {
        let c = self.robin_constant()?.constant;
        let q = self.field();
        Ok(c + 0.5 * self.integrate(|t| q.q(t)))
    }

    /// Closed-form energy where one is known (half line or symmetric with `α = 0`).
    pub fn closed_form_energy(&self) -> Option<f64> {
        match self.case {
            CaseTag::HL3 => Some(halfline_alpha_zero_energy(self.sigma)),
            CaseTag::SYM4 => Some(0.75 + 0.5 * 2f64.ln() + self.sigma * self.sigma),
            _ => None,
        }
    }

    /// Smallest density value on a grid of the open support.
    pub fn min_density(&self, grid: usize) -> f64 {
        let l = self.b - self.sigma;
        (0..grid)
            .map(|i| self.sigma + l * (i as f64 + 0.5) / grid as f64)
            .filter_map(|x| self.density(x).ok())
            .fold(f64::INFINITY, f64::min)
    }

    /// Flat JSON with the endpoints, Robin constant, energy and mass error.
    pub fn to_json(&self) -> Result<String> {
        let robin = self.robin_constant()?;
        let q = self.field();
        let energy = robin.constant + 0.5 * self.integrate(|t| q.q(t));
        let mut s = String::from("{\n");
        let _ = writeln!(s, "  \"support\": \"{}\",", self.support.label());
        let _ = writeln!(s, "  \"alpha\": {},", sig17(self.alpha));
        let _ = writeln!(s, "  \"a\": {},", sig17(self.truncation()));
        let _ = writeln!(s, "  \"case\": \"{}\",", self.case);
        let _ = writeln!(s, "  \"sigma\": {},", sig17(self.sigma));
        let _ = writeln!(s, "  \"b\": {},", sig17(self.b));
        let _ = writeln!(s, "  \"robin_constant\": {},", sig17(robin.constant));
        let _ = writeln!(s, "  \"energy\": {},", sig17(energy));
        let _ = writeln!(s, "  \"mass_error\": {}", sig17(self.mass_error()));
        s.push_str("}\n");
        Ok(s)
    }

    /// Cell-centred grid over the support; the symmetric case splits the points between pieces.
    pub fn density_grid(&self, grid: usize) -> Vec<(f64, f64)> {
        let grid = grid.max(1);
        let mut xs = Vec::with_capacity(grid);
        let l = self.b - self.sigma;
        if self.support.is_symmetric() {
            let half = grid.div_ceil(2);
            for i in (0..half).rev() {
                xs.push(-(self.sigma + l * (i as f64 + 0.5) / half as f64));
            }
            for i in 0..half {
                xs.push(self.sigma + l * (i as f64 + 0.5) / half as f64);
            }
        } else {
            for i in 0..grid {
                xs.push(self.sigma + l * (i as f64 + 0.5) / grid as f64);
            }
        }
        xs.into_iter().map(|x| (x, self.density(x).unwrap_or(0.0))).collect()
    }

    /// CSV with header `x,f`.
    pub fn density_csv(&self, grid: usize) -> String {
        let mut out = String::from("x,f\n");
        for (x, f) in self.density_grid(grid) {
            let _ = writeln!(out, "{},{}", sig17(x), sig17(f));
        }
        out
    }
}

/// Output of [`EquilibriumMeasure::robin_constant`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RobinReport {
    /// Mean of `U + Q/2` over 50 interior points.
    pub constant: f64,
    pub max_deviation: f64,
    /// `min (U + Q/2 − C)` over the exterior points; nonnegative for an equilibrium measure.
    pub exterior_slack: f64,
}
