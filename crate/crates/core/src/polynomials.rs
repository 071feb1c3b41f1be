//! Evaluation of `H_n` and the ladder / second-order differential equation it satisfies.
//!
//! With `v(x) = x² − 2λ ln|x|` the polynomials obey the lowering relation
//!
//! ```text
//! H_n' = A_n H_{n-1} − B_n H_n
//! ```
//!
//! and, after eliminating `H_{n-1}` with the raising relation, the second-order equation
//! `H_n'' + R_n H_n' + S_n H_n = 0` where
//!
//! ```text
//! R_n = −2x + 2λ/x − A_n'/A_n,
//! S_n = B_n' − B_n A_n'/A_n − B_n (2x − 2λ/x + B_n) + (a_n/a_{n-1}) A_n A_{n-1}.
//! ```
//!
//! Two forms of `A_n, B_n` are available. [`LadderForm::Corrected`] evaluates the boundary
//! terms of the lowering operator at the truncation points; [`LadderForm::Displayed`] is the
//! commonly quoted closed form, which drops `−a_n m_n / x` from the half-line `A_n` and uses
//! `2a_n H_n(a)H_{n-1}(a) x/(a²−x²)` for the symmetric boundary term of `B_n`. The second form
//! is kept as a diagnostic: its ladder residual is not small.

use crate::error::{Error, Result};
use crate::recurrence::RecurrenceTable;
use crate::weights::SupportKind;

/// Which closed form of the ladder coefficients to use.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum LadderForm {
    #[default]
    Corrected,
    Displayed,
}

/// `A_n, B_n, R_n, S_n` at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OdeCoefficients {
    /// `A_n(x)`, multiplies `H_{n-1}` in the lowering relation.
    pub a: f64,
    /// `B_n(x)`.
    pub b: f64,
    /// `R_n(x)`, the first-order coefficient.
    pub r: f64,
    /// `S_n(x)`, the zeroth-order coefficient.
    pub s: f64,
}

const OVERFLOW_GUARD: f64 = 1e290;

/// `(H_n(x), H_n'(x))` by the forward recurrence and its derivative run in tandem.
pub fn eval_poly(table: &RecurrenceTable, n: usize, x: f64) -> Result<(f64, f64)> {
    eval_with_second(table, n, x).map(|(v, d, _)| (v, d))
}

/// `(H_n, H_n', H_n'')` at `x`, all from differentiated recurrences.
pub fn eval_with_second(table: &RecurrenceTable, n: usize, x: f64) -> Result<(f64, f64, f64)> {
    table.check_degree(n)?;
    let (mut p0, mut d0, mut s0) = (0.0, 0.0, 0.0);
    let (mut p1, mut d1, mut s1) = (1.0, 0.0, 0.0);
    for k in 0..n {
        let a_next = table.a(k + 1);
        let a_k = table.a(k);
        let shift = x - table.b(k);
        let p2 = (shift * p1 - a_k * p0) / a_next;
        let d2 = (p1 + shift * d1 - a_k * d0) / a_next;
        let s2 = (2.0 * d1 + shift * s1 - a_k * s0) / a_next;
        (p0, d0, s0) = (p1, d1, s1);
        (p1, d1, s1) = (p2, d2, s2);
        if !(p1.abs() < OVERFLOW_GUARD && d1.abs() < OVERFLOW_GUARD && s1.abs() < OVERFLOW_GUARD) {
            return Err(Error::ScaledEvaluation { degree: n, x });
        }
    }
    Ok((p1, d1, s1))
}

/// Closed-form pieces of the ladder at one point for degree `n`.
#[derive(Clone, Copy, Debug)]
struct Ladder {
    /// `A_n / a_n` and its derivative.
    a_hat: f64,
    a_hat_prime: f64,
    /// `A_{n-1} / a_{n-1}` (well defined for `n = 1`).
    a_hat_lower: f64,
    b: f64,
    b_prime: f64,
}

fn check_point(table: &RecurrenceTable, n: usize, x: f64) -> Result<()> {
    if n == 0 || n >= table.max_degree() {
        return Err(Error::Domain(format!(
            "ladder coefficients need 1 <= n <= N-1 = {}, got {n}",
            table.max_degree().saturating_sub(1)
        )));
    }
    let a = table.spec().support.truncation();
    if x == 0.0 || x == a || x == -a {
        return Err(Error::Pole { x });
    }
    if !table.spec().support.interior_contains(x) {
        return Err(Error::Domain(format!("x = {x} is outside the support interior")));
    }
    Ok(())
}

/// `2λ ∫ H_k² w / y`, equal to `2 b_k − m_k` on the half line; exactly zero when `λ = 0`.
fn half_line_a_numerator(table: &RecurrenceTable, k: usize) -> f64 {
    if table.spec().lambda == 0.0 {
        0.0
    } else {
        2.0 * table.b(k) - table.boundary_masses()[k]
    }
}

fn a_hat_half(table: &RecurrenceTable, k: usize, x: f64, form: LadderForm) -> (f64, f64) {
    let a = table.spec().support.truncation();
    let m = table.boundary_masses()[k];
    let c = match form {
        LadderForm::Corrected => half_line_a_numerator(table, k),
        LadderForm::Displayed => 2.0 * table.b(k),
    };
    let xa = x - a;
    // keeps x = 0 admissible when the 1/x term is absent
    let (inv, inv_prime) = if c == 0.0 { (0.0, 0.0) } else { (c / x, -c / (x * x)) };
    (2.0 + inv + m / xa, inv_prime - m / (xa * xa))
}

/// `A_n(x)/a_n` and its derivative: the argument of the short-range part of the external field.
pub fn short_range_factor(table: &RecurrenceTable, n: usize, x: f64, form: LadderForm) -> Result<(f64, f64)> {
    if n >= table.max_degree() {
        return Err(Error::Domain(format!(
            "short-range factor of degree {n} needs a table deeper than {}",
            table.max_degree()
        )));
    }
    let a = table.spec().support.truncation();
    if x == a || x == -a || (x == 0.0 && table.spec().lambda != 0.0) {
        return Err(Error::Pole { x });
    }
    Ok(match table.spec().support {
        SupportKind::HalfLine { .. } => a_hat_half(table, n, x, form),
        SupportKind::SymmetricTruncated { .. } => a_hat_sym(table, n, x),
    })
}

fn a_hat_sym(table: &RecurrenceTable, k: usize, x: f64) -> (f64, f64) {
    let a = table.spec().support.truncation();
    let am = a * table.boundary_masses()[k];
    let d = x * x - a * a;
    (2.0 * (1.0 + am / d), -4.0 * am * x / (d * d))
}

fn ladder(table: &RecurrenceTable, n: usize, x: f64, form: LadderForm) -> Result<Ladder> {
    let lambda = table.spec().lambda;
    let a = table.spec().support.truncation();
    let a_n = table.a(n);
    // w(a) H_n(a) H_{n-1}(a)
    let p = table.edge_weight() * table.edge_value(n) * table.edge_value(n - 1);
    match table.spec().support {
        SupportKind::HalfLine { .. } => {
            let (a_hat, a_hat_prime) = a_hat_half(table, n, x, form);
            let (a_hat_lower, _) = a_hat_half(table, n - 1, x, form);
            // 2a_n² − n − a_n p = 2λ a_n ∫ H_n H_{n-1} w / y
            let e = match form {
                LadderForm::Corrected if lambda == 0.0 => 0.0,
                _ => 2.0 * a_n * a_n - n as f64 - a_n * p,
            };
            let xa = x - a;
            Ok(Ladder {
                a_hat,
                a_hat_prime,
                a_hat_lower,
                b: a_n * p / xa + e / x,
                b_prime: -a_n * p / (xa * xa) - e / (x * x),
            })
        }
        SupportKind::SymmetricTruncated { .. } => {
            let (a_hat, a_hat_prime) = a_hat_sym(table, n, x);
            let (a_hat_lower, _) = a_hat_sym(table, n - 1, x);
            let integral_term = if lambda == 0.0 {
                0.0
            } else {
                2.0 * lambda * a_n * table.ladder_integral(n)?
            };
            let d = x * x - a * a;
            let (boundary, boundary_prime) = match form {
                LadderForm::Corrected => (2.0 * a_n * p * x / d, -2.0 * a_n * p * (x * x + a * a) / (d * d)),
                LadderForm::Displayed => {
                    let q = table.edge_value(n) * table.edge_value(n - 1);
                    (-2.0 * a_n * q * x / d, 2.0 * a_n * q * (x * x + a * a) / (d * d))
                }
            };
            Ok(Ladder {
                a_hat,
                a_hat_prime,
                a_hat_lower,
                b: boundary + integral_term / x,
                b_prime: boundary_prime - integral_term / (x * x),
            })
        }
    }
}

fn v_prime(lambda: f64, x: f64) -> f64 {
    if lambda == 0.0 {
        2.0 * x
    } else {
        2.0 * x - 2.0 * lambda / x
    }
}

fn assemble(table: &RecurrenceTable, n: usize, x: f64, l: &Ladder) -> OdeCoefficients {
    let a_n = table.a(n);
    let vp = v_prime(table.spec().lambda, x);
    let log_deriv = l.a_hat_prime / l.a_hat;
    let a = a_n * l.a_hat;
    OdeCoefficients {
        a,
        b: l.b,
        r: -vp - log_deriv,
        s: l.b_prime - l.b * log_deriv - l.b * (vp + l.b) + a * a_n * l.a_hat_lower,
    }
}

/// `A_n, B_n, R_n, S_n` at an interior point `x ∉ {0, ±a}`, corrected form.
pub fn ode_coefficients(table: &RecurrenceTable, n: usize, x: f64) -> Result<OdeCoefficients> {
    ode_coefficients_with(table, n, x, LadderForm::Corrected)
}

pub fn ode_coefficients_with(table: &RecurrenceTable, n: usize, x: f64, form: LadderForm) -> Result<OdeCoefficients> {
    check_point(table, n, x)?;
    let l = ladder(table, n, x, form)?;
    Ok(assemble(table, n, x, &l))
}

/// `|H_n' − A_n H_{n-1} + B_n H_n|` relative to `max(|H_n|, |H_{n-1}|, |H_n'|)`.
pub fn ladder_residual(table: &RecurrenceTable, n: usize, x: f64, form: LadderForm) -> Result<f64> {
    let c = ode_coefficients_with(table, n, x, form)?;
    let (h, dh) = eval_poly(table, n, x)?;
    let (h_lower, _) = eval_poly(table, n - 1, x)?;
    let scale = h.abs().max(h_lower.abs()).max(dh.abs());
    Ok((dh - c.a * h_lower + c.b * h).abs() / scale.max(f64::MIN_POSITIVE))
}

/// Normalized residual of `H'' + R H' + S H = 0`.
///
/// `H''` comes from differentiating the lowering relation,
/// `H_n'' = A_n' H_{n-1} + A_n H_{n-1}' − B_n' H_n − B_n H_n'`, so no finite differences enter.
pub fn ode_residual(table: &RecurrenceTable, n: usize, x: f64) -> Result<f64> {
    ode_residual_with(table, n, x, LadderForm::Corrected)
}

pub fn ode_residual_with(table: &RecurrenceTable, n: usize, x: f64, form: LadderForm) -> Result<f64> {
    check_point(table, n, x)?;
    let l = ladder(table, n, x, form)?;
    let c = assemble(table, n, x, &l);
    let a_n = table.a(n);
    let (h, dh) = eval_poly(table, n, x)?;
    let (h_lower, dh_lower) = eval_poly(table, n - 1, x)?;
    let a_prime = a_n * l.a_hat_prime;
    let d2h = a_prime * h_lower + c.a * dh_lower - l.b_prime * h - l.b * dh;
    let terms = [d2h, c.r * dh, c.s * h];
    let scale = terms.iter().fold(1.0f64, |m, t| m.max(t.abs()));
    Ok(terms.iter().sum::<f64>().abs() / scale)
}
