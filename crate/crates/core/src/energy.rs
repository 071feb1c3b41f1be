//! Discrete electrostatic energies of point configurations and their large-`n` behaviour.
//!
//! Charges at `x_1 < … < x_n` in the field
//!
//! ```text
//! V(x) = x² + 2λ log(1/|x|) + log C_λ + log(A_n(x)/a_n)
//! ```
//!
//! have energy `F = 2 Σ_{i<j} log(1/|x_i − x_j|) + Σ V(x_i)`, minimized at the zeros of `H_n`.
//! After rescaling by `√n`, `(F − n log C_λ + (nλ + n(n−1)/2) log n)/n²` tends to the
//! equilibrium energy of `Q_α` with `α = lim λ/n`.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::equilibrium::solve_endpoints;
use crate::error::{Error, Result};
use crate::format::sig17;
use crate::polynomials::{short_range_factor, LadderForm};
use crate::recurrence::{build_table, RecurrenceTable};
use crate::weights::{QuadratureScheme, SupportKind, WeightSpec};
use crate::zeros::compute_zeros;

/// The external field felt by `n` charges, built from a recurrence table.
#[derive(Clone, Copy, Debug)]
pub struct ExternalField<'t> {
    table: &'t RecurrenceTable,
    n: usize,
    form: LadderForm,
}

impl<'t> ExternalField<'t> {
    pub fn new(table: &'t RecurrenceTable, n: usize) -> Result<Self> {
        Self::with_form(table, n, LadderForm::Corrected)
    }

    /// `form` selects the short-range term; [`LadderForm::Displayed`] uses `2 + 2b_n/x + m_n/(x−a)`.
    pub fn with_form(table: &'t RecurrenceTable, n: usize, form: LadderForm) -> Result<Self> {
        if n == 0 || n >= table.max_degree() {
            return Err(Error::Domain(format!(
                "field for {n} charges needs 1 <= n < table depth {}",
                table.max_degree()
            )));
        }
        let spec = table.spec();
        if spec.support.truncation() < 0.0 && spec.lambda != 0.0 {
            return Err(Error::Domain("a negative truncation requires lambda = 0".into()));
        }
        Ok(Self { table, n, form })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn table(&self) -> &'t RecurrenceTable {
        self.table
    }

    pub fn lambda(&self) -> f64 {
        self.table.spec().lambda
    }

    /// `m_n`, the boundary mass entering the short-range term.
    pub fn beta(&self) -> f64 {
        self.table.boundary_masses()[self.n]
    }

    fn admissible(&self, x: f64) -> Result<()> {
        if !self.table.spec().support.interior_contains(x) {
            return Err(Error::FieldSingularity { x, argument: f64::NAN });
        }
        if x == 0.0 && self.lambda() != 0.0 {
            return Err(Error::FieldSingularity { x, argument: 0.0 });
        }
        Ok(())
    }

    /// `log(A_n/a_n)` and its derivative.
    fn short_range(&self, x: f64) -> Result<(f64, f64)> {
        self.admissible(x)?;
        let (s, ds) = short_range_factor(self.table, self.n, x, self.form)?;
        if !(s > 0.0 && s.is_finite()) {
            return Err(Error::FieldSingularity { x, argument: s });
        }
        Ok((s.ln(), ds / s))
    }

    /// `V(x)`.
    pub fn potential(&self, x: f64) -> Result<f64> {
        let (log_s, _) = self.short_range(x)?;
        Ok(self.confining(x) + self.table.ln_normalization_constant() + log_s)
    }

    /// `V'(x)`.
    pub fn potential_derivative(&self, x: f64) -> Result<f64> {
        let (_, dlog_s) = self.short_range(x)?;
        let lambda = self.lambda();
        let long = if lambda == 0.0 {
            2.0 * x
        } else {
            2.0 * x - 2.0 * lambda / x
        };
        Ok(long + dlog_s)
    }

    /// `x² + 2λ log(1/|x|)`, the λ-term omitted exactly when `λ = 0`.
    fn confining(&self, x: f64) -> f64 {
        let lambda = self.lambda();
        if lambda == 0.0 {
            x * x
        } else {
            x * x - 2.0 * lambda * x.abs().ln()
        }
    }
}

/// Energy of a configuration: the raw `F` and `E = F − n log C_λ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConfigurationEnergy {
    pub total: f64,
    pub adjusted: f64,
}

/// `F(x_1, …, x_n)` for distinct admissible points.
pub fn total_energy(points: &[f64], field: &ExternalField<'_>) -> Result<ConfigurationEnergy> {
    let mut pair = 0.0;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let d = (points[i] - points[j]).abs();
            if d == 0.0 {
                return Err(Error::SingularConfiguration { i, j });
            }
            pair -= d.ln();
        }
    }
    let mut external = 0.0;
    for &x in points {
        external += field.potential(x)?;
    }
    let total = 2.0 * pair + external;
    Ok(ConfigurationEnergy {
        total,
        adjusted: total - points.len() as f64 * field.table().ln_normalization_constant(),
    })
}

/// `∂F/∂x_i`.
pub fn energy_gradient(points: &[f64], field: &ExternalField<'_>) -> Result<Vec<f64>> {
    let mut g = Vec::with_capacity(points.len());
    for (i, &x) in points.iter().enumerate() {
        let mut s = field.potential_derivative(x)?;
        for (j, &y) in points.iter().enumerate() {
            if i != j {
                if x == y {
                    return Err(Error::SingularConfiguration {
                        i: i.min(j),
                        j: i.max(j),
                    });
                }
                s -= 2.0 / (x - y);
            }
        }
        g.push(s);
    }
    Ok(g)
}

/// Minimizes `F` from `start` by damped Newton steps; the Hessian is a central difference
/// of [`energy_gradient`]. Steps are halved until the configuration stays ordered and
/// admissible and `F` does not increase.
///
/// Intended for small `n` as an independent check that the zeros are the minimizer.
pub fn minimize_energy(start: &[f64], field: &ExternalField<'_>, tol: f64, max_iter: usize) -> Result<Vec<f64>> {
    let mut x = start.to_vec();
    x.sort_by(f64::total_cmp);
    let n = x.len();
    let mut f = total_energy(&x, field)?.total;
    let mut g = energy_gradient(&x, field)?;
    for _ in 0..max_iter {
        let gnorm = norm(&g);
        if gnorm < tol {
            return Ok(x);
        }
        let gap = x.windows(2).map(|w| w[1] - w[0]).fold(1.0f64, f64::min);
        let h = 1e-6 * gap;
        let mut hess = vec![vec![0.0; n]; n];
        for j in 0..n {
            let mut plus = x.clone();
            let mut minus = x.clone();
            plus[j] += h;
            minus[j] -= h;
            let (gp, gm) = (energy_gradient(&plus, field)?, energy_gradient(&minus, field)?);
            for i in 0..n {
                hess[i][j] = (gp[i] - gm[i]) / (2.0 * h);
            }
        }
        let rhs: Vec<f64> = g.iter().map(|v| -v).collect();
        let dir = cholesky_solve(&hess, &rhs).unwrap_or_else(|| rhs.iter().map(|v| v * 1e-3 * gap / gnorm).collect());
        let mut t = 1.0;
        let (x_new, f_new, g_new) = loop {
            let trial: Vec<f64> = x.iter().zip(&dir).map(|(xi, di)| xi + t * di).collect();
            if trial.windows(2).all(|w| w[0] < w[1]) {
                if let (Ok(e), Ok(gt)) = (total_energy(&trial, field), energy_gradient(&trial, field)) {
                    // near the minimum F is flat to rounding; then the gradient decides
                    let flat = (e.total - f).abs() <= 1e-13 * f.abs().max(1.0);
                    if e.total < f || (flat && norm(&gt) < gnorm) {
                        break (trial, e.total, gt);
                    }
                }
            }
            t *= 0.5;
            if t < 1e-12 {
                return Err(Error::Domain(format!(
                    "energy minimization stalled at gradient norm {gnorm:e}"
                )));
            }
        };
        x = x_new;
        f = f_new;
        g = g_new;
    }
    Err(Error::Domain(format!(
        "energy minimization did not reach tolerance {tol:e} in {max_iter} steps"
    )))
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Solves `A x = b` for symmetric positive definite `A`; `None` if `A` is not.
fn cholesky_solve(a: &[Vec<f64>], b: &[f64]) -> Option<Vec<f64>> {
    let n = b.len();
    let mut l = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let s = 0.5 * (a[i][j] + a[j][i]) - (0..j).map(|k| l[i][k] * l[j][k]).sum::<f64>();
            if i == j {
                if !(s > 0.0) {
                    return None;
                }
                l[i][i] = s.sqrt();
            } else {
                l[i][j] = s / l[j][j];
            }
        }
    }
    let mut y = vec![0.0; n];
    for i in 0..n {
        y[i] = (b[i] - (0..i).map(|k| l[i][k] * y[k]).sum::<f64>()) / l[i][i];
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        x[i] = (y[i] - (i + 1..n).map(|k| l[k][i] * x[k]).sum::<f64>()) / l[i][i];
    }
    Some(x)
}

/// One row of an energy study.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnergyReport {
    pub n: usize,
    pub lambda_n: f64,
    /// `E(zeros) = F(zeros) − n log C_λ`.
    pub e_star_n: f64,
    /// `(E_n* + (nλ_n + n(n−1)/2) log n) / n²`.
    pub diagnostic: f64,
    /// Equilibrium energy of the limit problem.
    pub limit: f64,
    pub gap: f64,
}

impl EnergyReport {
    /// `E_n* / (−(n²/2) log n)`.
    pub fn raw_ratio(&self) -> f64 {
        let n = self.n as f64;
        self.e_star_n / (-0.5 * n * n * n.ln())
    }
}

fn diagnostic_from(e: f64, n: usize, lambda: f64) -> f64 {
    let nf = n as f64;
    (e + (nf * lambda + 0.5 * nf * (nf - 1.0)) * nf.ln()) / (nf * nf)
}

/// Energy at the zeros of `H_n` against the limit with `α = λ/n` and truncation `a/√n`.
pub fn energy_at_zeros(table: &RecurrenceTable, n: usize) -> Result<EnergyReport> {
    let spec = table.spec();
    let nf = n as f64;
    let limit = limit_energy(
        spec.lambda / nf,
        spec.support.with_truncation(spec.support.truncation() / nf.sqrt()),
    )?;
    report_with_limit(table, n, limit)
}

fn report_with_limit(table: &RecurrenceTable, n: usize, limit: f64) -> Result<EnergyReport> {
    let field = ExternalField::new(table, n)?;
    let zeros = compute_zeros(table, n)?;
    let e = total_energy(&zeros.zeros, &field)?.adjusted;
    let lambda = table.spec().lambda;
    let diagnostic = diagnostic_from(e, n, lambda);
    Ok(EnergyReport {
        n,
        lambda_n: lambda,
        e_star_n: e,
        diagnostic,
        limit,
        gap: (diagnostic - limit).abs(),
    })
}

/// The diagnostic recomputed in rescaled coordinates `σ_i = x_i/√n`:
/// `(2 Σ_{i<j} log(1/|σ_i − σ_j|) + n Σ V_n(σ_i)) / n²` with
/// `V_n(σ) = σ² + 2(λ/n) log(1/|σ|) + (1/n) log(A_n(√n σ)/a_n)`.
pub fn diagnostic_rescaled(table: &RecurrenceTable, n: usize) -> Result<f64> {
    let field = ExternalField::new(table, n)?;
    let zeros = compute_zeros(table, n)?;
    let nf = n as f64;
    let alpha = table.spec().lambda / nf;
    let sigma = zeros.rescaled();
    let mut pair = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            pair -= (sigma[i] - sigma[j]).abs().ln();
        }
    }
    let mut external = 0.0;
    for (s, x) in sigma.iter().zip(&zeros.zeros) {
        let (log_s, _) = field.short_range(*x)?;
        let long = if alpha == 0.0 {
            s * s
        } else {
            s * s - 2.0 * alpha * s.abs().ln()
        };
        external += long + log_s / nf;
    }
    Ok((2.0 * pair + nf * external) / (nf * nf))
}

/// Equilibrium energy of `Q_α` on the given support.
pub fn limit_energy(alpha: f64, support: SupportKind) -> Result<f64> {
    solve_endpoints(alpha, support.truncation(), support)?.equilibrium_energy()
}

/// Energy reports for `λ_n = round(α n)` and tables truncated at `√n a`, all against the
/// limit for `(α, a)` where `a` is the truncation of `support`.
pub fn convergence_sweep(
    support: SupportKind,
    alpha: f64,
    n_list: &[usize],
    scheme: &QuadratureScheme,
) -> Result<Vec<EnergyReport>> {
    if n_list.windows(2).any(|w| w[1] <= w[0]) || n_list.first() == Some(&0) {
        return Err(Error::Domain("n list must be positive and strictly increasing".into()));
    }
    let limit = limit_energy(alpha, support)?;
    n_list
        .par_iter()
        .map(|&n| {
            let nf = n as f64;
            let lambda = (alpha * nf).round();
            let spec = WeightSpec::new(lambda, support.with_truncation(support.truncation() * nf.sqrt()))?;
            let table = build_table(spec, n + 1, scheme)?;
            report_with_limit(&table, n, limit)
        })
        .collect()
}

/// CSV with header `n,lambda_n,E_star_n,diagnostic,limit,gap`.
pub fn reports_to_csv(reports: &[EnergyReport]) -> String {
    let mut out = String::from("n,lambda_n,E_star_n,diagnostic,limit,gap\n");
    for r in reports {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            r.n,
            sig17(r.lambda_n),
            sig17(r.e_star_n),
            sig17(r.diagnostic),
            sig17(r.limit),
            sig17(r.gap)
        );
    }
    out
}
