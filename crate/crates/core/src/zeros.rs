//! Zeros of `H_n` as eigenvalues of the truncated Jacobi matrix, and their empirical measure.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::format::sig17;
use crate::polynomials::eval_poly;
use crate::recurrence::RecurrenceTable;
use crate::weights::{SupportKind, WeightSpec};

/// Zeros of `H_n`, sorted, together with the factor used to rescale them.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroSet {
    pub n: usize,
    pub zeros: Vec<f64>,
    /// Rescaled zeros are `zeros[i] / scale`; `√n` unless overridden.
    pub scale: f64,
    pub spec: WeightSpec,
}

impl ZeroSet {
    pub fn rescaled(&self) -> Vec<f64> {
        self.zeros.iter().map(|x| x / self.scale).collect()
    }

    pub fn with_scale(mut self, scale: f64) -> Result<Self> {
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(Error::Domain(format!("scale must be positive, got {scale}")));
        }
        self.scale = scale;
        Ok(self)
    }

    pub fn empirical_cdf(&self) -> EmpiricalCdf {
        EmpiricalCdf::new(self.rescaled())
    }

    /// CSV with header `i,zero,rescaled`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,zero,rescaled\n");
        for (i, x) in self.zeros.iter().enumerate() {
            let _ = writeln!(out, "{i},{},{}", sig17(*x), sig17(x / self.scale));
        }
        out
    }
}

/// Eigenvalues of the symmetric tridiagonal matrix with diagonal `d` and off-diagonal `e`
/// (`e.len() == d.len() - 1`), by implicit-shift QL. Returned in ascending order.
pub fn tridiagonal_eigenvalues(d: &[f64], e: &[f64]) -> Result<Vec<f64>> {
    let n = d.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    assert_eq!(e.len() + 1, n, "off-diagonal length must be n - 1");
    let mut d = d.to_vec();
    let mut e: Vec<f64> = e.iter().copied().chain(std::iter::once(0.0)).collect();
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 50 {
                return Err(Error::EigenNonConvergence { index: l });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut underflow = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(f64::total_cmp);
    Ok(d)
}

/// Zeros of `H_n`: Jacobi-matrix eigenvalues followed by one Newton step each.
pub fn compute_zeros(table: &RecurrenceTable, n: usize) -> Result<ZeroSet> {
    if n == 0 {
        return Err(Error::Domain("H_0 has no zeros".into()));
    }
    table.check_degree(n)?;
    let eig = tridiagonal_eigenvalues(&table.diag()[..n], &table.offdiag()[..n - 1])?;
    let mut zeros = Vec::with_capacity(n);
    for x in eig {
        let (v, d) = eval_poly(table, n, x)?;
        let step = if d != 0.0 { v / d } else { 0.0 };
        // a step larger than the eigensolver error means the derivative is unreliable here
        zeros.push(if step.abs() < 1e-8 * (1.0 + x.abs()) {
            x - step
        } else {
            x
        });
    }
    let spec = *table.spec();
    if spec.support.is_symmetric() {
        for i in 0..n / 2 {
            let m = 0.5 * (zeros[n - 1 - i] - zeros[i]);
            zeros[i] = -m;
            zeros[n - 1 - i] = m;
        }
        if n % 2 == 1 {
            zeros[n / 2] = 0.0;
        }
    }
    check_support(&spec, &zeros)?;
    if zeros.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::TableInconsistency(format!("zeros of H_{n} are not simple")));
    }
    Ok(ZeroSet {
        n,
        zeros,
        scale: (n as f64).sqrt(),
        spec,
    })
}

fn check_support(spec: &WeightSpec, zeros: &[f64]) -> Result<()> {
    const SLACK: f64 = 1e-8;
    let n = zeros.len();
    match spec.support {
        SupportKind::HalfLine { a } => {
            if let Some(x) = zeros.iter().find(|&&x| x < a - SLACK) {
                return Err(Error::TableInconsistency(format!("zero {x} lies left of a = {a}")));
            }
        }
        SupportKind::SymmetricTruncated { a } => {
            // a gap of the support holds at most one zero; by symmetry it can only be 0 for odd n
            for (i, x) in zeros.iter().enumerate() {
                let centre = n % 2 == 1 && i == n / 2;
                if x.abs() < a - SLACK && !centre {
                    return Err(Error::TableInconsistency(format!(
                        "zero {x} lies in the gap (-{a}, {a})"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// The right-continuous distribution function of `(1/n) Σ δ_{σ_i}`.
#[derive(Clone, Debug, PartialEq)]
pub struct EmpiricalCdf {
    points: Vec<f64>,
}

impl EmpiricalCdf {
    pub fn new(mut points: Vec<f64>) -> Self {
        points.sort_by(f64::total_cmp);
        Self { points }
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Fraction of points `<= x`.
    pub fn eval(&self, x: f64) -> f64 {
        if self.points.is_empty() {
            return 0.0;
        }
        self.points.partition_point(|&p| p <= x) as f64 / self.points.len() as f64
    }

    /// Fraction of points `< x`.
    pub fn left_limit(&self, x: f64) -> f64 {
        if self.points.is_empty() {
            return 0.0;
        }
        self.points.partition_point(|&p| p < x) as f64 / self.points.len() as f64
    }
}

/// `sup_x |F_emp(x) − F(x)|` for a continuous `F`, checked on both sides of every jump.
pub fn ks_distance<F: Fn(f64) -> f64>(emp: &EmpiricalCdf, cdf: F) -> f64 {
    let mut worst = 0.0f64;
    let mut i = 0;
    let pts = emp.points();
    while i < pts.len() {
        let x = pts[i];
        let f = cdf(x);
        worst = worst.max((emp.left_limit(x) - f).abs()).max((emp.eval(x) - f).abs());
        while i < pts.len() && pts[i] == x {
            i += 1;
        }
    }
    worst
}
