//! Three-term recurrence coefficients of the orthonormal family `H_n^{λ,a}`.
//!
//! The coefficients satisfy
//!
//! ```text
//! x H_k = a_{k+1} H_{k+1} + b_k H_k + a_k H_{k-1},   H_0 = 1,  H_1 = (x - b_0)/a_1,
//! ```
//!
//! with `b_k = <x H_k, H_k>` (the diagonal) and `a_k = γ_{k-1}/γ_k > 0` (the off-diagonal).
//! They are computed by a discretized Stieltjes procedure: the values of `H_k` on a frozen
//! quadrature grid are propagated by the recurrence and re-orthogonalized against every
//! stored vector, so no moments are ever formed.

use std::fmt::Write as _;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::weights::{discretize, ln_normalization_constant, QuadratureScheme, SupportKind, WeightSpec};

/// Orthonormal recurrence data up to degree `max_degree`.
#[derive(Clone, Debug)]
pub struct RecurrenceTable {
    spec: WeightSpec,
    max_degree: usize,
    /// `b_0 .. b_{N-1}`.
    diag: Vec<f64>,
    /// `a_1 .. a_N`; `offdiag[k]` is `a_{k+1}`.
    offdiag: Vec<f64>,
    ln_norm: f64,
    /// `w_λ(a)`, the normalized weight at the truncation point.
    edge_weight: f64,
    /// `H_k(a)` for `k = 0..=N`.
    edge_values: Vec<f64>,
    /// `m_k = H_k(a)² w_λ(a)` for `k = 0..=N`.
    boundary_mass: Vec<f64>,
    /// Per-degree cache of `∫ H_n H_{n-1} w / y dy` used by the symmetric ladder.
    ladder_integrals: Vec<OnceLock<f64>>,
    scheme: QuadratureScheme,
}

/// Builds the recurrence table for `spec` up to degree `max_degree`.
pub fn build_table(spec: WeightSpec, max_degree: usize, scheme: &QuadratureScheme) -> Result<RecurrenceTable> {
    if max_degree == 0 {
        return Err(Error::Domain("maximum degree must be at least 1".into()));
    }
    spec.validate()?;
    let grid = discretize(&spec, 2 * max_degree + 2, scheme)?;
    if grid.len() <= max_degree {
        return Err(Error::Domain(format!(
            "quadrature grid of {} nodes cannot support degree {max_degree}",
            grid.len()
        )));
    }
    let symmetric = grid.mirrored;
    let m = grid.len();
    let x = &grid.nodes;
    let w = &grid.weights;
    let dot = |u: &[f64], v: &[f64]| -> f64 { u.iter().zip(v).zip(w).map(|((p, q), wi)| wi * p * q).sum() };

    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(max_degree + 1);
    basis.push(vec![1.0; m]);
    let mut diag = Vec::with_capacity(max_degree);
    let mut offdiag = Vec::with_capacity(max_degree);
    for k in 0..max_degree {
        let current = &basis[k];
        let mut u: Vec<f64> = current.iter().zip(x).map(|(v, xi)| xi * v).collect();
        if k > 0 {
            let a_k = offdiag[k - 1];
            let prev = &basis[k - 1];
            u.iter_mut().zip(prev).for_each(|(ui, pi)| *ui -= a_k * pi);
        }
        // an even weight has b_k = 0 exactly
        let b_k = if symmetric { 0.0 } else { dot(&u, current) };
        if !symmetric {
            u.iter_mut().zip(current).for_each(|(ui, ci)| *ui -= b_k * ci);
        }
        // two passes of classical Gram–Schmidt against every stored vector of the right parity
        for _ in 0..2 {
            for (j, v) in basis.iter().enumerate() {
                if symmetric && (j + k + 1) % 2 == 1 {
                    continue;
                }
                let c = dot(&u, v);
                u.iter_mut().zip(v).for_each(|(ui, vi)| *ui -= c * vi);
            }
        }
        let norm2 = dot(&u, &u);
        if !(norm2 > 0.0) || !norm2.is_finite() {
            return Err(Error::PrecisionExhausted {
                degree: k + 1,
                squared_norm: norm2,
            });
        }
        let a_next = norm2.sqrt();
        u.iter_mut().for_each(|ui| *ui /= a_next);
        diag.push(b_k);
        offdiag.push(a_next);
        basis.push(u);
    }

    let ln_norm = ln_normalization_constant(spec.lambda, spec.support)?;
    let a = spec.support.truncation();
    let edge_weight = spec.density_with_log_norm(a, ln_norm);
    let edge_values = forward_values(&diag, &offdiag, a);
    let boundary_mass = edge_values.iter().map(|h| h * h * edge_weight).collect();
    Ok(RecurrenceTable {
        spec,
        max_degree,
        diag,
        offdiag,
        ln_norm,
        edge_weight,
        edge_values,
        boundary_mass,
        ladder_integrals: (0..=max_degree).map(|_| OnceLock::new()).collect(),
        scheme: *scheme,
    })
}

/// `H_0(x), …, H_N(x)` by the forward recurrence.
fn forward_values(diag: &[f64], offdiag: &[f64], x: f64) -> Vec<f64> {
    let n = diag.len();
    let mut out = Vec::with_capacity(n + 1);
    out.push(1.0);
    let mut prev = 0.0;
    let mut cur = 1.0;
    for k in 0..n {
        let a_k = if k == 0 { 0.0 } else { offdiag[k - 1] };
        let next = ((x - diag[k]) * cur - a_k * prev) / offdiag[k];
        prev = cur;
        cur = next;
        out.push(cur);
    }
    out
}

impl RecurrenceTable {
    pub fn spec(&self) -> &WeightSpec {
        &self.spec
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn scheme(&self) -> &QuadratureScheme {
        &self.scheme
    }

    /// `b_0 .. b_{N-1}`.
    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    /// `a_1 .. a_N`.
    pub fn offdiag(&self) -> &[f64] {
        &self.offdiag
    }

    /// `b_k`.
    pub fn b(&self, k: usize) -> f64 {
        self.diag[k]
    }

    /// `a_k`, with `a_0 = 0`.
    pub fn a(&self, k: usize) -> f64 {
        if k == 0 {
            0.0
        } else {
            self.offdiag[k - 1]
        }
    }

    pub fn normalization_constant(&self) -> f64 {
        self.ln_norm.exp()
    }

    pub fn ln_normalization_constant(&self) -> f64 {
        self.ln_norm
    }

    /// `w_λ(a)`.
    pub fn edge_weight(&self) -> f64 {
        self.edge_weight
    }

    /// `H_k(a)`.
    pub fn edge_value(&self, k: usize) -> f64 {
        self.edge_values[k]
    }

    pub fn boundary_masses(&self) -> &[f64] {
        &self.boundary_mass
    }

    /// `H_n(a)² w_λ(a)`, evaluated through the forward recurrence at the truncation point.
    pub fn boundary_mass(&self, n: usize) -> Result<f64> {
        self.check_degree(n)?;
        Ok(self.boundary_mass[n])
    }

    pub(crate) fn check_degree(&self, n: usize) -> Result<()> {
        if n > self.max_degree {
            return Err(Error::Domain(format!(
                "degree {n} exceeds table depth {}",
                self.max_degree
            )));
        }
        Ok(())
    }

    /// Residual of the coefficient identity for degree `n`.
    ///
    /// Half line: `a_{n+1}² + a_n² + b_n² = n + λ + ½ + ½ a m_n`.
    /// Symmetric: `a_n² + a_{n+1}² = n + λ + ½ + a m_n`.
    pub fn identity_residual(&self, n: usize) -> Result<f64> {
        if n + 1 > self.max_degree {
            return Err(Error::Domain(format!(
                "identity at degree {n} needs a_{{n+1}}; table depth is {}",
                self.max_degree
            )));
        }
        let a = self.spec.support.truncation();
        let lhs = self.a(n + 1).powi(2) + self.a(n).powi(2) + self.b(n).powi(2);
        let boundary = match self.spec.support {
            SupportKind::HalfLine { .. } => 0.5 * a * self.boundary_mass[n],
            SupportKind::SymmetricTruncated { .. } => a * self.boundary_mass[n],
        };
        let rhs = n as f64 + self.spec.lambda + 0.5 + boundary;
        Ok((lhs - rhs).abs())
    }

    /// Cached `∫ H_n H_{n-1} w_λ(y) / y dy` over the support.
    pub(crate) fn ladder_integral(&self, n: usize) -> Result<f64> {
        if let Some(v) = self.ladder_integrals[n].get() {
            return Ok(*v);
        }
        let scheme = QuadratureScheme {
            rel_tol: self.scheme.rel_tol.min(1e-12),
            ..self.scheme
        };
        let value = crate::weights::integrate(
            |y| {
                let (hn, hm) = self.pair_values(n, y);
                hn * hm / y
            },
            &self.spec,
            &scheme,
        )?;
        Ok(*self.ladder_integrals[n].get_or_init(|| value))
    }

    /// `(H_n(y), H_{n-1}(y))` without overflow checks.
    pub(crate) fn pair_values(&self, n: usize, y: f64) -> (f64, f64) {
        let mut prev = 0.0;
        let mut cur = 1.0;
        for k in 0..n {
            let next = ((y - self.diag[k]) * cur - self.a(k) * prev) / self.offdiag[k];
            prev = cur;
            cur = next;
        }
        (cur, prev)
    }

    /// CSV with header `k,diag,offdiag,boundary_mass`, one row per degree `k < N`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,diag,offdiag,boundary_mass\n");
        for k in 0..self.max_degree {
            let _ = writeln!(
                out,
                "{},{},{},{}",
                k,
                crate::format::sig17(self.diag[k]),
                crate::format::sig17(self.offdiag[k]),
                crate::format::sig17(self.boundary_mass[k])
            );
        }
        out
    }

    /// Rebuilds a table from [`to_csv`](Self::to_csv) output.
    ///
    /// The truncation-point weight is recovered from `m_0 = w_λ(a)`.
    pub fn from_csv(spec: WeightSpec, text: &str, scheme: &QuadratureScheme) -> Result<Self> {
        spec.validate()?;
        let mut lines = text.lines();
        match lines.next() {
            Some("k,diag,offdiag,boundary_mass") => {}
            other => return Err(Error::Parse(format!("unexpected header {other:?}"))),
        }
        let mut diag = Vec::new();
        let mut offdiag = Vec::new();
        let mut masses = Vec::new();
        for (row, line) in lines.enumerate() {
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 4 {
                return Err(Error::Parse(format!("row {row}: expected 4 fields")));
            }
            let parse = |s: &str| s.parse::<f64>().map_err(|e| Error::Parse(format!("row {row}: {e}")));
            let k: usize = fields[0].parse().map_err(|e| Error::Parse(format!("row {row}: {e}")))?;
            if k != row {
                return Err(Error::Parse(format!("row {row}: degree {k} out of order")));
            }
            diag.push(parse(fields[1])?);
            offdiag.push(parse(fields[2])?);
            masses.push(parse(fields[3])?);
        }
        if diag.is_empty() {
            return Err(Error::Parse("no rows".into()));
        }
        let max_degree = diag.len();
        let ln_norm = ln_normalization_constant(spec.lambda, spec.support)?;
        let edge_weight = masses[0];
        let a = spec.support.truncation();
        let edge_values = forward_values(&diag, &offdiag, a);
        let boundary_mass = edge_values.iter().map(|h| h * h * edge_weight).collect();
        Ok(RecurrenceTable {
            spec,
            max_degree,
            diag,
            offdiag,
            ln_norm,
            edge_weight,
            edge_values,
            boundary_mass,
            ladder_integrals: (0..=max_degree).map(|_| OnceLock::new()).collect(),
            scheme: *scheme,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn table(spec: WeightSpec, n: usize) -> RecurrenceTable {
        build_table(spec, n, &QuadratureScheme::default()).unwrap()
    }

    #[test]
    fn classical_hermite_offdiagonal() {
        let t = table(WeightSpec::symmetric(0.0, 0.0).unwrap(), 4);
        let squares: Vec<f64> = t.offdiag().iter().map(|a| a * a).collect();
        for (got, want) in squares.iter().zip([0.5, 1.0, 1.5, 2.0]) {
            assert!((got - want).abs() < 1e-13, "{squares:?}");
        }
        assert!(t.diag().iter().all(|&b| b == 0.0));
    }

    #[test]
    fn generalized_hermite_offdiagonal() {
        let t = table(WeightSpec::symmetric(1.0, 0.0).unwrap(), 4);
        let squares: Vec<f64> = t.offdiag().iter().map(|a| a * a).collect();
        for (got, want) in squares.iter().zip([1.5, 1.0, 2.5, 2.0]) {
            assert!((got - want).abs() < 1e-12, "{squares:?}");
        }
    }

    #[test]
    fn first_diagonal_is_first_moment() {
        let t = table(WeightSpec::half_line(0.0, 0.0).unwrap(), 1);
        assert!((t.b(0) - 1.0 / PI.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn boundary_masses() {
        let t = table(WeightSpec::half_line(0.0, 0.0).unwrap(), 10);
        assert!((t.boundary_mass(0).unwrap() - 2.0 / PI.sqrt()).abs() < 1e-14);
        let m10 = t.boundary_mass(10).unwrap();
        assert!(m10 >= 0.0 && m10 / 10f64.sqrt() <= 3.0, "{m10}");

        let s = table(WeightSpec::symmetric(0.0, 0.0).unwrap(), 7);
        for n in [1, 3, 5, 7] {
            assert_eq!(s.boundary_mass(n).unwrap(), 0.0);
        }
        assert!(s.boundary_mass(8).is_err());
    }

    #[test]
    fn identities_hold_at_small_degrees() {
        let s = table(WeightSpec::symmetric(0.0, 0.0).unwrap(), 8);
        assert!(s.identity_residual(5).unwrap() < 1e-10);
        let h = table(WeightSpec::half_line(2.5, 0.5).unwrap(), 10);
        assert!(h.identity_residual(8).unwrap() < 1e-8);
        let h0 = table(WeightSpec::half_line(0.0, 0.0).unwrap(), 3);
        assert!(h0.identity_residual(1).unwrap() < 1e-10);
        assert!(h0.identity_residual(3).is_err());
    }

    #[test]
    fn csv_round_trip_is_bit_exact() {
        let scheme = QuadratureScheme::default();
        let t = table(WeightSpec::half_line(1.0, 0.5).unwrap(), 12);
        let back = RecurrenceTable::from_csv(*t.spec(), &t.to_csv(), &scheme).unwrap();
        assert_eq!(back.diag(), t.diag());
        assert_eq!(back.offdiag(), t.offdiag());
        assert_eq!(back.boundary_masses()[..12], t.boundary_masses()[..12]);
    }

    #[test]
    fn zero_degree_rejected() {
        let scheme = QuadratureScheme::default();
        assert!(build_table(WeightSpec::half_line(0.0, 0.0).unwrap(), 0, &scheme).is_err());
    }
}
