//! Rank of polynomial families: exact elimination over `Q(sqrt5, i)` and a
//! floating SVD fallback.

use std::collections::{BTreeMap, BTreeSet};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly};
use crate::scalars::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankResult {
    pub rank: usize,
    /// Indices (into the input) of a maximal linearly independent subset,
    /// chosen greedily in input order.
    pub independent: Vec<usize>,
}

type SparseRow = BTreeMap<Monomial, Scalar>;

/// Exact rank of the coefficient matrix of `rows`.
///
/// Rows are reduced one at a time against an echelon basis keyed by leading
/// monomial (the largest in grlex order); a row that survives reduction
/// becomes a new pivot.
pub fn exact_rank(rows: &[Poly]) -> Result<RankResult> {
    if let Some(first) = rows.first() {
        for r in rows {
            if r.chart() != first.chart() {
                return Err(Error::ChartMismatch(first.chart(), r.chart()));
            }
        }
    }
    let mut pivots: BTreeMap<Monomial, SparseRow> = BTreeMap::new();
    let mut independent = Vec::new();
    for (idx, row) in rows.iter().enumerate() {
        let mut r: SparseRow = row.terms().map(|(m, c)| (*m, c.clone())).collect();
        while let Some((lead, lc)) = r.iter().next_back().map(|(m, c)| (*m, c.clone())) {
            match pivots.get(&lead) {
                Some(p) => {
                    // pivot rows are monic in their leading term
                    for (m, c) in p {
                        let delta = &lc * c;
                        let entry = r.entry(*m).or_default();
                        *entry -= &delta;
                        if entry.is_zero() {
                            r.remove(m);
                        }
                    }
                }
                None => {
                    let inv = lc.inv()?;
                    for c in r.values_mut() {
                        *c = &*c * &inv;
                    }
                    pivots.insert(lead, r);
                    independent.push(idx);
                    break;
                }
            }
        }
    }
    Ok(RankResult {
        rank: independent.len(),
        independent,
    })
}

/// Numerical rank: singular values above `tol * max(1, sigma_max)` are counted.
pub fn float_rank(rows: &[Poly], tol: f64) -> usize {
    let cols: Vec<Monomial> = rows
        .iter()
        .flat_map(|r| r.terms().map(|(m, _)| *m))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if rows.is_empty() || cols.is_empty() {
        return 0;
    }
    let col_of: BTreeMap<Monomial, usize> = cols.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut mat = DMatrix::<Complex64>::zeros(rows.len(), cols.len());
    for (i, r) in rows.iter().enumerate() {
        let norm = r
            .terms()
            .map(|(_, c)| c.to_complex().norm())
            .fold(0.0f64, f64::max);
        if norm == 0.0 {
            continue;
        }
        for (m, c) in r.terms() {
            mat[(i, col_of[m])] = c.to_complex() / norm;
        }
    }
    complex_matrix_rank(mat, tol)
}

pub fn complex_matrix_rank(mat: DMatrix<Complex64>, tol: f64) -> usize {
    let sv = mat.singular_values();
    let smax = sv.iter().cloned().fold(0.0f64, f64::max);
    let cutoff = tol * smax.max(1.0);
    sv.iter().filter(|&&s| s > cutoff).count()
}
