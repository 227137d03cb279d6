//! Exact linear solving by fraction-free (Bareiss) elimination.
//!
//! Rational rows are first scaled to integer rows by the lcm of their
//! denominators; elimination then stays in the integers, each division by
//! the previous pivot being exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::rational::denominator_lcm;
use super::{RatMatrix, Rational};
use crate::{Error, Result};

/// Row echelon form over the integers.
#[derive(Debug, Clone)]
struct Echelon {
    rows: Vec<Vec<BigInt>>,
    /// Pivot column of each of the first `pivots.len()` rows.
    pivots: Vec<usize>,
}

fn integer_rows(m: &RatMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows())
        .map(|i| {
            let row = m.row(i);
            let l = denominator_lcm(row);
            row.iter()
                .map(|q| q.numer() * (&l / q.denom()))
                .collect()
        })
        .collect()
}

fn bareiss(mut m: Vec<Vec<BigInt>>, ncols: usize) -> Echelon {
    let nrows = m.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&p| !m[p][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let (top, bottom) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = &pivot_row[c];
        for row in bottom.iter_mut() {
            let lead = std::mem::take(&mut row[c]);
            for j in c + 1..ncols {
                let num = pivot * &row[j] - &lead * &pivot_row[j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero(), "inexact Bareiss division");
                row[j] = q;
            }
        }
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    Echelon { rows: m, pivots }
}

fn back_substitute(e: &Echelon, nvars: usize, rhs_col: Option<usize>) -> Vec<Rational> {
    let mut x = vec![Rational::zero(); nvars];
    for (r, &c) in e.pivots.iter().enumerate().rev() {
        let row = &e.rows[r];
        let mut s = match rhs_col {
            Some(b) => Rational::from_integer(row[b].clone()),
            None => Rational::zero(),
        };
        for j in c + 1..nvars {
            if !row[j].is_zero() && !x[j].is_zero() {
                s -= Rational::from_integer(row[j].clone()) * &x[j];
            }
        }
        x[c] = s / Rational::from_integer(row[c].clone());
    }
    x
}

/// Some solution of `a x = b` (free variables set to zero), or `None`.
pub fn solve_linear(a: &RatMatrix, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
    if b.len() != a.rows() {
        return Err(Error::shape("linear system right-hand side", a.rows(), b.len()));
    }
    let n = a.cols();
    let mut aug = RatMatrix::zeros(a.rows(), n + 1);
    for i in 0..a.rows() {
        for j in 0..n {
            aug.set(i, j, a.get(i, j).clone());
        }
        aug.set(i, n, b[i].clone());
    }
    let e = bareiss(integer_rows(&aug), n + 1);
    if e.pivots.last() == Some(&n) {
        return Ok(None);
    }
    Ok(Some(back_substitute(&e, n, Some(n))))
}

pub fn rank(a: &RatMatrix) -> usize {
    bareiss(integer_rows(a), a.cols()).pivots.len()
}

/// Basis of `{x : a x = 0}`, one vector per free column.
pub fn nullspace(a: &RatMatrix) -> Vec<Vec<Rational>> {
    let n = a.cols();
    let e = bareiss(integer_rows(a), n);
    let free: Vec<usize> = (0..n).filter(|c| !e.pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            // Fix the free column to one and move it to the right-hand side.
            let mut sys = e.clone();
            for row in sys.rows.iter_mut() {
                let v = -std::mem::take(&mut row[f]);
                row.push(v);
            }
            let mut x = back_substitute(&sys, n, Some(n));
            x[f] = Rational::one();
            x
        })
        .collect()
}

/// Coefficients `c` with `sum c_i columns_i = target`, matrices flattened to
/// vectors. `None` when the target is outside the span.
pub fn solve_preimage(columns: &[RatMatrix], target: &RatMatrix) -> Result<Option<Vec<Rational>>> {
    for c in columns {
        if c.rows() != target.rows() || c.cols() != target.cols() {
            return Err(Error::shape(
                "preimage column",
                format!("{}x{}", target.rows(), target.cols()),
                format!("{}x{}", c.rows(), c.cols()),
            ));
        }
    }
    if columns.is_empty() {
        return Ok(target.is_zero().then(Vec::new));
    }
    let cols: Vec<Vec<Rational>> = columns.iter().map(|c| c.entries().to_vec()).collect();
    let a = RatMatrix::from_columns(target.entries().len(), &cols);
    solve_linear(&a, target.entries())
}

/// Repeated membership tests against one fixed set of linearly independent
/// vectors. Picks a nonsingular square subsystem once, then each query is a
/// small product followed by a full exact verification.
#[derive(Debug, Clone)]
pub struct SpanSolver {
    columns: Vec<Vec<Rational>>,
    pivot_rows: Vec<usize>,
    inverse: RatMatrix,
}

impl SpanSolver {
    pub fn new(columns: Vec<Vec<Rational>>) -> Result<Self> {
        let m = columns.len();
        let len = columns.first().map_or(0, Vec::len);
        if let Some(bad) = columns.iter().find(|c| c.len() != len) {
            return Err(Error::shape("span column", len, bad.len()));
        }
        // Pivot columns of A^T are linearly independent rows of A.
        let at = RatMatrix::from_rows(columns.clone())?;
        let e = bareiss(integer_rows(&at), len);
        if e.pivots.len() < m {
            return Err(Error::precondition(
                format!("span columns are linearly dependent (rank {} < {m})", e.pivots.len()),
                None,
            ));
        }
        let pivot_rows = e.pivots;
        let sub_rows: Vec<Vec<Rational>> = pivot_rows
            .iter()
            .map(|&r| columns.iter().map(|c| c[r].clone()).collect())
            .collect();
        let sub = RatMatrix::from_rows(sub_rows)?;
        let mut inv_cols = Vec::with_capacity(m);
        for k in 0..m {
            let rhs = super::vector::unit(m, k);
            inv_cols.push(solve_linear(&sub, &rhs)?.expect("nonsingular subsystem"));
        }
        Ok(SpanSolver {
            columns,
            pivot_rows,
            inverse: RatMatrix::from_columns(m, &inv_cols),
        })
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    /// Unique coefficients expressing `target` in the span, if any.
    pub fn solve(&self, target: &[Rational]) -> Option<Vec<Rational>> {
        let len = self.columns.first().map_or(target.len(), Vec::len);
        assert_eq!(target.len(), len, "span target length mismatch");
        let sub: Vec<Rational> = self.pivot_rows.iter().map(|&r| target[r].clone()).collect();
        let coeffs = self.inverse.apply(&sub);
        let mut recombined = super::vector::zeros(len);
        for (c, col) in coeffs.iter().zip(&self.columns) {
            super::vector::axpy(&mut recombined, c, col);
        }
        (recombined == target).then_some(coeffs)
    }
}
