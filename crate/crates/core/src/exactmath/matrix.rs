use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rational::fmt_rational;
use super::Rational;
use crate::{Error, Result};

/// Dense row-major matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Rational::one();
        }
        m
    }

    /// Matrix unit `E_ij` of size `n`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m.entries[i * n + j] = Rational::one();
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::shape(
                "matrix entries",
                rows * cols,
                entries.len(),
            ));
        }
        Ok(RatMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::shape("matrix row length", c, bad.len()));
        }
        Ok(RatMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Integer matrix, row-major. Panics if `values.len() != rows * cols`.
    pub fn from_i64(rows: usize, cols: usize, values: &[i64]) -> Self {
        assert_eq!(values.len(), rows * cols);
        RatMatrix {
            rows,
            cols,
            entries: values.iter().map(|&v| super::rat(v)).collect(),
        }
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(nrows: usize, columns: &[Vec<Rational>]) -> Self {
        let mut m = Self::zeros(nrows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), nrows, "column length mismatch");
            for (i, x) in col.iter().enumerate() {
                m.entries[i * m.cols + j] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| c * x).collect(),
        }
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "matrix-vector shape mismatch");
        let mut out = vec![Rational::zero(); self.rows];
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = self.get(i, j);
                if !a.is_zero() {
                    *o += a * x;
                }
            }
        }
        out
    }

    pub fn checked_mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.rows {
            return Err(Error::shape(
                "matrix product",
                format!("{} rows", self.cols),
                format!("{} rows", other.rows),
            ));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    fn same_shape(&self, other: &RatMatrix, context: &'static str) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::shape(
                context,
                format!("{}x{}", self.rows, self.cols),
                format!("{}x{}", other.rows, other.cols),
            ));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &RatMatrix) -> Result<RatMatrix> {
        self.same_shape(other, "matrix sum")?;
        Ok(RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn checked_sub(&self, other: &RatMatrix) -> Result<RatMatrix> {
        self.same_shape(other, "matrix difference")?;
        Ok(RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
        })
    }
}

/// `ab - ba` for square matrices of equal size.
pub fn mat_commutator(a: &RatMatrix, b: &RatMatrix) -> Result<RatMatrix> {
    if !a.is_square() || !b.is_square() || a.rows != b.rows {
        return Err(Error::shape(
            "commutator",
            format!("square {}x{}", a.rows, a.rows),
            format!("{}x{} and {}x{}", a.rows, a.cols, b.rows, b.cols),
        ));
    }
    a.checked_mul(b)?.checked_sub(&b.checked_mul(a)?)
}

// Operator forms panic on shape mismatch; use the checked methods at API
// boundaries.

impl Add for &RatMatrix {
    type Output = RatMatrix;
    fn add(self, rhs: &RatMatrix) -> RatMatrix {
        self.checked_add(rhs).expect("matrix add")
    }
}

impl Sub for &RatMatrix {
    type Output = RatMatrix;
    fn sub(self, rhs: &RatMatrix) -> RatMatrix {
        self.checked_sub(rhs).expect("matrix sub")
    }
}

impl Mul for &RatMatrix {
    type Output = RatMatrix;
    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        self.checked_mul(rhs).expect("matrix mul")
    }
}

impl Neg for &RatMatrix {
    type Output = RatMatrix;
    fn neg(self) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| -x).collect(),
        }
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(fmt_rational).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_commutes_with_itself() {
        let i = RatMatrix::identity(3);
        assert!(mat_commutator(&i, &i).unwrap().is_zero());
    }

    #[test]
    fn commutator_of_matrix_units() {
        let e12 = RatMatrix::unit(2, 0, 1);
        let e21 = RatMatrix::unit(2, 1, 0);
        // E12 E21 = E11 and E21 E12 = E22
        assert_eq!(
            mat_commutator(&e12, &e21).unwrap(),
            RatMatrix::from_i64(2, 2, &[1, 0, 0, -1])
        );
    }

    #[test]
    fn self_commutator_vanishes() {
        let a = RatMatrix::from_i64(3, 3, &[1, -2, 0, 3, 5, 7, -1, 0, 2]);
        assert!(mat_commutator(&a, &a).unwrap().is_zero());
    }

    #[test]
    fn commutator_rejects_mismatched_shapes() {
        let a = RatMatrix::identity(2);
        let b = RatMatrix::identity(3);
        assert!(matches!(mat_commutator(&a, &b), Err(Error::Shape { .. })));
        let c = RatMatrix::zeros(2, 3);
        assert!(mat_commutator(&c, &c).is_err());
    }

    #[test]
    fn apply_and_transpose() {
        let a = RatMatrix::from_i64(2, 3, &[1, 2, 3, 4, 5, 6]);
        let v = super::super::vector::from_i64(&[1, 0, -1]);
        assert_eq!(a.apply(&v), super::super::vector::from_i64(&[-2, -2]));
        assert_eq!(a.transpose().transpose(), a);
        assert_eq!(a.transpose().get(2, 1), &super::super::rat(6));
    }
}
