use num_traits::{One, Zero};

use crate::exactmath::poly::Exponents;
use crate::exactmath::{vector, RatMatrix, Rational};
use crate::{Error, IdentityReport, Result, Witness};

/// Finite-dimensional associative algebra given by structure constants,
/// `e_i * e_j = sum_k c[i][j][k] e_k`, optionally with a unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssocAlgebra {
    dim: usize,
    constants: Vec<Rational>,
    unit: Option<Vec<Rational>>,
}

impl AssocAlgebra {
    /// Validates associativity on all basis triples and the unit laws.
    pub fn new(dim: usize, constants: Vec<Rational>, unit: Option<Vec<Rational>>) -> Result<Self> {
        if constants.len() != dim * dim * dim {
            return Err(Error::shape("algebra structure constants", dim * dim * dim, constants.len()));
        }
        if let Some(u) = &unit {
            if u.len() != dim {
                return Err(Error::shape("algebra unit", dim, u.len()));
            }
        }
        let a = AssocAlgebra {
            dim,
            constants,
            unit,
        };
        let assoc = a.check_associativity();
        if let Some(w) = assoc.witness() {
            return Err(Error::precondition("product is not associative", Some(w.clone())));
        }
        if let Some(w) = a.check_unit().witness() {
            return Err(Error::precondition("unit laws fail", Some(w.clone())));
        }
        Ok(a)
    }

    pub fn from_products(
        dim: usize,
        mut product: impl FnMut(usize, usize) -> Vec<Rational>,
        unit: Option<Vec<Rational>>,
    ) -> Result<Self> {
        let mut constants = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let v = product(i, j);
                if v.len() != dim {
                    return Err(Error::shape("algebra product value", dim, v.len()));
                }
                constants.extend(v);
            }
        }
        Self::new(dim, constants, unit)
    }

    /// The ground field as a one-dimensional algebra.
    pub fn rationals() -> Self {
        Self::new(1, vec![Rational::one()], Some(vec![Rational::one()])).unwrap()
    }

    /// `M_n(Q)` with `E_ab` at index `a*n + b`.
    pub fn matrix_algebra(n: usize) -> Self {
        let d = n * n;
        Self::from_products(
            d,
            |i, j| {
                let (a, b, c, e) = (i / n, i % n, j / n, j % n);
                let mut v = vector::zeros(d);
                if b == c {
                    v[a * n + e] = Rational::one();
                }
                v
            },
            Some(RatMatrix::identity(n).into_entries()),
        )
        .expect("matrix algebra is associative")
    }

    /// `Q[x_1..x_n]` modulo all monomials of degree above `max_degree`, on
    /// the basis returned by [`truncated_monomials`].
    pub fn truncated_polynomials(nvars: usize, max_degree: u32) -> Self {
        let basis = truncated_monomials(nvars, max_degree);
        let d = basis.len();
        let index = |e: &Exponents| basis.iter().position(|b| b == e);
        Self::from_products(
            d,
            |i, j| {
                let e: Exponents = basis[i].iter().zip(&basis[j]).map(|(a, b)| a + b).collect();
                let mut v = vector::zeros(d);
                if let Some(k) = index(&e) {
                    v[k] = Rational::one();
                }
                v
            },
            Some(vector::unit(d, 0)),
        )
        .expect("truncated polynomial ring is associative")
    }

    /// Product algebra `self x other`, basis of `self` first.
    pub fn direct_sum(&self, other: &AssocAlgebra) -> Self {
        let (n1, n2) = (self.dim, other.dim);
        let d = n1 + n2;
        let unit = match (&self.unit, &other.unit) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).cloned().collect()),
            _ => None,
        };
        Self::from_products(
            d,
            |i, j| {
                let mut v = vector::zeros(d);
                if i < n1 && j < n1 {
                    v[..n1].clone_from_slice(&self.basis_product(i, j));
                } else if i >= n1 && j >= n1 {
                    v[n1..].clone_from_slice(&other.basis_product(i - n1, j - n1));
                }
                v
            },
            unit,
        )
        .expect("direct sum of associative algebras")
    }

    /// Tensor product, basis `e_i (x) f_p` at index `i * other.dim + p`.
    pub fn tensor(&self, other: &AssocAlgebra) -> Self {
        let (n1, n2) = (self.dim, other.dim);
        let d = n1 * n2;
        let unit = match (&self.unit, &other.unit) {
            (Some(a), Some(b)) => Some(kron(a, b)),
            _ => None,
        };
        Self::from_products(
            d,
            |i, j| {
                let (a, p) = (i / n2, i % n2);
                let (b, q) = (j / n2, j % n2);
                kron(&self.basis_product(a, b), &other.basis_product(p, q))
            },
            unit,
        )
        .expect("tensor product of associative algebras")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> Option<&[Rational]> {
        self.unit.as_deref()
    }

    pub fn constants(&self) -> &[Rational] {
        &self.constants
    }

    pub fn basis_product(&self, i: usize, j: usize) -> Vec<Rational> {
        let at = (i * self.dim + j) * self.dim;
        self.constants[at..at + self.dim].to_vec()
    }

    pub fn mul(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut out = vector::zeros(self.dim);
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let at = (i * self.dim + j) * self.dim;
                vector::axpy(&mut out, &(ai * bj), &self.constants[at..at + self.dim]);
            }
        }
        out
    }

    /// Matrix of `b -> a * b`.
    pub fn left_mult(&self, a: &[Rational]) -> RatMatrix {
        let cols: Vec<Vec<Rational>> = (0..self.dim)
            .map(|j| self.mul(a, &vector::unit(self.dim, j)))
            .collect();
        RatMatrix::from_columns(self.dim, &cols)
    }

    pub fn check_associativity(&self) -> IdentityReport {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                let ij = self.basis_product(i, j);
                for k in 0..n {
                    let lhs = self.mul(&ij, &vector::unit(n, k));
                    let rhs = self.mul(&vector::unit(n, i), &self.basis_product(j, k));
                    let d = vector::sub(&lhs, &rhs);
                    if !vector::is_zero(&d) {
                        return IdentityReport::fail(Witness::new(
                            "associativity triple (i,j,k)",
                            vec![i, j, k],
                            d,
                        ));
                    }
                }
            }
        }
        IdentityReport::pass()
    }

    pub fn check_commutativity(&self) -> IdentityReport {
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let d = vector::sub(&self.basis_product(i, j), &self.basis_product(j, i));
                if !vector::is_zero(&d) {
                    return IdentityReport::fail(Witness::new("commutativity pair (i,j)", vec![i, j], d));
                }
            }
        }
        IdentityReport::pass()
    }

    fn check_unit(&self) -> IdentityReport {
        let Some(u) = &self.unit else {
            return IdentityReport::pass();
        };
        for i in 0..self.dim {
            let e = vector::unit(self.dim, i);
            for d in [vector::sub(&self.mul(u, &e), &e), vector::sub(&self.mul(&e, u), &e)] {
                if !vector::is_zero(&d) {
                    return IdentityReport::fail(Witness::new("unit law at basis (i)", vec![i], d));
                }
            }
        }
        IdentityReport::pass()
    }
}

fn kron(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| x * y))
        .collect()
}

/// Monomials of total degree at most `max_degree`, ordered by degree and
/// then with higher powers of earlier variables first: `1, x1, x2, ..`.
pub fn truncated_monomials(nvars: usize, max_degree: u32) -> Vec<Exponents> {
    let mut out = Vec::new();
    fn rec(prefix: &mut Exponents, left: usize, budget: u32, out: &mut Vec<Exponents>) {
        if left == 0 {
            out.push(prefix.clone());
            return;
        }
        for p in 0..=budget {
            prefix.push(p);
            rec(prefix, left - 1, budget - p, out);
            prefix.pop();
        }
    }
    rec(&mut Vec::new(), nvars, max_degree, &mut out);
    out.sort_by(|a, b| {
        let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
        da.cmp(&db).then_with(|| b.cmp(a))
    });
    out
}
