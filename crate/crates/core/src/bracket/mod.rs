//! Finite-dimensional brackets given by structure constants, together with
//! the Lie and Loday identity checkers.
//!
//! Every identity here is multilinear, so checking it on basis tuples
//! decides it on the whole space. Witnesses always report the
//! lexicographically first failing tuple.

mod algebra;
mod constructions;

pub use algebra::{truncated_monomials, AssocAlgebra};
pub use constructions::{
    check_d_condition, d_generated_bracket, flip_bracket, hemisemidirect, omni_lie_bracket,
    weinstein_graph_closed,
};

use num_traits::Zero;

use crate::exactmath::{vector, RatMatrix, Rational, SpanSolver};
use crate::{Error, IdentityReport, Result, Witness};

/// Linear operators are plain matrices acting on basis coordinates.
pub type LinearMap = RatMatrix;

/// Bilinear bracket `[e_i, e_j] = sum_k c[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureBracket {
    dim: usize,
    constants: Vec<Rational>,
    labels: Option<Vec<String>>,
}

impl StructureBracket {
    pub fn zero(dim: usize) -> Self {
        StructureBracket {
            dim,
            constants: vec![Rational::zero(); dim * dim * dim],
            labels: None,
        }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize, usize) -> Rational) -> Self {
        let mut constants = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    constants.push(f(i, j, k));
                }
            }
        }
        StructureBracket {
            dim,
            constants,
            labels: None,
        }
    }

    /// Dense constants in `i, j, k` row-major order.
    pub fn from_constants(dim: usize, constants: Vec<Rational>) -> Result<Self> {
        if constants.len() != dim * dim * dim {
            return Err(Error::shape("structure constants", dim * dim * dim, constants.len()));
        }
        Ok(StructureBracket {
            dim,
            constants,
            labels: None,
        })
    }

    /// Sparse `(i, j, k, value)` entries; later entries overwrite earlier ones.
    pub fn from_entries(dim: usize, entries: &[(usize, usize, usize, Rational)]) -> Result<Self> {
        let mut b = Self::zero(dim);
        for (i, j, k, c) in entries {
            if *i >= dim || *j >= dim || *k >= dim {
                return Err(Error::shape(
                    "structure constant index",
                    format!("< {dim}"),
                    format!("({i},{j},{k})"),
                ));
            }
            b.set(*i, *j, *k, c.clone());
        }
        Ok(b)
    }

    /// Basis-vector images `[e_i, e_j]` given as vectors.
    pub fn from_basis_brackets(dim: usize, mut f: impl FnMut(usize, usize) -> Vec<Rational>) -> Self {
        let mut b = Self::zero(dim);
        for i in 0..dim {
            for j in 0..dim {
                let v = f(i, j);
                assert_eq!(v.len(), dim, "bracket value length");
                for (k, c) in v.into_iter().enumerate() {
                    b.set(i, j, k, c);
                }
            }
        }
        b
    }

    /// Commutator bracket on the span of `basis`, which must be linearly
    /// independent and closed under commutators.
    pub fn commutator_algebra(basis: &[RatMatrix]) -> Result<Self> {
        let dim = basis.len();
        let solver = SpanSolver::new(basis.iter().map(|m| m.entries().to_vec()).collect())?;
        let mut b = Self::zero(dim);
        for i in 0..dim {
            for j in 0..dim {
                let c = crate::exactmath::mat_commutator(&basis[i], &basis[j])?;
                let coords = solver.solve(c.entries()).ok_or_else(|| {
                    Error::precondition(
                        "matrix basis is not closed under commutators",
                        Some(Witness::new("basis pair (i,j)", vec![i, j], c.entries().to_vec())),
                    )
                })?;
                for (k, x) in coords.into_iter().enumerate() {
                    b.set(i, j, k, x);
                }
            }
        }
        Ok(b)
    }

    /// `gl_n` on the matrix units, `E_ab` at index `a*n + b`.
    pub fn gl(n: usize) -> Self {
        let units: Vec<RatMatrix> = (0..n * n).map(|i| RatMatrix::unit(n, i / n, i % n)).collect();
        let mut b = Self::commutator_algebra(&units).expect("matrix units span gl_n");
        b.labels = Some((0..n * n).map(|i| format!("E{}{}", i / n + 1, i % n + 1)).collect());
        b
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dim {
            return Err(Error::shape("basis labels", self.dim, labels.len()));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constants(&self) -> &[Rational] {
        &self.constants
    }

    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dim + j) * self.dim + k
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.constants[self.idx(i, j, k)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, value: Rational) {
        let at = self.idx(i, j, k);
        self.constants[at] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.constants.iter().all(Zero::is_zero)
    }

    /// `[e_i, e_j]` as a coordinate vector.
    pub fn basis_bracket(&self, i: usize, j: usize) -> Vec<Rational> {
        let at = self.idx(i, j, 0);
        self.constants[at..at + self.dim].to_vec()
    }

    /// Bilinear extension to arbitrary vectors.
    pub fn bracket(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        assert_eq!(u.len(), self.dim, "bracket argument length");
        assert_eq!(v.len(), self.dim, "bracket argument length");
        let mut out = vector::zeros(self.dim);
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                let c = ui * vj;
                let at = self.idx(i, j, 0);
                vector::axpy(&mut out, &c, &self.constants[at..at + self.dim]);
            }
        }
        out
    }

    /// Matrix of `y -> [x, y]`.
    pub fn left_adjoint(&self, x: &[Rational]) -> RatMatrix {
        let n = self.dim;
        let mut m = RatMatrix::zeros(n, n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for j in 0..n {
                for k in 0..n {
                    let c = self.get(i, j, k);
                    if !c.is_zero() {
                        let v = m.get(k, j) + xi * c;
                        m.set(k, j, v);
                    }
                }
            }
        }
        m
    }

    /// Matrix of `y -> [y, x]`.
    pub fn right_adjoint(&self, x: &[Rational]) -> RatMatrix {
        let n = self.dim;
        let mut m = RatMatrix::zeros(n, n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for j in 0..n {
                for k in 0..n {
                    let c = self.get(j, i, k);
                    if !c.is_zero() {
                        let v = m.get(k, j) + xi * c;
                        m.set(k, j, v);
                    }
                }
            }
        }
        m
    }

    pub(crate) fn table(&self) -> Table {
        Table::new(self)
    }
}

type Sparse = Vec<(usize, Rational)>;

/// Sparse view of the basis brackets used by the identity checkers.
pub(crate) struct Table {
    dim: usize,
    dense: Vec<Vec<Rational>>,
    sparse: Vec<Sparse>,
}

impl Table {
    fn new(b: &StructureBracket) -> Self {
        let n = b.dim;
        let mut dense = Vec::with_capacity(n * n);
        let mut sparse = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let v = b.basis_bracket(i, j);
                sparse.push(
                    v.iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(k, c)| (k, c.clone()))
                        .collect(),
                );
                dense.push(v);
            }
        }
        Table {
            dim: n,
            dense,
            sparse,
        }
    }

    pub(crate) fn basis(&self, i: usize, j: usize) -> &[Rational] {
        &self.dense[i * self.dim + j]
    }

    /// `[e_i, v]`
    pub(crate) fn left(&self, i: usize, v: &[Rational]) -> Vec<Rational> {
        let mut out = vector::zeros(self.dim);
        for (l, vl) in v.iter().enumerate() {
            if vl.is_zero() {
                continue;
            }
            for (k, c) in &self.sparse[i * self.dim + l] {
                out[*k] += vl * c;
            }
        }
        out
    }

    /// `[v, e_k]`
    pub(crate) fn right(&self, v: &[Rational], k: usize) -> Vec<Rational> {
        let mut out = vector::zeros(self.dim);
        for (l, vl) in v.iter().enumerate() {
            if vl.is_zero() {
                continue;
            }
            for (m, c) in &self.sparse[l * self.dim + k] {
                out[*m] += vl * c;
            }
        }
        out
    }
}

fn first_failing_triple(
    dim: usize,
    label: &str,
    mut defect: impl FnMut(usize, usize, usize) -> Vec<Rational>,
) -> IdentityReport {
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                let d = defect(i, j, k);
                if !vector::is_zero(&d) {
                    return IdentityReport::fail(Witness::new(label, vec![i, j, k], d));
                }
            }
        }
    }
    IdentityReport::pass()
}

/// `[e_i, e_j] = -[e_j, e_i]` for all `i <= j`.
pub fn check_antisymmetry(b: &StructureBracket) -> IdentityReport {
    for i in 0..b.dim {
        for j in i..b.dim {
            let d = vector::add(&b.basis_bracket(i, j), &b.basis_bracket(j, i));
            if !vector::is_zero(&d) {
                return IdentityReport::fail(Witness::new("antisymmetry pair (i,j)", vec![i, j], d));
            }
        }
    }
    IdentityReport::pass()
}

/// Cyclic sum `[e_i,[e_j,e_k]] + [e_k,[e_i,e_j]] + [e_j,[e_k,e_i]] = 0`.
pub fn check_jacobi(b: &StructureBracket) -> IdentityReport {
    let t = b.table();
    first_failing_triple(b.dim, "Jacobi triple (i,j,k)", |i, j, k| {
        let mut d = t.left(i, t.basis(j, k));
        d = vector::add(&d, &t.left(k, t.basis(i, j)));
        vector::add(&d, &t.left(j, t.basis(k, i)))
    })
}

/// `[e_i,[e_j,e_k]] = [[e_i,e_j],e_k] + [e_j,[e_i,e_k]]`.
pub fn check_left_leibniz(b: &StructureBracket) -> IdentityReport {
    let t = b.table();
    first_failing_triple(b.dim, "left Leibniz triple (i,j,k)", |i, j, k| {
        let lhs = t.left(i, t.basis(j, k));
        let r1 = t.right(t.basis(i, j), k);
        let r2 = t.left(j, t.basis(i, k));
        vector::sub(&vector::sub(&lhs, &r1), &r2)
    })
}

/// `[[e_i,e_j],e_k] = [[e_i,e_k],e_j] + [e_i,[e_j,e_k]]`.
pub fn check_right_leibniz(b: &StructureBracket) -> IdentityReport {
    let t = b.table();
    first_failing_triple(b.dim, "right Leibniz triple (i,j,k)", |i, j, k| {
        let lhs = t.right(t.basis(i, j), k);
        let r1 = t.right(t.basis(i, k), j);
        let r2 = t.left(i, t.basis(j, k));
        vector::sub(&vector::sub(&lhs, &r1), &r2)
    })
}

/// Antisymmetry and Jacobi together.
pub fn check_lie(b: &StructureBracket) -> IdentityReport {
    check_antisymmetry(b).and(check_jacobi(b))
}
