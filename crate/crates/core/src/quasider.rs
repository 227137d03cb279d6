//! Commutative algebras acting on modules, quasi-derivations and the
//! derivation they induce on the coefficient algebra.
//!
//! An endomorphism `D` of `F` is a quasi-derivation when every commutator
//! `[D, mu_f]` is again multiplication by some `g`. Faithfulness makes `g`
//! unique, which defines `hat(D)(f) = g`.

use num_traits::{One, Zero};

use crate::bracket::{AssocAlgebra, LinearMap};
use crate::exactmath::{mat_commutator, nullspace, vector, RatMatrix, Rational, SpanSolver};
use crate::{Error, IdentityReport, Result, Witness};

/// A commutative unital algebra `A` (dimension `m`) acting faithfully on an
/// `n`-dimensional space `F` through `mu(f_i)`.
#[derive(Clone, Debug)]
pub struct AlgebraModulePair {
    algebra: AssocAlgebra,
    module_dim: usize,
    action: Vec<RatMatrix>,
    solver: SpanSolver,
}

impl PartialEq for AlgebraModulePair {
    fn eq(&self, other: &Self) -> bool {
        self.algebra == other.algebra && self.action == other.action
    }
}

impl AlgebraModulePair {
    pub fn new(algebra: AssocAlgebra, action: Vec<RatMatrix>) -> Result<Self> {
        let m = algebra.dim();
        if action.len() != m {
            return Err(Error::shape("action matrices", m, action.len()));
        }
        let n = action.first().map_or(0, RatMatrix::rows);
        for a in &action {
            if a.rows() != n || a.cols() != n {
                return Err(Error::shape(
                    "action matrix",
                    format!("{n}x{n}"),
                    format!("{}x{}", a.rows(), a.cols()),
                ));
            }
        }
        if let Some(w) = algebra.check_commutativity().witness() {
            return Err(Error::precondition("coefficient algebra is not commutative", Some(w.clone())));
        }
        let Some(unit) = algebra.unit().map(<[Rational]>::to_vec) else {
            return Err(Error::precondition("coefficient algebra has no unit", None));
        };
        let mu = |f: &[Rational]| combine(&action, f, n);
        let unit_defect = &mu(&unit) - &RatMatrix::identity(n);
        if !unit_defect.is_zero() {
            return Err(Error::precondition(
                "unit does not act as the identity",
                Some(Witness::new("mu(1) - I", vec![], unit_defect.into_entries())),
            ));
        }
        for i in 0..m {
            for j in 0..m {
                let prod = &action[i] * &action[j];
                let d = &prod - &mu(&algebra.basis_product(i, j));
                if !d.is_zero() {
                    return Err(Error::precondition(
                        "action is not an algebra morphism",
                        Some(Witness::new("basis pair (i,j)", vec![i, j], d.into_entries())),
                    ));
                }
                let c = &prod - &(&action[j] * &action[i]);
                if !c.is_zero() {
                    return Err(Error::precondition(
                        "action matrices do not commute",
                        Some(Witness::new("basis pair (i,j)", vec![i, j], c.into_entries())),
                    ));
                }
            }
        }
        let solver = SpanSolver::new(action.iter().map(|a| a.entries().to_vec()).collect())
            .map_err(|_| Error::precondition("module is not faithful (action matrices are dependent)", None))?;
        Ok(AlgebraModulePair {
            algebra,
            module_dim: n,
            action,
            solver,
        })
    }

    /// `F = A` acting on itself.
    pub fn regular(algebra: AssocAlgebra) -> Result<Self> {
        Self::free(algebra, 1)
    }

    /// `F = A^k`, coordinate `c*m + p` being basis vector `p` of copy `c`.
    pub fn free(algebra: AssocAlgebra, k: usize) -> Result<Self> {
        let m = algebra.dim();
        let action = (0..m)
            .map(|i| {
                let l = algebra.left_mult(&vector::unit(m, i));
                let mut big = RatMatrix::zeros(k * m, k * m);
                for c in 0..k {
                    for r in 0..m {
                        for s in 0..m {
                            big.set(c * m + r, c * m + s, l.get(r, s).clone());
                        }
                    }
                }
                big
            })
            .collect();
        Self::new(algebra, action)
    }

    pub fn algebra(&self) -> &AssocAlgebra {
        &self.algebra
    }

    pub fn algebra_dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn module_dim(&self) -> usize {
        self.module_dim
    }

    pub fn action(&self) -> &[RatMatrix] {
        &self.action
    }

    /// `mu(f)` for an algebra element in coordinates.
    pub fn mu(&self, f: &[Rational]) -> RatMatrix {
        combine(&self.action, f, self.module_dim)
    }

    /// `f·X` for `X` in `F`.
    pub fn act(&self, f: &[Rational], x: &[Rational]) -> Vec<Rational> {
        self.mu(f).apply(x)
    }

    /// Coordinates of `g` with `mu(g) = target`, if any.
    pub fn mu_preimage(&self, target: &RatMatrix) -> Option<Vec<Rational>> {
        self.solver.solve(target.entries())
    }
}

fn combine(mats: &[RatMatrix], coeffs: &[Rational], n: usize) -> RatMatrix {
    let mut out = vec![Rational::zero(); n * n];
    for (c, m) in coeffs.iter().zip(mats) {
        if !c.is_zero() {
            vector::axpy(&mut out, c, m.entries());
        }
    }
    RatMatrix::from_entries(n, n, out).expect("square combination")
}

/// A linear map of `A` acting on algebra coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationOfA {
    pub matrix: RatMatrix,
}

impl DerivationOfA {
    pub fn zero(m: usize) -> Self {
        DerivationOfA {
            matrix: RatMatrix::zeros(m, m),
        }
    }

    pub fn apply(&self, f: &[Rational]) -> Vec<Rational> {
        self.matrix.apply(f)
    }

    /// `D(f_i f_j) = f_i D(f_j) + D(f_i) f_j` on basis pairs.
    pub fn check_leibniz(&self, a: &AssocAlgebra) -> IdentityReport {
        let m = a.dim();
        for i in 0..m {
            for j in 0..m {
                let (ei, ej) = (vector::unit(m, i), vector::unit(m, j));
                let lhs = self.apply(&a.basis_product(i, j));
                let r1 = a.mul(&ei, &self.apply(&ej));
                let r2 = a.mul(&self.apply(&ei), &ej);
                let d = vector::sub(&vector::sub(&lhs, &r1), &r2);
                if !vector::is_zero(&d) {
                    return IdentityReport::fail(Witness::new("derivation Leibniz rule at (i,j)", vec![i, j], d));
                }
            }
        }
        IdentityReport::pass()
    }

    /// `f·D`, the natural module structure on derivations.
    pub fn scaled_by(&self, a: &AssocAlgebra, f: &[Rational]) -> Self {
        DerivationOfA {
            matrix: &a.left_mult(f) * &self.matrix,
        }
    }

    pub fn commutator(&self, other: &Self) -> Self {
        DerivationOfA {
            matrix: &(&self.matrix * &other.matrix) - &(&other.matrix * &self.matrix),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }
}

/// Basis of all derivations of `A`, from the nullspace of the Leibniz
/// equations in the `m^2` matrix entries.
pub fn derivation_basis(a: &AssocAlgebra) -> Vec<DerivationOfA> {
    let m = a.dim();
    // Unknown D at column p*m + q is entry (p, q).
    let mut rows = Vec::new();
    for i in 0..m {
        for j in 0..m {
            let prod = a.basis_product(i, j);
            for r in 0..m {
                let mut row = vec![Rational::zero(); m * m];
                // D(f_i f_j)_r = sum_q D[r][q] prod_q
                for (q, c) in prod.iter().enumerate() {
                    row[r * m + q] += c;
                }
                // (f_i D(f_j))_r = sum_p D[p][j] (f_i f_p)_r
                for p in 0..m {
                    row[p * m + j] -= &a.basis_product(i, p)[r];
                    row[p * m + i] -= &a.basis_product(p, j)[r];
                }
                rows.push(row);
            }
        }
    }
    let sys = if rows.is_empty() {
        RatMatrix::zeros(0, m * m)
    } else {
        RatMatrix::from_rows(rows).expect("rectangular Leibniz system")
    };
    nullspace(&sys)
        .into_iter()
        .map(|v| DerivationOfA {
            matrix: RatMatrix::from_entries(m, m, v).expect("m x m"),
        })
        .collect()
}

/// A quasi-derivation together with its induced derivation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiDerivationRecord {
    pub d: LinearMap,
    pub hat: DerivationOfA,
}

impl QuasiDerivationRecord {
    /// True when `hat = 0`, that is `D` commutes with the action.
    pub fn is_tensor_operator(&self) -> bool {
        self.hat.is_zero()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QDerOutcome {
    QDer(QuasiDerivationRecord),
    /// `[d, mu(f_i)]` is not a multiplication operator for this `i`.
    NotQDer { basis_index: usize, commutator: RatMatrix },
}

impl QDerOutcome {
    pub fn record(self) -> Option<QuasiDerivationRecord> {
        match self {
            QDerOutcome::QDer(r) => Some(r),
            QDerOutcome::NotQDer { .. } => None,
        }
    }

    pub fn is_qder(&self) -> bool {
        matches!(self, QDerOutcome::QDer(_))
    }
}

/// Decides whether `d` is a quasi-derivation. On success the hat is
/// checked to be a derivation; a failure there is reported as an invariant
/// violation since it cannot happen for a faithful module.
pub fn is_quasi_derivation(pair: &AlgebraModulePair, d: &LinearMap) -> Result<QDerOutcome> {
    let n = pair.module_dim;
    if d.rows() != n || d.cols() != n {
        return Err(Error::shape(
            "module endomorphism",
            format!("{n}x{n}"),
            format!("{}x{}", d.rows(), d.cols()),
        ));
    }
    let m = pair.algebra_dim();
    let mut cols = Vec::with_capacity(m);
    for (i, mu_i) in pair.action.iter().enumerate() {
        let c = mat_commutator(d, mu_i)?;
        match pair.mu_preimage(&c) {
            Some(g) => cols.push(g),
            None => {
                return Ok(QDerOutcome::NotQDer {
                    basis_index: i,
                    commutator: c,
                })
            }
        }
    }
    let hat = DerivationOfA {
        matrix: RatMatrix::from_columns(m, &cols),
    };
    if let Some(w) = hat.check_leibniz(&pair.algebra).witness() {
        return Err(Error::invariant("induced map of a quasi-derivation is not a derivation", Some(w.clone())));
    }
    Ok(QDerOutcome::QDer(QuasiDerivationRecord { d: d.clone(), hat }))
}

/// Basis of the space of quasi-derivations, from the nullspace of the
/// linear system `[D, mu_i] = sum_k G[k][i] mu_k` in the unknowns `(D, G)`.
pub fn quasi_derivation_basis(pair: &AlgebraModulePair) -> Result<Vec<QuasiDerivationRecord>> {
    let n = pair.module_dim;
    let m = pair.algebra_dim();
    let nd = n * n;
    let ncols = nd + m * m;
    let mut rows = Vec::with_capacity(m * nd);
    for (i, mu) in pair.action.iter().enumerate() {
        for a in 0..n {
            for b in 0..n {
                let mut row = vec![Rational::zero(); ncols];
                // ([D, mu])_{ab} = sum_q D[a][q] mu[q][b] - sum_p mu[a][p] D[p][b]
                for q in 0..n {
                    row[a * n + q] += mu.get(q, b);
                }
                for p in 0..n {
                    row[p * n + b] -= mu.get(a, p);
                }
                for k in 0..m {
                    row[nd + k * m + i] -= pair.action[k].get(a, b);
                }
                rows.push(row);
            }
        }
    }
    let sys = if rows.is_empty() {
        RatMatrix::zeros(0, ncols)
    } else {
        RatMatrix::from_rows(rows)?
    };
    let mut out = Vec::new();
    for v in nullspace(&sys) {
        let d = RatMatrix::from_entries(n, n, v[..nd].to_vec())?;
        match is_quasi_derivation(pair, &d)? {
            QDerOutcome::QDer(r) => out.push(r),
            QDerOutcome::NotQDer { basis_index, commutator } => {
                return Err(Error::invariant(
                    "nullspace vector is not a quasi-derivation",
                    Some(Witness::new("algebra basis index", vec![basis_index], commutator.into_entries())),
                ))
            }
        }
    }
    Ok(out)
}

/// `hat([D1, D2]) = [hat D1, hat D2]`. The commutator is re-run through
/// [`is_quasi_derivation`]; if it is not a quasi-derivation the closure of
/// quasi-derivations under commutators has failed.
pub fn hat_is_lie_morphism(
    pair: &AlgebraModulePair,
    d1: &QuasiDerivationRecord,
    d2: &QuasiDerivationRecord,
) -> Result<IdentityReport> {
    let c = mat_commutator(&d1.d, &d2.d)?;
    let rec = match is_quasi_derivation(pair, &c)? {
        QDerOutcome::QDer(r) => r,
        QDerOutcome::NotQDer { basis_index, commutator } => {
            return Err(Error::invariant(
                "commutator of quasi-derivations is not a quasi-derivation",
                Some(Witness::new("algebra basis index", vec![basis_index], commutator.into_entries())),
            ))
        }
    };
    let rhs = d1.hat.commutator(&d2.hat);
    let defect = &rec.hat.matrix - &rhs.matrix;
    Ok(if defect.is_zero() {
        IdentityReport::pass()
    } else {
        IdentityReport::fail(Witness::new("hat([D1,D2]) - [hat D1, hat D2]", vec![], defect.into_entries()))
    })
}

/// `[D1, f·D2] = f·[D1, D2] + hat(D1)(f)·D2` with `f·D = mu(f)∘D`.
pub fn check_c2_formula(
    pair: &AlgebraModulePair,
    d1: &QuasiDerivationRecord,
    d2: &QuasiDerivationRecord,
    f: &[Rational],
) -> Result<IdentityReport> {
    if f.len() != pair.algebra_dim() {
        return Err(Error::shape("algebra element", pair.algebra_dim(), f.len()));
    }
    let mu_f = pair.mu(f);
    let lhs = mat_commutator(&d1.d, &(&mu_f * &d2.d))?;
    let rhs = &(&mu_f * &mat_commutator(&d1.d, &d2.d)?) + &(&pair.mu(&d1.hat.apply(f)) * &d2.d);
    let defect = &lhs - &rhs;
    Ok(if defect.is_zero() {
        IdentityReport::pass()
    } else {
        IdentityReport::fail(Witness::new("[D1, f.D2] - f.[D1,D2] - hat1(f).D2", vec![], defect.into_entries()))
    })
}

/// The unit of the coefficient algebra, in coordinates.
pub fn algebra_unit(pair: &AlgebraModulePair) -> Vec<Rational> {
    pair.algebra.unit().map(<[Rational]>::to_vec).unwrap_or_else(|| {
        let mut v = vector::zeros(pair.algebra_dim());
        if let Some(x) = v.first_mut() {
            *x = Rational::one();
        }
        v
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cubic() -> AssocAlgebra {
        AssocAlgebra::truncated_polynomials(1, 2)
    }

    /// `x d/dx` on `Q[x]/(x^3)`: diag(0, 1, 2).
    fn euler() -> RatMatrix {
        RatMatrix::from_i64(3, 3, &[0, 0, 0, 0, 1, 0, 0, 0, 2])
    }

    #[test]
    fn multiplication_operators_are_tensor() {
        let pair = AlgebraModulePair::regular(cubic()).unwrap();
        let g = vector::from_i64(&[2, -1, 3]);
        let r = is_quasi_derivation(&pair, &pair.mu(&g)).unwrap().record().unwrap();
        assert!(r.is_tensor_operator());
    }

    #[test]
    fn euler_derivation_hat_is_itself() {
        let pair = AlgebraModulePair::regular(cubic()).unwrap();
        let r = is_quasi_derivation(&pair, &euler()).unwrap().record().unwrap();
        assert_eq!(r.hat.matrix, euler());
    }

    #[test]
    fn plain_d_dx_is_not_quasi_derivation() {
        // d/dx sends x^2 to 2x, so x^3 = 0 is not respected
        let pair = AlgebraModulePair::regular(cubic()).unwrap();
        let dx = RatMatrix::from_i64(3, 3, &[0, 1, 0, 0, 0, 2, 0, 0, 0]);
        match is_quasi_derivation(&pair, &dx).unwrap() {
            QDerOutcome::NotQDer { basis_index, commutator } => {
                assert_eq!(basis_index, 1);
                assert_eq!(commutator, RatMatrix::from_i64(3, 3, &[1, 0, 0, 0, 1, 0, 0, 0, -2]));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn swap_on_product_is_not_quasi_derivation() {
        let qq = AssocAlgebra::rationals().direct_sum(&AssocAlgebra::rationals());
        let pair = AlgebraModulePair::regular(qq).unwrap();
        let swap = RatMatrix::from_i64(2, 2, &[0, 1, 1, 0]);
        let out = is_quasi_derivation(&pair, &swap).unwrap();
        assert!(matches!(out, QDerOutcome::NotQDer { basis_index: 0, .. }));
    }

    #[test]
    fn rejects_unfaithful_and_non_morphisms() {
        let a = AssocAlgebra::truncated_polynomials(1, 1);
        // x acting as zero on a 1-dim space: not faithful
        let r = AlgebraModulePair::new(a.clone(), vec![RatMatrix::identity(1), RatMatrix::zeros(1, 1)]);
        assert!(matches!(r, Err(Error::Precondition { .. })));
        // x acting as the identity: x^2 = 0 but mu(x)^2 = I
        let r = AlgebraModulePair::new(
            a,
            vec![RatMatrix::identity(2), RatMatrix::from_i64(2, 2, &[1, 0, 0, 1])],
        );
        assert!(r.is_err());
    }

    #[test]
    fn derivations_of_cubic_ring() {
        // x d/dx and x^2 d/dx
        assert_eq!(derivation_basis(&cubic()).len(), 2);
        assert_eq!(derivation_basis(&AssocAlgebra::rationals()).len(), 0);
    }

    #[test]
    fn qder_dimensions() {
        // dim Der + k^2 * m for the free module of rank k
        let regular = AlgebraModulePair::regular(cubic()).unwrap();
        assert_eq!(quasi_derivation_basis(&regular).unwrap().len(), 2 + 3);
        let free2 = AlgebraModulePair::free(cubic(), 2).unwrap();
        assert_eq!(quasi_derivation_basis(&free2).unwrap().len(), 2 + 4 * 3);
    }

    #[test]
    fn corollaries_on_examples() {
        let pair = AlgebraModulePair::regular(cubic()).unwrap();
        let x = vector::from_i64(&[0, 1, 0]);
        let e = is_quasi_derivation(&pair, &euler()).unwrap().record().unwrap();
        let xe = is_quasi_derivation(&pair, &(&pair.mu(&x) * &euler())).unwrap().record().unwrap();
        assert_eq!(xe.hat, e.hat.scaled_by(pair.algebra(), &x));
        assert!(hat_is_lie_morphism(&pair, &e, &xe).unwrap().holds());
        assert!(hat_is_lie_morphism(&pair, &e, &e).unwrap().holds());
        let mx = is_quasi_derivation(&pair, &pair.mu(&x)).unwrap().record().unwrap();
        assert!(check_c2_formula(&pair, &e, &mx, &x).unwrap().holds());
        assert!(check_c2_formula(&pair, &e, &xe, &algebra_unit(&pair)).unwrap().holds());
        // a wrong hat breaks the formula
        let mut bogus = e.clone();
        bogus.hat = DerivationOfA::zero(3);
        assert!(!check_c2_formula(&pair, &bogus, &mx, &x).unwrap().holds());
    }
}
