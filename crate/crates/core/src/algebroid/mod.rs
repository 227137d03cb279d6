//! Brackets on modules over a commutative algebra: adjoint operators,
//! anchors, the quasi-algebroid classification, the omni-Loday bracket and
//! the graph-closure theorems.

mod omni;
mod theorems;

pub use omni::{
    graph_of, is_graph_closed, jacobiator, omni_left_leibniz_check, omni_loday_bracket, random_omni_triple, OmniElement,
};
pub use theorems::{
    anchor_candidate, check_condition_a, check_condition_b, qd_empirical_check, theorem_t3_check,
    theorem_t4_check, theorem_t5_check, Biconditional,
};

use crate::bracket::{
    check_antisymmetry, check_jacobi, check_left_leibniz, check_right_leibniz, LinearMap, StructureBracket,
};
use crate::exactmath::{vector, RatMatrix, Rational};
use crate::quasider::{is_quasi_derivation, AlgebraModulePair, DerivationOfA, QDerOutcome};
use crate::{Error, IdentityReport, Result, Witness};

/// A bracket on the underlying rational space of an `A`-module.
#[derive(Clone, Debug, PartialEq)]
pub struct BracketOnModule {
    pub pair: AlgebraModulePair,
    pub bracket: StructureBracket,
    /// Declared (not inferred) freeness of rank one over `A`.
    pub free_rank_one: bool,
}

impl BracketOnModule {
    pub fn new(pair: AlgebraModulePair, bracket: StructureBracket) -> Result<Self> {
        if bracket.dim() != pair.module_dim() {
            return Err(Error::shape("bracket on module", pair.module_dim(), bracket.dim()));
        }
        Ok(BracketOnModule {
            pair,
            bracket,
            free_rank_one: false,
        })
    }

    pub fn with_free_rank_one(mut self, flag: bool) -> Self {
        self.free_rank_one = flag;
        self
    }

    pub fn dim(&self) -> usize {
        self.bracket.dim()
    }

    /// `f_j · e_i` as a vector of `F`.
    pub(crate) fn basis_act(&self, j: usize, i: usize) -> Vec<Rational> {
        self.pair.action()[j].column(i)
    }
}

/// Matrix of `Y -> [[x, Y]]`.
pub fn ad_left(b: &BracketOnModule, x: &[Rational]) -> LinearMap {
    b.bracket.left_adjoint(x)
}

/// Matrix of `Y -> [[Y, x]]`.
pub fn ad_right(b: &BracketOnModule, x: &[Rational]) -> LinearMap {
    b.bracket.right_adjoint(x)
}

/// Linear map from `F` to derivations of `A`, stored on the basis of `F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnchorMap {
    pub values: Vec<DerivationOfA>,
}

impl AnchorMap {
    pub fn apply(&self, x: &[Rational]) -> DerivationOfA {
        let m = self.values.first().map_or(0, |d| d.matrix.rows());
        let mut out = vec![Rational::from_integer(0.into()); m * m];
        for (c, d) in x.iter().zip(&self.values) {
            vector::axpy(&mut out, c, d.matrix.entries());
        }
        DerivationOfA {
            matrix: RatMatrix::from_entries(m, m, out).expect("m x m"),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(DerivationOfA::is_zero)
    }

    pub fn negated(&self) -> AnchorMap {
        AnchorMap {
            values: self
                .values
                .iter()
                .map(|d| DerivationOfA {
                    matrix: -&d.matrix,
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassificationReport {
    pub left_loday: IdentityReport,
    pub right_loday: IdentityReport,
    pub antisymmetric: IdentityReport,
    pub jacobi: IdentityReport,
    pub lie: IdentityReport,
    pub left_quasi_algebroid: IdentityReport,
    pub right_quasi_algebroid: IdentityReport,
    pub anchor_left: Option<AnchorMap>,
    pub anchor_right: Option<AnchorMap>,
    pub left_anchor_tensorial: IdentityReport,
    pub lie_algebroid: IdentityReport,
}

fn adjoint_anchor(
    b: &BracketOnModule,
    side: &str,
    ad: impl Fn(&[Rational]) -> LinearMap,
) -> Result<std::result::Result<AnchorMap, Witness>> {
    let n = b.dim();
    let mut values = Vec::with_capacity(n);
    for i in 0..n {
        match is_quasi_derivation(&b.pair, &ad(&vector::unit(n, i)))? {
            QDerOutcome::QDer(r) => values.push(r.hat),
            QDerOutcome::NotQDer { basis_index, commutator } => {
                return Ok(Err(Witness::new(
                    format!("{side}(e_i) is not a quasi-derivation: [ad, mu(f_j)] outside mu(A) at (i,j)"),
                    vec![i, basis_index],
                    commutator.into_entries(),
                )))
            }
        }
    }
    Ok(Ok(AnchorMap { values }))
}

/// `q(f_j · e_i) = f_j · q(e_i)` for all algebra and module basis pairs.
pub fn check_tensorial(b: &BracketOnModule, anchor: &AnchorMap) -> IdentityReport {
    let a = b.pair.algebra();
    let m = b.pair.algebra_dim();
    for j in 0..m {
        for i in 0..b.dim() {
            let lhs = anchor.apply(&b.basis_act(j, i));
            let rhs = anchor.values[i].scaled_by(a, &vector::unit(m, j));
            let d = &lhs.matrix - &rhs.matrix;
            if !d.is_zero() {
                return IdentityReport::fail(Witness::new(
                    "q(f_j e_i) - f_j q(e_i) at (j,i)",
                    vec![j, i],
                    d.into_entries(),
                ));
            }
        }
    }
    IdentityReport::pass()
}

/// Runs every identity checker and the quasi-derivation tests on the
/// adjoint operators of the basis vectors.
pub fn classify(b: &BracketOnModule) -> Result<ClassificationReport> {
    let br = &b.bracket;
    let left_loday = check_left_leibniz(br);
    let right_loday = check_right_leibniz(br);
    let antisymmetric = check_antisymmetry(br);
    let jacobi = check_jacobi(br);
    let lie = antisymmetric.clone().and(jacobi.clone());
    if lie.holds() && !(left_loday.holds() && right_loday.holds()) {
        return Err(Error::invariant(
            "Lie bracket fails a Leibniz identity",
            left_loday.witness().or(right_loday.witness()).cloned(),
        ));
    }

    let left = adjoint_anchor(b, "ad_left", |x| ad_left(b, x))?;
    let right = adjoint_anchor(b, "ad_right", |x| ad_right(b, x))?;

    let (anchor_left, left_qder) = match left {
        Ok(a) => (Some(a), IdentityReport::pass()),
        Err(w) => (None, IdentityReport::fail(w)),
    };
    let (anchor_right, right_quasi_algebroid) = match right {
        Ok(a) => (Some(a), IdentityReport::pass()),
        Err(w) => (None, IdentityReport::fail(w)),
    };
    let left_quasi_algebroid = left_loday.clone().and(left_qder.clone());
    let left_anchor_tensorial = match &anchor_left {
        Some(a) => check_tensorial(b, a),
        None => left_qder,
    };
    let lie_algebroid = lie
        .clone()
        .and(left_quasi_algebroid.clone())
        .and(left_anchor_tensorial.clone());

    if antisymmetric.holds() {
        if let (Some(l), Some(r)) = (&anchor_left, &anchor_right) {
            if *l != r.negated() {
                return Err(Error::invariant(
                    "antisymmetric bracket with left anchor different from minus the right anchor",
                    None,
                ));
            }
        }
    }

    Ok(ClassificationReport {
        left_loday,
        right_loday,
        antisymmetric,
        jacobi,
        lie,
        left_quasi_algebroid,
        right_quasi_algebroid,
        anchor_left,
        anchor_right,
        left_anchor_tensorial,
        lie_algebroid,
    })
}

/// `q([[e_i, e_j]]) = [q(e_i), q(e_j)]` for the left anchor.
pub fn anchor_morphism_check(b: &BracketOnModule, report: &ClassificationReport) -> Result<IdentityReport> {
    let anchor = match (&report.anchor_left, report.left_quasi_algebroid.holds()) {
        (Some(a), true) => a,
        _ => {
            return Err(Error::precondition(
                "bracket is not a left Loday quasi-algebroid",
                report.left_quasi_algebroid.witness().cloned(),
            ))
        }
    };
    let n = b.dim();
    for i in 0..n {
        for j in 0..n {
            let lhs = anchor.apply(&b.bracket.basis_bracket(i, j));
            let rhs = anchor.values[i].commutator(&anchor.values[j]);
            let d = &lhs.matrix - &rhs.matrix;
            if !d.is_zero() {
                return Ok(IdentityReport::fail(Witness::new(
                    "q([[e_i,e_j]]) - [q(e_i), q(e_j)] at (i,j)",
                    vec![i, j],
                    d.into_entries(),
                )));
            }
        }
    }
    Ok(IdentityReport::pass())
}

#[cfg(test)]
mod tests;
