//! Named built-in instances. Pure brackets are checked over `Q`; module
//! brackets carry their coefficient algebra and action.

use crate::algebroid::BracketOnModule;
use crate::bracket::{d_generated_bracket, hemisemidirect, AssocAlgebra, StructureBracket};
use crate::exactmath::{rat, vector, MultiPoly, RatMatrix, Rational};
use crate::exterior::{e1_bracket, DifferentialForm};
use crate::quasider::AlgebraModulePair;
use crate::Result;

#[derive(Clone, Debug, PartialEq)]
pub enum Instance {
    Bracket(StructureBracket),
    Module(BracketOnModule),
}

impl Instance {
    pub fn bracket(&self) -> &StructureBracket {
        match self {
            Instance::Bracket(b) => b,
            Instance::Module(m) => &m.bracket,
        }
    }

    /// Module brackets as they are; pure brackets over `Q` acting by scalars.
    pub fn as_module(&self) -> Result<BracketOnModule> {
        match self {
            Instance::Module(m) => Ok(m.clone()),
            Instance::Bracket(b) => over_rationals(b.clone()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub instance: Instance,
}

pub fn over_rationals(b: StructureBracket) -> Result<BracketOnModule> {
    let pair = AlgebraModulePair::new(AssocAlgebra::rationals(), vec![RatMatrix::identity(b.dim())])?;
    BracketOnModule::new(pair, b)
}

fn labeled(b: StructureBracket, labels: &[&str]) -> StructureBracket {
    b.with_labels(labels.iter().map(|s| s.to_string()).collect())
        .expect("label count matches")
}

/// Basis `h, e, f` with `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h`.
pub fn sl2() -> StructureBracket {
    let b = StructureBracket::from_entries(
        3,
        &[
            (0, 1, 1, rat(2)),
            (1, 0, 1, rat(-2)),
            (0, 2, 2, rat(-2)),
            (2, 0, 2, rat(2)),
            (1, 2, 0, rat(1)),
            (2, 1, 0, rat(-1)),
        ],
    )
    .expect("valid indices");
    labeled(b, &["h", "e", "f"])
}

/// `sl2` acting on `Q^2` in its defining representation.
pub fn sl2_standard_action() -> Vec<RatMatrix> {
    vec![
        RatMatrix::from_i64(2, 2, &[1, 0, 0, -1]),
        RatMatrix::unit(2, 0, 1),
        RatMatrix::unit(2, 1, 0),
    ]
}

pub fn hemisemidirect_sl2() -> StructureBracket {
    hemisemidirect(&sl2(), &sl2_standard_action()).expect("sl2 acts on Q^2")
}

pub fn hemisemidirect_gl2() -> StructureBracket {
    let action: Vec<RatMatrix> = (0..4).map(|i| RatMatrix::unit(2, i / 2, i % 2)).collect();
    hemisemidirect(&StructureBracket::gl(2), &action).expect("gl2 acts on Q^2")
}

/// `[e_i, e_j] = e_k` cyclically.
pub fn so3() -> StructureBracket {
    let mut b = StructureBracket::zero(3);
    for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        b.set(i, j, k, rat(1));
        b.set(j, i, k, rat(-1));
    }
    b
}

/// `so3` with the extra antisymmetric term `[e1, e2] += e1`; Jacobi fails.
pub fn so3_perturbed() -> StructureBracket {
    let mut b = so3();
    b.set(0, 1, 0, rat(1));
    b.set(1, 0, 0, rat(-1));
    b
}

pub fn d_identity_m2() -> StructureBracket {
    d_generated_bracket(&AssocAlgebra::matrix_algebra(2), &RatMatrix::identity(4)).expect("identity satisfies the D-condition")
}

/// `M2 ⊗ Q[s,t]/(s,t)^2` with `D = id ⊗ (s ↦ t)`, so `D^2 = 0`.
pub fn d_square_zero_operator() -> (AssocAlgebra, RatMatrix) {
    let a = AssocAlgebra::matrix_algebra(2).tensor(&AssocAlgebra::truncated_polynomials(2, 1));
    let mut d = RatMatrix::zeros(12, 12);
    for e in 0..4 {
        d.set(e * 3 + 2, e * 3 + 1, rat(1));
    }
    (a, d)
}

pub fn d_square_zero() -> StructureBracket {
    let (a, d) = d_square_zero_operator();
    d_generated_bracket(&a, &d).expect("square-zero derivation satisfies the D-condition")
}

/// Projection of `M2 ⊕ M2` onto its first summand.
pub fn d_projector_operator() -> (AssocAlgebra, RatMatrix) {
    let m2 = AssocAlgebra::matrix_algebra(2);
    let mut p = RatMatrix::zeros(8, 8);
    for i in 0..4 {
        p.set(i, i, rat(1));
    }
    (m2.direct_sum(&m2), p)
}

pub fn d_projector() -> StructureBracket {
    let (a, p) = d_projector_operator();
    d_generated_bracket(&a, &p).expect("projector satisfies the D-condition")
}

pub fn d_zero_m2() -> StructureBracket {
    d_generated_bracket(&AssocAlgebra::matrix_algebra(2), &RatMatrix::zeros(4, 4)).expect("zero satisfies the D-condition")
}

/// `A = Q[x]/(x^3)`, `F = Der(A) ⊕ A` with `Der(A) = span{x∂, x²∂}`, and
/// `[[(X, a), (Y, b)]] = ([X, Y], X(b))`. Coordinates: `x∂, x²∂, 1, x, x²`.
pub fn dorfman_shadow() -> BracketOnModule {
    let a = AssocAlgebra::truncated_polynomials(1, 2);
    let q = rat;
    let bracket = StructureBracket::from_entries(
        5,
        &[
            (0, 1, 1, q(1)),
            (1, 0, 1, q(-1)),
            (0, 3, 3, q(1)),
            (0, 4, 4, q(2)),
            (1, 3, 4, q(1)),
        ],
    )
    .expect("valid indices");
    let bracket = labeled(bracket, &["x*d/dx", "x^2*d/dx", "1", "x", "x^2"]);
    let mut mu_x = RatMatrix::zeros(5, 5);
    for (from, to) in [(0, 1), (2, 3), (3, 4)] {
        mu_x.set(to, from, q(1));
    }
    let mut mu_x2 = RatMatrix::zeros(5, 5);
    mu_x2.set(4, 2, q(1));
    let pair = AlgebraModulePair::new(a, vec![RatMatrix::identity(5), mu_x, mu_x2]).expect("valid module");
    BracketOnModule::new(pair, bracket).expect("dimensions match")
}

const SHADOW_VARS: usize = 3;

fn shadow_basis_form(idx: usize) -> DifferentialForm {
    let n = SHADOW_VARS;
    let (mask, c) = (idx / 4, idx % 4);
    let coeff = if c == 0 { MultiPoly::one(n) } else { MultiPoly::var(n, c - 1) };
    let indices: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
    DifferentialForm::monomial(coeff, &indices)
}

fn shadow_coordinates(w: &DifferentialForm) -> Vec<Rational> {
    let mut out = vector::zeros(32);
    for (mask, poly) in w.terms() {
        for (e, c) in poly.terms() {
            let slot = match e.iter().position(|&k| k > 0) {
                None => 0,
                Some(i) => {
                    assert!(e[i] == 1 && e.iter().sum::<u32>() == 1, "shadow coefficient out of range");
                    i + 1
                }
            };
            out[mask as usize * 4 + slot] = c.clone();
        }
    }
    out
}

/// Forms on `Q^3` with affine coefficients (dimension 32) over
/// `A = Q[x1,x2,x3]/(x1,x2,x3)^2`, with the bracket `da∧b − b∧da`.
/// Coordinate `4·mask + c`, `c` indexing `1, x1, x2, x3`.
pub fn e1_shadow() -> BracketOnModule {
    let a = AssocAlgebra::truncated_polynomials(SHADOW_VARS, 1);
    let n = 32;
    let action = (0..4)
        .map(|f| {
            let mut m = RatMatrix::zeros(n, n);
            for idx in 0..n {
                let (mask, c) = (idx / 4, idx % 4);
                if f == 0 {
                    m.set(idx, idx, rat(1));
                } else if c == 0 {
                    m.set(mask * 4 + f, idx, rat(1));
                }
            }
            m
        })
        .collect();
    let pair = AlgebraModulePair::new(a, action).expect("valid module");
    let forms: Vec<DifferentialForm> = (0..n).map(shadow_basis_form).collect();
    let bracket = StructureBracket::from_basis_brackets(n, |i, j| {
        shadow_coordinates(&e1_bracket(&forms[i], &forms[j]).expect("homogeneous basis forms"))
    });
    BracketOnModule::new(pair, bracket).expect("dimensions match")
}

/// The action Lie algebroid `A ⊗ g` for `rho: g -> Der(A)`:
/// `[f u, g w] = fg [u, w] + f rho(u)(g) w − g rho(w)(f) u`.
/// Coordinate `c·m + p` is `f_p ⊗ u_c`.
pub fn action_algebroid(a: AssocAlgebra, g: &StructureBracket, rho: &[RatMatrix]) -> Result<BracketOnModule> {
    let m = a.dim();
    let k = g.dim();
    let pair = AlgebraModulePair::free(a.clone(), k)?;
    let bracket = StructureBracket::from_basis_brackets(k * m, |i, j| {
        let (c, p) = (i / m, i % m);
        let (d, q) = (j / m, j % m);
        let (fp, fq) = (vector::unit(m, p), vector::unit(m, q));
        let mut out = vector::zeros(k * m);
        let fg = a.mul(&fp, &fq);
        for (e, coeff) in g.basis_bracket(c, d).iter().enumerate() {
            for r in 0..m {
                out[e * m + r] += coeff * &fg[r];
            }
        }
        let t1 = a.mul(&fp, &rho[c].apply(&fq));
        let t2 = a.mul(&fq, &rho[d].apply(&fp));
        for r in 0..m {
            out[d * m + r] += &t1[r];
            out[c * m + r] -= &t2[r];
        }
        out
    });
    BracketOnModule::new(pair, bracket)
}

fn euler(m: usize) -> RatMatrix {
    let mut d = RatMatrix::zeros(m, m);
    for i in 0..m {
        d.set(i, i, rat(i as i64));
    }
    d
}

/// `A = Q[x]/(x^3)`, `g = Q`, `u ↦ x∂`.
pub fn action_rank1() -> BracketOnModule {
    let a = AssocAlgebra::truncated_polynomials(1, 2);
    action_algebroid(a, &StructureBracket::zero(1), &[euler(3)]).expect("valid action")
}

/// `A = Q[x]/(x^3)`, `g = aff` with `[u, w] = w`, `u ↦ x∂`, `w ↦ x²∂`.
pub fn action_rank2() -> BracketOnModule {
    let a = AssocAlgebra::truncated_polynomials(1, 2);
    let aff = StructureBracket::from_entries(2, &[(0, 1, 1, rat(1)), (1, 0, 1, rat(-1))]).expect("valid indices");
    let mut x2d = RatMatrix::zeros(3, 3);
    x2d.set(2, 1, rat(1));
    action_algebroid(a, &aff, &[euler(3), x2d]).expect("valid action")
}

fn rank_one(bracket: StructureBracket) -> BracketOnModule {
    let pair = AlgebraModulePair::regular(AssocAlgebra::truncated_polynomials(1, 1)).expect("regular module");
    BracketOnModule::new(pair, bracket).expect("dimensions match").with_free_rank_one(true)
}

/// `A = F = Q[x]/(x^2)` with `[f, g] = x(f g' − g f')`.
pub fn qd_rank1_euler() -> BracketOnModule {
    rank_one(StructureBracket::from_entries(2, &[(0, 1, 1, rat(1)), (1, 0, 1, rat(-1))]).expect("valid indices"))
}

/// `A = F = Q[x]/(x^2)` with `[f, g] = x·f·g`: every adjoint is
/// `A`-linear and the bracket is left Loday, yet it is not antisymmetric.
pub fn qd_rank1_nilpotent() -> BracketOnModule {
    rank_one(StructureBracket::from_entries(2, &[(0, 0, 1, rat(1))]).expect("valid indices"))
}

pub fn qd_rank1_zero() -> BracketOnModule {
    rank_one(StructureBracket::zero(2))
}

pub fn corpus() -> Vec<CorpusEntry> {
    use Instance::*;
    let entry = |name, description, instance| CorpusEntry {
        name,
        description,
        instance,
    };
    vec![
        entry("zero-bracket-dim3", "zero bracket on Q^3", Bracket(StructureBracket::zero(3))),
        entry("gl2", "commutator bracket of 2x2 matrices", Bracket(StructureBracket::gl(2))),
        entry("sl2", "sl2 in the basis h, e, f", Bracket(sl2())),
        entry("so3", "cross-product Lie algebra", Bracket(so3())),
        entry("so3-perturbed", "so3 plus [e1,e2] += e1, antisymmetric but not Lie", Bracket(so3_perturbed())),
        entry("hemisemidirect-sl2", "sl2 x Q^2 with ([z,w], z.y)", Bracket(hemisemidirect_sl2())),
        entry("hemisemidirect-gl2", "gl2 x Q^2 with ([z,w], z.y)", Bracket(hemisemidirect_gl2())),
        entry("d-identity-m2", "D-generated bracket, D = id on M2", Bracket(d_identity_m2())),
        entry("d-square-zero", "D-generated bracket on M2 ⊗ Q[s,t]/(s,t)^2, D(s) = t", Bracket(d_square_zero())),
        entry("d-projector", "D-generated bracket, D = projection of M2 ⊕ M2", Bracket(d_projector())),
        entry("d-zero-m2", "D-generated bracket, D = 0 on M2", Bracket(d_zero_m2())),
        entry("dorfman-shadow", "Der(A) ⊕ A over Q[x]/(x^3) with ([X,Y], X(b))", Module(dorfman_shadow())),
        entry("e1-shadow", "affine forms on Q^3 with da∧b − b∧da", Module(e1_shadow())),
        entry("action-rank1", "action algebroid Q[x]/(x^3), u ↦ x d/dx", Module(action_rank1())),
        entry("action-rank2", "action algebroid of aff on Q[x]/(x^3)", Module(action_rank2())),
        entry("qd-rank1-euler", "Q[x]/(x^2) with x(f g' − g f')", Module(qd_rank1_euler())),
        entry("qd-rank1-nilpotent", "Q[x]/(x^2) with x f g", Module(qd_rank1_nilpotent())),
        entry("qd-rank1-zero", "Q[x]/(x^2) with the zero bracket", Module(qd_rank1_zero())),
    ]
}

pub fn lookup(name: &str) -> Option<CorpusEntry> {
    corpus().into_iter().find(|e| e.name == name)
}

/// The free rank-one instances over `Q[x]/(x^2)`.
pub fn rank_one_corpus() -> Vec<CorpusEntry> {
    corpus()
        .into_iter()
        .filter(|e| matches!(&e.instance, Instance::Module(m) if m.free_rank_one))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebroid::{anchor_morphism_check, classify, qd_empirical_check, theorem_t3_check, theorem_t4_check, theorem_t5_check};
    use crate::bracket::{check_jacobi, check_left_leibniz};
    use crate::quasider::DerivationOfA;
    use crate::Verdict;

    #[test]
    fn names_are_unique() {
        let names: Vec<_> = corpus().iter().map(|e| e.name).collect();
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), names.len());
        assert!(lookup("gl2").is_some() && lookup("nope").is_none());
        assert_eq!(rank_one_corpus().len(), 3);
    }

    #[test]
    fn d_generated_trio() {
        assert_eq!(d_identity_m2().constants(), StructureBracket::gl(2).constants());
        for b in [d_square_zero(), d_projector(), d_zero_m2()] {
            assert!(check_left_leibniz(&b).holds());
        }
        assert!(!d_square_zero().is_zero());
        let (a, d) = d_square_zero_operator();
        assert!((&d * &d).is_zero());
        let x = DerivationOfA { matrix: d };
        assert!(x.check_leibniz(&a).holds());
    }

    #[test]
    fn dorfman_shadow_classification() {
        let b = dorfman_shadow();
        let r = classify(&b).unwrap();
        assert!(r.left_loday.holds() && r.left_quasi_algebroid.holds() && r.left_anchor_tensorial.holds());
        assert!(!r.right_quasi_algebroid.holds());
        let anchor = r.anchor_left.as_ref().unwrap();
        assert_eq!(anchor.values[0].matrix, euler(3));
        let mut x2d = RatMatrix::zeros(3, 3);
        x2d.set(2, 1, rat(1));
        assert_eq!(anchor.values[1].matrix, x2d);
        assert!(anchor.values[2..].iter().all(DerivationOfA::is_zero));
        assert!(anchor_morphism_check(&b, &r).unwrap().holds());
        let t3 = theorem_t3_check(&b).unwrap();
        assert!(t3.lhs.holds() && t3.rhs.holds());
        assert!(matches!(theorem_t4_check(&b).unwrap(), Verdict::NotApplicable(_)));
        assert!(matches!(qd_empirical_check(&b).unwrap(), Verdict::NotApplicable(_)));
    }

    #[test]
    fn e1_shadow_classification() {
        let b = e1_shadow();
        assert_eq!(b.dim(), 32);
        let r = classify(&b).unwrap();
        assert!(r.left_loday.holds() && r.left_quasi_algebroid.holds());
        assert!(r.anchor_left.as_ref().unwrap().is_zero());
        assert!(!r.right_quasi_algebroid.holds());
        assert!(anchor_morphism_check(&b, &r).unwrap().holds());
        assert!(matches!(theorem_t4_check(&b).unwrap(), Verdict::NotApplicable(_)));
        // [[x1, dx2]] = 2 dx1∧dx2 is not x1 times anything at the constant level
        let x1 = 1;
        let dx2 = 2 * 4;
        let mut want = vector::zeros(32);
        want[3 * 4] = rat(2);
        assert_eq!(b.bracket.basis_bracket(x1, dx2), want);
    }

    #[test]
    fn action_algebroids_are_lie_algebroids() {
        for b in [action_rank1(), action_rank2()] {
            assert!(check_jacobi(&b.bracket).holds());
            let r = classify(&b).unwrap();
            assert!(r.lie_algebroid.holds());
            assert!(anchor_morphism_check(&b, &r).unwrap().holds());
            let t5 = theorem_t5_check(&b).unwrap();
            assert!(t5.lhs.holds() && t5.rhs.holds());
            assert!(theorem_t4_check(&b).unwrap().is_holds());
        }
    }

    #[test]
    fn rank_one_instances() {
        assert!(qd_empirical_check(&qd_rank1_euler()).unwrap().is_holds());
        assert!(qd_empirical_check(&qd_rank1_zero()).unwrap().is_holds());
        let nil = qd_rank1_nilpotent();
        let r = classify(&nil).unwrap();
        assert!(r.left_quasi_algebroid.holds() && r.right_quasi_algebroid.holds());
        assert!(!r.antisymmetric.holds());
        assert!(qd_empirical_check(&nil).unwrap().is_fail());
    }
}
