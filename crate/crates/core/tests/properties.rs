use std::sync::OnceLock;

use proptest::prelude::*;

use loday_core::algebroid::{classify, is_graph_closed, omni_left_leibniz_check, BracketOnModule};
use loday_core::bracket::{
    check_antisymmetry, check_jacobi, check_left_leibniz, check_lie, check_right_leibniz, d_generated_bracket,
    flip_bracket, hemisemidirect, weinstein_graph_closed, AssocAlgebra, StructureBracket,
};
use loday_core::corpus;
use loday_core::exactmath::{rank, ratio, solve_preimage, vector, MultiPoly, RatMatrix, Rational};
use loday_core::exterior::{e1_zero_anchor_check, vf_bracket, DifferentialForm, VectorField};
use loday_core::quasider::{is_quasi_derivation, quasi_derivation_basis, QDerOutcome, QuasiDerivationRecord};
use loday_core::suites::{quasider_module, t5_module};

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=9).prop_map(|(p, q)| ratio(p, q))
}

fn bracket(dim: usize) -> impl Strategy<Value = StructureBracket> {
    prop::collection::vec(-2i64..=2, dim * dim * dim)
        .prop_map(move |v| StructureBracket::from_constants(dim, v.into_iter().map(|x| ratio(x, 1)).collect()).unwrap())
}

/// Mostly-sparse constants, so that identities hold on a fair share.
fn sparse_bracket(dim: usize) -> impl Strategy<Value = StructureBracket> {
    prop::collection::vec((0..dim * dim * dim, -2i64..=2), 0..=dim).prop_map(move |entries| {
        let mut c = vec![ratio(0, 1); dim * dim * dim];
        for (slot, v) in entries {
            c[slot] = ratio(v, 1);
        }
        StructureBracket::from_constants(dim, c).unwrap()
    })
}

fn antisymmetrize(b: &StructureBracket) -> StructureBracket {
    let n = b.dim();
    StructureBracket::from_fn(n, |i, j, k| match i.cmp(&j) {
        std::cmp::Ordering::Less => b.get(i, j, k).clone(),
        std::cmp::Ordering::Greater => -b.get(j, i, k).clone(),
        std::cmp::Ordering::Equal => ratio(0, 1),
    })
}

fn antisymmetric(dim: usize) -> impl Strategy<Value = StructureBracket> {
    prop_oneof![sparse_bracket(dim), bracket(dim)].prop_map(|b| antisymmetrize(&b))
}

fn matrix(n: usize) -> impl Strategy<Value = RatMatrix> {
    prop::collection::vec(-2i64..=2, n * n).prop_map(move |v| RatMatrix::from_i64(n, n, &v))
}

const NV: usize = 4;

fn poly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((prop::collection::vec(0u32..=2, NV), -3i64..=3), 0..=3).prop_map(|terms| {
        terms.into_iter().fold(MultiPoly::zero(NV), |acc, (e, c)| {
            &acc + &MultiPoly::monomial(NV, e, ratio(c, 1))
        })
    })
}

fn form(k: usize) -> impl Strategy<Value = DifferentialForm> {
    prop::collection::vec((prop::sample::subsequence((0..NV).collect::<Vec<_>>(), k), poly()), 1..=2).prop_map(
        |terms| {
            terms.into_iter().fold(DifferentialForm::zero(NV), |acc, (idx, f)| {
                acc.add(&DifferentialForm::monomial(f, &idx)).unwrap()
            })
        },
    )
}

fn graded() -> impl Strategy<Value = (usize, DifferentialForm)> {
    (0..=3usize).prop_flat_map(|k| (Just(k), form(k)))
}

fn field() -> impl Strategy<Value = VectorField> {
    prop::collection::vec(poly(), NV).prop_map(|c| VectorField::new(c).unwrap())
}

fn sign(k: usize) -> Rational {
    if k.is_multiple_of(2) {
        ratio(1, 1)
    } else {
        ratio(-1, 1)
    }
}

fn qder_basis() -> &'static [QuasiDerivationRecord] {
    static BASIS: OnceLock<Vec<QuasiDerivationRecord>> = OnceLock::new();
    BASIS.get_or_init(|| quasi_derivation_basis(&quasider_module()).unwrap())
}

fn combination(c: &[i64]) -> RatMatrix {
    let b = qder_basis();
    let n = b[0].d.rows();
    b.iter()
        .zip(c)
        .fold(RatMatrix::zeros(n, n), |acc, (r, &k)| &acc + &r.d.scale(&ratio(k, 1)))
}

#[test]
fn lie_implies_both_leibniz_on_corpus() {
    for e in corpus::corpus() {
        let b = e.instance.bracket();
        if check_lie(b).holds() {
            assert!(check_left_leibniz(b).holds() && check_right_leibniz(b).holds(), "{}", e.name);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_field_laws(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
    }

    #[test]
    fn preimage_recombines(cols in prop::collection::vec(matrix(2), 1..=3), c in prop::collection::vec(-3i64..=3, 3)) {
        let target = cols.iter().zip(&c).fold(RatMatrix::zeros(2, 2), |acc, (m, &k)| &acc + &m.scale(&ratio(k, 1)));
        let g = solve_preimage(&cols, &target).unwrap();
        let g = g.expect("target is in the span");
        let back = cols.iter().zip(&g).fold(RatMatrix::zeros(2, 2), |acc, (m, k)| &acc + &m.scale(k));
        prop_assert_eq!(back, target);
    }

    #[test]
    fn rank_bounded(m in matrix(3)) {
        let r = rank(&m);
        prop_assert!(r <= 3);
        prop_assert_eq!(r, rank(&m.transpose()));
    }

    #[test]
    fn lie_implies_leibniz(b in antisymmetric(3)) {
        if check_jacobi(&b).holds() {
            prop_assert!(check_left_leibniz(&b).holds() && check_right_leibniz(&b).holds());
        }
    }

    #[test]
    fn flip_duality(b in prop_oneof![sparse_bracket(3), bracket(2)]) {
        let f = flip_bracket(&b);
        prop_assert_eq!(flip_bracket(&f), b.clone());
        prop_assert_eq!(check_left_leibniz(&b).holds(), check_right_leibniz(&f).holds());
    }

    #[test]
    fn scaled_identity_and_projector_generate_leibniz(l in -3i64..=3) {
        let m2 = AssocAlgebra::matrix_algebra(2);
        let b = d_generated_bracket(&m2, &RatMatrix::identity(4).scale(&ratio(l, 1))).unwrap();
        prop_assert!(check_left_leibniz(&b).holds());
        let (a, p) = corpus::d_projector_operator();
        let b = d_generated_bracket(&a, &p.scale(&ratio(l, 1))).unwrap();
        prop_assert!(check_left_leibniz(&b).holds());
    }

    #[test]
    fn hemisemidirect_abelian(a in matrix(2), c in prop::collection::vec(-2i64..=2, 2)) {
        // commuting operators c_i A^(i+1) represent the abelian algebra of dim 2
        let a2 = &a * &a;
        let action = vec![a.scale(&ratio(c[0], 1)), a2.scale(&ratio(c[1], 1))];
        let zero = action.iter().all(RatMatrix::is_zero);
        let hs = hemisemidirect(&StructureBracket::zero(2), &action).unwrap();
        prop_assert!(check_left_leibniz(&hs).holds());
        prop_assert_eq!(check_lie(&hs).holds(), zero);
    }

    #[test]
    fn weinstein_agrees_with_jacobi(b in antisymmetric(3)) {
        prop_assert_eq!(weinstein_graph_closed(&b).unwrap().holds(), check_jacobi(&b).holds());
    }

    #[test]
    fn graph_closure_agrees_with_leibniz(b in prop_oneof![sparse_bracket(3), bracket(3)]) {
        prop_assert_eq!(is_graph_closed(&b).unwrap().holds(), check_left_leibniz(&b).holds());
    }

    #[test]
    fn omni_leibniz_random(seed in any::<u64>()) {
        prop_assert!(omni_left_leibniz_check(2, 5, seed).unwrap().holds());
    }

    #[test]
    fn quasi_derivations_form_a_module(c in prop::collection::vec(-2i64..=2, 14), f in prop::collection::vec(-2i64..=2, 3)) {
        let pair = quasider_module();
        let d = combination(&c);
        let rec = is_quasi_derivation(&pair, &d).unwrap().record().expect("combination is a quasi-derivation");
        // hat is linear
        let hat = qder_basis().iter().zip(&c).fold(RatMatrix::zeros(3, 3), |acc, (r, &k)| &acc + &r.hat.matrix.scale(&ratio(k, 1)));
        prop_assert_eq!(&rec.hat.matrix, &hat);
        // [d, mu_i] = mu(hat(f_i))
        for (i, mu) in pair.action().iter().enumerate() {
            let comm = &(&d * mu) - &(mu * &d);
            prop_assert_eq!(comm, pair.mu(&rec.hat.apply(&vector::unit(3, i))));
        }
        // mu(f)∘d has hat f·hat(d)
        let f: Vec<Rational> = f.into_iter().map(|v| ratio(v, 1)).collect();
        let scaled = &pair.mu(&f) * &d;
        match is_quasi_derivation(&pair, &scaled).unwrap() {
            QDerOutcome::QDer(r) => prop_assert_eq!(r.hat, rec.hat.scaled_by(pair.algebra(), &f)),
            QDerOutcome::NotQDer { .. } => prop_assert!(false, "mu(f) d is not a quasi-derivation"),
        }
    }

    #[test]
    fn antisymmetric_anchors_are_opposite(b in antisymmetric(3)) {
        let m = BracketOnModule::new(t5_module(), b.clone()).unwrap();
        let r = classify(&m).unwrap();
        prop_assert!(check_antisymmetry(&b).holds());
        if let (Some(l), Some(rt)) = (&r.anchor_left, &r.anchor_right) {
            prop_assert_eq!(l, &rt.negated());
        }
    }

    #[test]
    fn d_squared_vanishes((_, a) in graded()) {
        prop_assert!(a.ext_d().ext_d().is_zero());
    }

    #[test]
    fn wedge_graded_commutative((k, a) in graded(), (l, b) in graded()) {
        prop_assert_eq!(a.wedge(&b).unwrap(), b.wedge(&a).unwrap().scale(&sign(k * l)));
    }

    #[test]
    fn d_graded_leibniz((k, a) in graded(), (_, b) in graded()) {
        let lhs = a.wedge(&b).unwrap().ext_d();
        let rhs = a.ext_d().wedge(&b).unwrap().add(&a.wedge(&b.ext_d()).unwrap().scale(&sign(k))).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn interior_graded_derivation(x in field(), (k, a) in graded(), (_, b) in graded()) {
        let lhs = a.wedge(&b).unwrap().interior(&x).unwrap();
        let rhs = a.interior(&x).unwrap().wedge(&b).unwrap()
            .add(&a.wedge(&b.interior(&x).unwrap()).unwrap().scale(&sign(k))).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn lie_derivative_leibniz(x in field(), f in poly(), (_, w) in graded()) {
        let lhs = w.mul_function(&f).unwrap().lie_derivative(&x).unwrap();
        let rhs = w.mul_function(&x.apply(&f)).unwrap()
            .add(&w.lie_derivative(&x).unwrap().mul_function(&f).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn vector_bracket_antisymmetric(x in field(), y in field()) {
        let xy = vf_bracket(&x, &y).unwrap();
        let yx = vf_bracket(&y, &x).unwrap();
        prop_assert!(xy.add(&yx).is_zero());
    }

    #[test]
    fn e1_zero_anchor(seed in any::<u64>()) {
        prop_assert!(e1_zero_anchor_check(4, 4, seed, 3, 2).unwrap().holds());
    }
}
