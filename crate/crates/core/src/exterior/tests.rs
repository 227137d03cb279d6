use super::*;
use crate::exactmath::rat;
use crate::sampling;

fn p(n: usize, s: &str) -> MultiPoly {
    MultiPoly::parse(n, s).unwrap()
}

fn dxs(n: usize, idx: &[usize]) -> DifferentialForm {
    DifferentialForm::monomial(MultiPoly::one(n), idx)
}

fn form(n: usize, c: &str, idx: &[usize]) -> DifferentialForm {
    DifferentialForm::monomial(p(n, c), idx)
}

fn d_dx(n: usize, i: usize) -> VectorField {
    VectorField::coordinate(MultiPoly::one(n), i)
}

#[test]
fn wedge_signs() {
    let n = 6;
    assert_eq!(dxs(n, &[0]).wedge(&dxs(n, &[1])).unwrap(), dxs(n, &[1]).wedge(&dxs(n, &[0])).unwrap().neg());
    assert!(dxs(n, &[0]).wedge(&dxs(n, &[0])).unwrap().is_zero());
    let a = form(n, "x6", &[0, 1, 2, 3]);
    assert_eq!(a.wedge(&DifferentialForm::dx(n, 4)).unwrap(), form(n, "x6", &[0, 1, 2, 3, 4]));
    // dx3 ∧ dx1∧dx2 = dx1∧dx2∧dx3 (two transpositions)
    assert_eq!(dxs(n, &[2]).wedge(&dxs(n, &[0, 1])).unwrap(), dxs(n, &[0, 1, 2]));
    assert_eq!(dxs(n, &[2, 0]), dxs(n, &[0, 2]).neg());
}

#[test]
fn exterior_derivative_examples() {
    let n = 6;
    assert_eq!(DifferentialForm::function(p(n, "x1")).ext_d(), DifferentialForm::dx(n, 0));
    assert!(dxs(n, &[0, 1, 2, 3]).ext_d().is_zero());
    assert_eq!(form(n, "x6", &[0, 1, 2, 3]).ext_d(), dxs(n, &[0, 1, 2, 3, 5]));
    let w = form(n, "x1^2*x3 - 3*x2*x6", &[1, 4]);
    assert!(w.ext_d().ext_d().is_zero());
}

#[test]
fn d_squared_and_graded_leibniz_random() {
    let mut rng = sampling::rng(11);
    let n = 4;
    for _ in 0..40 {
        let k = rand::Rng::gen_range(&mut rng, 0..=2);
        let l = rand::Rng::gen_range(&mut rng, 0..=2);
        let a = e1::random_form(&mut rng, n, k, 2);
        let b = e1::random_form(&mut rng, n, l, 2);
        assert!(a.ext_d().ext_d().is_zero());
        let lhs = a.wedge(&b).unwrap().ext_d();
        let sign = if k % 2 == 0 { rat(1) } else { rat(-1) };
        let rhs = a.ext_d().wedge(&b).unwrap().add(&a.wedge(&b.ext_d()).unwrap().scale(&sign)).unwrap();
        assert_eq!(lhs, rhs);
        let ba = b.wedge(&a).unwrap();
        let sign = if k * l % 2 == 0 { rat(1) } else { rat(-1) };
        assert_eq!(a.wedge(&b).unwrap(), ba.scale(&sign));
    }
}

#[test]
fn contraction_lie_derivative_and_vector_bracket() {
    let n = 3;
    assert_eq!(DifferentialForm::dx(n, 0).interior(&d_dx(n, 0)).unwrap(), DifferentialForm::function(MultiPoly::one(n)));
    let x = VectorField::new(vec![p(n, "x2"), p(n, "x1*x3"), p(n, "1")]).unwrap();
    let f = p(n, "x1^2*x2 + x3");
    assert_eq!(
        DifferentialForm::function(f.clone()).lie_derivative(&x).unwrap(),
        DifferentialForm::function(x.apply(&f))
    );
    let x1d2 = VectorField::coordinate(p(n, "x1"), 1);
    assert_eq!(vf_bracket(&x1d2, &d_dx(n, 0)).unwrap(), d_dx(n, 1).mul_function(&p(n, "-1")));
    // L_X(f·w) = X(f)·w + f·L_X w
    let w = form(n, "x2", &[0, 2]);
    let lhs = w.mul_function(&f).unwrap().lie_derivative(&x).unwrap();
    let rhs = w
        .mul_function(&x.apply(&f))
        .unwrap()
        .add(&w.lie_derivative(&x).unwrap().mul_function(&f).unwrap())
        .unwrap();
    assert_eq!(lhs, rhs);
}

#[test]
fn display_format() {
    let n = 6;
    let w = form(n, "x6", &[0, 1]).sub(&form(n, "2", &[2])).unwrap();
    assert_eq!(w.to_string(), "x6*dx1∧dx2 - 2*dx3");
    assert_eq!(DifferentialForm::zero(n).to_string(), "0");
    assert_eq!(VectorField::coordinate(p(n, "x2"), 0).to_string(), "x2*d/dx1");
}

#[test]
fn e1_witness_values() {
    let n = 6;
    let alpha = dxs(n, &[0, 1, 2, 3]);
    let beta = DifferentialForm::dx(n, 4);
    assert!(e1_bracket(&alpha, &beta).unwrap().is_zero());
    assert!(e1_bracket(&DifferentialForm::zero(n), &beta).unwrap().is_zero());
    let w = e1_right_failure_witness().unwrap();
    assert_eq!(w.bracket_of_scaled, form(n, "-2", &[0, 1, 2, 3, 4, 5]));
    assert!(w.scaled_bracket.is_zero());
    assert_eq!(w.multiple_of_beta, Some(false));
    let trivial = e1_defect(&MultiPoly::one(n), &alpha, &beta).unwrap();
    assert!(trivial.difference.is_zero());
}

#[test]
fn e1_analogous_defect() {
    let n = 6;
    let alpha = form(n, "x1", &[1, 2, 3, 4]);
    assert!(!alpha.ext_d().is_zero());
    let w = e1_defect(&p(n, "x6"), &alpha, &DifferentialForm::dx(n, 0)).unwrap();
    assert_eq!(w.difference, form(n, "-2*x1", &[0, 1, 2, 3, 4, 5]));
    assert_eq!(w.multiple_of_beta, Some(false));
}

#[test]
fn e1_rejects_inhomogeneous() {
    let n = 3;
    let mixed = DifferentialForm::function(p(n, "x1")).add(&DifferentialForm::dx(n, 1)).unwrap();
    assert!(e1_bracket(&mixed, &DifferentialForm::dx(n, 2)).is_err());
}

#[test]
fn e1_leibniz_counterexample() {
    let n = 4;
    let a = DifferentialForm::function(p(n, "x1"));
    let b = form(n, "x2", &[2]);
    let c = DifferentialForm::dx(n, 3);
    let defect = e1_leibniz_defect(&a, &b, &c).unwrap();
    // [[b,c]] = 0, [[[[a,b]],c]] = −4 dx1234, [[b,[[a,c]]]] = 0
    assert_eq!(defect, form(n, "4", &[0, 1, 2, 3]));
    assert_eq!(e1_predicted_defect(&a, &b, &c).unwrap(), defect);
}

#[test]
fn e1_suites() {
    let r = e1_leibniz_suite(3, 100, 1, 3, 2).unwrap();
    assert_eq!(r.predicted_failures, 0);
    assert_eq!(r.holds, 100);
    let r = e1_leibniz_suite(6, 100, 1, 3, 2).unwrap();
    assert_eq!(r.holds + r.predicted_failures, 100);
    assert!(e1_zero_anchor_check(6, 100, 1, 3, 2).unwrap().holds());
}

#[test]
fn dorfman_examples() {
    let n = 3;
    let z = GeneralizedSection::zero(n);
    assert!(dorfman_bracket(&z, &z).unwrap().is_zero());
    let s = GeneralizedSection::new(d_dx(n, 0), DifferentialForm::zero(n)).unwrap();
    let t = GeneralizedSection::new(VectorField::zero(n), DifferentialForm::dx(n, 1)).unwrap();
    assert!(dorfman_bracket(&s, &t).unwrap().is_zero());
    let s = GeneralizedSection::new(VectorField::coordinate(p(n, "x2"), 0), DifferentialForm::dx(n, 0)).unwrap();
    let t = GeneralizedSection::new(d_dx(n, 1), form(n, "x1", &[1])).unwrap();
    let r = dorfman_bracket(&s, &t).unwrap();
    assert_eq!(r.vector, d_dx(n, 0).mul_function(&p(n, "-1")));
    assert_eq!(r.oneform, form(n, "x2", &[1]));
    assert!(GeneralizedSection::new(VectorField::zero(n), dxs(n, &[0, 1])).is_err());
}

#[test]
fn dorfman_suite() {
    let r = dorfman_checks(3, 2, 50, 1).unwrap();
    assert_eq!((r.leibniz_pass, r.anchor_pass, r.tensorial_pass), (50, 50, 50));
    assert_eq!(r.residual, form(3, "x2", &[0]));
    let (x, y, f) = dorfman_right_witness(3);
    assert_eq!(dorfman_right_residual(&x, &y, &f).unwrap(), form(3, "x2", &[0]));
}
