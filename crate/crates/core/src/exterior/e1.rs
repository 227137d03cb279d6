//! The bracket `[[a, b]] = da∧b − b∧da` on polynomial forms.
//!
//! Rewriting `b∧da` by graded commutativity gives the closed form
//! `(1 − (−1)^{|b|(|a|+1)}) da∧b`; both are computed and compared. For odd
//! `|a|` the bracket vanishes identically.
//!
//! The left Leibniz identity does not hold in general. When `|a|` is even
//! the defect of `[[a,[[b,c]]]] = [[[[a,b]],c]] + [[b,[[a,c]]]]` is
//! `2(1 − (−1)^{|c|(|a|+|b|)}) da∧db∧c`, a form of degree at least four,
//! so the identity holds on `Q^n` for `n <= 3` and fails from `n = 4` on.

use rand::Rng;

use super::DifferentialForm;
use crate::exactmath::{rat, MultiPoly, Rational};
use crate::sampling::{self, SeededRng};
use crate::{Error, IdentityReport, Result, Witness};

fn sign_factor(a: usize, b: usize) -> i64 {
    if (b * (a + 1)).is_multiple_of(2) {
        0
    } else {
        2
    }
}

fn homogeneous_degree(x: &DifferentialForm, which: &str) -> Result<usize> {
    x.degree().ok_or_else(|| {
        Error::precondition(format!("{which} argument of the e1 bracket is not homogeneous: {x}"), None)
    })
}

pub fn e1_bracket(a: &DifferentialForm, b: &DifferentialForm) -> Result<DifferentialForm> {
    if a.nvars() != b.nvars() {
        return Err(Error::shape("e1 bracket", a.nvars(), b.nvars()));
    }
    if a.is_zero() || b.is_zero() {
        return Ok(DifferentialForm::zero(a.nvars()));
    }
    let (p, q) = (homogeneous_degree(a, "first")?, homogeneous_degree(b, "second")?);
    let da = a.ext_d();
    let literal = da.wedge(b)?.sub(&b.wedge(&da)?)?;
    let closed = da.wedge(b)?.scale(&rat(sign_factor(p, q)));
    if literal != closed {
        return Err(Error::invariant(
            format!("e1 bracket closed form {closed} differs from da∧b − b∧da = {literal}"),
            None,
        ));
    }
    Ok(closed)
}

/// Both sides of `[[f·a, b]] = f·[[a, b]]`, whose failure rules out a right
/// anchor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E1Witness {
    pub f: MultiPoly,
    pub alpha: DifferentialForm,
    pub beta: DifferentialForm,
    /// `[[f·alpha, beta]]`
    pub bracket_of_scaled: DifferentialForm,
    /// `f·[[alpha, beta]]`
    pub scaled_bracket: DifferentialForm,
    pub difference: DifferentialForm,
    /// Whether the difference is `g·beta` for some polynomial `g`; `None`
    /// when this simple test cannot decide.
    pub multiple_of_beta: Option<bool>,
}

/// Decides `d = g·beta` for polynomial `g` by degree, or by reading `g`
/// off a constant coefficient of `beta`.
fn function_multiple(d: &DifferentialForm, beta: &DifferentialForm) -> Option<bool> {
    if d.is_zero() {
        return Some(true);
    }
    if beta.is_zero() {
        return Some(false);
    }
    match (d.degree(), beta.degree()) {
        (Some(p), Some(q)) if p != q => return Some(false),
        (None, Some(_)) => return Some(false),
        _ => {}
    }
    let (mask, c) = beta.terms().find(|(_, c)| c.as_constant().is_some())?;
    let c: Rational = c.as_constant()?;
    let g = d
        .terms()
        .find(|(m, _)| *m == mask)
        .map(|(_, p)| p.scale(&c.recip()))
        .unwrap_or_else(|| MultiPoly::zero(d.nvars()));
    Some(beta.mul_function(&g).ok()? == *d)
}

/// Computes both sides for arbitrary inputs.
pub fn e1_defect(f: &MultiPoly, alpha: &DifferentialForm, beta: &DifferentialForm) -> Result<E1Witness> {
    let bracket_of_scaled = e1_bracket(&alpha.mul_function(f)?, beta)?;
    let scaled_bracket = e1_bracket(alpha, beta)?.mul_function(f)?;
    let difference = bracket_of_scaled.sub(&scaled_bracket)?;
    let multiple_of_beta = function_multiple(&difference, beta);
    Ok(E1Witness {
        f: f.clone(),
        alpha: alpha.clone(),
        beta: beta.clone(),
        bracket_of_scaled,
        scaled_bracket,
        difference,
        multiple_of_beta,
    })
}

/// `f = x6`, `alpha = dx1∧dx2∧dx3∧dx4`, `beta = dx5` on `Q^6`: the two
/// sides must be `−2 dx1∧…∧dx6` and `0`, and the difference cannot be a
/// function multiple of `beta`.
pub fn e1_right_failure_witness() -> Result<E1Witness> {
    let n = 6;
    let f = MultiPoly::var(n, 5);
    let alpha = DifferentialForm::monomial(MultiPoly::one(n), &[0, 1, 2, 3]);
    let beta = DifferentialForm::dx(n, 4);
    let w = e1_defect(&f, &alpha, &beta)?;
    let top = DifferentialForm::monomial(MultiPoly::constant(n, rat(-2)), &[0, 1, 2, 3, 4, 5]);
    if w.bracket_of_scaled != top {
        return Err(Error::invariant(
            format!("[[x6·alpha, dx5]] = {} instead of {top}", w.bracket_of_scaled),
            None,
        ));
    }
    if !w.scaled_bracket.is_zero() {
        return Err(Error::invariant(
            format!("x6·[[alpha, dx5]] = {} instead of 0", w.scaled_bracket),
            None,
        ));
    }
    if w.multiple_of_beta != Some(false) {
        return Err(Error::invariant("difference is a function multiple of dx5", None));
    }
    Ok(w)
}

/// Random form of degree `k`: one or two terms with sparse coefficients.
pub(crate) fn random_form(rng: &mut SeededRng, n: usize, k: usize, poly_degree: u32) -> DifferentialForm {
    let mut out = DifferentialForm::zero(n);
    for _ in 0..rng.gen_range(1..=2) {
        let mut idx: Vec<usize> = (0..n).collect();
        for i in 0..k {
            let j = rng.gen_range(i..n);
            idx.swap(i, j);
        }
        let f = sampling::sparse_poly(rng, n, poly_degree, 2);
        out = out.add(&DifferentialForm::monomial(f, &idx[..k])).expect("same variables");
    }
    out
}

fn random_homogeneous(rng: &mut SeededRng, n: usize, max_form_degree: usize, poly_degree: u32) -> DifferentialForm {
    loop {
        let k = rng.gen_range(0..=max_form_degree.min(n));
        let form = random_form(rng, n, k, poly_degree);
        if !form.is_zero() {
            return form;
        }
    }
}

/// `[[a, f·b]] = f·[[a, b]]` on seeded random inputs: the left anchor of
/// the bracket is zero.
pub fn e1_zero_anchor_check(
    n: usize,
    samples: usize,
    seed: u64,
    max_form_degree: usize,
    poly_degree: u32,
) -> Result<IdentityReport> {
    let mut rng = sampling::rng(seed);
    for s in 0..samples {
        let a = random_homogeneous(&mut rng, n, max_form_degree, poly_degree);
        let b = random_homogeneous(&mut rng, n, max_form_degree, poly_degree);
        let f = sampling::sparse_poly(&mut rng, n, poly_degree, 3);
        let lhs = e1_bracket(&a, &b.mul_function(&f)?)?;
        let rhs = e1_bracket(&a, &b)?.mul_function(&f)?;
        if lhs != rhs {
            return Ok(IdentityReport::fail(Witness::new(
                format!("[[a, f·b]] ≠ f·[[a, b]] for a = {a}, b = {b}, f = {f}; sample"),
                vec![s],
                vec![],
            )));
        }
    }
    Ok(IdentityReport::pass())
}

/// Left Leibniz defect of the bracket on one triple.
pub fn e1_leibniz_defect(
    a: &DifferentialForm,
    b: &DifferentialForm,
    c: &DifferentialForm,
) -> Result<DifferentialForm> {
    let lhs = e1_bracket(a, &e1_bracket(b, c)?)?;
    let r1 = e1_bracket(&e1_bracket(a, b)?, c)?;
    let r2 = e1_bracket(b, &e1_bracket(a, c)?)?;
    lhs.sub(&r1)?.sub(&r2)
}

/// The predicted defect `2(1 − (−1)^{|c|(|a|+|b|)}) da∧db∧c` for even `|a|`.
pub fn e1_predicted_defect(
    a: &DifferentialForm,
    b: &DifferentialForm,
    c: &DifferentialForm,
) -> Result<DifferentialForm> {
    let n = a.nvars();
    let (Some(p), Some(q), Some(r)) = (a.degree(), b.degree(), c.degree()) else {
        return Ok(DifferentialForm::zero(n));
    };
    if p % 2 == 1 || (r * (p + q)) % 2 == 0 {
        return Ok(DifferentialForm::zero(n));
    }
    Ok(a.ext_d().wedge(&b.ext_d())?.wedge(c)?.scale(&rat(4)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E1LeibnizReport {
    pub nvars: usize,
    pub samples: usize,
    pub seed: u64,
    /// Triples on which the identity holds exactly.
    pub holds: usize,
    /// Triples with a nonzero defect equal to the predicted one.
    pub predicted_failures: usize,
}

/// Left Leibniz identity on seeded random homogeneous triples. Each defect
/// must equal the predicted closed form exactly; any other defect is an
/// invariant violation.
pub fn e1_leibniz_suite(
    n: usize,
    samples: usize,
    seed: u64,
    max_form_degree: usize,
    poly_degree: u32,
) -> Result<E1LeibnizReport> {
    let mut rng = sampling::rng(seed);
    let mut report = E1LeibnizReport {
        nvars: n,
        samples,
        seed,
        holds: 0,
        predicted_failures: 0,
    };
    for s in 0..samples {
        let a = random_homogeneous(&mut rng, n, max_form_degree, poly_degree);
        let b = random_homogeneous(&mut rng, n, max_form_degree, poly_degree);
        let c = random_homogeneous(&mut rng, n, max_form_degree, poly_degree);
        let defect = e1_leibniz_defect(&a, &b, &c)?;
        let predicted = e1_predicted_defect(&a, &b, &c)?;
        if defect != predicted {
            return Err(Error::invariant(
                format!("sample {s}: left Leibniz defect {defect} differs from predicted {predicted} (a = {a}, b = {b}, c = {c})"),
                None,
            ));
        }
        if defect.is_zero() {
            report.holds += 1;
        } else {
            report.predicted_failures += 1;
        }
    }
    Ok(report)
}
