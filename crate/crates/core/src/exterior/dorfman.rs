use std::fmt;

use super::{vf_bracket, DifferentialForm, VectorField};
use crate::exactmath::MultiPoly;
use crate::sampling::{self, SeededRng};
use crate::{Error, Result};

/// `X + alpha`, a vector field plus a one-form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizedSection {
    pub vector: VectorField,
    pub oneform: DifferentialForm,
}

impl GeneralizedSection {
    pub fn new(vector: VectorField, oneform: DifferentialForm) -> Result<Self> {
        if vector.nvars() != oneform.nvars() {
            return Err(Error::shape("section variables", vector.nvars(), oneform.nvars()));
        }
        if !oneform.is_zero() && oneform.degree() != Some(1) {
            return Err(Error::precondition(format!("not a one-form: {oneform}"), None));
        }
        Ok(GeneralizedSection { vector, oneform })
    }

    pub fn zero(n: usize) -> Self {
        GeneralizedSection {
            vector: VectorField::zero(n),
            oneform: DifferentialForm::zero(n),
        }
    }

    pub fn nvars(&self) -> usize {
        self.vector.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.vector.is_zero() && self.oneform.is_zero()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(GeneralizedSection {
            vector: self.vector.add(&other.vector),
            oneform: self.oneform.add(&other.oneform)?,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        Ok(GeneralizedSection {
            vector: self.vector.sub(&other.vector),
            oneform: self.oneform.sub(&other.oneform)?,
        })
    }

    pub fn mul_function(&self, f: &MultiPoly) -> Result<Self> {
        Ok(GeneralizedSection {
            vector: self.vector.mul_function(f),
            oneform: self.oneform.mul_function(f)?,
        })
    }
}

impl fmt::Display for GeneralizedSection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})", self.vector, self.oneform)
    }
}

/// `[[X + a, Y + b]] = [X, Y] + L_X b − ι_Y da`.
pub fn dorfman_bracket(s1: &GeneralizedSection, s2: &GeneralizedSection) -> Result<GeneralizedSection> {
    if s1.nvars() != s2.nvars() {
        return Err(Error::shape("Dorfman bracket", s1.nvars(), s2.nvars()));
    }
    let vector = vf_bracket(&s1.vector, &s2.vector)?;
    let oneform = s2
        .oneform
        .lie_derivative(&s1.vector)?
        .sub(&s1.oneform.ext_d().interior(&s2.vector)?)?;
    Ok(GeneralizedSection { vector, oneform })
}

/// `L_{fY} a − ι_X d(f b) − f L_Y a + f ι_X db`, the part of
/// `[ad^R_{X+a}, mu_f](Y+b)` beyond `−X(f)·Y`.
pub fn dorfman_right_residual(
    x_alpha: &GeneralizedSection,
    y_beta: &GeneralizedSection,
    f: &MultiPoly,
) -> Result<DifferentialForm> {
    let (x, alpha) = (&x_alpha.vector, &x_alpha.oneform);
    let (y, beta) = (&y_beta.vector, &y_beta.oneform);
    let fy = y.mul_function(f);
    let t1 = alpha.lie_derivative(&fy)?;
    let t2 = beta.mul_function(f)?.ext_d().interior(x)?;
    let t3 = alpha.lie_derivative(y)?.mul_function(f)?;
    let t4 = beta.ext_d().interior(x)?.mul_function(f)?;
    t1.sub(&t2)?.sub(&t3)?.add(&t4)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DorfmanReport {
    pub nvars: usize,
    pub degree: u32,
    pub samples: usize,
    pub seed: u64,
    pub leibniz_pass: usize,
    pub anchor_pass: usize,
    pub tensorial_pass: usize,
    /// The fixed right-adjoint witness and its nonzero residual.
    pub witness: (GeneralizedSection, GeneralizedSection, MultiPoly),
    pub residual: DifferentialForm,
}

pub(crate) fn random_section(rng: &mut SeededRng, n: usize, degree: u32) -> GeneralizedSection {
    let vector = VectorField::new((0..n).map(|_| sampling::dense_poly(rng, n, degree, 2)).collect())
        .expect("n components");
    let mut oneform = DifferentialForm::zero(n);
    for i in 0..n {
        let c = sampling::dense_poly(rng, n, degree, 2);
        oneform = oneform
            .add(&DifferentialForm::monomial(c, &[i]))
            .expect("same variables");
    }
    GeneralizedSection { vector, oneform }
}

/// The right-adjoint witness `X = ∂1`, `a = x2 dx2`, `Y = ∂2`, `b = 0`,
/// `f = x1` on `Q^n`, `n >= 2`. Its residual is `a(Y) df = x2 dx1`.
pub fn dorfman_right_witness(n: usize) -> (GeneralizedSection, GeneralizedSection, MultiPoly) {
    let one = MultiPoly::one(n);
    let x = GeneralizedSection {
        vector: VectorField::coordinate(one.clone(), 0),
        oneform: DifferentialForm::monomial(MultiPoly::var(n, 1), &[1]),
    };
    let y = GeneralizedSection {
        vector: VectorField::coordinate(one, 1),
        oneform: DifferentialForm::zero(n),
    };
    (x, y, MultiPoly::var(n, 0))
}

fn violation(check: &str, s: usize, detail: String) -> Error {
    Error::invariant(format!("Dorfman {check} fails on sample {s}: {detail}"), None)
}

/// Seeded randomized verification of the Dorfman bracket on `Q^n` with
/// coefficients of degree `<= degree`:
///
/// 1. left Leibniz identity on random triples,
/// 2. `[ad^L_a, mu_f] b = X(f)·b` (anchor is the tangent projection),
/// 3. `hat(ad^L_{g·a}) = g·hat(ad^L_a)` evaluated on `f` and `b`,
/// 4. for the fixed witness, `[ad^R_a, mu_f] b + X(f)·Y` equals the residual
///    one-form, which is nonzero.
pub fn dorfman_checks(n: usize, degree: u32, samples: usize, seed: u64) -> Result<DorfmanReport> {
    if n < 2 {
        return Err(Error::precondition("Dorfman checks need at least two variables", None));
    }
    let mut rng = sampling::rng(seed);
    let mut report = DorfmanReport {
        nvars: n,
        degree,
        samples,
        seed,
        leibniz_pass: 0,
        anchor_pass: 0,
        tensorial_pass: 0,
        witness: dorfman_right_witness(n),
        residual: DifferentialForm::zero(n),
    };
    for s in 0..samples {
        let a = random_section(&mut rng, n, degree);
        let b = random_section(&mut rng, n, degree);
        let c = random_section(&mut rng, n, degree);
        let f = sampling::dense_poly(&mut rng, n, degree, 2);
        let g = sampling::dense_poly(&mut rng, n, degree, 2);

        let lhs = dorfman_bracket(&a, &dorfman_bracket(&b, &c)?)?;
        let r1 = dorfman_bracket(&dorfman_bracket(&a, &b)?, &c)?;
        let r2 = dorfman_bracket(&b, &dorfman_bracket(&a, &c)?)?;
        let defect = lhs.sub(&r1)?.sub(&r2)?;
        if !defect.is_zero() {
            return Err(violation("left Leibniz", s, defect.to_string()));
        }
        report.leibniz_pass += 1;

        let commutator = |x: &GeneralizedSection| -> Result<GeneralizedSection> {
            dorfman_bracket(x, &b.mul_function(&f)?)?.sub(&dorfman_bracket(x, &b)?.mul_function(&f)?)
        };
        let xf = a.vector.apply(&f);
        let got = commutator(&a)?;
        if got != b.mul_function(&xf)? {
            return Err(violation("anchor identity", s, got.to_string()));
        }
        report.anchor_pass += 1;

        let ga = a.mul_function(&g)?;
        let lhs = commutator(&ga)?;
        let rhs = got.mul_function(&g)?;
        if lhs != rhs {
            return Err(violation("tensoriality", s, lhs.sub(&rhs)?.to_string()));
        }
        report.tensorial_pass += 1;
    }

    let (x, y, f) = report.witness.clone();
    let comm = dorfman_bracket(&y.mul_function(&f)?, &x)?.sub(&dorfman_bracket(&y, &x)?.mul_function(&f)?)?;
    let residual = dorfman_right_residual(&x, &y, &f)?;
    let xf = x.vector.apply(&f);
    let expected_vector = VectorField::zero(n).sub(&y.vector.mul_function(&xf));
    if comm.vector != expected_vector || comm.oneform != residual {
        return Err(Error::invariant(
            format!("right-adjoint commutator {comm} does not split as −X(f)·Y plus residual {residual}"),
            None,
        ));
    }
    if residual.is_zero() {
        return Err(Error::invariant("right-adjoint residual vanishes on the witness", None));
    }
    report.residual = residual;
    Ok(report)
}
