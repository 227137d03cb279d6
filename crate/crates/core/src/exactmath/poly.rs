use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::{parse_rational, ParseRationalError};
use super::Rational;
use crate::{Error, Result};

/// Exponent vector of a monomial, one entry per variable.
pub type Exponents = Vec<u32>;

/// Multivariate polynomial with rational coefficients in `nvars` variables.
///
/// Terms live in a map keyed by exponent vector (lexicographic order); zero
/// coefficients are never stored, so structural equality is polynomial
/// equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Exponents, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    /// The variable `x_{i+1}` (zero-based index `i`).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, Rational::one())
    }

    pub fn monomial(nvars: usize, exps: Exponents, c: Rational) -> Self {
        assert_eq!(exps.len(), nvars, "exponent vector length");
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Constant value if the polynomial has no variable terms.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    fn add_term(&mut self, exps: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_vars(&self, other: &MultiPoly, context: &'static str) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::shape(context, self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_vars(other, "polynomial variable count")?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_vars(other, "polynomial variable count")?;
        let mut out = MultiPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Partial derivative with respect to zero-based variable `i`.
    pub fn partial(&self, i: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut d = e.clone();
            d[i] -= 1;
            out.add_term(d, c * Rational::from_integer(e[i].into()));
        }
        out
    }

    /// Drops every term of total degree above `max_degree`.
    pub fn truncate(&self, max_degree: u32) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() <= max_degree)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Parses text such as `"x6"`, `"-2*x1^2*x3 + 1/3"` in `nvars` variables.
    /// Variables are named `x1..xn`.
    pub fn parse(nvars: usize, text: &str) -> Result<MultiPoly, ParsePolyError> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(ParsePolyError::Empty);
        }
        let mut out = MultiPoly::zero(nvars);
        for term in split_terms(&s) {
            let (sign, body) = match term.strip_prefix('-') {
                Some(rest) => (-Rational::one(), rest),
                None => (Rational::one(), term.strip_prefix('+').unwrap_or(term)),
            };
            if body.is_empty() {
                return Err(ParsePolyError::Malformed(text.to_string()));
            }
            let mut coeff = sign;
            let mut exps = vec![0u32; nvars];
            for factor in body.split('*') {
                if let Some(v) = factor.strip_prefix('x') {
                    let (idx, pow) = match v.split_once('^') {
                        Some((i, p)) => (i, p),
                        None => (v, "1"),
                    };
                    let idx: usize = idx
                        .parse()
                        .map_err(|_| ParsePolyError::Malformed(text.to_string()))?;
                    let pow: u32 = pow
                        .parse()
                        .map_err(|_| ParsePolyError::Malformed(text.to_string()))?;
                    if idx == 0 || idx > nvars {
                        return Err(ParsePolyError::VariableOutOfRange { index: idx, nvars });
                    }
                    exps[idx - 1] += pow;
                } else {
                    coeff *= parse_rational(factor)?;
                }
            }
            out.add_term(exps, coeff);
        }
        Ok(out)
    }
}

fn split_terms(s: &str) -> Vec<&str> {
    let bytes = s.as_bytes();
    let mut parts = Vec::new();
    let mut start = 0;
    for i in 1..bytes.len() {
        if (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'*' | b'/' | b'^') {
            parts.push(&s[start..i]);
            start = i;
        }
    }
    parts.push(&s[start..]);
    parts
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParsePolyError {
    #[error("empty polynomial")]
    Empty,
    #[error("malformed polynomial {0:?}")]
    Malformed(String),
    #[error("variable x{index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error(transparent)]
    Coefficient(#[from] ParseRationalError),
}

/// True iff `lhs - rhs` is the zero polynomial.
pub fn poly_eval_identity(lhs: &MultiPoly, rhs: &MultiPoly) -> Result<bool> {
    lhs.check_vars(rhs, "polynomial identity")?;
    Ok(lhs == rhs)
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_add(rhs).expect("polynomial add")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_add(&-rhs).expect("polynomial sub")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_mul(rhs).expect("polynomial mul")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for MultiPoly {
    /// Highest monomial first, e.g. `-2*x1^2*x3 + 1/3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| {
                    if p == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{p}", i + 1)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{a}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{rat, ratio};

    fn p(n: usize, s: &str) -> MultiPoly {
        MultiPoly::parse(n, s).unwrap()
    }

    #[test]
    fn binomial_square() {
        let x = MultiPoly::var(2, 0);
        let y = MultiPoly::var(2, 1);
        let s = &x + &y;
        let lhs = &s * &s;
        let rhs = p(2, "x1^2 + 2*x1*x2 + x2^2");
        assert!(poly_eval_identity(&lhs, &rhs).unwrap());
    }

    #[test]
    fn product_commutes() {
        let x = MultiPoly::var(2, 0);
        let y = MultiPoly::var(2, 1);
        assert!(poly_eval_identity(&(&x * &y), &(&y * &x)).unwrap());
    }

    #[test]
    fn constant_offset_detected() {
        assert!(!poly_eval_identity(&p(1, "x1^2"), &p(1, "x1^2 + 1")).unwrap());
    }

    #[test]
    fn identity_rejects_variable_mismatch() {
        assert!(poly_eval_identity(&MultiPoly::zero(1), &MultiPoly::zero(2)).is_err());
    }

    #[test]
    fn cancellation_prunes_terms() {
        let a = p(3, "x1*x2 - 3");
        let z = &a - &a;
        assert!(z.is_zero());
        assert_eq!(z.num_terms(), 0);
        assert_eq!(z.degree(), None);
    }

    #[test]
    fn partial_derivatives() {
        let f = p(3, "x1^3*x2 + 5*x3 - 7");
        assert_eq!(f.partial(0), p(3, "3*x1^2*x2"));
        assert_eq!(f.partial(2), MultiPoly::constant(3, rat(5)));
        assert!(MultiPoly::constant(3, rat(4)).partial(1).is_zero());
    }

    #[test]
    fn display_round_trip() {
        for s in ["-2*x1^2*x3 + 1/3", "x6", "0", "-1/2*x1 + x2^3 - 4"] {
            let q = p(6, s);
            assert_eq!(p(6, &q.to_string()), q, "{s}");
        }
        assert_eq!(p(2, "1/2*x1*x2 - 3*x2").to_string(), "1/2*x1*x2 - 3*x2");
    }

    #[test]
    fn parse_errors() {
        assert!(MultiPoly::parse(2, "x3").is_err());
        assert!(MultiPoly::parse(2, "x0").is_err());
        assert!(MultiPoly::parse(2, "1/0*x1").is_err());
        assert!(MultiPoly::parse(2, "0.5*x1").is_err());
        assert!(MultiPoly::parse(2, "").is_err());
        assert!(MultiPoly::parse(2, "x1+").is_err());
    }

    #[test]
    fn parse_rational_coefficients() {
        assert_eq!(
            p(1, "3/4*x1 - x1"),
            MultiPoly::monomial(1, vec![1], ratio(-1, 4))
        );
        assert_eq!(p(1, "-x1^2").degree(), Some(2));
    }
}
