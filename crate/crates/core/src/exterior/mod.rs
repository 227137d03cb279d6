//! Polynomial exterior calculus on `Q^n`: forms `sum f_I dx_I` with
//! polynomial coefficients, the exterior derivative, contraction, the Lie
//! derivative and the two geometric brackets built from them.
//!
//! Index sets are bitmasks (bit `i` is `dx_{i+1}`), so wedge signs are
//! inversion counts between two masks.

mod dorfman;
mod e1;

pub use dorfman::{
    dorfman_bracket, dorfman_checks, dorfman_right_residual, dorfman_right_witness, DorfmanReport, GeneralizedSection,
};
pub use e1::{
    e1_bracket, e1_defect, e1_leibniz_defect, e1_leibniz_suite, e1_predicted_defect, e1_right_failure_witness, e1_zero_anchor_check, E1LeibnizReport,
    E1Witness,
};

use std::collections::BTreeMap;
use std::fmt;

use crate::exactmath::{MultiPoly, Rational};
use crate::{Error, Result};

/// Largest supported number of variables (masks are `u32`).
pub const MAX_VARS: usize = 16;

/// An inhomogeneous differential form with polynomial coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DifferentialForm {
    nvars: usize,
    terms: BTreeMap<u32, MultiPoly>,
}

/// `(-1)^k` where `k` counts pairs `i in a`, `j in b` with `i > j`.
fn wedge_sign(a: u32, b: u32) -> bool {
    let mut inversions = 0u32;
    let mut rest = a;
    while rest != 0 {
        let i = rest.trailing_zeros();
        rest &= rest - 1;
        inversions += (b & ((1u32 << i) - 1)).count_ones();
    }
    inversions % 2 == 1
}

impl DifferentialForm {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "at most {MAX_VARS} variables");
        DifferentialForm {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    /// A 0-form.
    pub fn function(f: MultiPoly) -> Self {
        let mut out = Self::zero(f.nvars());
        out.add_term(0, f);
        out
    }

    /// `f dx_I` with `I` given by 0-based variable indices in any order;
    /// the sign of sorting them is applied.
    pub fn monomial(f: MultiPoly, indices: &[usize]) -> Self {
        let n = f.nvars();
        let mut out = Self::function(f);
        for &i in indices {
            out = out.wedge(&Self::dx(n, i)).expect("same variable count");
        }
        out
    }

    /// `dx_{i+1}`.
    pub fn dx(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "dx index out of range");
        let mut out = Self::zero(nvars);
        out.add_term(1 << i, MultiPoly::one(nvars));
        out
    }

    /// Parses `(indices, coefficient)` pairs, indices 1-based ascending or
    /// not; repeated indices make the term vanish.
    pub fn from_terms(nvars: usize, terms: &[(Vec<usize>, MultiPoly)]) -> Result<Self> {
        let mut out = Self::zero(nvars);
        for (idx, f) in terms {
            if f.nvars() != nvars {
                return Err(Error::shape("form coefficient variables", nvars, f.nvars()));
            }
            if let Some(bad) = idx.iter().find(|&&i| i == 0 || i > nvars) {
                return Err(Error::shape("form index", format!("1..={nvars}"), bad));
            }
            let zero_based: Vec<usize> = idx.iter().map(|i| i - 1).collect();
            out = out.add(&Self::monomial(f.clone(), &zero_based))?;
        }
        Ok(out)
    }

    fn add_term(&mut self, mask: u32, f: MultiPoly) {
        if f.is_zero() {
            return;
        }
        match self.terms.remove(&mask) {
            Some(g) => {
                let s = &g + &f;
                if !s.is_zero() {
                    self.terms.insert(mask, s);
                }
            }
            None => {
                self.terms.insert(mask, f);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms as `(bitmask, coefficient)` in ascending mask order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &MultiPoly)> {
        self.terms.iter().map(|(m, f)| (*m, f))
    }

    /// Terms as (1-based ascending indices, coefficient).
    pub fn index_terms(&self) -> Vec<(Vec<usize>, MultiPoly)> {
        self.terms
            .iter()
            .map(|(m, f)| ((0..self.nvars).filter(|i| m >> i & 1 == 1).map(|i| i + 1).collect(), f.clone()))
            .collect()
    }

    pub fn coefficient(&self, indices: &[usize]) -> MultiPoly {
        let mask = indices.iter().fold(0u32, |m, i| m | 1 << (i - 1));
        self.terms.get(&mask).cloned().unwrap_or_else(|| MultiPoly::zero(self.nvars))
    }

    /// The common degree of all terms; `None` for zero or mixed degrees.
    pub fn degree(&self) -> Option<usize> {
        let mut degs = self.terms.keys().map(|m| m.count_ones() as usize);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    /// Homogeneous component of degree `k`.
    pub fn component(&self, k: usize) -> DifferentialForm {
        DifferentialForm {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.count_ones() as usize == k)
                .map(|(m, f)| (*m, f.clone()))
                .collect(),
        }
    }

    fn check_vars(&self, nvars: usize, context: &'static str) -> Result<()> {
        if self.nvars != nvars {
            return Err(Error::shape(context, self.nvars, nvars));
        }
        Ok(())
    }

    pub fn add(&self, other: &DifferentialForm) -> Result<DifferentialForm> {
        self.check_vars(other.nvars, "form sum")?;
        let mut out = self.clone();
        for (m, f) in &other.terms {
            out.add_term(*m, f.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &DifferentialForm) -> Result<DifferentialForm> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> DifferentialForm {
        self.scale(&Rational::from_integer((-1).into()))
    }

    pub fn scale(&self, c: &Rational) -> DifferentialForm {
        let mut out = Self::zero(self.nvars);
        for (m, f) in &self.terms {
            out.add_term(*m, f.scale(c));
        }
        out
    }

    /// `f · self` for a function `f`.
    pub fn mul_function(&self, f: &MultiPoly) -> Result<DifferentialForm> {
        self.check_vars(f.nvars(), "function times form")?;
        let mut out = Self::zero(self.nvars);
        for (m, g) in &self.terms {
            out.add_term(*m, f * g);
        }
        Ok(out)
    }

    /// Coefficientwise truncation to polynomial degree `max_degree`.
    pub fn truncate(&self, max_degree: u32) -> DifferentialForm {
        let mut out = Self::zero(self.nvars);
        for (m, f) in &self.terms {
            out.add_term(*m, f.truncate(max_degree));
        }
        out
    }

    pub fn wedge(&self, other: &DifferentialForm) -> Result<DifferentialForm> {
        self.check_vars(other.nvars, "wedge product")?;
        let mut out = Self::zero(self.nvars);
        for (a, f) in &self.terms {
            for (b, g) in &other.terms {
                if a & b != 0 {
                    continue;
                }
                let p = f * g;
                out.add_term(a | b, if wedge_sign(*a, *b) { -&p } else { p });
            }
        }
        Ok(out)
    }

    /// Exterior derivative: `d(f dx_I) = sum_i (df/dx_i) dx_i ∧ dx_I`.
    pub fn ext_d(&self) -> DifferentialForm {
        let mut out = Self::zero(self.nvars);
        for (m, f) in &self.terms {
            for i in 0..self.nvars {
                let bit = 1u32 << i;
                if m & bit != 0 {
                    continue;
                }
                let di = f.partial(i);
                if di.is_zero() {
                    continue;
                }
                out.add_term(m | bit, if wedge_sign(bit, *m) { -&di } else { di });
            }
        }
        out
    }

    /// Contraction `ι_X`.
    pub fn interior(&self, x: &VectorField) -> Result<DifferentialForm> {
        self.check_vars(x.nvars(), "contraction")?;
        let mut out = Self::zero(self.nvars);
        for (m, f) in &self.terms {
            let mut rest = *m;
            let mut position = 0;
            while rest != 0 {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let c = &x.components[i] * f;
                out.add_term(m & !(1 << i), if position % 2 == 1 { -&c } else { c });
                position += 1;
            }
        }
        Ok(out)
    }

    /// `L_X = ι_X d + d ι_X`.
    pub fn lie_derivative(&self, x: &VectorField) -> Result<DifferentialForm> {
        self.ext_d().interior(x)?.add(&self.interior(x)?.ext_d())
    }

    /// The coefficient of a 0-form, otherwise `None`.
    pub fn as_function(&self) -> Option<MultiPoly> {
        match self.terms.len() {
            0 => Some(MultiPoly::zero(self.nvars)),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }
}

pub fn wedge(a: &DifferentialForm, b: &DifferentialForm) -> Result<DifferentialForm> {
    a.wedge(b)
}

pub fn ext_d(a: &DifferentialForm) -> DifferentialForm {
    a.ext_d()
}

pub fn interior(x: &VectorField, a: &DifferentialForm) -> Result<DifferentialForm> {
    a.interior(x)
}

pub fn lie_derivative(x: &VectorField, a: &DifferentialForm) -> Result<DifferentialForm> {
    a.lie_derivative(x)
}

fn fmt_mask(f: &mut fmt::Formatter<'_>, nvars: usize, mask: u32) -> fmt::Result {
    let parts: Vec<String> = (0..nvars)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| format!("dx{}", i + 1))
        .collect();
    write!(f, "{}", parts.join("∧"))
}

fn fmt_coefficient(f: &mut fmt::Formatter<'_>, c: &MultiPoly, first: bool, has_basis: bool) -> fmt::Result {
    let s = c.to_string();
    let single = c.num_terms() == 1;
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) if single => (true, rest.to_string()),
        _ => (false, s),
    };
    match (first, neg) {
        (true, true) => write!(f, "-")?,
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
        (true, false) => {}
    }
    if !has_basis {
        return write!(f, "{body}");
    }
    if single && body == "1" {
        return Ok(());
    }
    if single {
        write!(f, "{body}*")
    } else {
        write!(f, "({body})*")
    }
}

impl fmt::Display for DifferentialForm {
    /// Ascending masks, e.g. `x6*dx1∧dx2 - 2*dx3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            fmt_coefficient(f, c, k == 0, *m != 0)?;
            if *m != 0 {
                fmt_mask(f, self.nvars, *m)?;
            }
        }
        Ok(())
    }
}

/// `sum X^i ∂/∂x_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VectorField {
    components: Vec<MultiPoly>,
}

impl VectorField {
    pub fn zero(nvars: usize) -> Self {
        VectorField {
            components: vec![MultiPoly::zero(nvars); nvars],
        }
    }

    pub fn new(components: Vec<MultiPoly>) -> Result<Self> {
        let n = components.len();
        if let Some(bad) = components.iter().find(|c| c.nvars() != n) {
            return Err(Error::shape("vector field component variables", n, bad.nvars()));
        }
        Ok(VectorField { components })
    }

    /// `f ∂/∂x_{i+1}`.
    pub fn coordinate(f: MultiPoly, i: usize) -> Self {
        let mut v = Self::zero(f.nvars());
        v.components[i] = f;
        v
    }

    pub fn nvars(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[MultiPoly] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(MultiPoly::is_zero)
    }

    /// `X(f) = sum X^i ∂f/∂x_i`.
    pub fn apply(&self, f: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars());
        for (i, c) in self.components.iter().enumerate() {
            if !c.is_zero() {
                out = &out + &(c * &f.partial(i));
            }
        }
        out
    }

    pub fn add(&self, other: &VectorField) -> VectorField {
        VectorField {
            components: self.components.iter().zip(&other.components).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &VectorField) -> VectorField {
        VectorField {
            components: self.components.iter().zip(&other.components).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn mul_function(&self, f: &MultiPoly) -> VectorField {
        VectorField {
            components: self.components.iter().map(|c| f * c).collect(),
        }
    }

    pub fn truncate(&self, max_degree: u32) -> VectorField {
        VectorField {
            components: self.components.iter().map(|c| c.truncate(max_degree)).collect(),
        }
    }
}

/// `[X, Y]^i = X(Y^i) - Y(X^i)`.
pub fn vf_bracket(x: &VectorField, y: &VectorField) -> Result<VectorField> {
    if x.nvars() != y.nvars() {
        return Err(Error::shape("vector field bracket", x.nvars(), y.nvars()));
    }
    Ok(VectorField {
        components: x
            .components
            .iter()
            .zip(&y.components)
            .map(|(xi, yi)| &x.apply(yi) - &y.apply(xi))
            .collect(),
    })
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.components.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            fmt_coefficient(f, c, first, true)?;
            write!(f, "d/dx{}", i + 1)?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}


#[cfg(test)]
mod tests;
