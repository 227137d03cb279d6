//! Coordinate vectors as plain `Vec<Rational>`.

use num_traits::Zero;

use super::Rational;

pub fn zeros(n: usize) -> Vec<Rational> {
    vec![Rational::zero(); n]
}

pub fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v = zeros(n);
    v[i] = Rational::from_integer(1.into());
    v
}

pub fn is_zero(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    assert_eq!(a.len(), b.len(), "vector length mismatch");
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn neg(a: &[Rational]) -> Vec<Rational> {
    a.iter().map(|x| -x).collect()
}

pub fn scale(c: &Rational, a: &[Rational]) -> Vec<Rational> {
    if c.is_zero() {
        return zeros(a.len());
    }
    a.iter().map(|x| c * x).collect()
}

/// `acc += c * v`
pub fn axpy(acc: &mut [Rational], c: &Rational, v: &[Rational]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += c * x;
        }
    }
}

pub fn from_i64(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| super::rat(x)).collect()
}
