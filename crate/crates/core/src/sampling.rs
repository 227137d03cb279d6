//! Seeded generators for the randomized checks. Every suite builds its own
//! `ChaCha8Rng` from a `u64` seed so runs are reproducible.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bracket::StructureBracket;
use crate::exactmath::{rat, ratio, MultiPoly, RatMatrix, Rational};

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Integer in `-r..=r` as a rational.
pub fn small_int(rng: &mut SeededRng, r: i64) -> Rational {
    rat(rng.gen_range(-r..=r))
}

/// `p/q` with `|p| <= 3`, `1 <= q <= 3`.
pub fn small_rational(rng: &mut SeededRng) -> Rational {
    ratio(rng.gen_range(-3..=3), rng.gen_range(1..=3))
}

pub fn int_vector(rng: &mut SeededRng, n: usize, r: i64) -> Vec<Rational> {
    (0..n).map(|_| small_int(rng, r)).collect()
}

pub fn rational_vector(rng: &mut SeededRng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| small_rational(rng)).collect()
}

pub fn rational_matrix(rng: &mut SeededRng, n: usize) -> RatMatrix {
    RatMatrix::from_entries(n, n, rational_vector(rng, n * n)).expect("n x n")
}

/// Dense polynomial: every monomial of degree `<= max_degree` gets an
/// integer coefficient in `-r..=r`.
pub fn dense_poly(rng: &mut SeededRng, nvars: usize, max_degree: u32, r: i64) -> MultiPoly {
    let mut p = MultiPoly::zero(nvars);
    for e in crate::bracket::truncated_monomials(nvars, max_degree) {
        p = &p + &MultiPoly::monomial(nvars, e, small_int(rng, r));
    }
    p
}

/// Up to `max_terms` random monomials of degree `<= max_degree` with
/// nonzero coefficients in `-2..=2`.
pub fn sparse_poly(rng: &mut SeededRng, nvars: usize, max_degree: u32, max_terms: usize) -> MultiPoly {
    let monos = crate::bracket::truncated_monomials(nvars, max_degree);
    let mut p = MultiPoly::zero(nvars);
    for _ in 0..rng.gen_range(1..=max_terms) {
        let e = monos[rng.gen_range(0..monos.len())].clone();
        let c = [-2, -1, 1, 2][rng.gen_range(0..4)];
        p = &p + &MultiPoly::monomial(nvars, e, rat(c));
    }
    p
}

fn sparse_or_dense(rng: &mut SeededRng, slots: usize, dim: usize, r: i64) -> Vec<Rational> {
    let mut values = vec![rat(0); slots];
    if rng.gen_bool(0.5) {
        for v in values.iter_mut() {
            *v = small_int(rng, r);
        }
    } else {
        for _ in 0..rng.gen_range(0..=dim) {
            let s = rng.gen_range(0..slots);
            values[s] = small_int(rng, r);
        }
    }
    values
}

/// Structure constants in `-r..=r`. Half of the samples are sparse, with at
/// most `dim` nonzero constants, so identities hold often enough for both
/// branches of an equivalence to be exercised.
pub fn random_bracket(rng: &mut SeededRng, dim: usize, r: i64) -> StructureBracket {
    let c = sparse_or_dense(rng, dim * dim * dim, dim, r);
    StructureBracket::from_constants(dim, c).expect("dim^3 constants")
}

/// As [`random_bracket`], drawing `[e_i, e_j]` for `i < j` only.
pub fn random_antisymmetric_bracket(rng: &mut SeededRng, dim: usize, r: i64) -> StructureBracket {
    let pairs: Vec<(usize, usize)> = (0..dim).flat_map(|i| (i + 1..dim).map(move |j| (i, j))).collect();
    let c = sparse_or_dense(rng, pairs.len() * dim, dim, r);
    let mut b = StructureBracket::zero(dim);
    for (p, &(i, j)) in pairs.iter().enumerate() {
        for k in 0..dim {
            let v = &c[p * dim + k];
            b.set(i, j, k, v.clone());
            b.set(j, i, k, -v);
        }
    }
    b
}
