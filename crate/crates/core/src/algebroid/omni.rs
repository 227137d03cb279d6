use crate::bracket::{check_antisymmetry, check_jacobi, check_left_leibniz, LinearMap, StructureBracket};
use crate::exactmath::{mat_commutator, vector, RatMatrix, Rational};
use crate::sampling;
use crate::{Error, IdentityReport, Result, Witness};

/// A pair `(phi, x)` in `gl(F) x F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmniElement {
    pub phi: LinearMap,
    pub x: Vec<Rational>,
}

impl OmniElement {
    pub fn new(phi: LinearMap, x: Vec<Rational>) -> Result<Self> {
        if !phi.is_square() || phi.rows() != x.len() {
            return Err(Error::shape(
                "omni element",
                format!("{0}x{0} with vector of length {0}", x.len()),
                format!("{}x{}", phi.rows(), phi.cols()),
            ));
        }
        Ok(OmniElement { phi, x })
    }

    pub fn zero(n: usize) -> Self {
        OmniElement {
            phi: RatMatrix::zeros(n, n),
            x: vector::zeros(n),
        }
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }

    pub fn is_zero(&self) -> bool {
        self.phi.is_zero() && vector::is_zero(&self.x)
    }

    /// Matrix entries followed by the vector.
    pub fn flatten(&self) -> Vec<Rational> {
        let mut v = self.phi.entries().to_vec();
        v.extend_from_slice(&self.x);
        v
    }

    pub fn add(&self, other: &OmniElement) -> OmniElement {
        OmniElement {
            phi: &self.phi + &other.phi,
            x: vector::add(&self.x, &other.x),
        }
    }

    pub fn sub(&self, other: &OmniElement) -> OmniElement {
        OmniElement {
            phi: &self.phi - &other.phi,
            x: vector::sub(&self.x, &other.x),
        }
    }
}

/// `{(phi, X), (psi, Y)} = ([phi, psi], phi Y)`.
pub fn omni_loday_bracket(a: &OmniElement, b: &OmniElement) -> Result<OmniElement> {
    if a.dim() != b.dim() {
        return Err(Error::shape("omni-Loday bracket", a.dim(), b.dim()));
    }
    Ok(OmniElement {
        phi: mat_commutator(&a.phi, &b.phi)?,
        x: a.phi.apply(&b.x),
    })
}

fn leibniz_defect(a: &OmniElement, b: &OmniElement, c: &OmniElement) -> Result<OmniElement> {
    let lhs = omni_loday_bracket(a, &omni_loday_bracket(b, c)?)?;
    let r1 = omni_loday_bracket(&omni_loday_bracket(a, b)?, c)?;
    let r2 = omni_loday_bracket(b, &omni_loday_bracket(a, c)?)?;
    Ok(lhs.sub(&r1).sub(&r2))
}

/// Basis of `gl(F) x F`: matrix units `(E_ab, 0)` first, then `(0, e_c)`.
fn omni_basis(n: usize) -> Vec<OmniElement> {
    let mut out = Vec::with_capacity(n * n + n);
    for a in 0..n {
        for b in 0..n {
            out.push(OmniElement {
                phi: RatMatrix::unit(n, a, b),
                x: vector::zeros(n),
            });
        }
    }
    for c in 0..n {
        out.push(OmniElement {
            phi: RatMatrix::zeros(n, n),
            x: vector::unit(n, c),
        });
    }
    out
}

/// Left Leibniz identity of the omni-Loday bracket on every triple of the
/// basis grid and on `samples` seeded random rational triples.
pub fn omni_left_leibniz_check(dim: usize, samples: usize, seed: u64) -> Result<IdentityReport> {
    let basis = omni_basis(dim);
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            for (k, c) in basis.iter().enumerate() {
                let d = leibniz_defect(a, b, c)?;
                if !d.is_zero() {
                    return Ok(IdentityReport::fail(Witness::new(
                        "omni left Leibniz on basis grid triple (i,j,k)",
                        vec![i, j, k],
                        d.flatten(),
                    )));
                }
            }
        }
    }
    let mut rng = sampling::rng(seed);
    for s in 0..samples {
        let [a, b, c] = random_omni_triple(&mut rng, dim);
        let d = leibniz_defect(&a, &b, &c)?;
        if !d.is_zero() {
            return Ok(IdentityReport::fail(Witness::new(
                "omni left Leibniz on random sample (s)",
                vec![s],
                d.flatten(),
            )));
        }
    }
    Ok(IdentityReport::pass())
}

pub fn random_omni_triple(rng: &mut sampling::SeededRng, dim: usize) -> [OmniElement; 3] {
    std::array::from_fn(|_| OmniElement {
        phi: sampling::rational_matrix(rng, dim),
        x: sampling::rational_vector(rng, dim),
    })
}

/// Cyclic sum `{a,{b,c}} + {c,{a,b}} + {b,{c,a}}`, computed directly and
/// through the closed form `(0, phi(psi Z) + ups(phi Y) + psi(ups X))`.
pub fn jacobiator(a: &OmniElement, b: &OmniElement, c: &OmniElement) -> Result<OmniElement> {
    let direct = omni_loday_bracket(a, &omni_loday_bracket(b, c)?)?
        .add(&omni_loday_bracket(c, &omni_loday_bracket(a, b)?)?)
        .add(&omni_loday_bracket(b, &omni_loday_bracket(c, a)?)?);
    let (phi, psi, ups) = (&a.phi, &b.phi, &c.phi);
    let mut x = phi.apply(&psi.apply(&c.x));
    x = vector::add(&x, &ups.apply(&phi.apply(&b.x)));
    x = vector::add(&x, &psi.apply(&ups.apply(&a.x)));
    let closed = OmniElement {
        phi: RatMatrix::zeros(a.dim(), a.dim()),
        x,
    };
    if direct != closed {
        return Err(Error::invariant(
            "jacobiator closed form differs from the direct cyclic sum",
            Some(Witness::new("direct - closed", vec![], direct.sub(&closed).flatten())),
        ));
    }
    Ok(direct)
}

/// `(ad_left(e_i), e_i)` for every basis vector.
pub fn graph_of(b: &StructureBracket) -> Vec<OmniElement> {
    let n = b.dim();
    (0..n)
        .map(|i| {
            let e = vector::unit(n, i);
            OmniElement {
                phi: b.left_adjoint(&e),
                x: e,
            }
        })
        .collect()
}

/// Whether the graph of `b` is closed under the omni-Loday bracket. The
/// answer must agree with the left Leibniz checker, and with the Lie
/// checkers when `b` is antisymmetric; disagreement is an invariant error.
pub fn is_graph_closed(b: &StructureBracket) -> Result<IdentityReport> {
    let graph = graph_of(b);
    let n = b.dim();
    let mut report = IdentityReport::pass();
    'pairs: for i in 0..n {
        for j in 0..n {
            let got = omni_loday_bracket(&graph[i], &graph[j])?;
            let z = b.basis_bracket(i, j);
            let want = OmniElement {
                phi: b.left_adjoint(&z),
                x: z,
            };
            let d = got.sub(&want);
            if !d.is_zero() {
                report = IdentityReport::fail(Witness::new(
                    "graph pair (i,j) leaves the graph",
                    vec![i, j],
                    d.flatten(),
                ));
                break 'pairs;
            }
        }
    }
    let leibniz = check_left_leibniz(b);
    if report.holds() != leibniz.holds() {
        return Err(Error::invariant(
            format!(
                "graph closure ({}) disagrees with the left Leibniz identity ({})",
                report.holds(),
                leibniz.holds()
            ),
            report.witness().or(leibniz.witness()).cloned(),
        ));
    }
    if check_antisymmetry(b).holds() && report.holds() != check_jacobi(b).holds() {
        return Err(Error::invariant(
            "graph closure of an antisymmetric bracket disagrees with the Lie identities",
            report.witness().cloned(),
        ));
    }
    Ok(report)
}
