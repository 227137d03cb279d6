//! Constructions producing brackets: the left/right flip, brackets generated
//! by an operator on an associative algebra, hemisemidirect products and
//! Weinstein's omni-Lie bracket.

use num_traits::Zero;

use super::{check_antisymmetry, check_jacobi, check_left_leibniz, AssocAlgebra, LinearMap, StructureBracket};
use crate::exactmath::{mat_commutator, ratio, vector, RatMatrix, Rational};
use crate::{Error, IdentityReport, Result, Witness};

/// `[u, v]' = [v, u]`. Turns left Loday brackets into right Loday ones.
pub fn flip_bracket(b: &StructureBracket) -> StructureBracket {
    let mut out = StructureBracket::from_fn(b.dim(), |i, j, k| b.get(j, i, k).clone());
    out.labels = b.labels.clone();
    out
}

fn check_operator_shape(a: &AssocAlgebra, d: &LinearMap) -> Result<()> {
    if d.rows() != a.dim() || d.cols() != a.dim() {
        return Err(Error::shape(
            "operator on algebra",
            format!("{0}x{0}", a.dim()),
            format!("{}x{}", d.rows(), d.cols()),
        ));
    }
    Ok(())
}

/// The two halves of the generation condition, checked on basis pairs:
/// `D(a·D(b)) = D(a)·D(b)` and `D(D(a)·b) = D(a)·D(b)`.
pub fn check_d_condition(a: &AssocAlgebra, d: &LinearMap) -> Result<(IdentityReport, IdentityReport)> {
    check_operator_shape(a, d)?;
    let n = a.dim();
    let images: Vec<Vec<Rational>> = (0..n).map(|i| d.column(i)).collect();
    let mut left = None;
    let mut right = None;
    'pairs: for i in 0..n {
        for j in 0..n {
            let ei = vector::unit(n, i);
            let ej = vector::unit(n, j);
            let both = a.mul(&images[i], &images[j]);
            if left.is_none() {
                let lhs = d.apply(&a.mul(&ei, &images[j]));
                let defect = vector::sub(&lhs, &both);
                if !vector::is_zero(&defect) {
                    left = Some(Witness::new("D(a*D(b)) = D(a)*D(b) at basis pair (a,b)", vec![i, j], defect));
                }
            }
            if right.is_none() {
                let lhs = d.apply(&a.mul(&images[i], &ej));
                let defect = vector::sub(&lhs, &both);
                if !vector::is_zero(&defect) {
                    right = Some(Witness::new("D(D(a)*b) = D(a)*D(b) at basis pair (a,b)", vec![i, j], defect));
                }
            }
            if left.is_some() && right.is_some() {
                break 'pairs;
            }
        }
    }
    Ok((left.into(), right.into()))
}

/// `[u, v] = D(u)·v − v·D(u)`, defined once the generation condition holds.
/// The output is re-checked for the left Leibniz identity.
pub fn d_generated_bracket(a: &AssocAlgebra, d: &LinearMap) -> Result<StructureBracket> {
    let (left, right) = check_d_condition(a, d)?;
    for (name, r) in [("left D-condition", left), ("right D-condition", right)] {
        if let Some(w) = r.witness() {
            return Err(Error::ConditionViolated {
                condition: name.to_string(),
                witness: w.clone(),
            });
        }
    }
    let n = a.dim();
    let b = StructureBracket::from_basis_brackets(n, |i, j| {
        let du = d.column(i);
        let ej = vector::unit(n, j);
        vector::sub(&a.mul(&du, &ej), &a.mul(&ej, &du))
    });
    if let Some(w) = check_left_leibniz(&b).witness() {
        return Err(Error::invariant(
            "D-generated bracket fails the left Leibniz identity",
            Some(w.clone()),
        ));
    }
    Ok(b)
}

/// Bracket on `h x V` given by `(z, x)·(w, y) = ([z, w], z·y)`, basis of
/// `h` first. `action[i]` is the matrix by which `e_i` acts on `V`.
pub fn hemisemidirect(h: &StructureBracket, action: &[LinearMap]) -> Result<StructureBracket> {
    let n = h.dim();
    if action.len() != n {
        return Err(Error::shape("action matrices", n, action.len()));
    }
    let m = action.first().map_or(0, RatMatrix::rows);
    for a in action {
        if a.rows() != m || a.cols() != m {
            return Err(Error::shape(
                "action matrix",
                format!("{m}x{m}"),
                format!("{}x{}", a.rows(), a.cols()),
            ));
        }
    }
    let lie = check_antisymmetry(h).and(check_jacobi(h));
    if let Some(w) = lie.witness() {
        return Err(Error::precondition("acting algebra is not Lie", Some(w.clone())));
    }
    for i in 0..n {
        for j in 0..n {
            let mut image = RatMatrix::zeros(m, m);
            for (k, c) in h.basis_bracket(i, j).iter().enumerate() {
                if !c.is_zero() {
                    image = &image + &action[k].scale(c);
                }
            }
            let comm = mat_commutator(&action[i], &action[j])?;
            let defect = &image - &comm;
            if !defect.is_zero() {
                return Err(Error::precondition(
                    "action is not a representation",
                    Some(Witness::new("basis pair (i,j)", vec![i, j], defect.into_entries())),
                ));
            }
        }
    }

    let dim = n + m;
    let mut out = StructureBracket::from_basis_brackets(dim, |i, j| {
        let mut v = vector::zeros(dim);
        if i < n && j < n {
            v[..n].clone_from_slice(&h.basis_bracket(i, j));
        } else if i < n {
            v[n..].clone_from_slice(&action[i].column(j - n));
        }
        v
    });
    if let Some(hl) = h.labels() {
        let mut labels = hl.to_vec();
        labels.extend((1..=m).map(|a| format!("v{a}")));
        out.labels = Some(labels);
    }

    if let Some(w) = check_left_leibniz(&out).witness() {
        return Err(Error::invariant(
            "hemisemidirect product fails the left Leibniz identity",
            Some(w.clone()),
        ));
    }
    let zero_action = action.iter().all(RatMatrix::is_zero);
    let is_lie = check_antisymmetry(&out).and(check_jacobi(&out)).holds();
    if is_lie != zero_action {
        return Err(Error::invariant(
            format!("hemisemidirect product: Lie = {is_lie} but zero action = {zero_action}"),
            None,
        ));
    }
    Ok(out)
}

/// `{(A, x), (B, y)} = ([A, B], (Ay − Bx)/2)`.
pub fn omni_lie_bracket(
    a: &LinearMap,
    x: &[Rational],
    b: &LinearMap,
    y: &[Rational],
) -> Result<(LinearMap, Vec<Rational>)> {
    let n = a.rows();
    if x.len() != n || y.len() != n || b.rows() != n {
        return Err(Error::shape(
            "omni-Lie element",
            format!("{n}x{n} with vectors of length {n}"),
            format!("{}x{} with vectors of length {}, {}", b.rows(), b.cols(), x.len(), y.len()),
        ));
    }
    let c = mat_commutator(a, b)?;
    let v = vector::scale(&ratio(1, 2), &vector::sub(&a.apply(y), &b.apply(x)));
    Ok((c, v))
}

/// Whether the graph `{(ad_x, x)}` of an antisymmetric bracket is closed
/// under the omni-Lie bracket. Computed through the omni-Lie bracket and
/// directly as `[ad_i, ad_j] = ad_[e_i,e_j]`; both must agree with the
/// Jacobi checker.
pub fn weinstein_graph_closed(b: &StructureBracket) -> Result<IdentityReport> {
    if let Some(w) = check_antisymmetry(b).witness() {
        return Err(Error::precondition("bracket is not antisymmetric", Some(w.clone())));
    }
    let n = b.dim();
    let ads: Vec<RatMatrix> = (0..n).map(|i| b.left_adjoint(&vector::unit(n, i))).collect();

    let mut via_omni = IdentityReport::pass();
    let mut direct = IdentityReport::pass();
    for i in 0..n {
        for j in 0..n {
            if via_omni.holds() {
                let (m, z) = omni_lie_bracket(&ads[i], &vector::unit(n, i), &ads[j], &vector::unit(n, j))?;
                let defect = &m - &b.left_adjoint(&z);
                if !defect.is_zero() {
                    via_omni = IdentityReport::fail(Witness::new(
                        "graph pair (i,j) leaves the graph",
                        vec![i, j],
                        defect.into_entries(),
                    ));
                }
            }
            if direct.holds() {
                let lhs = mat_commutator(&ads[i], &ads[j])?;
                let defect = &lhs - &b.left_adjoint(&b.basis_bracket(i, j));
                if !defect.is_zero() {
                    direct = IdentityReport::fail(Witness::new(
                        "[ad_i, ad_j] = ad_[e_i,e_j] at pair (i,j)",
                        vec![i, j],
                        defect.into_entries(),
                    ));
                }
            }
        }
    }
    let jacobi = check_jacobi(b).holds();
    if via_omni.holds() != direct.holds() || direct.holds() != jacobi {
        return Err(Error::invariant(
            format!(
                "graph closure routes disagree: omni-Lie {}, adjoint {}, Jacobi {}",
                via_omni.holds(),
                direct.holds(),
                jacobi
            ),
            via_omni.witness().or(direct.witness()).cloned(),
        ));
    }
    Ok(via_omni)
}
