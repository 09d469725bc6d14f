//! Gradings of `L` assembled directly from degrees of derivations.

use super::{Ambient, Grading, GradingDescriptor, GradingError, GradingType};
use crate::abelian::{AbelianGroup, GroupElement};
use crate::derivations::{d_e1_u, d_e2_v, d_t, derivation_space, matrix_unit, Derivation};
use crate::scalar::Rational;

fn coords(d: &Derivation) -> Vec<Rational> {
    derivation_space()
        .coordinates(d.matrix())
        .expect("generators lie in Der(C)")
}

/// The elementary grading of `L` given by the degrees `(γ₁, γ₂, γ₃)` of
/// `u₁, u₂, u₃`.
///
/// Diagonal `d_T` have degree `e`, `d_{E_ij}` has degree `γ_i⁻¹γ_j`,
/// `D_{e₁,u_i}` has degree `γ_i` and `D_{e₂,v_i}` has degree `γ_i⁻¹`. Pieces
/// with equal degree are merged. The degrees must multiply to `e`, since
/// `u₁u₂ = v₃` forces `γ₁γ₂ = γ₃⁻¹`.
pub fn elementary_l_grading(
    group: &AbelianGroup,
    tuple: &[GroupElement; 3],
) -> Result<Grading, GradingError> {
    for t in tuple {
        group.check(t)?;
    }
    let sum = tuple.iter().fold(group.identity(), |acc, t| group.add(&acc, t));
    if sum != group.identity() {
        return Err(GradingError::TupleSum(sum));
    }
    let e = group.identity();
    let mut pieces: Vec<(GroupElement, Vec<Rational>)> = Vec::with_capacity(14);
    for t in [
        matrix_unit(1, 1).minus(&matrix_unit(2, 2)),
        matrix_unit(2, 2).minus(&matrix_unit(3, 3)),
    ] {
        pieces.push((e.clone(), coords(&d_t(&t)?)));
    }
    for i in 1..=3 {
        for j in 1..=3 {
            if i != j {
                let label = group.sub(&tuple[j - 1], &tuple[i - 1]);
                pieces.push((label, coords(&d_t(&matrix_unit(i, j))?)));
            }
        }
    }
    for i in 1..=3 {
        pieces.push((tuple[i - 1].clone(), coords(&d_e1_u(i))));
        pieces.push((group.neg(&tuple[i - 1]), coords(&d_e2_v(i))));
    }
    Grading::merged_rational(group.clone(), Ambient::G2, pieces)
}

/// The two spanning derivations of each nonzero component of the Type 9
/// grading of `L`, labelled by `h, g, k, gh, hk, gk, hgk`.
pub fn type9_l_components(
    d: &GradingDescriptor,
    group: &AbelianGroup,
) -> Result<Vec<(GroupElement, [Derivation; 2])>, GradingError> {
    if d.kind != GradingType::T9 {
        return Err(GradingError::NotAGrading(format!("{} is not Type 9", d.kind)));
    }
    d.validate(group)?;
    let (g, h, k) = (
        d.params["g"].clone(),
        d.params["h"].clone(),
        d.params["k"].clone(),
    );
    let add = |a: &GroupElement, b: &GroupElement| group.add(a, b);
    let e = |i, j| matrix_unit(i, j);
    let dt = |t| d_t(&t).expect("traceless");
    let plus = |i| d_e1_u(i).plus(&d_e2_v(i));
    let minus = |i| d_e2_v(i).minus(&d_e1_u(i));
    Ok(vec![
        (
            h.clone(),
            [dt(e(1, 1).minus(&e(2, 2))), dt(e(1, 1).minus(&e(3, 3)))],
        ),
        (g.clone(), [plus(1), dt(e(2, 3).plus(&e(3, 2)))]),
        (k.clone(), [plus(2), dt(e(1, 3).plus(&e(3, 1)))]),
        (add(&g, &h), [minus(1), dt(e(2, 3).minus(&e(3, 2)))]),
        (add(&h, &k), [minus(2), dt(e(1, 3).minus(&e(3, 1)))]),
        (add(&g, &k), [minus(3), dt(e(1, 2).minus(&e(2, 1)))]),
        (add(&add(&h, &g), &k), [plus(3), dt(e(1, 2).plus(&e(2, 1)))]),
    ])
}

/// The Type 9 grading of `L`: seven 2-dimensional components and `L_e = 0`.
pub fn type9_l_grading(d: &GradingDescriptor, group: &AbelianGroup) -> Result<Grading, GradingError> {
    let pieces = type9_l_components(d, group)?
        .into_iter()
        .flat_map(|(l, ds)| ds.into_iter().map(move |x| (l.clone(), coords(&x))));
    Grading::merged_rational(group.clone(), Ambient::G2, pieces)
}
