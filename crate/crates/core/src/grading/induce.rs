//! The grading of `L` induced by a grading of `C`: `L_δ = L ∩ (End C)_δ`.

use std::collections::BTreeSet;

use super::{verify_grading, Ambient, Grading, GradingError};
use crate::derivations::{derivation_space, G2_DIM};
use crate::octonion::DIM;
use crate::scalar::{Cyc, Field, Matrix, Subspace};

/// Induces the grading of `Der(C)` from a verified grading of `C`.
///
/// For each candidate `δ`, solves for the coordinates of the derivations
/// sending every `C_γ` into `C_{δγ}`. Only differences of support labels
/// can carry a nonzero `L_δ`.
pub fn induce_on_l(gc: &Grading) -> Result<Grading, GradingError> {
    if gc.ambient() != Ambient::Octonion {
        return Err(GradingError::AmbientMismatch {
            expected: Ambient::Octonion,
            found: gc.ambient(),
        });
    }
    let report = verify_grading(gc);
    if let Some(v) = report.violation {
        return Err(GradingError::NotAGrading(v.to_string()));
    }
    let group = gc.group();
    let der = derivation_space();
    let basis: Vec<Matrix<Cyc>> = der
        .basis()
        .iter()
        .map(|d| d.matrix().map(|x| Cyc::rational(x.clone())))
        .collect();
    // Annihilator of each component: x ∈ C_γ iff w·x = 0 for all rows w.
    let annihilators: Vec<_> = gc
        .components()
        .iter()
        .map(|(l, s)| (l.clone(), s.basis().nullspace()))
        .collect();
    let full_annihilator = Subspace::<Cyc>::full(DIM);
    let support = gc.support();
    let deltas: BTreeSet<_> = support
        .iter()
        .flat_map(|a| support.iter().map(move |b| group.sub(b, a)))
        .collect();
    let mut pieces = Vec::new();
    for delta in deltas {
        let mut rows: Vec<Vec<Cyc>> = Vec::new();
        for (gamma, space) in gc.components() {
            let target = group.add(gamma, &delta);
            let ann = annihilators
                .iter()
                .find(|(l, _)| *l == target)
                .map_or(&full_annihilator, |(_, a)| a);
            if ann.is_zero() {
                continue;
            }
            let images: Vec<Vec<Vec<Cyc>>> = space
                .basis_vectors()
                .map(|a| basis.iter().map(|b| b.apply(a)).collect())
                .collect();
            for img in &images {
                for w in ann.basis_vectors() {
                    rows.push(img.iter().map(|ba| dot(w, ba)).collect());
                }
            }
        }
        let kernel = if rows.is_empty() {
            Subspace::full(G2_DIM)
        } else {
            Matrix::from_rows(G2_DIM, rows)?.nullspace()
        };
        if !kernel.is_zero() {
            pieces.push((delta, kernel));
        }
    }
    let found: usize = pieces.iter().map(|(_, s)| s.dim()).sum();
    if found != G2_DIM {
        return Err(GradingError::InductionIncomplete { found });
    }
    Grading::new(group.clone(), Ambient::G2, pieces)
}

fn dot(a: &[Cyc], b: &[Cyc]) -> Cyc {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Cyc::zero(), |acc, (x, y)| acc.plus(&x.times(y)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::{AbelianGroup, GroupElement};
    use crate::grading::{canonical_c_grading, GradingDescriptor, GradingType};

    fn el(r: &[u64]) -> GroupElement {
        GroupElement(r.to_vec())
    }

    #[test]
    fn type5_induces_8_3_3() {
        let z3 = AbelianGroup::new(vec![3]).unwrap();
        let c =
            canonical_c_grading(&GradingDescriptor::new(GradingType::T5, [("g", el(&[1]))]), &z3).unwrap();
        let l = induce_on_l(&c).unwrap();
        assert_eq!(l.dim_at(&el(&[0])), 8);
        assert_eq!(l.dim_at(&el(&[1])), 3);
        assert_eq!(l.dim_at(&el(&[2])), 3);
        assert!(verify_grading(&l).passed());
    }

    #[test]
    fn type7_induces_6_8() {
        let z2 = AbelianGroup::new(vec![2]).unwrap();
        let c =
            canonical_c_grading(&GradingDescriptor::new(GradingType::T7, [("g", el(&[1]))]), &z2).unwrap();
        let l = induce_on_l(&c).unwrap();
        assert_eq!(l.dim_at(&el(&[0])), 6);
        assert_eq!(l.dim_at(&el(&[1])), 8);
    }

    #[test]
    fn rejects_non_gradings_and_wrong_ambient() {
        let z3 = AbelianGroup::new(vec![3]).unwrap();
        let c =
            canonical_c_grading(&GradingDescriptor::new(GradingType::T5, [("g", el(&[1]))]), &z3).unwrap();
        let l = induce_on_l(&c).unwrap();
        assert!(matches!(
            induce_on_l(&l),
            Err(GradingError::AmbientMismatch { .. })
        ));
        let broken = Grading::new(z3, Ambient::Octonion, [(el(&[1]), Subspace::full(8))]).unwrap();
        assert!(matches!(induce_on_l(&broken), Err(GradingError::NotAGrading(_))));
    }
}
