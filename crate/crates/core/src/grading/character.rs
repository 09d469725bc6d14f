//! Duality between gradings and actions of the character group.
//!
//! A character `χ` acts on a graded algebra by `χ(γ)` on the component
//! `A_γ`. Conversely the components are the simultaneous eigenspaces of the
//! action: `A_γ = {a | χ·a = χ(γ)a for all χ}`.

use std::collections::BTreeMap;

use super::{Ambient, Grading, GradingError};
use crate::abelian::{AbelianGroup, Character};
use crate::scalar::{Cyc, Field, Matrix, Subspace};

/// The automorphisms `A_χ` for every character of a group.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacterAction {
    group: AbelianGroup,
    ambient: Ambient,
    matrices: BTreeMap<Character, Matrix<Cyc>>,
}

impl CharacterAction {
    pub fn new(group: AbelianGroup, ambient: Ambient, matrices: BTreeMap<Character, Matrix<Cyc>>) -> Self {
        CharacterAction {
            group,
            ambient,
            matrices,
        }
    }

    /// The action of every character on the components of `g`.
    pub fn of_grading(g: &Grading) -> Result<Self, GradingError> {
        let frame = Frame::new(g)?;
        let matrices = g
            .group()
            .characters()
            .into_iter()
            .map(|chi| {
                let m = frame.action(g, &chi)?;
                Ok((chi, m))
            })
            .collect::<Result<_, GradingError>>()?;
        Ok(CharacterAction {
            group: g.group().clone(),
            ambient: g.ambient(),
            matrices,
        })
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn matrix(&self, chi: &Character) -> Option<&Matrix<Cyc>> {
        self.matrices.get(chi)
    }

    pub fn matrices(&self) -> &BTreeMap<Character, Matrix<Cyc>> {
        &self.matrices
    }
}

/// The basis adapted to a grading and its inverse.
struct Frame {
    change: Matrix<Cyc>,
    inverse: Matrix<Cyc>,
}

impl Frame {
    fn new(g: &Grading) -> Result<Self, GradingError> {
        let n = g.ambient().dim();
        let columns: Vec<&[Cyc]> = g.components().values().flat_map(|s| s.basis_vectors()).collect();
        if columns.len() != n {
            return Err(GradingError::NotAGrading(format!(
                "components have total dimension {}, expected {n}",
                columns.len()
            )));
        }
        let change = Matrix::from_fn(n, n, |r, c| columns[c][r].clone());
        let inverse = change
            .inverse()
            .ok_or_else(|| GradingError::NotAGrading("components are not independent".into()))?;
        Ok(Frame { change, inverse })
    }

    fn action(&self, g: &Grading, chi: &Character) -> Result<Matrix<Cyc>, GradingError> {
        let mut eigen = Vec::with_capacity(self.change.cols());
        for (label, s) in g.components() {
            let value = g.group().char_eval(chi, label)?;
            eigen.extend(std::iter::repeat_n(value, s.dim()));
        }
        let scaled = Matrix::from_fn(self.change.rows(), self.change.cols(), |r, c| {
            self.change.get(r, c).times(&eigen[c])
        });
        Ok(scaled.times(&self.inverse))
    }
}

/// `A_χ`: multiplication by `χ(γ)` on each component `A_γ`.
pub fn character_automorphism(g: &Grading, chi: &Character) -> Result<Matrix<Cyc>, GradingError> {
    Frame::new(g)?.action(g, chi)
}

/// Whether `m` is an invertible map with `m(xy) = m(x)m(y)` on all basis
/// pairs of the ambient algebra.
pub fn is_automorphism(ambient: Ambient, m: &Matrix<Cyc>) -> bool {
    let n = ambient.dim();
    if m.rows() != n || m.cols() != n || Field::is_zero(&m.determinant()) {
        return false;
    }
    let cols: Vec<Vec<Cyc>> = (0..n).map(|c| m.column(c)).collect();
    let unit = |i: usize| {
        let mut v = vec![Cyc::zero(); n];
        v[i] = Cyc::one();
        v
    };
    (0..n).all(|i| {
        (0..n).all(|j| {
            let lhs = m.apply(&ambient.multiply(&unit(i), &unit(j)));
            lhs == ambient.multiply(&cols[i], &cols[j])
        })
    })
}

/// Recovers a grading from a character action by simultaneous eigenspaces.
///
/// The action must assign an algebra automorphism to every character,
/// the identity to the trivial one, and satisfy `A_{χψ} = A_χ A_ψ`. It is
/// enough to test multiplicativity on the generator characters and the
/// homomorphism law against them.
pub fn grading_from_action(action: &CharacterAction) -> Result<Grading, GradingError> {
    let group = action.group();
    let ambient = action.ambient();
    let n = ambient.dim();
    let invalid = |m: String| Err(GradingError::InvalidAction(m));
    let chars = group.characters();
    for chi in &chars {
        match action.matrix(chi) {
            None => return invalid(format!("no matrix for character {:?}", chi.exponents)),
            Some(m) if m.rows() != n || m.cols() != n => {
                return invalid(format!("matrix for {:?} is not {n}×{n}", chi.exponents))
            }
            Some(_) => {}
        }
    }
    if action.matrices().len() != chars.len() {
        return invalid("matrices given for characters outside the group".into());
    }
    let a = |chi: &Character| action.matrix(chi).expect("checked above");
    if *a(&chars[0]) != Matrix::identity(n) {
        return invalid("trivial character does not act as the identity".into());
    }
    let gens = group.generator_characters();
    for psi in &gens {
        if !is_automorphism(ambient, a(psi)) {
            return invalid(format!(
                "character {:?} does not act by an automorphism",
                psi.exponents
            ));
        }
    }
    for chi in &chars {
        for psi in &gens {
            if *a(&group.character_product(chi, psi)) != a(chi).times(a(psi)) {
                return invalid(format!(
                    "not a homomorphism at characters {:?} and {:?}",
                    chi.exponents, psi.exponents
                ));
            }
        }
    }
    let mut components = Vec::new();
    let mut found = 0;
    for gamma in group.elements() {
        let mut rows = Vec::with_capacity(gens.len() * n);
        for psi in &gens {
            let value = group.char_eval(psi, &gamma)?;
            let shifted = Matrix::from_fn(n, n, |r, c| {
                let x = a(psi).get(r, c);
                if r == c {
                    x.minus(&value)
                } else {
                    x.clone()
                }
            });
            rows.extend(shifted.row_iter().map(|r| r.to_vec()));
        }
        let space = if rows.is_empty() {
            Subspace::full(n)
        } else {
            Matrix::from_rows(n, rows)?.nullspace()
        };
        found += space.dim();
        components.push((gamma, space));
    }
    if found != n {
        return Err(GradingError::EigenspacesIncomplete { expected: n, found });
    }
    Grading::new(group.clone(), ambient, components)
}
