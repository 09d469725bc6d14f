//! Group gradings of `C` and of `L = Der(C)`.
//!
//! A [`Grading`] assigns a subspace to each element of a finite abelian
//! group. Components of `C` live in the 8-dimensional coordinate space of
//! the standard basis; components of `L` live in the 14-dimensional
//! coordinate space of the echelon basis of [`derivation_space`].
//!
//! [`derivation_space`]: crate::derivations::derivation_space

mod catalog;
mod character;
mod elementary;
mod induce;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::abelian::{AbelianGroup, GroupAutomorphism, GroupElement, GroupError};
use crate::derivations::{derivation_space, DerivationError, G2_DIM};
use crate::octonion::{self, DIM};
use crate::scalar::{Cyc, Field, Rational, ScalarError, Subspace};

pub use catalog::{canonical_c_grading, elementary_tuple, DescriptorError, GradingDescriptor, GradingType};
pub use character::{character_automorphism, grading_from_action, is_automorphism, CharacterAction};
pub use elementary::{elementary_l_grading, type9_l_components, type9_l_grading};
pub use induce::induce_on_l;

/// The algebra being graded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ambient {
    Octonion,
    G2,
}

impl Ambient {
    pub fn dim(self) -> usize {
        match self {
            Ambient::Octonion => DIM,
            Ambient::G2 => G2_DIM,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Ambient::Octonion => "octonion",
            Ambient::G2 => "g2",
        }
    }

    pub fn parse(s: &str) -> Option<Ambient> {
        match s {
            "octonion" => Some(Ambient::Octonion),
            "g2" => Some(Ambient::G2),
            _ => None,
        }
    }

    /// The algebra product: octonion multiplication or the Lie bracket.
    pub fn multiply<F: Field>(self, x: &[F], y: &[F]) -> Vec<F> {
        match self {
            Ambient::Octonion => octonion::structure_constants().multiply(x, y),
            Ambient::G2 => derivation_space().structure_constants().multiply(x, y),
        }
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradingError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Descriptor(#[from] DescriptorError),
    #[error(transparent)]
    Derivation(#[from] DerivationError),
    #[error("component at {label} has ambient dimension {found}, expected {expected}")]
    WrongAmbientDim {
        label: GroupElement,
        expected: usize,
        found: usize,
    },
    #[error("label {0} appears more than once")]
    DuplicateLabel(GroupElement),
    #[error("expected a grading of {expected}, got one of {found}")]
    AmbientMismatch { expected: Ambient, found: Ambient },
    #[error("input is not a grading: {0}")]
    NotAGrading(String),
    #[error("tuple degrees sum to {0}, not to the identity")]
    TupleSum(GroupElement),
    #[error("character action: {0}")]
    InvalidAction(String),
    #[error("eigenspaces have total dimension {found}, expected {expected}")]
    EigenspacesIncomplete { expected: usize, found: usize },
    #[error("induced components have total dimension {found}, expected 14")]
    InductionIncomplete { found: usize },
}

/// A decomposition of `C` or `L` into subspaces labelled by group elements.
///
/// Only nonzero components are stored.
#[derive(Debug, Clone, PartialEq)]
pub struct Grading {
    group: AbelianGroup,
    ambient: Ambient,
    components: BTreeMap<GroupElement, Subspace<Cyc>>,
}

impl Grading {
    /// Builds a grading from labelled subspaces. Labels must be distinct.
    pub fn new<I>(group: AbelianGroup, ambient: Ambient, components: I) -> Result<Self, GradingError>
    where
        I: IntoIterator<Item = (GroupElement, Subspace<Cyc>)>,
    {
        let mut map = BTreeMap::new();
        for (label, space) in components {
            group.check(&label)?;
            if space.ambient_dim() != ambient.dim() {
                return Err(GradingError::WrongAmbientDim {
                    label,
                    expected: ambient.dim(),
                    found: space.ambient_dim(),
                });
            }
            if map.contains_key(&label) {
                return Err(GradingError::DuplicateLabel(label));
            }
            map.insert(label, space);
        }
        map.retain(|_, s| !s.is_zero());
        Ok(Grading {
            group,
            ambient,
            components: map,
        })
    }

    /// Builds a grading from spanning sets, summing pieces that share a label.
    pub fn merged<I>(group: AbelianGroup, ambient: Ambient, pieces: I) -> Result<Self, GradingError>
    where
        I: IntoIterator<Item = (GroupElement, Vec<Cyc>)>,
    {
        let mut spans: BTreeMap<GroupElement, Vec<Vec<Cyc>>> = BTreeMap::new();
        for (label, v) in pieces {
            spans.entry(label).or_default().push(v);
        }
        let n = ambient.dim();
        let mut components = Vec::with_capacity(spans.len());
        for (label, vs) in spans {
            components.push((label, Subspace::from_vectors(n, vs)?));
        }
        Self::new(group, ambient, components)
    }

    /// Like [`Grading::merged`] for rational spanning vectors.
    pub fn merged_rational<I>(group: AbelianGroup, ambient: Ambient, pieces: I) -> Result<Self, GradingError>
    where
        I: IntoIterator<Item = (GroupElement, Vec<Rational>)>,
    {
        Self::merged(group, ambient, pieces.into_iter().map(|(l, v)| (l, to_cyc(&v))))
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    /// The nonzero components in label order.
    pub fn components(&self) -> &BTreeMap<GroupElement, Subspace<Cyc>> {
        &self.components
    }

    /// The component at `label`, zero when absent.
    pub fn component(&self, label: &GroupElement) -> Subspace<Cyc> {
        self.components
            .get(label)
            .cloned()
            .unwrap_or_else(|| Subspace::zero(self.ambient.dim()))
    }

    pub fn dim_at(&self, label: &GroupElement) -> usize {
        self.components.get(label).map_or(0, Subspace::dim)
    }

    pub fn support(&self) -> Vec<GroupElement> {
        self.components.keys().cloned().collect()
    }

    pub fn dims(&self) -> BTreeMap<GroupElement, usize> {
        self.components
            .iter()
            .map(|(l, s)| (l.clone(), s.dim()))
            .collect()
    }

    pub fn total_dim(&self) -> usize {
        self.components.values().map(Subspace::dim).sum()
    }

    /// Whether every component has a rational echelon basis.
    pub fn is_rational(&self) -> bool {
        self.components
            .values()
            .all(|s| s.basis().entries().iter().all(|x| x.as_rational().is_some()))
    }

    /// The same decomposition with each label `γ` replaced by `σ(γ)`.
    pub fn relabel(&self, sigma: &GroupAutomorphism) -> Grading {
        Grading {
            group: self.group.clone(),
            ambient: self.ambient,
            components: self
                .components
                .iter()
                .map(|(l, s)| (sigma.apply(&self.group, l), s.clone()))
                .collect(),
        }
    }
}

pub(crate) fn to_cyc(v: &[Rational]) -> Vec<Cyc> {
    v.iter().map(|x| Cyc::rational(x.clone())).collect()
}

/// The first axiom found violated by [`verify_grading`].
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    /// Components do not add up to the ambient space, or overlap.
    NotDirectSum { dimension_sum: usize, span_dim: usize },
    /// `a ∈ A_γ`, `b ∈ A_δ`, but `ab ∉ A_{γδ}`; `witness` is `ab`.
    Multiplicativity {
        gamma: GroupElement,
        delta: GroupElement,
        product_label: GroupElement,
        witness: Vec<Cyc>,
    },
    /// The support generates a proper subgroup.
    SupportDoesNotGenerate,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotDirectSum {
                dimension_sum,
                span_dim,
            } => write!(
                f,
                "not a direct sum: dimensions add to {dimension_sum}, span has dimension {span_dim}"
            ),
            Violation::Multiplicativity {
                gamma,
                delta,
                product_label,
                witness,
            } => {
                let w: Vec<String> = witness.iter().map(|x| x.to_string()).collect();
                write!(
                    f,
                    "product of components {gamma} and {delta} leaves component {product_label}: [{}]",
                    w.join(", ")
                )
            }
            Violation::SupportDoesNotGenerate => f.write_str("support does not generate the group"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub ambient: Ambient,
    pub support_size: usize,
    pub dimension_sum: usize,
    pub pairs_checked: usize,
    pub violation: Option<Violation>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks the direct-sum decomposition, `A_γ A_δ ⊆ A_{γδ}` on all support
/// pairs, and that the support generates the group.
pub fn verify_grading(g: &Grading) -> VerificationReport {
    let n = g.ambient.dim();
    let dimension_sum = g.total_dim();
    let mut report = VerificationReport {
        ambient: g.ambient,
        support_size: g.components.len(),
        dimension_sum,
        pairs_checked: 0,
        violation: None,
    };
    let span = Subspace::from_vectors(
        n,
        g.components
            .values()
            .flat_map(|s| s.basis_vectors().map(|v| v.to_vec())),
    )
    .expect("components share the ambient dimension");
    if dimension_sum != n || span.dim() != n {
        report.violation = Some(Violation::NotDirectSum {
            dimension_sum,
            span_dim: span.dim(),
        });
        return report;
    }
    for (gamma, a) in &g.components {
        for (delta, b) in &g.components {
            report.pairs_checked += 1;
            let label = g.group.add(gamma, delta);
            let target = g.components.get(&label);
            for x in a.basis_vectors() {
                for y in b.basis_vectors() {
                    let p = g.ambient.multiply(x, y);
                    if p.iter().all(Field::is_zero) {
                        continue;
                    }
                    if !target.is_some_and(|t| t.contains(&p)) {
                        report.violation = Some(Violation::Multiplicativity {
                            gamma: gamma.clone(),
                            delta: delta.clone(),
                            product_label: label,
                            witness: p,
                        });
                        return report;
                    }
                }
            }
        }
    }
    if !g.group.generates(&g.support()) {
        report.violation = Some(Violation::SupportDoesNotGenerate);
    }
    report
}
