//! Recognizing the type of a grading of `C` and comparing gradings.
//!
//! The classifier works on decomposition data: component dimensions, the
//! orders of their labels, and the group. These are preserved by every
//! graded isomorphism, so differing signatures prove non-isomorphism. The
//! converse direction is only reported when both gradings reduce to the
//! same canonical descriptor.

use std::fmt;

use thiserror::Error;

use crate::abelian::{AbelianGroup, GroupAutomorphism};
use crate::grading::{canonical_c_grading, verify_grading, Ambient, Grading, GradingDescriptor, GradingType};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("expected a grading of the octonions, got one of {0}")]
    NotOctonion(Ambient),
    #[error("cannot compare a grading of {0} with a grading of {1}")]
    AmbientMismatch(Ambient, Ambient),
    #[error("input is not a grading: {0}")]
    NotAGrading(String),
}

/// Data preserved by graded isomorphisms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradingSignature {
    pub ambient: Ambient,
    pub invariant_factors: Vec<u64>,
    /// `(dimension, label order)` of each nonzero component, largest first.
    pub components: Vec<(usize, u64)>,
    pub identity_dim: usize,
    pub two_dim_at_order_two: bool,
    pub support_size: usize,
}

impl GradingSignature {
    pub fn sorted_dims(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.0).collect()
    }

    /// The type whose canonical gradings have this shape, if any.
    pub fn shape(&self) -> Option<GradingType> {
        use GradingType::*;
        if self.ambient != Ambient::Octonion {
            return None;
        }
        let inv = self.invariant_factors.as_slice();
        let kind = match self.sorted_dims().as_slice() {
            [2, 2, 1, 1, 1, 1] if self.identity_dim == 2 && self.two_dim_at_order_two => T1,
            [2, 1, 1, 1, 1, 1, 1] if self.identity_dim == 2 => T2,
            [2, 2, 2, 1, 1] if self.identity_dim == 2 => T3,
            [4, 2, 2] if self.identity_dim == 4 => T4,
            [3, 3, 2] if inv == [3] => T5,
            [2, 2, 2, 2] if inv == [4] => T6,
            [4, 4] if inv == [2] => T7,
            [2, 2, 2, 2] if inv == [2, 2] => T8,
            [1, 1, 1, 1, 1, 1, 1, 1] if inv == [2, 2, 2] => T9,
            _ => return None,
        };
        Some(kind)
    }
}

/// Signature of a grading of either algebra.
pub fn invariant_signature(g: &Grading) -> GradingSignature {
    let group = g.group();
    let mut components: Vec<(usize, u64)> = g
        .components()
        .iter()
        .map(|(l, s)| (s.dim(), group.element_order(l)))
        .collect();
    components.sort_unstable_by(|a, b| b.cmp(a));
    GradingSignature {
        ambient: g.ambient(),
        invariant_factors: group.invariant_factors(),
        two_dim_at_order_two: components.iter().any(|&(d, o)| d == 2 && o == 2),
        components,
        identity_dim: g.dim_at(&group.identity()),
        support_size: g.components().len(),
    }
}

/// Signature of a grading of `C`.
pub fn signature(g: &Grading) -> Result<GradingSignature, ClassifyError> {
    if g.ambient() != Ambient::Octonion {
        return Err(ClassifyError::NotOctonion(g.ambient()));
    }
    Ok(invariant_signature(g))
}

/// A recognized grading: it equals (or has the component dimensions of) the
/// canonical grading of `matched`, and `matched = σ(normalized)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Recognition {
    pub kind: GradingType,
    /// Lexicographically least parameters in the `Aut(Γ)`-orbit.
    pub normalized: GradingDescriptor,
    /// Parameters whose canonical grading matches the input label by label.
    pub matched: GradingDescriptor,
    pub sigma: GroupAutomorphism,
    /// Whether the input equals the canonical grading of `matched`, rather
    /// than only agreeing with it in dimension at every label.
    pub exact: bool,
    /// False when `Aut(Γ)` was too large to enumerate; then
    /// `normalized = matched` and `sigma` is the identity.
    pub orbit_normalized: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Classification {
    Recognized(Recognition),
    Unrecognized { reason: String },
}

impl Classification {
    pub fn kind(&self) -> Option<GradingType> {
        match self {
            Classification::Recognized(r) => Some(r.kind),
            Classification::Unrecognized { .. } => None,
        }
    }
}

fn apply_params(group: &AbelianGroup, tau: &GroupAutomorphism, d: &GradingDescriptor) -> GradingDescriptor {
    GradingDescriptor {
        kind: d.kind,
        params: d
            .params
            .iter()
            .map(|(k, v)| (k.clone(), tau.apply(group, v)))
            .collect(),
    }
}

/// Recognizes the type of a verified grading of `C`.
pub fn classify_c_grading(g: &Grading) -> Result<Classification, ClassifyError> {
    let sig = signature(g)?;
    let report = verify_grading(g);
    if let Some(v) = report.violation {
        return Err(ClassifyError::NotAGrading(v.to_string()));
    }
    let unrecognized = |reason: String| Ok(Classification::Unrecognized { reason });
    let Some(kind) = sig.shape() else {
        return unrecognized(format!(
            "component dimensions {:?} over a group with invariant factors {:?} match no type",
            sig.sorted_dims(),
            sig.invariant_factors
        ));
    };
    let group = g.group();
    let dims = g.dims();
    let mut dims_only = None;
    let mut exact = None;
    for d in GradingDescriptor::admissible(kind, group) {
        let Ok(cd) = d.component_dims(group) else { continue };
        if cd != dims {
            continue;
        }
        let canonical = canonical_c_grading(&d, group).expect("admissible");
        if canonical == *g {
            exact = Some(d);
            break;
        }
        dims_only.get_or_insert(d);
    }
    let (matched, is_exact) = match (exact, dims_only) {
        (Some(d), _) => (d, true),
        (None, Some(d)) => (d, false),
        (None, None) => {
            return unrecognized(format!("no admissible {kind} parameters place the components"));
        }
    };
    let recognition = match group.automorphisms() {
        Ok(auts) => {
            let (tau, normalized) = auts
                .iter()
                .map(|tau| (tau, apply_params(group, tau, &matched)))
                .min_by(|a, b| a.1.ordered_params().cmp(&b.1.ordered_params()))
                .expect("identity is always present");
            Recognition {
                kind,
                sigma: tau.inverse(group),
                normalized,
                matched,
                exact: is_exact,
                orbit_normalized: true,
            }
        }
        Err(_) => Recognition {
            kind,
            normalized: matched.clone(),
            matched,
            sigma: GroupAutomorphism::identity(group),
            exact: is_exact,
            orbit_normalized: false,
        },
    };
    Ok(Classification::Recognized(recognition))
}

#[derive(Debug, Clone, PartialEq)]
pub enum IsoVerdict {
    /// A graded-isomorphism invariant differs.
    NonIsomorphic {
        invariant: String,
    },
    /// Both reduce to the same canonical descriptor; `sigma` carries the
    /// labels of the first onto those of the second.
    SameTypeRecognized {
        kind: GradingType,
        sigma: GroupAutomorphism,
    },
    Inconclusive {
        reason: String,
    },
}

impl fmt::Display for IsoVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsoVerdict::NonIsomorphic { invariant } => write!(f, "non-isomorphic: {invariant}"),
            IsoVerdict::SameTypeRecognized { kind, .. } => {
                write!(f, "both of {kind}, same parameters up to Aut")
            }
            IsoVerdict::Inconclusive { reason } => write!(f, "inconclusive: {reason}"),
        }
    }
}

fn first_difference(a: &GradingSignature, b: &GradingSignature) -> Option<String> {
    if a.invariant_factors != b.invariant_factors {
        return Some(format!(
            "groups differ: invariant factors {:?} vs {:?}",
            a.invariant_factors, b.invariant_factors
        ));
    }
    if a.support_size != b.support_size {
        return Some(format!(
            "support sizes differ: {} vs {}",
            a.support_size, b.support_size
        ));
    }
    if a.identity_dim != b.identity_dim {
        return Some(format!(
            "identity components differ in dimension: {} vs {}",
            a.identity_dim, b.identity_dim
        ));
    }
    if a.components != b.components {
        return Some(format!(
            "(dimension, label order) multisets differ: {:?} vs {:?}",
            a.components, b.components
        ));
    }
    None
}

/// Compares two verified gradings of the same algebra.
pub fn iso_check(a: &Grading, b: &Grading) -> Result<IsoVerdict, ClassifyError> {
    if a.ambient() != b.ambient() {
        return Err(ClassifyError::AmbientMismatch(a.ambient(), b.ambient()));
    }
    for g in [a, b] {
        if let Some(v) = verify_grading(g).violation {
            return Err(ClassifyError::NotAGrading(v.to_string()));
        }
    }
    let (sa, sb) = (invariant_signature(a), invariant_signature(b));
    if let Some(invariant) = first_difference(&sa, &sb) {
        return Ok(IsoVerdict::NonIsomorphic { invariant });
    }
    let inconclusive = |reason: &str| {
        Ok(IsoVerdict::Inconclusive {
            reason: reason.into(),
        })
    };
    if a.ambient() == Ambient::G2 {
        return inconclusive("signatures agree; gradings of L are not classified");
    }
    if a.group() != b.group() {
        return inconclusive("signatures agree but the groups are given by different factor lists");
    }
    let (ca, cb) = (classify_c_grading(a)?, classify_c_grading(b)?);
    match (ca, cb) {
        (Classification::Recognized(ra), Classification::Recognized(rb))
            if ra.kind == rb.kind
                && ra.orbit_normalized
                && rb.orbit_normalized
                && ra.normalized == rb.normalized =>
        {
            let group = a.group();
            Ok(IsoVerdict::SameTypeRecognized {
                kind: ra.kind,
                sigma: rb.sigma.compose(group, &ra.sigma.inverse(group)),
            })
        }
        (Classification::Recognized(ra), Classification::Recognized(rb)) if ra.kind == rb.kind => {
            inconclusive("same type, parameters in different automorphism orbits")
        }
        _ => inconclusive("signatures agree but the gradings are not both recognized"),
    }
}
