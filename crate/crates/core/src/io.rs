//! JSON interchange: groups, gradings, reports and matrices.
//!
//! Scalars are always strings: `"p/q"` for rationals and `"cyc(N):c0,..."`
//! for cyclotomic values.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::abelian::{AbelianGroup, GroupAutomorphism, GroupElement, GroupError};
use crate::classify::{Classification, IsoVerdict};
use crate::derivations::Derivation;
use crate::grading::{
    Ambient, Grading, GradingDescriptor, GradingError, GradingType, VerificationReport, Violation,
};
use crate::octonion::Octonion;
use crate::scalar::{Cyc, Field, Matrix, ScalarError, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Grading(#[from] GradingError),
}

impl From<serde_json::Error> for IoError {
    fn from(e: serde_json::Error) -> Self {
        IoError::Json(e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupJson {
    pub factors: Vec<u64>,
}

impl GroupJson {
    pub fn from_group(g: &AbelianGroup) -> Self {
        GroupJson {
            factors: g.factors().to_vec(),
        }
    }

    pub fn to_group(&self) -> Result<AbelianGroup, IoError> {
        Ok(AbelianGroup::new(self.factors.clone())?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DescriptorJson {
    #[serde(rename = "type")]
    pub kind: u8,
    pub params: BTreeMap<String, Vec<u64>>,
}

impl DescriptorJson {
    pub fn from_descriptor(d: &GradingDescriptor) -> Self {
        DescriptorJson {
            kind: d.kind.number(),
            params: d.params.iter().map(|(k, v)| (k.clone(), v.0.clone())).collect(),
        }
    }

    pub fn to_descriptor(&self) -> Result<GradingDescriptor, IoError> {
        let kind = GradingType::from_number(self.kind)
            .ok_or_else(|| IoError::Invalid(format!("unknown grading type {}", self.kind)))?;
        Ok(GradingDescriptor {
            kind,
            params: self
                .params
                .iter()
                .map(|(k, v)| (k.clone(), GroupElement(v.clone())))
                .collect(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentJson {
    pub label: Vec<u64>,
    pub basis: Vec<Vec<String>>,
}

/// The on-disk form of a grading.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GradingFile {
    pub group: GroupJson,
    pub ambient: String,
    pub components: Vec<ComponentJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub descriptor: Option<DescriptorJson>,
}

impl GradingFile {
    /// Echelon bases, identity component first even when it is zero.
    pub fn from_grading(g: &Grading, descriptor: Option<&GradingDescriptor>) -> Self {
        let group = g.group();
        let e = group.identity();
        let mut components = vec![component_json(&e, &g.component(&e))];
        for (label, space) in g.components() {
            if *label != e {
                components.push(component_json(label, space));
            }
        }
        GradingFile {
            group: GroupJson::from_group(group),
            ambient: g.ambient().name().to_string(),
            components,
            descriptor: descriptor.map(DescriptorJson::from_descriptor),
        }
    }

    /// Parses the components; basis rows may be any spanning set.
    pub fn to_grading(&self) -> Result<(Grading, Option<GradingDescriptor>), IoError> {
        let group = self.group.to_group()?;
        let ambient = Ambient::parse(&self.ambient)
            .ok_or_else(|| IoError::Invalid(format!("unknown ambient {:?}", self.ambient)))?;
        let n = ambient.dim();
        let mut components = Vec::with_capacity(self.components.len());
        for c in &self.components {
            let mut rows = Vec::with_capacity(c.basis.len());
            for row in &c.basis {
                if row.len() != n {
                    return Err(IoError::Invalid(format!(
                        "basis vector of length {} in a grading of {ambient} (dimension {n})",
                        row.len()
                    )));
                }
                rows.push(row.iter().map(|s| Cyc::parse(s)).collect::<Result<Vec<_>, _>>()?);
            }
            components.push((GroupElement(c.label.clone()), Subspace::from_vectors(n, rows)?));
        }
        let grading = Grading::new(group, ambient, components)?;
        let descriptor = self
            .descriptor
            .as_ref()
            .map(DescriptorJson::to_descriptor)
            .transpose()?;
        Ok((grading, descriptor))
    }

    pub fn parse(text: &str) -> Result<Self, IoError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

fn component_json(label: &GroupElement, space: &Subspace<Cyc>) -> ComponentJson {
    ComponentJson {
        label: label.0.clone(),
        basis: space.basis_vectors().map(scalars).collect(),
    }
}

pub fn scalars<F: Field>(v: &[F]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

pub fn matrix_json<F: Field>(m: &Matrix<F>) -> Value {
    Value::from(m.row_iter().map(scalars).collect::<Vec<_>>())
}

/// An octonion as 8 scalar strings in standard basis order.
pub fn octonion_json<F: Field>(x: &Octonion<F>) -> Value {
    Value::from(scalars(x.coords()))
}

/// A derivation as an 8×8 row-major array of scalar strings.
pub fn derivation_json(d: &Derivation) -> Value {
    matrix_json(d.matrix())
}

pub fn automorphism_json(sigma: &GroupAutomorphism) -> Value {
    Value::from(sigma.images.iter().map(|g| g.0.clone()).collect::<Vec<_>>())
}

fn params_json(d: &GradingDescriptor) -> Value {
    Value::from(
        d.params
            .iter()
            .map(|(k, v)| (k.clone(), Value::from(v.0.clone())))
            .collect::<serde_json::Map<_, _>>(),
    )
}

pub fn verification_json(r: &VerificationReport) -> Value {
    let mut v = json!({
        "passed": r.passed(),
        "ambient": r.ambient.name(),
        "support_size": r.support_size,
        "dimension_sum": r.dimension_sum,
        "pairs_checked": r.pairs_checked,
    });
    if let Some(violation) = &r.violation {
        let detail = match violation {
            Violation::NotDirectSum {
                dimension_sum,
                span_dim,
            } => json!({"kind": "not_direct_sum", "dimension_sum": dimension_sum, "span_dim": span_dim}),
            Violation::Multiplicativity {
                gamma,
                delta,
                product_label,
                witness,
            } => json!({
                "kind": "multiplicativity",
                "gamma": gamma.0,
                "delta": delta.0,
                "product_label": product_label.0,
                "witness": scalars(witness),
            }),
            Violation::SupportDoesNotGenerate => json!({"kind": "support_does_not_generate"}),
        };
        v["violation"] = detail;
        v["message"] = Value::from(violation.to_string());
    }
    v
}

pub fn classification_json(c: &Classification) -> Value {
    match c {
        Classification::Recognized(r) => json!({
            "outcome": "recognized",
            "type": r.kind.number(),
            "params": params_json(&r.normalized),
            "sigma": automorphism_json(&r.sigma),
            "matched_params": params_json(&r.matched),
            "exact": r.exact,
            "orbit_normalized": r.orbit_normalized,
        }),
        Classification::Unrecognized { reason } => json!({
            "outcome": "unrecognized",
            "reason": reason,
        }),
    }
}

pub fn verdict_json(v: &IsoVerdict) -> Value {
    match v {
        IsoVerdict::NonIsomorphic { invariant } => json!({
            "verdict": "non_isomorphic",
            "invariant": invariant,
        }),
        IsoVerdict::SameTypeRecognized { kind, sigma } => json!({
            "verdict": "same_type_recognized",
            "type": kind.number(),
            "sigma": automorphism_json(sigma),
        }),
        IsoVerdict::Inconclusive { reason } => json!({
            "verdict": "inconclusive",
            "reason": reason,
        }),
    }
}

/// Characters with their values on the canonical generators.
pub fn characters_json(group: &AbelianGroup) -> Result<Value, IoError> {
    let gens = group.generators();
    let mut out = Vec::new();
    for chi in group.characters() {
        let values = gens
            .iter()
            .map(|g| group.char_eval(&chi, g).map(|c| c.to_string()))
            .collect::<Result<Vec<_>, _>>()?;
        out.push(json!({"exponents": chi.exponents, "generator_values": values}));
    }
    Ok(Value::from(out))
}

/// Parses a residue list such as `[1,0]`, `1,0` or `(1,0)`.
pub fn parse_element(text: &str) -> Result<Vec<i64>, IoError> {
    let inner = text
        .trim()
        .trim_start_matches(['[', '('])
        .trim_end_matches([']', ')'])
        .trim();
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<i64>()
                .map_err(|_| IoError::Invalid(format!("bad residue {p:?} in {text:?}")))
        })
        .collect()
}

/// Parses a factor list such as `4,2`; the empty string and `trivial`
/// give the trivial group.
pub fn parse_group(text: &str) -> Result<AbelianGroup, IoError> {
    let t = text.trim();
    if t.is_empty() || t == "trivial" {
        return Ok(AbelianGroup::trivial());
    }
    let factors = t
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<u64>()
                .map_err(|_| IoError::Invalid(format!("bad factor {p:?} in {text:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(AbelianGroup::new(factors)?)
}
