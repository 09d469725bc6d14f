//! The nine canonical gradings of `C` and their parameter constraints.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use super::{Ambient, Grading, GradingError};
use crate::abelian::{AbelianGroup, GroupElement, GroupError};
use crate::octonion::{Basis, Octonion};
use crate::scalar::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GradingType {
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
    T7,
    T8,
    T9,
}

impl GradingType {
    pub const ALL: [GradingType; 9] = [
        GradingType::T1,
        GradingType::T2,
        GradingType::T3,
        GradingType::T4,
        GradingType::T5,
        GradingType::T6,
        GradingType::T7,
        GradingType::T8,
        GradingType::T9,
    ];

    pub fn number(self) -> u8 {
        self as u8 + 1
    }

    pub fn from_number(n: u8) -> Option<GradingType> {
        (1..=9).contains(&n).then(|| Self::ALL[n as usize - 1])
    }

    pub fn param_names(self) -> &'static [&'static str] {
        use GradingType::*;
        match self {
            T1 | T2 | T8 => &["g", "h"],
            T3 => &["h"],
            T4 | T5 | T6 | T7 => &["g"],
            T9 => &["g", "h", "k"],
        }
    }

    /// The group the type prescribes, as `(order, description)`, for types
    /// 5 to 9.
    pub fn fixed_group(self) -> Option<(u64, &'static str)> {
        use GradingType::*;
        match self {
            T5 => Some((3, "Z3")),
            T6 => Some((4, "Z4")),
            T7 => Some((2, "Z2")),
            T8 => Some((4, "Z2×Z2")),
            T9 => Some((8, "Z2×Z2×Z2")),
            _ => None,
        }
    }
}

impl fmt::Display for GradingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Type {}", self.number())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DescriptorError {
    #[error("{kind} needs parameter {name}")]
    MissingParam { kind: GradingType, name: &'static str },
    #[error("{kind} has no parameter {name}")]
    UnexpectedParam { kind: GradingType, name: String },
    #[error("parameter {name}: {source}")]
    BadParam { name: String, source: GroupError },
    #[error("{kind}: {constraint}")]
    Constraint { kind: GradingType, constraint: String },
}

/// A type tag with its named parameters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GradingDescriptor {
    pub kind: GradingType,
    pub params: BTreeMap<String, GroupElement>,
}

impl GradingDescriptor {
    pub fn new<'a, I>(kind: GradingType, params: I) -> Self
    where
        I: IntoIterator<Item = (&'a str, GroupElement)>,
    {
        GradingDescriptor {
            kind,
            params: params.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        }
    }

    pub fn param(&self, name: &str) -> Option<&GroupElement> {
        self.params.get(name)
    }

    /// Parameters in the order of [`GradingType::param_names`].
    pub fn ordered_params(&self) -> Vec<GroupElement> {
        self.kind
            .param_names()
            .iter()
            .filter_map(|n| self.params.get(*n).cloned())
            .collect()
    }

    fn get(&self, name: &'static str) -> GroupElement {
        self.params[name].clone()
    }

    /// Checks the element orders, distinctness and group constraints of the
    /// type, and that the parameters generate the group.
    pub fn validate(&self, group: &AbelianGroup) -> Result<(), DescriptorError> {
        use GradingType::*;
        let kind = self.kind;
        for name in kind.param_names() {
            let p = self
                .params
                .get(*name)
                .ok_or(DescriptorError::MissingParam { kind, name })?;
            group.check(p).map_err(|source| DescriptorError::BadParam {
                name: name.to_string(),
                source,
            })?;
        }
        if let Some(extra) = self
            .params
            .keys()
            .find(|k| !kind.param_names().contains(&k.as_str()))
        {
            return Err(DescriptorError::UnexpectedParam {
                kind,
                name: extra.clone(),
            });
        }
        let fail = |c: String| Err(DescriptorError::Constraint { kind, constraint: c });
        let ord = |name: &'static str| group.element_order(&self.get(name));
        match kind {
            T1 => {
                if ord("h") != 2 {
                    return fail(format!("h must have order 2, has order {}", ord("h")));
                }
                if ord("g") <= 2 {
                    return fail(format!("g must have order > 2, has order {}", ord("g")));
                }
            }
            T2 => {
                for n in ["g", "h"] {
                    if ord(n) <= 2 {
                        return fail(format!("{n} must have order > 2, has order {}", ord(n)));
                    }
                }
            }
            T3 => {
                if ord("h") <= 4 {
                    return fail(format!("h must have order > 4, has order {}", ord("h")));
                }
            }
            T4 => {
                if ord("g") <= 2 {
                    return fail(format!("g must have order > 2, has order {}", ord("g")));
                }
            }
            T5 | T6 | T7 => {
                let want = kind.fixed_group().expect("fixed").0;
                if ord("g") != want {
                    return fail(format!("g must have order {want}, has order {}", ord("g")));
                }
            }
            T8 | T9 => {
                for n in kind.param_names() {
                    if ord(n) != 2 {
                        return fail(format!("{n} must have order 2, has order {}", ord(n)));
                    }
                }
            }
        }
        if matches!(kind, T1 | T2) {
            let labels: Vec<GroupElement> = self.labels(group).into_iter().map(|(l, _)| l).collect();
            for (i, a) in labels.iter().enumerate() {
                if labels[..i].contains(a) {
                    return fail(format!(
                        "the listed support elements must be pairwise distinct, {a} repeats"
                    ));
                }
            }
        }
        if let Some((order, name)) = kind.fixed_group() {
            if group.order() != order {
                return fail(format!("the group must be {name}, got {group}"));
            }
        }
        if !group.generates(&self.ordered_params()) {
            return fail(format!("parameters must generate {group}"));
        }
        Ok(())
    }

    /// The support labels in the order the type lists them, each with the
    /// spanning vectors of its component.
    fn labels(&self, group: &AbelianGroup) -> Vec<(GroupElement, Vec<Octonion<Rational>>)> {
        use Basis::*;
        use GradingType::*;
        let e = group.identity();
        let p = |n: &'static str| self.get(n);
        let add = |a: &GroupElement, b: &GroupElement| group.add(a, b);
        let neg = |a: &GroupElement| group.neg(a);
        let span = |bs: &[Basis]| bs.iter().map(|&b| Octonion::basis(b)).collect::<Vec<_>>();
        let comb = |terms: &[(i64, Basis)]| vec![Octonion::combination(terms)];
        let ee = || span(&[E1, E2]);
        match self.kind {
            T1 => {
                let (g, h) = (p("g"), p("h"));
                vec![
                    (e, ee()),
                    (g.clone(), span(&[U1])),
                    (neg(&g), span(&[V1])),
                    (h.clone(), span(&[U3, V3])),
                    (add(&g, &h), span(&[V2])),
                    (add(&neg(&g), &h), span(&[U2])),
                ]
            }
            T2 => {
                let (g, h) = (p("g"), p("h"));
                vec![
                    (e, ee()),
                    (g.clone(), span(&[U1])),
                    (h.clone(), span(&[U2])),
                    (add(&g, &h), span(&[V3])),
                    (neg(&g), span(&[V1])),
                    (neg(&h), span(&[V2])),
                    (neg(&add(&g, &h)), span(&[U3])),
                ]
            }
            T3 => {
                let h = p("h");
                let h2 = add(&h, &h);
                vec![
                    (e, ee()),
                    (h.clone(), span(&[U2, U3])),
                    (neg(&h), span(&[V2, V3])),
                    (h2.clone(), span(&[V1])),
                    (neg(&h2), span(&[U1])),
                ]
            }
            T4 => {
                let g = p("g");
                vec![
                    (e, span(&[E1, E2, U1, V1])),
                    (g.clone(), span(&[U2, V3])),
                    (neg(&g), span(&[U3, V2])),
                ]
            }
            T5 => {
                let g = p("g");
                vec![
                    (e, ee()),
                    (g.clone(), span(&[U1, U2, U3])),
                    (neg(&g), span(&[V1, V2, V3])),
                ]
            }
            T6 => {
                let g = p("g");
                vec![
                    (e, ee()),
                    (g.clone(), span(&[U1, U2])),
                    (neg(&g), span(&[V1, V2])),
                    (add(&g, &g), span(&[U3, V3])),
                ]
            }
            T7 => vec![(e, span(&[E1, E2, U1, V1])), (p("g"), span(&[U2, V2, U3, V3]))],
            T8 => {
                let (g, h) = (p("g"), p("h"));
                vec![
                    (e, ee()),
                    (g.clone(), span(&[U1, V1])),
                    (h.clone(), span(&[U2, V2])),
                    (add(&g, &h), span(&[U3, V3])),
                ]
            }
            T9 => {
                let (g, h, k) = (p("g"), p("h"), p("k"));
                vec![
                    (e, comb(&[(1, E1), (1, E2)])),
                    (h.clone(), comb(&[(-1, E1), (1, E2)])),
                    (g.clone(), comb(&[(1, U1), (1, V1)])),
                    (k.clone(), comb(&[(1, U2), (1, V2)])),
                    (add(&g, &h), comb(&[(-1, U1), (1, V1)])),
                    (add(&h, &k), comb(&[(-1, U2), (1, V2)])),
                    (add(&g, &k), comb(&[(-1, U3), (1, V3)])),
                    (add(&add(&h, &g), &k), comb(&[(1, U3), (1, V3)])),
                ]
            }
        }
    }

    /// Component dimensions of the canonical grading, without building it.
    pub fn component_dims(
        &self,
        group: &AbelianGroup,
    ) -> Result<BTreeMap<GroupElement, usize>, DescriptorError> {
        self.validate(group)?;
        Ok(self
            .labels(group)
            .into_iter()
            .map(|(l, vs)| (l, vs.len()))
            .collect())
    }

    /// Every admissible descriptor of `kind` over `group`, in lexicographic
    /// order of the parameter tuple.
    pub fn admissible(kind: GradingType, group: &AbelianGroup) -> Vec<GradingDescriptor> {
        if let Some((order, _)) = kind.fixed_group() {
            if group.order() != order {
                return Vec::new();
            }
        }
        let elements = group.elements();
        let names = kind.param_names();
        let mut out = Vec::new();
        let mut idx = vec![0usize; names.len()];
        loop {
            let d = GradingDescriptor::new(
                kind,
                names.iter().zip(&idx).map(|(n, &i)| (*n, elements[i].clone())),
            );
            if d.validate(group).is_ok() {
                out.push(d);
            }
            let mut pos = names.len();
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < elements.len() {
                    break;
                }
                idx[pos] = 0;
            }
        }
    }
}

impl fmt::Display for GradingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        for n in self.kind.param_names() {
            if let Some(p) = self.params.get(*n) {
                write!(f, " {n}={p}")?;
            }
        }
        Ok(())
    }
}

/// The canonical grading of `C` listed for the descriptor's type.
pub fn canonical_c_grading(d: &GradingDescriptor, group: &AbelianGroup) -> Result<Grading, GradingError> {
    d.validate(group)?;
    let pieces = d
        .labels(group)
        .into_iter()
        .flat_map(|(l, vs)| vs.into_iter().map(move |v| (l.clone(), v.coords().to_vec())));
    Grading::merged_rational(group.clone(), Ambient::Octonion, pieces)
}

/// Degrees `(γ₁, γ₂, γ₃)` of `u₁, u₂, u₃` for the elementary types 1 to 8.
pub fn elementary_tuple(
    d: &GradingDescriptor,
    group: &AbelianGroup,
) -> Result<Option<[GroupElement; 3]>, DescriptorError> {
    use GradingType::*;
    d.validate(group)?;
    let e = group.identity();
    let p = |n: &'static str| d.get(n);
    let neg = |a: &GroupElement| group.neg(a);
    Ok(Some(match d.kind {
        T1 => [p("g"), group.add(&neg(&p("g")), &p("h")), p("h")],
        T2 => [p("g"), p("h"), neg(&group.add(&p("g"), &p("h")))],
        T3 => [group.scalar_mul(-2, &p("h")), p("h"), p("h")],
        T4 => [e, p("g"), neg(&p("g"))],
        T5 => [p("g"), p("g"), p("g")],
        T6 => [p("g"), p("g"), group.scalar_mul(2, &p("g"))],
        T7 => [e, p("g"), p("g")],
        T8 => [p("g"), p("h"), group.add(&p("g"), &p("h"))],
        T9 => return Ok(None),
    }))
}
