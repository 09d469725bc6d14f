//! Finite abelian groups given as products of cyclic factors, their
//! characters and their automorphisms.
//!
//! The group law is written additively: a [`GroupElement`] is a tuple of
//! residues, one per cyclic factor.

use std::collections::HashSet;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::Cyc;

/// Largest group for which automorphisms are enumerated.
pub const MAX_AUTOMORPHISM_GROUP_ORDER: u64 = 64;

/// Largest automorphism group that is materialized in memory.
pub const MAX_AUTOMORPHISM_COUNT: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("invalid cyclic factor {0}: every factor must be at least 2")]
    InvalidFactor(u64),
    #[error("element {element:?} does not belong to a group with factors {factors:?}")]
    ForeignElement { element: Vec<u64>, factors: Vec<u64> },
    #[error("character and element come from different groups")]
    MismatchedGroups,
    #[error("automorphism enumeration is limited to groups of order at most {limit}, got {order}")]
    GroupTooLarge { order: u64, limit: u64 },
    #[error("automorphism group exceeds {0} elements")]
    TooManyAutomorphisms(usize),
}

/// A finite abelian group `Z_{n1} × … × Z_{nk}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    factors: Vec<u64>,
}

/// Residue tuple of a group element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement(pub Vec<u64>);

/// A character `χ(γ) = ζ_N^{Σ a_i r_i N / n_i}` with `N = lcm(n_i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    pub exponents: Vec<u64>,
}

/// An automorphism, stored as the images of the canonical generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupAutomorphism {
    pub images: Vec<GroupElement>,
}

impl AbelianGroup {
    pub fn new(factors: Vec<u64>) -> Result<Self, GroupError> {
        if let Some(&bad) = factors.iter().find(|&&f| f < 2) {
            return Err(GroupError::InvalidFactor(bad));
        }
        Ok(AbelianGroup { factors })
    }

    pub fn trivial() -> Self {
        AbelianGroup { factors: Vec::new() }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    /// Least common multiple of the factors (1 for the trivial group).
    pub fn exponent(&self) -> u64 {
        self.factors.iter().fold(1, |acc, f| acc.lcm(f))
    }

    /// Invariant factors `d_1 | d_2 | … | d_r`, all at least 2.
    pub fn invariant_factors(&self) -> Vec<u64> {
        // Collect prime-power parts per prime, then stack the largest ones.
        let mut by_prime: Vec<(u64, Vec<u64>)> = Vec::new();
        for &f in &self.factors {
            let mut n = f;
            let mut p = 2;
            while n > 1 {
                if n % p == 0 {
                    let mut q = 1;
                    while n % p == 0 {
                        n /= p;
                        q *= p;
                    }
                    match by_prime.iter_mut().find(|(prime, _)| *prime == p) {
                        Some((_, powers)) => powers.push(q),
                        None => by_prime.push((p, vec![q])),
                    }
                }
                p += 1;
            }
        }
        let len = by_prime.iter().map(|(_, v)| v.len()).max().unwrap_or(0);
        let mut out = vec![1u64; len];
        for (_, mut powers) in by_prime {
            powers.sort_unstable_by(|a, b| b.cmp(a));
            for (slot, q) in out.iter_mut().rev().zip(powers) {
                *slot *= q;
            }
        }
        out
    }

    /// Same up to reordering of the cyclic factors.
    pub fn same_factors(&self, other: &Self) -> bool {
        let mut a = self.factors.clone();
        let mut b = other.factors.clone();
        a.sort_unstable();
        b.sort_unstable();
        a == b
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.factors.len()])
    }

    /// The `i`-th canonical generator.
    pub fn generator(&self, i: usize) -> GroupElement {
        let mut r = vec![0; self.factors.len()];
        r[i] = 1;
        GroupElement(r)
    }

    pub fn generators(&self) -> Vec<GroupElement> {
        (0..self.rank()).map(|i| self.generator(i)).collect()
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.0.len() == self.factors.len() && g.0.iter().zip(&self.factors).all(|(r, f)| r < f)
    }

    pub fn check(&self, g: &GroupElement) -> Result<(), GroupError> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(GroupError::ForeignElement {
                element: g.0.clone(),
                factors: self.factors.clone(),
            })
        }
    }

    /// Builds an element, reducing residues modulo the factors.
    pub fn element(&self, residues: &[i64]) -> Result<GroupElement, GroupError> {
        if residues.len() != self.factors.len() {
            return Err(GroupError::ForeignElement {
                element: residues.iter().map(|&r| r.unsigned_abs()).collect(),
                factors: self.factors.clone(),
            });
        }
        Ok(GroupElement(
            residues
                .iter()
                .zip(&self.factors)
                .map(|(&r, &f)| r.rem_euclid(f as i64) as u64)
                .collect(),
        ))
    }

    /// All elements in lexicographic residue order, identity first.
    pub fn elements(&self) -> Vec<GroupElement> {
        let mut out = Vec::with_capacity(self.order() as usize);
        let mut current = vec![0u64; self.factors.len()];
        loop {
            out.push(GroupElement(current.clone()));
            let mut i = self.factors.len();
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                current[i] += 1;
                if current[i] < self.factors[i] {
                    break;
                }
                current[i] = 0;
            }
        }
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.factors)
                .map(|((x, y), f)| (x + y) % f)
                .collect(),
        )
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        GroupElement(a.0.iter().zip(&self.factors).map(|(x, f)| (f - x) % f).collect())
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.add(a, &self.neg(b))
    }

    /// `n·a`, with negative `n` meaning multiples of the inverse.
    pub fn scalar_mul(&self, n: i64, a: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&self.factors)
                .map(|(&x, &f)| ((n.rem_euclid(f as i64) as u64) * x) % f)
                .collect(),
        )
    }

    /// Least `n ≥ 1` with `n·g = 0`.
    pub fn element_order(&self, g: &GroupElement) -> u64 {
        g.0.iter()
            .zip(&self.factors)
            .map(|(&r, &f)| f / r.gcd(&f))
            .fold(1, |acc, o| acc.lcm(&o))
    }

    /// The subgroup generated by `gens`, as a sorted element list.
    pub fn subgroup_generated(&self, gens: &[GroupElement]) -> Vec<GroupElement> {
        let mut seen: HashSet<GroupElement> = HashSet::new();
        let mut frontier = vec![self.identity()];
        seen.insert(self.identity());
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = self.add(&x, g);
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        let mut out: Vec<_> = seen.into_iter().collect();
        out.sort();
        out
    }

    pub fn generates(&self, gens: &[GroupElement]) -> bool {
        self.subgroup_generated(gens).len() as u64 == self.order()
    }

    /// All characters, trivial character first, in lexicographic exponent order.
    pub fn characters(&self) -> Vec<Character> {
        self.elements()
            .into_iter()
            .map(|e| Character { exponents: e.0 })
            .collect()
    }

    /// The characters sending one canonical generator to a primitive root of
    /// unity and the others to 1.
    pub fn generator_characters(&self) -> Vec<Character> {
        self.generators()
            .into_iter()
            .map(|e| Character { exponents: e.0 })
            .collect()
    }

    /// Pointwise product of characters.
    pub fn character_product(&self, a: &Character, b: &Character) -> Character {
        Character {
            exponents: self
                .add(
                    &GroupElement(a.exponents.clone()),
                    &GroupElement(b.exponents.clone()),
                )
                .0,
        }
    }

    /// Exponent `k` with `χ(g) = ζ_N^k`, `N` the group exponent.
    pub fn character_exponent(&self, chi: &Character, g: &GroupElement) -> Result<u64, GroupError> {
        if chi.exponents.len() != self.rank() || chi.exponents.iter().zip(&self.factors).any(|(a, f)| a >= f)
        {
            return Err(GroupError::MismatchedGroups);
        }
        if !self.contains(g) {
            return Err(GroupError::MismatchedGroups);
        }
        let n = self.exponent();
        let k = chi
            .exponents
            .iter()
            .zip(&g.0)
            .zip(&self.factors)
            .map(|((a, r), f)| a * r * (n / f))
            .sum::<u64>();
        Ok(k % n)
    }

    /// `χ(g)` as a root of unity in `Q(ζ_N)`.
    pub fn char_eval(&self, chi: &Character, g: &GroupElement) -> Result<Cyc, GroupError> {
        let k = self.character_exponent(chi, g)?;
        Ok(Cyc::root_of_unity(self.exponent() as u32, k as i64))
    }

    /// Every automorphism exactly once, identity first.
    ///
    /// Enumerates images of the canonical generators by backtracking: the
    /// image of generator `i` must have order dividing `n_i`, and the partial
    /// map must stay injective on the subgroup generated so far.
    pub fn automorphisms(&self) -> Result<Vec<GroupAutomorphism>, GroupError> {
        let order = self.order();
        if order > MAX_AUTOMORPHISM_GROUP_ORDER {
            return Err(GroupError::GroupTooLarge {
                order,
                limit: MAX_AUTOMORPHISM_GROUP_ORDER,
            });
        }
        let elements = self.elements();
        let mut out = Vec::new();
        let mut images = Vec::new();
        let base = vec![self.identity()];
        self.extend_automorphisms(&elements, &base, &mut images, &mut out)?;
        Ok(out)
    }

    fn extend_automorphisms(
        &self,
        elements: &[GroupElement],
        image_so_far: &[GroupElement],
        images: &mut Vec<GroupElement>,
        out: &mut Vec<GroupAutomorphism>,
    ) -> Result<(), GroupError> {
        let i = images.len();
        if i == self.rank() {
            if out.len() >= MAX_AUTOMORPHISM_COUNT {
                return Err(GroupError::TooManyAutomorphisms(MAX_AUTOMORPHISM_COUNT));
            }
            out.push(GroupAutomorphism {
                images: images.clone(),
            });
            return Ok(());
        }
        let f = self.factors[i];
        // Start from the generator itself so the identity automorphism comes first.
        let start = elements.iter().position(|e| *e == self.generator(i)).unwrap_or(0);
        let candidates = elements[start..].iter().chain(&elements[..start]);
        for y in candidates {
            if !f.is_multiple_of(self.element_order(y)) {
                continue;
            }
            let mut extended = Vec::with_capacity(image_so_far.len() * f as usize);
            let mut seen = HashSet::with_capacity(image_so_far.len() * f as usize);
            let mut injective = true;
            'outer: for t in 0..f {
                let ty = self.scalar_mul(t as i64, y);
                for a in image_so_far {
                    let z = self.add(a, &ty);
                    if !seen.insert(z.clone()) {
                        injective = false;
                        break 'outer;
                    }
                    extended.push(z);
                }
            }
            if !injective {
                continue;
            }
            images.push(y.clone());
            self.extend_automorphisms(elements, &extended, images, out)?;
            images.pop();
        }
        Ok(())
    }
}

impl GroupAutomorphism {
    pub fn identity(group: &AbelianGroup) -> Self {
        GroupAutomorphism {
            images: group.generators(),
        }
    }

    pub fn apply(&self, group: &AbelianGroup, g: &GroupElement) -> GroupElement {
        g.0.iter()
            .zip(&self.images)
            .fold(group.identity(), |acc, (&r, img)| {
                group.add(&acc, &group.scalar_mul(r as i64, img))
            })
    }

    /// `self ∘ other`.
    pub fn compose(&self, group: &AbelianGroup, other: &Self) -> Self {
        GroupAutomorphism {
            images: other.images.iter().map(|g| self.apply(group, g)).collect(),
        }
    }

    pub fn inverse(&self, group: &AbelianGroup) -> Self {
        let elements = group.elements();
        let images = group
            .generators()
            .into_iter()
            .map(|gen| {
                elements
                    .iter()
                    .find(|x| self.apply(group, x) == gen)
                    .expect("automorphisms are bijective")
                    .clone()
            })
            .collect();
        GroupAutomorphism { images }
    }

    pub fn is_identity(&self, group: &AbelianGroup) -> bool {
        self.images == group.generators()
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|r| r.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.factors.iter().map(|n| format!("Z{n}")).collect();
        f.write_str(&parts.join("×"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    fn group(f: &[u64]) -> AbelianGroup {
        AbelianGroup::new(f.to_vec()).unwrap()
    }

    fn el(r: &[u64]) -> GroupElement {
        GroupElement(r.to_vec())
    }

    /// Order by repeated addition.
    fn order_by_addition(g: &AbelianGroup, x: &GroupElement) -> u64 {
        let mut acc = x.clone();
        let mut n = 1;
        while acc != g.identity() {
            acc = g.add(&acc, x);
            n += 1;
        }
        n
    }

    /// Every map of generator images that is a bijective homomorphism.
    fn brute_force_automorphism_count(g: &AbelianGroup) -> usize {
        let elements = g.elements();
        let mut count = 0;
        let mut idx = vec![0usize; g.rank()];
        loop {
            let sigma = GroupAutomorphism {
                images: idx.iter().map(|&i| elements[i].clone()).collect(),
            };
            let well_defined = sigma
                .images
                .iter()
                .zip(g.factors())
                .all(|(img, &f)| g.scalar_mul(f as i64, img) == g.identity());
            if well_defined {
                let images: HashSet<_> = elements.iter().map(|x| sigma.apply(g, x)).collect();
                let additive = elements.iter().all(|a| {
                    elements.iter().all(|b| {
                        sigma.apply(g, &g.add(a, b)) == g.add(&sigma.apply(g, a), &sigma.apply(g, b))
                    })
                });
                if images.len() == elements.len() && additive {
                    count += 1;
                }
            }
            let mut i = 0;
            loop {
                if i == idx.len() {
                    return count;
                }
                idx[i] += 1;
                if idx[i] < elements.len() {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn make_group_examples() {
        assert_eq!(group(&[3]).order(), 3);
        assert_eq!(group(&[3]).elements().len(), 3);
        let z2cubed = group(&[2, 2, 2]);
        assert_eq!(z2cubed.order(), 8);
        assert_eq!(z2cubed.exponent(), 2);
        assert_eq!(AbelianGroup::new(vec![]).unwrap().order(), 1);
        assert_eq!(AbelianGroup::trivial().elements(), vec![el(&[])]);
        assert_eq!(AbelianGroup::new(vec![4, 1]), Err(GroupError::InvalidFactor(1)));
        assert_eq!(AbelianGroup::new(vec![0]), Err(GroupError::InvalidFactor(0)));
    }

    #[test]
    fn elements_are_lexicographic() {
        let g = group(&[2, 3]);
        let els = g.elements();
        assert_eq!(els[0], g.identity());
        assert!(els.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(els.len(), 6);
    }

    #[test]
    fn element_orders() {
        let z4 = group(&[4]);
        assert_eq!(z4.element_order(&z4.identity()), 1);
        assert_eq!(z4.element_order(&el(&[1])), 4);
        assert_eq!(z4.element_order(&el(&[2])), order_by_addition(&z4, &el(&[2])));
        assert_eq!(z4.element_order(&el(&[2])), 2);
        for f in [vec![6], vec![4, 2], vec![3, 3], vec![2, 2, 2], vec![12]] {
            let g = group(&f);
            for x in g.elements() {
                assert_eq!(g.element_order(&x), order_by_addition(&g, &x));
            }
        }
    }

    #[test]
    fn invariant_factors() {
        assert_eq!(group(&[2, 3]).invariant_factors(), vec![6]);
        assert_eq!(group(&[6]).invariant_factors(), vec![6]);
        assert_eq!(group(&[2, 4]).invariant_factors(), vec![2, 4]);
        assert_eq!(group(&[4, 6]).invariant_factors(), vec![2, 12]);
        assert_eq!(group(&[2, 2, 2]).invariant_factors(), vec![2, 2, 2]);
        assert!(AbelianGroup::trivial().invariant_factors().is_empty());
    }

    #[test]
    fn character_examples() {
        assert_eq!(group(&[3]).characters().len(), 3);
        let v4 = group(&[2, 2]);
        let chars = v4.characters();
        assert_eq!(chars.len(), 4);
        assert!(chars[0].exponents.iter().all(|&e| e == 0));
        for chi in &chars {
            for g in v4.elements() {
                let v = v4.char_eval(chi, &g).unwrap();
                assert!(v == Cyc::int(1) || v == Cyc::int(-1));
            }
        }
        assert_eq!(AbelianGroup::trivial().characters().len(), 1);

        let z4 = group(&[4]);
        let chi = Character { exponents: vec![1] };
        let zeta4 = z4.char_eval(&chi, &el(&[1])).unwrap();
        assert_eq!(zeta4, Cyc::root_of_unity(4, 1));
        assert_eq!(zeta4.times(&zeta4), Cyc::int(-1));

        // (-1)^{1·1 + 0·1}
        let value = v4
            .char_eval(
                &Character {
                    exponents: vec![1, 0],
                },
                &el(&[1, 1]),
            )
            .unwrap();
        assert_eq!(value, Cyc::int(-1));

        for g in z4.elements() {
            assert_eq!(
                z4.char_eval(&Character { exponents: vec![0] }, &g).unwrap(),
                Cyc::one()
            );
        }
    }

    #[test]
    fn character_domain_errors() {
        let z4 = group(&[4]);
        let foreign = Character {
            exponents: vec![1, 0],
        };
        assert_eq!(
            z4.char_eval(&foreign, &el(&[1])),
            Err(GroupError::MismatchedGroups)
        );
        let chi = Character { exponents: vec![1] };
        assert_eq!(
            z4.char_eval(&chi, &el(&[1, 1])),
            Err(GroupError::MismatchedGroups)
        );
        assert_eq!(z4.char_eval(&chi, &el(&[5])), Err(GroupError::MismatchedGroups));
    }

    #[test]
    fn characters_are_multiplicative() {
        for f in [vec![4], vec![2, 2], vec![4, 2], vec![3, 3], vec![6]] {
            let g = group(&f);
            for chi in g.characters() {
                for a in g.elements() {
                    for b in g.elements() {
                        let lhs = g.char_eval(&chi, &g.add(&a, &b)).unwrap();
                        let rhs = g
                            .char_eval(&chi, &a)
                            .unwrap()
                            .times(&g.char_eval(&chi, &b).unwrap());
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(group(&[3]).automorphisms().unwrap().len(), 2);
        assert_eq!(group(&[2, 2]).automorphisms().unwrap().len(), 6);
        assert_eq!(group(&[4]).automorphisms().unwrap().len(), 2);
        for f in [
            vec![3],
            vec![2, 2],
            vec![4],
            vec![4, 2],
            vec![6],
            vec![2, 2, 2],
            vec![2, 3],
            vec![5],
        ] {
            let g = group(&f);
            assert_eq!(
                g.automorphisms().unwrap().len(),
                brute_force_automorphism_count(&g),
                "{f:?}"
            );
        }
        assert_eq!(group(&[2, 2, 2]).automorphisms().unwrap().len(), 168);
        assert_eq!(AbelianGroup::trivial().automorphisms().unwrap().len(), 1);
    }

    #[test]
    fn automorphism_capacity() {
        assert!(matches!(
            group(&[5, 13]).automorphisms(),
            Err(GroupError::GroupTooLarge { order: 65, .. })
        ));
    }

    #[test]
    fn automorphism_group_structure() {
        let g = group(&[4, 2]);
        let auts = g.automorphisms().unwrap();
        assert!(auts[0].is_identity(&g));
        let set: HashSet<_> = auts.iter().cloned().collect();
        assert_eq!(set.len(), auts.len());
        for a in &auts {
            for x in g.elements() {
                assert_eq!(g.element_order(&a.apply(&g, &x)), g.element_order(&x));
            }
            assert!(a.compose(&g, &a.inverse(&g)).is_identity(&g));
            for b in &auts {
                assert!(set.contains(&a.compose(&g, b)));
            }
        }
    }

    #[test]
    fn subgroup_generation() {
        let g = group(&[4, 2]);
        assert!(g.generates(&[el(&[1, 0]), el(&[0, 1])]));
        assert!(g.generates(&[el(&[1, 0]), el(&[2, 1])]));
        assert!(!g.generates(&[el(&[1, 0]), el(&[2, 0])]));
        assert_eq!(g.subgroup_generated(&[el(&[2, 1])]).len(), 2);
    }
}
