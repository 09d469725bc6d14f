//! Randomized invariants.

use g2grade::abelian::AbelianGroup;
use g2grade::derivations::{d_t, derivation_space, Derivation};
use g2grade::grading::{canonical_c_grading, character_automorphism, GradingDescriptor, GradingType};
use g2grade::octonion::{Octonion, DIM};
use g2grade::scalar::{ratio, Cyc, Field, Matrix, Rational, Subspace};
use proptest::prelude::*;

const CONDUCTORS: [u32; 7] = [1, 2, 3, 4, 5, 8, 12];

fn rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=9).prop_map(|(n, d)| ratio(n, d))
}

fn cyc_in(n: u32) -> impl Strategy<Value = Cyc> {
    prop::collection::vec(rational(), n as usize).prop_map(move |c| Cyc::from_poly(n, c))
}

/// Three elements of one randomly chosen field `Q(ζ_N)`.
fn cyc_triple() -> impl Strategy<Value = (Cyc, Cyc, Cyc)> {
    prop::sample::select(CONDUCTORS.to_vec()).prop_flat_map(|n| (cyc_in(n), cyc_in(n), cyc_in(n)))
}

fn octonion() -> impl Strategy<Value = Octonion<Rational>> {
    prop::collection::vec(rational(), DIM).prop_map(|v| Octonion::from_slice(&v))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix<Rational>> {
    prop::collection::vec(-3i64..=3, rows * cols)
        .prop_map(move |v| Matrix::from_fn(rows, cols, |r, c| ratio(v[r * cols + c], 1)))
}

fn derivation() -> impl Strategy<Value = Derivation> {
    prop::collection::vec(-4i64..=4, 14).prop_map(|c| {
        let coords: Vec<Rational> = c.into_iter().map(|x| ratio(x, 1)).collect();
        Derivation::new(derivation_space().matrix_of(&coords)).expect("in Der(C)")
    })
}

/// A random traceless 3×3 matrix.
fn traceless() -> impl Strategy<Value = Matrix<Rational>> {
    matrix(3, 3).prop_map(|m| {
        let mut m = m;
        let t = m.trace();
        let last = m.get(2, 2).minus(&t);
        m.set(2, 2, last);
        m
    })
}

fn small_group() -> impl Strategy<Value = AbelianGroup> {
    prop::collection::vec(2u64..=8, 0..=3)
        .prop_filter("order at most 16", |f| f.iter().product::<u64>() <= 16)
        .prop_map(|f| AbelianGroup::new(f).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cyclotomic_field_axioms((a, b, c) in cyc_triple()) {
        prop_assert_eq!(a.plus(&b), b.plus(&a));
        prop_assert_eq!(a.times(&b), b.times(&a));
        prop_assert_eq!(a.plus(&b).plus(&c), a.plus(&b.plus(&c)));
        prop_assert_eq!(a.times(&b).times(&c), a.times(&b.times(&c)));
        prop_assert_eq!(a.times(&b.plus(&c)), a.times(&b).plus(&a.times(&c)));
        prop_assert!(a.plus(&a.negated()).is_zero());
        prop_assert_eq!(a.minus(&b).plus(&b), a.clone());
        if !a.is_zero() {
            prop_assert_eq!(a.times(&a.inverse().unwrap()), Cyc::one());
        }
    }

    #[test]
    fn mixed_conductors_meet_in_the_compositum(a in cyc_in(3), b in cyc_in(4)) {
        let s = a.plus(&b);
        prop_assert_eq!(s.minus(&b), a.clone());
        prop_assert_eq!(12 % s.conductor(), 0);
    }

    #[test]
    fn norm_is_multiplicative(x in octonion(), y in octonion()) {
        prop_assert_eq!(x.mul(&y).norm().unwrap(), x.norm().unwrap() * y.norm().unwrap());
    }

    #[test]
    fn octonions_are_alternative(x in octonion(), y in octonion()) {
        prop_assert_eq!(x.mul(&x.mul(&y)), x.mul(&x).mul(&y));
        prop_assert_eq!(y.mul(&x).mul(&x), y.mul(&x.mul(&x)));
    }

    #[test]
    fn zorn_product_matches_table(x in octonion(), y in octonion()) {
        prop_assert_eq!(x.mul(&y), x.zorn_mul(&y));
    }

    #[test]
    fn subspace_dimension_formula(a in matrix(4, 8), b in matrix(4, 8)) {
        let (u, w) = (Subspace::row_space(&a), Subspace::row_space(&b));
        let sum = u.sum(&w).unwrap();
        let meet = u.intersect(&w).unwrap();
        prop_assert_eq!(sum.dim() + meet.dim(), u.dim() + w.dim());
        prop_assert!(sum.contains_subspace(&u).unwrap());
        prop_assert!(u.contains_subspace(&meet).unwrap());
    }

    #[test]
    fn rref_is_idempotent(m in matrix(5, 6)) {
        let r = m.rref();
        prop_assert_eq!(r.rref(), r.clone());
        prop_assert_eq!(r.rows(), m.rank());
        prop_assert_eq!(m.rank() + m.nullspace().dim(), 6);
        for v in m.nullspace().basis_vectors() {
            prop_assert!(m.apply(v).iter().all(Field::is_zero));
        }
    }

    #[test]
    fn group_laws(g in small_group(), seed in any::<u64>()) {
        let els = g.elements();
        prop_assert_eq!(els.len() as u64, g.order());
        let pick = |k: u64| els[(seed.rotate_left(k as u32) % els.len() as u64) as usize].clone();
        let (a, b, c) = (pick(0), pick(21), pick(42));
        prop_assert_eq!(g.add(&a, &b), g.add(&b, &a));
        prop_assert_eq!(g.add(&g.add(&a, &b), &c), g.add(&a, &g.add(&b, &c)));
        prop_assert_eq!(g.add(&a, &g.neg(&a)), g.identity());
        prop_assert_eq!(g.scalar_mul(g.element_order(&a) as i64, &a), g.identity());
    }

    #[test]
    fn character_group_mirrors_the_group(g in small_group()) {
        let chars = g.characters();
        prop_assert_eq!(chars.len() as u64, g.order());
        // Same number of elements of each order, so the invariant factors agree.
        let mut group_orders: Vec<u64> = g.elements().iter().map(|x| g.element_order(x)).collect();
        let mut char_orders: Vec<u64> = chars
            .iter()
            .map(|chi| {
                let mut k = 1u64;
                let mut p = chi.clone();
                while p != chars[0] {
                    p = g.character_product(&p, chi);
                    k += 1;
                }
                k
            })
            .collect();
        group_orders.sort_unstable();
        char_orders.sort_unstable();
        prop_assert_eq!(group_orders, char_orders);
        for chi in &chars {
            for x in g.elements() {
                for y in g.elements().iter().take(4) {
                    let lhs = g.char_eval(chi, &g.add(&x, y)).unwrap();
                    let rhs = g.char_eval(chi, &x).unwrap().times(&g.char_eval(chi, y).unwrap());
                    prop_assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn automorphisms_are_bijective_homomorphisms(g in small_group()) {
        let els = g.elements();
        for sigma in g.automorphisms().unwrap() {
            let mut images: Vec<_> = els.iter().map(|x| sigma.apply(&g, x)).collect();
            for x in els.iter().take(4) {
                for y in &els {
                    prop_assert_eq!(sigma.apply(&g, &g.add(x, y)), g.add(&sigma.apply(&g, x), &sigma.apply(&g, y)));
                }
            }
            images.sort();
            images.dedup();
            prop_assert_eq!(images.len(), els.len());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn jacobi_identity(x in derivation(), y in derivation(), z in derivation()) {
        let j = x.bracket(&y.bracket(&z))
            .plus(&y.bracket(&z.bracket(&x)))
            .plus(&z.bracket(&x.bracket(&y)));
        prop_assert!(j.is_zero());
        prop_assert!(derivation_space().contains(x.bracket(&y).matrix()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn d_t_reverses_commutators(t in traceless(), s in traceless()) {
        let lhs = d_t(&t).unwrap().bracket(&d_t(&s).unwrap());
        let rhs = d_t(&s.commutator(&t)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn derivations_kill_the_identity(d in derivation()) {
        prop_assert!(d.apply(&Octonion::one()).is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Conjugating a derivation by a character automorphism gives a derivation.
    #[test]
    fn character_conjugation_preserves_derivations(
        kind in prop::sample::select(vec![GradingType::T5, GradingType::T6, GradingType::T3]),
        d in derivation(),
        k in 0u64..5,
    ) {
        let (g, param) = match kind {
            GradingType::T5 => (AbelianGroup::new(vec![3]).unwrap(), "g"),
            GradingType::T6 => (AbelianGroup::new(vec![4]).unwrap(), "g"),
            _ => (AbelianGroup::new(vec![5]).unwrap(), "h"),
        };
        let n = g.order();
        let d_desc = GradingDescriptor::new(kind, [(param, g.generator(0))]);
        let c = canonical_c_grading(&d_desc, &g).unwrap();
        let chi = g.characters()[(k % n) as usize].clone();
        let a = character_automorphism(&c, &chi).unwrap();
        let a_inv = a.inverse().unwrap();
        let m = d.matrix().map(|q| Cyc::rational(q.clone()));
        let conj = a.times(&m).times(&a_inv);
        prop_assert!(g2grade::derivations::is_derivation(&conj));
        let conj_back = a_inv.times(&conj).times(&a);
        prop_assert_eq!(conj_back, m);
    }
}
