//! The split octonions `C` in the standard basis `e₁, e₂, u₁, u₂, u₃, v₁, v₂, v₃`.
//!
//! An element is the Zorn vector matrix `(α, u; v, β)` with coordinates
//! `(α, β, u₁, u₂, u₃, v₁, v₂, v₃)`. The hard-coded multiplication table is
//! the definition of the product; the Zorn closed form is fitted to it.

use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::algebra::StructureConstants;
use crate::scalar::{rat, Field, Rational};

pub const DIM: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OctonionError {
    #[error("multiplication table inconsistency at ({row}, {col}): {check}")]
    TableInconsistency {
        row: Basis,
        col: Basis,
        check: &'static str,
    },
    #[error("x·x̄ is not a scalar multiple of 1")]
    NotScalar,
    #[error("{0} Zorn sign choices reproduce the table, expected exactly one")]
    AmbiguousZornSigns(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    E1,
    E2,
    U1,
    U2,
    U3,
    V1,
    V2,
    V3,
}

impl Basis {
    pub const ALL: [Basis; DIM] = [
        Basis::E1,
        Basis::E2,
        Basis::U1,
        Basis::U2,
        Basis::U3,
        Basis::V1,
        Basis::V2,
        Basis::V3,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Basis {
        Self::ALL[i]
    }

    /// `u_i` for `i` in `1..=3`.
    pub fn u(i: usize) -> Basis {
        Self::ALL[1 + i]
    }

    /// `v_i` for `i` in `1..=3`.
    pub fn v(i: usize) -> Basis {
        Self::ALL[4 + i]
    }

    pub fn name(self) -> &'static str {
        ["e1", "e2", "u1", "u2", "u3", "v1", "v2", "v3"][self.index()]
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

use Basis::*;

/// `TABLE[i][j] = (sign, b)` means `b_i · b_j = sign · b`; sign 0 is zero.
const TABLE: [[(i8, Basis); DIM]; DIM] = [
    // e1
    [
        (1, E1),
        (0, E1),
        (1, U1),
        (1, U2),
        (1, U3),
        (0, E1),
        (0, E1),
        (0, E1),
    ],
    // e2
    [
        (0, E1),
        (1, E2),
        (0, E1),
        (0, E1),
        (0, E1),
        (1, V1),
        (1, V2),
        (1, V3),
    ],
    // u1
    [
        (0, E1),
        (1, U1),
        (0, E1),
        (1, V3),
        (-1, V2),
        (1, E1),
        (0, E1),
        (0, E1),
    ],
    // u2
    [
        (0, E1),
        (1, U2),
        (-1, V3),
        (0, E1),
        (1, V1),
        (0, E1),
        (1, E1),
        (0, E1),
    ],
    // u3
    [
        (0, E1),
        (1, U3),
        (1, V2),
        (-1, V1),
        (0, E1),
        (0, E1),
        (0, E1),
        (1, E1),
    ],
    // v1
    [
        (1, V1),
        (0, E1),
        (1, E2),
        (0, E1),
        (0, E1),
        (0, E1),
        (-1, U3),
        (1, U2),
    ],
    // v2
    [
        (1, V2),
        (0, E1),
        (0, E1),
        (1, E2),
        (0, E1),
        (1, U3),
        (0, E1),
        (-1, U1),
    ],
    // v3
    [
        (1, V3),
        (0, E1),
        (0, E1),
        (0, E1),
        (1, E2),
        (-1, U2),
        (1, U1),
        (0, E1),
    ],
];

/// The tabulated product of two basis vectors, as `(sign, basis)`.
pub fn table_entry(a: Basis, b: Basis) -> Option<(i8, Basis)> {
    let (s, c) = TABLE[a.index()][b.index()];
    (s != 0).then_some((s, c))
}

/// Structure constants of the table, shared by every product in the crate.
pub fn structure_constants() -> &'static StructureConstants {
    static CONSTANTS: OnceLock<StructureConstants> = OnceLock::new();
    CONSTANTS.get_or_init(|| {
        StructureConstants::new(DIM, |i, j| {
            let mut v = vec![rat(0); DIM];
            if let Some((s, c)) = table_entry(Basis::from_index(i), Basis::from_index(j)) {
                v[c.index()] = rat(s as i64);
            }
            v
        })
    })
}

/// An element of `C` over an exact field.
#[derive(Debug, Clone, PartialEq)]
pub struct Octonion<F> {
    coords: [F; DIM],
}

impl<F: Field> Octonion<F> {
    pub fn zero() -> Self {
        Octonion {
            coords: std::array::from_fn(|_| F::zero()),
        }
    }

    /// The identity `1 = e₁ + e₂`.
    pub fn one() -> Self {
        Self::from_zorn(
            F::one(),
            [F::zero(), F::zero(), F::zero()],
            [F::zero(), F::zero(), F::zero()],
            F::one(),
        )
    }

    pub fn basis(b: Basis) -> Self {
        let mut x = Self::zero();
        x.coords[b.index()] = F::one();
        x
    }

    pub fn new(coords: [F; DIM]) -> Self {
        Octonion { coords }
    }

    pub fn from_slice(v: &[F]) -> Self {
        assert_eq!(v.len(), DIM);
        Octonion {
            coords: std::array::from_fn(|i| v[i].clone()),
        }
    }

    /// The Zorn vector matrix `(α, u; v, β)`.
    pub fn from_zorn(alpha: F, u: [F; 3], v: [F; 3], beta: F) -> Self {
        let [u1, u2, u3] = u;
        let [v1, v2, v3] = v;
        Octonion {
            coords: [alpha, beta, u1, u2, u3, v1, v2, v3],
        }
    }

    /// Linear combination `Σ c·b` of basis vectors with integer coefficients.
    pub fn combination(terms: &[(i64, Basis)]) -> Self {
        let mut x = Self::zero();
        for &(c, b) in terms {
            x.coords[b.index()] = x.coords[b.index()].plus(&F::from_int(c));
        }
        x
    }

    pub fn coords(&self) -> &[F; DIM] {
        &self.coords
    }

    pub fn coord(&self, b: Basis) -> &F {
        &self.coords[b.index()]
    }

    pub fn alpha(&self) -> &F {
        &self.coords[0]
    }

    pub fn beta(&self) -> &F {
        &self.coords[1]
    }

    pub fn u(&self) -> [F; 3] {
        std::array::from_fn(|i| self.coords[2 + i].clone())
    }

    pub fn v(&self) -> [F; 3] {
        std::array::from_fn(|i| self.coords[5 + i].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(F::is_zero)
    }

    pub fn plus(&self, rhs: &Self) -> Self {
        Octonion {
            coords: std::array::from_fn(|i| self.coords[i].plus(&rhs.coords[i])),
        }
    }

    pub fn minus(&self, rhs: &Self) -> Self {
        Octonion {
            coords: std::array::from_fn(|i| self.coords[i].minus(&rhs.coords[i])),
        }
    }

    pub fn scale(&self, s: &F) -> Self {
        Octonion {
            coords: std::array::from_fn(|i| self.coords[i].times(s)),
        }
    }

    pub fn negated(&self) -> Self {
        Octonion {
            coords: std::array::from_fn(|i| self.coords[i].negated()),
        }
    }

    /// Product defined by the multiplication table, extended bilinearly.
    pub fn mul(&self, rhs: &Self) -> Self {
        Self::from_slice(&structure_constants().multiply(&self.coords, &rhs.coords))
    }

    /// Closed-form Zorn product with the sign convention fitted to the table.
    pub fn zorn_mul(&self, rhs: &Self) -> Self {
        ZornSigns::TABLE.multiply(self, rhs)
    }

    /// `(α, u; v, β) ↦ (β, −u; −v, α)`.
    pub fn conjugate(&self) -> Self {
        let neg = |a: [F; 3]| a.map(|x| x.negated());
        Self::from_zorn(
            self.beta().clone(),
            neg(self.u()),
            neg(self.v()),
            self.alpha().clone(),
        )
    }

    /// `α + β`, so that `x + x̄ = trace(x)·1`.
    pub fn trace(&self) -> F {
        self.alpha().plus(self.beta())
    }

    /// The scalar `n(x)` with `x·x̄ = n(x)·1`.
    pub fn norm(&self) -> Result<F, OctonionError> {
        let p = self.mul(&self.conjugate());
        let n = p.alpha().clone();
        if *p.beta() != n || p.coords[2..].iter().any(|c| !c.is_zero()) {
            return Err(OctonionError::NotScalar);
        }
        Ok(n)
    }

    /// Linearized norm `n(x, y) = n(x + y) − n(x) − n(y)`.
    pub fn bilinear(&self, rhs: &Self) -> Result<F, OctonionError> {
        Ok(self.plus(rhs).norm()?.minus(&self.norm()?).minus(&rhs.norm()?))
    }
}

impl<F: Field> fmt::Display for Octonion<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for b in Basis::ALL {
            let c = &self.coords[b.index()];
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if c.is_one() {
                write!(f, "{b}")?;
            } else if c.negated().is_one() {
                write!(f, "-{b}")?;
            } else {
                write!(f, "({c}){b}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

fn dot<F: Field>(a: &[F; 3], b: &[F; 3]) -> F {
    a.iter()
        .zip(b)
        .fold(F::zero(), |acc, (x, y)| acc.plus(&x.times(y)))
}

fn cross<F: Field>(a: &[F; 3], b: &[F; 3]) -> [F; 3] {
    [
        a[1].times(&b[2]).minus(&a[2].times(&b[1])),
        a[2].times(&b[0]).minus(&a[0].times(&b[2])),
        a[0].times(&b[1]).minus(&a[1].times(&b[0])),
    ]
}

/// Signs of the four convention-dependent terms of the Zorn product
///
/// `(α,u;v,β)(α',u';v',β') = (αα' + a(u,v'), αu' + β'u + c·v×v'; α'v + βv' + d·u×u', ββ' + b(v,u'))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZornSigns {
    pub alpha_inner: i8,
    pub beta_inner: i8,
    pub u_cross: i8,
    pub v_cross: i8,
}

impl ZornSigns {
    /// The convention that reproduces the multiplication table.
    pub const TABLE: ZornSigns = ZornSigns {
        alpha_inner: 1,
        beta_inner: 1,
        u_cross: -1,
        v_cross: 1,
    };

    pub fn all() -> impl Iterator<Item = ZornSigns> {
        (0..16u8).map(|bits| {
            let s = |k: u8| if bits & (1 << k) == 0 { 1 } else { -1 };
            ZornSigns {
                alpha_inner: s(0),
                beta_inner: s(1),
                u_cross: s(2),
                v_cross: s(3),
            }
        })
    }

    pub fn multiply<F: Field>(&self, x: &Octonion<F>, y: &Octonion<F>) -> Octonion<F> {
        let sign = |s: i8, v: F| if s < 0 { v.negated() } else { v };
        let (a, b, u, v) = (x.alpha(), x.beta(), x.u(), x.v());
        let (a2, b2, u2, v2) = (y.alpha(), y.beta(), y.u(), y.v());
        let alpha = a.times(a2).plus(&sign(self.alpha_inner, dot(&u, &v2)));
        let beta = b.times(b2).plus(&sign(self.beta_inner, dot(&v, &u2)));
        let vv = cross(&v, &v2);
        let uu = cross(&u, &u2);
        let new_u = std::array::from_fn(|i| {
            a.times(&u2[i])
                .plus(&b2.times(&u[i]))
                .plus(&sign(self.u_cross, vv[i].clone()))
        });
        let new_v = std::array::from_fn(|i| {
            a2.times(&v[i])
                .plus(&b.times(&v2[i]))
                .plus(&sign(self.v_cross, uu[i].clone()))
        });
        Octonion::from_zorn(alpha, new_u, new_v, beta)
    }

    /// Whether this sign choice reproduces all 64 table entries.
    pub fn matches_table(&self) -> bool {
        Basis::ALL.iter().all(|&a| {
            Basis::ALL.iter().all(|&b| {
                let x = Octonion::<Rational>::basis(a);
                let y = Octonion::<Rational>::basis(b);
                self.multiply(&x, &y) == x.mul(&y)
            })
        })
    }

    /// The unique sign choice matching the table, found by exhaustive search.
    pub fn fit_to_table() -> Result<ZornSigns, OctonionError> {
        let matches: Vec<_> = Self::all().filter(ZornSigns::matches_table).collect();
        match matches.as_slice() {
            [only] => Ok(*only),
            _ => Err(OctonionError::AmbiguousZornSigns(matches.len())),
        }
    }
}

/// Counts from a successful [`check_table`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableReport {
    pub entries_verified: usize,
    pub identity_products: usize,
    pub alternativity_pairs: usize,
}

/// Verifies the table against the Zorn closed form, the two-sided identity
/// and left/right alternativity on all basis pairs.
pub fn check_table() -> Result<TableReport, OctonionError> {
    let basis = |b: Basis| Octonion::<Rational>::basis(b);
    let mut entries_verified = 0;
    for a in Basis::ALL {
        for b in Basis::ALL {
            let (x, y) = (basis(a), basis(b));
            if x.mul(&y) != x.zorn_mul(&y) {
                return Err(OctonionError::TableInconsistency {
                    row: a,
                    col: b,
                    check: "table entry differs from the Zorn product",
                });
            }
            entries_verified += 1;
        }
    }
    let one = Octonion::<Rational>::one();
    let mut identity_products = 0;
    for a in Basis::ALL {
        let x = basis(a);
        if one.mul(&x) != x || x.mul(&one) != x {
            return Err(OctonionError::TableInconsistency {
                row: a,
                col: a,
                check: "e1 + e2 is not a two-sided identity",
            });
        }
        identity_products += 2;
    }
    let mut alternativity_pairs = 0;
    for a in Basis::ALL {
        for b in Basis::ALL {
            let (x, y) = (basis(a), basis(b));
            let xx = x.mul(&x);
            if x.mul(&x.mul(&y)) != xx.mul(&y) {
                return Err(OctonionError::TableInconsistency {
                    row: a,
                    col: b,
                    check: "left alternativity x(xy) = (xx)y fails",
                });
            }
            let yy = y.mul(&y);
            if y.mul(&x).mul(&x) != y.mul(&xx) || x.mul(&y).mul(&y) != x.mul(&yy) {
                return Err(OctonionError::TableInconsistency {
                    row: a,
                    col: b,
                    check: "right alternativity (yx)x = y(xx) fails",
                });
            }
            alternativity_pairs += 1;
        }
    }
    Ok(TableReport {
        entries_verified,
        identity_products,
        alternativity_pairs,
    })
}

/// Plain-text rendering of the multiplication table.
pub fn render_table() -> String {
    let width = 5;
    let mut out = format!("{:>width$} |", "");
    for b in Basis::ALL {
        out.push_str(&format!("{:>width$}", b.name()));
    }
    out.push('\n');
    out.push_str(&"-".repeat(width + 2 + width * DIM));
    out.push('\n');
    for a in Basis::ALL {
        out.push_str(&format!("{:>width$} |", a.name()));
        for b in Basis::ALL {
            let cell = match table_entry(a, b) {
                None => "0".to_string(),
                Some((s, c)) if s < 0 => format!("-{c}"),
                Some((_, c)) => c.to_string(),
            };
            out.push_str(&format!("{cell:>width$}"));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    type O = Octonion<Rational>;

    fn b(x: Basis) -> O {
        O::basis(x)
    }

    #[test]
    fn tabulated_products() {
        assert_eq!(b(U1).mul(&b(U2)), b(V3));
        assert_eq!(b(V1).mul(&b(V2)), b(U3).negated());
        assert_eq!(b(U1).mul(&b(V1)), b(E1));
        assert_eq!(b(V1).mul(&b(U1)), b(E2));
        assert_eq!(b(E1).mul(&b(E1)), b(E1));
        assert_eq!(b(U2).mul(&b(U1)), b(V3).negated());
        assert_eq!(b(V2).mul(&b(V3)), b(U1).negated());
    }

    #[test]
    fn zorn_product_matches_table() {
        assert_eq!(b(U1).zorn_mul(&b(U2)), b(V3));
        assert_eq!(b(E1).zorn_mul(&b(E1)), b(E1));
        for x in Basis::ALL {
            for y in Basis::ALL {
                assert_eq!(b(x).zorn_mul(&b(y)), b(x).mul(&b(y)), "{x}·{y}");
            }
        }
    }

    #[test]
    fn zorn_signs_are_uniquely_determined_by_the_table() {
        assert_eq!(ZornSigns::fit_to_table().unwrap(), ZornSigns::TABLE);
        // With the opposite inner-product and cross-product signs, v1·v2 = +u3.
        let flipped = ZornSigns {
            alpha_inner: -1,
            beta_inner: -1,
            u_cross: 1,
            v_cross: 1,
        };
        assert!(!flipped.matches_table());
        assert_eq!(flipped.multiply(&b(V1), &b(V2)), b(U3));
    }

    #[test]
    fn check_table_passes() {
        let report = check_table().unwrap();
        assert_eq!(report.entries_verified, 64);
        assert_eq!(report.identity_products, 16);
        assert_eq!(report.alternativity_pairs, 64);
    }

    #[test]
    fn conjugation() {
        assert_eq!(O::one().conjugate(), O::one());
        assert_eq!(b(E1).conjugate(), b(E2));
        for x in Basis::ALL {
            for y in Basis::ALL {
                let lhs = b(x).mul(&b(y)).conjugate();
                let rhs = b(y).conjugate().mul(&b(x).conjugate());
                assert_eq!(lhs, rhs, "conj({x}·{y})");
            }
        }
    }

    #[test]
    fn norms() {
        assert_eq!(O::one().norm().unwrap(), rat(1));
        // u1·ū1 = u1·(−u1) = 0
        assert_eq!(b(U1).norm().unwrap(), rat(0));
        assert_eq!(b(E1).norm().unwrap(), rat(0));
        // n(u1, v1): u1·v̄1 + v1·ū1 = −(e1 + e2), so the bilinear form is −1
        assert_eq!(b(U1).bilinear(&b(V1)).unwrap(), rat(-1));
        assert_eq!(b(E1).bilinear(&b(E2)).unwrap(), rat(1));
    }

    #[test]
    fn not_associative() {
        let left = b(U1).mul(&b(U2)).mul(&b(U3));
        let right = b(U1).mul(&b(U2).mul(&b(U3)));
        // (u1u2)u3 = v3·u3 = e2, u1(u2u3) = u1·v1 = e1
        assert_eq!(left, b(E2));
        assert_eq!(right, b(E1));
        assert_ne!(left, right);
    }

    #[test]
    fn display() {
        assert_eq!(O::one().to_string(), "e1 + e2");
        assert_eq!(O::combination(&[(2, U1), (-1, V3)]).to_string(), "(2)u1 + -v3");
        assert_eq!(O::zero().to_string(), "0");
    }

    #[test]
    fn rendered_table_has_a_row_per_basis_vector() {
        let t = render_table();
        assert_eq!(t.lines().count(), 10);
        assert!(t.contains("-u3"));
    }
}
