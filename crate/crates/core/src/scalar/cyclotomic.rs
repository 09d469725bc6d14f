//! Arithmetic in the cyclotomic fields `Q(ζ_N) = Q[x]/Φ_N(x)`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;

use super::{format_rational, parse_rational, Field, Matrix, Rational, ScalarError};

/// Euler's totient.
pub fn euler_phi(n: u32) -> u32 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Integer coefficients of the `n`-th cyclotomic polynomial, lowest degree
/// first. Results are memoized.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<i64>> {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 = prod_{d | n} Φ_d(x)
    let mut poly = vec![0i64; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            poly = exact_div_monic(&poly, &cyclotomic_polynomial(d));
        }
    }
    let poly = Arc::new(poly);
    cache.lock().unwrap().insert(n, poly.clone());
    poly
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = num.len() - 1 - dd;
    let mut quot = vec![0i64; qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        if c != 0 {
            for (i, &d) in den.iter().enumerate() {
                rem[k + i] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// An element of `Q(ζ_N)`, stored as the residue of a rational polynomial
/// modulo `Φ_N` in the power basis `1, ζ, …, ζ^{φ(N)-1}`.
///
/// Rational values are always stored with conductor 1, so equality of two
/// values with the same conductor is coefficient equality. Values with
/// different conductors are compared in the field of the lcm.
#[derive(Clone, Debug)]
pub struct Cyc {
    conductor: u32,
    coeffs: Vec<Rational>,
}

impl Cyc {
    pub fn rational(q: Rational) -> Self {
        Cyc {
            conductor: 1,
            coeffs: vec![q],
        }
    }

    pub fn int(n: i64) -> Self {
        Self::rational(super::rat(n))
    }

    /// `ζ_n^k`.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        assert!(n >= 1);
        let k = k.rem_euclid(n as i64) as usize;
        let mut poly = vec![<Rational as Field>::zero(); k + 1];
        poly[k] = <Rational as Field>::one();
        Self::from_poly(n, poly)
    }

    /// Builds `Σ coeffs[i] ζ_n^i` for an arbitrary coefficient list.
    pub fn from_poly(n: u32, poly: Vec<Rational>) -> Self {
        let coeffs = reduce(poly, n);
        Cyc { conductor: n, coeffs }.normalized()
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Coefficients in the power basis of `Q(ζ_conductor)`.
    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        (self.conductor == 1).then(|| &self.coeffs[0])
    }

    /// Re-expresses the value in `Q(ζ_n)`; `n` must be a multiple of the
    /// conductor.
    pub fn lift(&self, n: u32) -> Vec<Rational> {
        assert_eq!(n % self.conductor, 0, "conductor must divide target");
        if n == self.conductor {
            return self.coeffs.clone();
        }
        let step = (n / self.conductor) as usize;
        let mut poly = vec![<Rational as Field>::zero(); (self.coeffs.len() - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            poly[i * step] = c.clone();
        }
        reduce(poly, n)
    }

    fn normalized(mut self) -> Self {
        if self.conductor > 1 && self.coeffs[1..].iter().all(Field::is_zero) {
            self.coeffs.truncate(1);
            self.conductor = 1;
        }
        self
    }

    fn binary(&self, rhs: &Self, f: impl Fn(&[Rational], &[Rational], u32) -> Vec<Rational>) -> Self {
        let n = self.conductor.lcm(&rhs.conductor);
        let a = self.lift(n);
        let b = rhs.lift(n);
        Cyc {
            conductor: n,
            coeffs: f(&a, &b, n),
        }
        .normalized()
    }

    pub fn parse(s: &str) -> Result<Self, ScalarError> {
        let s = s.trim();
        let Some(rest) = s.strip_prefix("cyc(") else {
            return Ok(Self::rational(parse_rational(s)?));
        };
        let err = || ScalarError::Parse(s.to_string());
        let (n, coeffs) = rest.split_once("):").ok_or_else(err)?;
        let n: u32 = n.trim().parse().map_err(|_| err())?;
        if n == 0 {
            return Err(err());
        }
        let coeffs = coeffs
            .split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>, _>>()?;
        if coeffs.len() != euler_phi(n) as usize {
            return Err(err());
        }
        Ok(Self::from_poly(n, coeffs))
    }
}

/// Remainder of `poly` modulo `Φ_n`, padded to length `φ(n)`.
fn reduce(mut poly: Vec<Rational>, n: u32) -> Vec<Rational> {
    let phi = cyclotomic_polynomial(n);
    let deg = phi.len() - 1;
    for top in (deg..poly.len()).rev() {
        let c = poly[top].clone();
        if Field::is_zero(&c) {
            continue;
        }
        for (i, &p) in phi.iter().enumerate() {
            if p != 0 {
                let idx = top - deg + i;
                poly[idx] = &poly[idx] - &c * Rational::from_integer(p.into());
            }
        }
    }
    poly.resize(deg, <Rational as Field>::zero());
    poly
}

fn convolve(a: &[Rational], b: &[Rational], n: u32) -> Vec<Rational> {
    let mut out = vec![<Rational as Field>::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if Field::is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !Field::is_zero(y) {
                out[i + j] = &out[i + j] + x * y;
            }
        }
    }
    reduce(out, n)
}

impl PartialEq for Cyc {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let n = self.conductor.lcm(&other.conductor);
        self.lift(n) == other.lift(n)
    }
}

impl Eq for Cyc {}

impl Field for Cyc {
    fn zero() -> Self {
        Self::int(0)
    }

    fn one() -> Self {
        Self::int(1)
    }

    fn is_zero(&self) -> bool {
        self.conductor == 1 && Field::is_zero(&self.coeffs[0])
    }

    fn from_rational(q: &Rational) -> Self {
        Self::rational(q.clone())
    }

    fn plus(&self, rhs: &Self) -> Self {
        if self.conductor == 1 && rhs.conductor == 1 {
            return Self::rational(&self.coeffs[0] + &rhs.coeffs[0]);
        }
        self.binary(rhs, |a, b, _| a.iter().zip(b).map(|(x, y)| x + y).collect())
    }

    fn minus(&self, rhs: &Self) -> Self {
        if self.conductor == 1 && rhs.conductor == 1 {
            return Self::rational(&self.coeffs[0] - &rhs.coeffs[0]);
        }
        self.binary(rhs, |a, b, _| a.iter().zip(b).map(|(x, y)| x - y).collect())
    }

    fn times(&self, rhs: &Self) -> Self {
        if self.conductor == 1 && rhs.conductor == 1 {
            return Self::rational(&self.coeffs[0] * &rhs.coeffs[0]);
        }
        self.binary(rhs, convolve)
    }

    fn negated(&self) -> Self {
        Cyc {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    fn inverse(&self) -> Option<Self> {
        if Field::is_zero(self) {
            return None;
        }
        if let Some(q) = self.as_rational() {
            return Some(Self::rational(q.recip()));
        }
        // Solve (multiplication by self) · z = 1 in the power basis.
        let n = self.conductor;
        let d = self.coeffs.len();
        let mut columns = Vec::with_capacity(d);
        for j in 0..d {
            let mut shifted = vec![<Rational as Field>::zero(); j];
            shifted.extend(self.coeffs.iter().cloned());
            columns.push(reduce(shifted, n));
        }
        let m = Matrix::from_fn(d, d, |r, c| columns[c][r].clone());
        let mut rhs = vec![<Rational as Field>::zero(); d];
        rhs[0] = <Rational as Field>::one();
        let z = m.solve(&rhs)?;
        Some(
            Cyc {
                conductor: n,
                coeffs: z,
            }
            .normalized(),
        )
    }
}

impl fmt::Display for Cyc {
    /// `p/q` for rational values, `cyc(N):c0,c1,...` otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return f.write_str(&format_rational(q));
        }
        let parts: Vec<String> = self.coeffs.iter().map(format_rational).collect();
        write!(f, "cyc({}):{}", self.conductor, parts.join(","))
    }
}

impl From<Rational> for Cyc {
    fn from(q: Rational) -> Self {
        Self::rational(q)
    }
}

impl From<i64> for Cyc {
    fn from(n: i64) -> Self {
        Self::int(n)
    }
}

impl Add for &Cyc {
    type Output = Cyc;
    fn add(self, rhs: &Cyc) -> Cyc {
        self.plus(rhs)
    }
}

impl Sub for &Cyc {
    type Output = Cyc;
    fn sub(self, rhs: &Cyc) -> Cyc {
        self.minus(rhs)
    }
}

impl Mul for &Cyc {
    type Output = Cyc;
    fn mul(self, rhs: &Cyc) -> Cyc {
        self.times(rhs)
    }
}

impl Neg for &Cyc {
    type Output = Cyc;
    fn neg(self) -> Cyc {
        self.negated()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratio};

    fn z(n: u32, k: i64) -> Cyc {
        Cyc::root_of_unity(n, k)
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(*cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        // first cyclotomic polynomial with a coefficient of absolute value 2
        assert!(cyclotomic_polynomial(105).contains(&-2));
        for n in 1..60 {
            assert_eq!(cyclotomic_polynomial(n).len() as u32 - 1, euler_phi(n));
        }
    }

    #[test]
    fn roots_of_unity_identities() {
        // ζ3 + ζ3² = -1
        assert_eq!(&z(3, 1) + &z(3, 2), Cyc::int(-1));
        // ζ4 · ζ4 = -1
        assert_eq!(&z(4, 1) * &z(4, 1), Cyc::int(-1));
        assert_eq!((&z(4, 1) * &z(4, 1)).conductor(), 1);
        // ζ2 = -1
        assert_eq!(z(2, 1), Cyc::int(-1));
        assert_eq!(z(7, 7), Cyc::one());
        assert_eq!(z(7, -1), z(7, 6));
    }

    #[test]
    fn inverse_of_zeta5() {
        // Φ5 = 1 + x + x² + x³ + x⁴, so ζ5⁴ = -(1 + ζ5 + ζ5² + ζ5³).
        let expected = Cyc::from_poly(5, vec![rat(-1), rat(-1), rat(-1), rat(-1)]);
        let inv = z(5, 1).inverse().unwrap();
        assert_eq!(inv, expected);
        assert_eq!(inv, z(5, 4));
        assert_eq!(&inv * &z(5, 1), Cyc::one());
        assert!(Cyc::zero().inverse().is_none());
    }

    #[test]
    fn mixed_conductor_arithmetic() {
        // ζ4 · ζ3 = ζ12^{3+4}
        assert_eq!(&z(4, 1) * &z(3, 1), z(12, 7));
        // ζ6 = -ζ3²
        assert_eq!(z(6, 1), z(3, 2).negated());
        assert_eq!(z(12, 4), z(3, 1));
        assert_eq!(z(12, 4).conductor(), 12);
        let x = Cyc::from_poly(8, vec![ratio(1, 2), rat(3), rat(0), ratio(-2, 7)]);
        let y = x.inverse().unwrap();
        assert_eq!(&x * &y, Cyc::one());
    }

    #[test]
    fn text_form() {
        assert_eq!(z(4, 1).to_string(), "cyc(4):0,1");
        assert_eq!(Cyc::rational(ratio(-3, 4)).to_string(), "-3/4");
        for s in ["cyc(4):0,1", "cyc(5):1/2,0,-1,3", "7", "-2/9"] {
            assert_eq!(Cyc::parse(s).unwrap().to_string(), s);
        }
        assert_eq!(Cyc::parse("cyc(4):-1,0").unwrap(), Cyc::int(-1));
        assert!(Cyc::parse("cyc(5):1,2").is_err());
        assert!(Cyc::parse("cyc(0):1").is_err());
    }
}
