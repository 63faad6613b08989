//! Exact coefficient rings: integers, rationals and Laurent polynomials over Q.

use std::fmt::{Debug, Display};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Signed;

pub mod factor;
pub mod laurent;
mod modp;
pub mod places;
pub mod upoly;

pub use factor::{factor_q, Factorization, PrimeFactor};
pub use laurent::LaurentPoly;
pub use places::{sign_at_place, unit_circle_places, Boundary, UnitCirclePlace};

pub type Rational = BigRational;

/// Commutative ring with unit.
pub trait Ring: Clone + Eq + Debug + Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

/// Euclidean principal ideal domain carrying an involution.
///
/// `normalize` picks one canonical generator per principal ideal and
/// `reduce` picks one canonical residue per coset, so that equality of
/// canonical forms is equality in the quotient.
pub trait Pid: Ring {
    /// Euclidean size; `div_rem` remainders are strictly smaller than the divisor.
    fn euclid_norm(&self) -> BigUint;
    fn div_rem(&self, d: &Self) -> (Self, Self);
    fn is_unit(&self) -> bool;
    fn unit_inv(&self) -> Option<Self>;
    /// Returns `(c, u)` with `self = u * c`, `u` a unit and `c` canonical.
    fn normalize(&self) -> (Self, Self);
    fn involute(&self) -> Self;
    /// Canonical representative of `self` modulo the nonzero element `m`.
    fn reduce(&self, m: &Self) -> Self;

    fn exact_div(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem(self).1.is_zero()
    }

    fn canonical(&self) -> Self {
        self.normalize().0
    }

    fn associated(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }
}

/// Normalized gcd.
pub fn gcd<R: Pid>(a: &R, b: &R) -> R {
    ext_gcd(a, b).0
}

/// `(g, s, t)` with `s*a + t*b = g`, `g` normalized.
pub fn ext_gcd<R: Pid>(a: &R, b: &R) -> (R, R, R) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (R::one(), R::zero());
    let (mut t0, mut t1) = (R::zero(), R::one());
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1);
        r0 = std::mem::replace(&mut r1, r);
        let s = s0.sub(&q.mul(&s1));
        s0 = std::mem::replace(&mut s1, s);
        let t = t0.sub(&q.mul(&t1));
        t0 = std::mem::replace(&mut t1, t);
    }
    if r0.is_zero() {
        return (r0, s0, t0);
    }
    let (g, u) = r0.normalize();
    let ui = u.unit_inv().expect("normalize returns a unit");
    (g, s0.mul(&ui), t0.mul(&ui))
}

/// Inverse of `a` modulo `m`, if it exists, as a canonical residue.
pub fn inv_mod<R: Pid>(a: &R, m: &R) -> Option<R> {
    let (g, s, _) = ext_gcd(a, m);
    g.is_one().then(|| s.reduce(m))
}

/// Largest `k` with `p^k | a` (a nonzero).
pub fn valuation<R: Pid>(a: &R, p: &R) -> u32 {
    assert!(!a.is_zero(), "valuation of zero");
    let mut k = 0;
    let mut cur = a.clone();
    while let Some(q) = cur.exact_div(p) {
        cur = q;
        k += 1;
    }
    k
}

impl Ring for BigInt {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Pid for BigInt {
    fn euclid_norm(&self) -> BigUint {
        self.magnitude().clone()
    }
    fn div_rem(&self, d: &Self) -> (Self, Self) {
        self.div_mod_floor(d)
    }
    fn is_unit(&self) -> bool {
        self.magnitude() == &BigUint::from(1u32)
    }
    fn unit_inv(&self) -> Option<Self> {
        self.is_unit().then(|| self.clone())
    }
    fn normalize(&self) -> (Self, Self) {
        match self.sign() {
            Sign::Minus => (-self, BigInt::from(-1)),
            _ => (self.clone(), BigInt::from(1)),
        }
    }
    fn involute(&self) -> Self {
        self.clone()
    }
    fn reduce(&self, m: &Self) -> Self {
        self.mod_floor(&m.abs())
    }
}

/// Integer as a rational.
pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Parses `int` or `int/int`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let n: BigInt = a.trim().parse().ok()?;
            let d: BigInt = b.trim().parse().ok()?;
            if num_traits::Zero::is_zero(&d) {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Sign of a rational as -1, 0, 1.
pub fn sign_of(q: &Rational) -> i8 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_ext_gcd() {
        let (g, s, t) = ext_gcd(&BigInt::from(12), &BigInt::from(-18));
        assert_eq!(g, BigInt::from(6));
        assert_eq!(s * 12 + t * -18, BigInt::from(6));
    }

    #[test]
    fn integer_inverse_mod() {
        assert_eq!(inv_mod(&BigInt::from(5), &BigInt::from(3)), Some(BigInt::from(2)));
        assert_eq!(inv_mod(&BigInt::from(3), &BigInt::from(9)), None);
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("-3/6"), Some(BigRational::new((-1).into(), 2.into())));
        assert_eq!(parse_rational("7"), Some(rat(7)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(format_rational(&BigRational::new(4.into(), (-6).into())), "-2/3");
    }

    #[test]
    fn valuation_counts_powers() {
        assert_eq!(valuation(&BigInt::from(54), &BigInt::from(3)), 3);
        assert_eq!(valuation(&BigInt::from(5), &BigInt::from(3)), 0);
    }
}
