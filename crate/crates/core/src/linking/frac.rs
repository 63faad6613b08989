//! Elements of `S^-1 A / A`, stored as canonical fractions.

use std::fmt;

use super::coeff::LinkRing;
use crate::error::WittError;
use crate::ring::{ext_gcd, gcd, Pid};

/// `num / den` modulo `A`: `den` canonical, `num` a canonical residue mod `den`,
/// `gcd(num, den) = 1`. Zero is `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FracMod<R> {
    num: R,
    den: R,
}

impl<R: Pid> FracMod<R> {
    pub fn new(num: R, den: R) -> Result<Self, WittError> {
        if den.is_zero() {
            return Err(WittError::Precondition("fraction with zero denominator".into()));
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: R, den: R) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = gcd(&num, &den);
        let (num, den) = (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap());
        let (c, u) = den.normalize();
        let num = num.mul(&u.unit_inv().expect("unit")).reduce(&c);
        if num.is_zero() {
            Self::zero()
        } else {
            Self { num, den: c }
        }
    }

    pub fn zero() -> Self {
        Self { num: R::zero(), den: R::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn num(&self) -> &R {
        &self.num
    }

    pub fn den(&self) -> &R {
        &self.den
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::canonical(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }

    pub fn neg(&self) -> Self {
        Self::canonical(self.num.neg(), self.den.clone())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    /// `r * self`.
    pub fn scale(&self, r: &R) -> Self {
        Self::canonical(self.num.mul(r), self.den.clone())
    }

    pub fn involute(&self) -> Self {
        Self::canonical(self.num.involute(), self.den.involute())
    }

    /// True iff `r * self = 0`.
    pub fn annihilated_by(&self, r: &R) -> bool {
        self.den.divides(&self.num.mul(r))
    }

    /// Numerator over the given multiple `m` of the denominator, reduced mod `m`.
    pub fn numerator_over(&self, m: &R) -> Option<R> {
        let q = m.exact_div(&self.den)?;
        Some(self.num.mul(&q).reduce(m))
    }

    /// Component at the prime `p` of the partial-fraction split of `self`.
    pub fn p_local_part(&self, p: &R) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut pk = R::one();
        let mut m = self.den.clone();
        while let Some(q) = m.exact_div(p) {
            m = q;
            pk = pk.mul(p);
        }
        if pk.is_one() {
            return Self::zero();
        }
        // s p^k + t m = 1, so num / (p^k m) = num s / m + num t / p^k
        let (_, _, t) = ext_gcd(&pk, &m);
        Self::canonical(self.num.mul(&t), pk)
    }
}

impl<R: LinkRing> fmt::Display for FracMod<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", R::format_fraction(&self.num, &self.den))
    }
}

impl<R: LinkRing> fmt::Debug for FracMod<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<R: LinkRing> std::str::FromStr for FracMod<R> {
    type Err = WittError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (n, d) = R::parse_fraction(s)?;
        Self::new(n, d)
    }
}
