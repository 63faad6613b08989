//! Laurent polynomials over Q with the involution `z -> z^-1`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::upoly::{self, QPoly};
use super::{format_rational, parse_rational, Pid, Rational, Ring};
use crate::error::WittError;

/// Sparse Laurent polynomial; no stored coefficient is zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(terms: I) -> Self {
        let mut coeffs = BTreeMap::new();
        for (e, c) in terms {
            let entry = coeffs.entry(e).or_insert_with(Rational::zero);
            *entry += c;
        }
        coeffs.retain(|_, c: &mut Rational| !c.is_zero());
        Self { coeffs }
    }

    /// `c * z^e`.
    pub fn monomial(c: Rational, e: i64) -> Self {
        Self::from_terms([(e, c)])
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(c.into()))
    }

    pub fn z() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    /// From ordinary coefficients, lowest degree first, shifted by `z^shift`.
    pub fn from_dense(shift: i64, coeffs: &[Rational]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(i, c)| (shift + i as i64, c.clone())))
    }

    /// Integer coefficients, lowest degree first.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(i, &c)| (i as i64, BigRational::from_integer(c.into()))))
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &Rational)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: i64) -> Rational {
        self.coeffs.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// `max_exp - min_exp`; zero for the zero polynomial.
    pub fn span(&self) -> u64 {
        match (self.min_exp(), self.max_exp()) {
            (Some(a), Some(b)) => (b - a) as u64,
            _ => 0,
        }
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.values().next_back()
    }

    pub fn shift(&self, k: i64) -> Self {
        Self { coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(e, a)| (*e, a * c)))
    }

    /// `(shift, dense)` with `self = z^shift * dense(z)` and `dense(0) != 0`.
    pub fn to_dense(&self) -> (i64, QPoly) {
        let Some(lo) = self.min_exp() else {
            return (0, vec![]);
        };
        let hi = self.max_exp().unwrap();
        let mut out = vec![Rational::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.coeffs {
            out[(e - lo) as usize] = c.clone();
        }
        (lo, out)
    }

    /// Dense coefficients of an ordinary polynomial (all exponents >= 0).
    pub fn to_ordinary(&self) -> Option<QPoly> {
        match self.min_exp() {
            None => Some(vec![]),
            Some(lo) if lo < 0 => None,
            Some(_) => {
                let (lo, d) = self.to_dense();
                let mut out = vec![Rational::zero(); lo as usize];
                out.extend(d);
                Some(out)
            }
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.coeffs {
            let p = if *e >= 0 {
                num_traits::pow(x.clone(), *e as usize)
            } else {
                num_traits::pow(x.recip(), (-*e) as usize)
            };
            acc += c * p;
        }
        acc
    }

    pub fn is_self_conjugate(&self) -> bool {
        self.involute() == *self
    }

    /// True iff `f(1)` is a unit of the coefficient ring.
    pub fn is_alexander(&self, integral: bool) -> bool {
        let v = self.eval(&Rational::one());
        if integral {
            v.is_integer() && v.abs().is_one()
        } else {
            !v.is_zero()
        }
    }

    /// Canonical associate up to units `c z^k`: lowest exponent 0, primitive
    /// integer coefficients, positive leading coefficient. Returns the unit too.
    pub fn normalize_assoc(&self) -> Result<(LaurentPoly, LaurentPoly), WittError> {
        if self.is_zero() {
            return Err(WittError::Precondition("normalize_assoc: zero polynomial".into()));
        }
        Ok(Pid::normalize(self))
    }

    /// Canonical residue modulo an ordinary polynomial `m` with nonzero
    /// constant term, as dense coefficients of degree `< deg m`.
    fn residue_dense(&self, m: &[Rational]) -> QPoly {
        let (s, d) = self.to_dense();
        let base = upoly::rem(&d, m);
        if s == 0 || base.is_empty() {
            return base;
        }
        let zk = if s > 0 {
            power_mod(&[Rational::zero(), Rational::one()], s as u64, m)
        } else {
            // z * q(z) = -m0  (mod m)  gives  z^-1 = -q / m0
            let m0 = m[0].clone();
            let zinv = upoly::scale(&m[1..], &(-m0.recip()));
            power_mod(&zinv, (-s) as u64, m)
        };
        upoly::rem(&upoly::mul(&base, &zk), m)
    }
}

fn power_mod(base: &[Rational], mut e: u64, m: &[Rational]) -> QPoly {
    let mut acc = upoly::rem(&[Rational::one()], m);
    let mut b = upoly::rem(base, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = upoly::rem(&upoly::mul(&acc, &b), m);
        }
        b = upoly::rem(&upoly::mul(&b, &b), m);
        e >>= 1;
    }
    acc
}

impl Ring for LaurentPoly {
    fn zero() -> Self {
        Self::default()
    }
    fn one() -> Self {
        Self::from_int(1)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        let mut out = self.coeffs.clone();
        for (e, c) in &o.coeffs {
            let entry = out.entry(*e).or_insert_with(Rational::zero);
            *entry += c;
        }
        out.retain(|_, c| !c.is_zero());
        Self { coeffs: out }
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        let mut out: BTreeMap<i64, Rational> = BTreeMap::new();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &o.coeffs {
                *out.entry(e1 + e2).or_insert_with(Rational::zero) += c1 * c2;
            }
        }
        out.retain(|_, c| !c.is_zero());
        Self { coeffs: out }
    }
    fn neg(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Pid for LaurentPoly {
    fn euclid_norm(&self) -> BigUint {
        BigUint::from(self.span())
    }

    fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero Laurent polynomial");
        if self.is_zero() {
            return (Self::zero(), Self::zero());
        }
        let (sa, a) = self.to_dense();
        let (sb, b) = d.to_dense();
        let (q, r) = upoly::div_rem(&a, &b);
        (Self::from_dense(sa - sb, &q), Self::from_dense(sa, &r))
    }

    fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    fn unit_inv(&self) -> Option<Self> {
        if !self.is_unit() {
            return None;
        }
        let (e, c) = self.coeffs.iter().next().unwrap();
        Some(Self::monomial(c.recip(), -e))
    }

    fn normalize(&self) -> (Self, Self) {
        if self.is_zero() {
            return (Self::zero(), Self::one());
        }
        let (s, d) = self.to_dense();
        let prim = upoly::from_integers(&upoly::primitive_integer(&d));
        // d = c * prim for a rational c
        let c = d.last().unwrap() / prim.last().unwrap();
        (Self::from_dense(0, &prim), Self::monomial(c, s))
    }

    fn involute(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect() }
    }

    fn reduce(&self, m: &Self) -> Self {
        let (_, m0) = m.to_dense();
        if m0.len() <= 1 {
            return Self::zero();
        }
        Self::from_dense(0, &self.residue_dense(&m0))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            first = false;
            let coeff = if a.is_one() && *e != 0 { String::new() } else { format_rational(&a) };
            match *e {
                0 => write!(f, "{coeff}")?,
                1 => write!(f, "{coeff}z")?,
                _ => write!(f, "{coeff}z^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl FromStr for LaurentPoly {
    type Err = WittError;

    /// Grammar: signed terms `coeff`, `coeff z^k`, `z^k`, `coeff z`, `z`,
    /// where `coeff` is `int` or `int/int` and `k` may be negative.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || WittError::Parse(format!("invalid polynomial '{s}'"));
        let src: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if src.is_empty() {
            return Err(bad());
        }
        let bytes = src.as_bytes();
        let mut terms = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            let mut sign = Rational::one();
            if bytes[i] == b'+' || bytes[i] == b'-' {
                if bytes[i] == b'-' {
                    sign = -sign;
                }
                i += 1;
            } else if i != 0 {
                return Err(bad());
            }
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'/') {
                i += 1;
            }
            let coeff = if start == i { Rational::one() } else { parse_rational(&src[start..i]).ok_or_else(bad)? };
            let mut exp = 0i64;
            if i < bytes.len() && bytes[i] == b'z' {
                i += 1;
                exp = 1;
                if i < bytes.len() && bytes[i] == b'^' {
                    i += 1;
                    let es = i;
                    if i < bytes.len() && bytes[i] == b'-' {
                        i += 1;
                    }
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    exp = src[es..i].parse().map_err(|_| bad())?;
                }
            } else if start == i {
                return Err(bad());
            }
            terms.push((exp, coeff * sign));
        }
        Ok(Self::from_terms(terms))
    }
}

impl From<BigInt> for LaurentPoly {
    fn from(n: BigInt) -> Self {
        Self::constant(BigRational::from_integer(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(lp("2z^2-5z+2").to_string(), "2z^2-5z+2");
        assert_eq!(lp("z^-1+1").to_string(), "1+z^-1");
        assert_eq!(lp("1/2z-1").to_string(), "1/2z-1");
        assert_eq!(lp("-z^-2+3").coeff(-2), rat(-1));
        assert!("2zz".parse::<LaurentPoly>().is_err());
        assert!("".parse::<LaurentPoly>().is_err());
        assert!("z^".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn involute_examples() {
        assert_eq!(lp("z^2-z+1").involute(), lp("z^-2-z^-1+1"));
        assert!(LaurentPoly::zero().involute().is_zero());
        let f = lp("2z^2-5z+2");
        assert_eq!(f.involute(), lp("2-5z+2z^2").mul(&lp("z^-2")));
    }

    #[test]
    fn alexander_check() {
        assert!(lp("z^2-z+1").is_alexander(false));
        assert!(!lp("z-1").is_alexander(false));
        // 2 - 5 + 2 = -1 is a unit of Z
        assert!(lp("2z^2-5z+2").is_alexander(true));
        assert!(!lp("3z^2-5z+4").is_alexander(true));
        assert!(lp("3z^2-5z+4").is_alexander(false));
    }

    #[test]
    fn normalize_examples() {
        let (n, u) = lp("-3z^-1+3z").normalize_assoc().unwrap();
        assert_eq!(n, lp("z^2-1"));
        assert_eq!(u.mul(&n), lp("-3z^-1+3z"));
        let (n, _) = lp("z^5").normalize_assoc().unwrap();
        assert_eq!(n, LaurentPoly::one());
        let (n, u) = lp("1/2z-1").normalize_assoc().unwrap();
        assert_eq!(n, lp("z-2"));
        assert!(u.is_unit());
        assert!(LaurentPoly::zero().normalize_assoc().is_err());
    }

    #[test]
    fn euclidean_division_in_laurent_ring() {
        let a = lp("z^-3+2z+5");
        let b = lp("z^2+z^-1");
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.span() < b.span());
    }

    #[test]
    fn canonical_residues() {
        let m = lp("z^2-z+1");
        // z^-1 = 1 - z modulo z^2 - z + 1
        assert_eq!(lp("z^-1").reduce(&m), lp("1-z"));
        assert_eq!(lp("z^3").reduce(&m), lp("-1"));
        assert_eq!(lp("z^2").reduce(&m.shift(-4)), lp("z-1"));
        assert!(m.reduce(&m).is_zero());
    }
}
