//! Coefficient rings supported by linking forms, with their prime factorizations.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use crate::error::WittError;
use crate::ring::{factor_q, rat, LaurentPoly, Pid, PrimeFactor, Ring};

/// A prime of the coefficient ring together with its behaviour under the involution.
#[derive(Clone, PartialEq, Eq)]
pub struct PrimeData<R> {
    pub p: R,
    pub symmetric: bool,
    /// `u` with `p = u * involute(p)`; one for non-symmetric primes.
    pub unit: R,
    /// Canonical form of `involute(p)` when not symmetric.
    pub conjugate: Option<R>,
    /// Factorization record, for Laurent primes.
    pub factor: Option<PrimeFactor>,
}

impl<R: Pid> PrimeData<R> {
    pub fn label(&self) -> String {
        self.p.to_string()
    }
}

impl<R: Pid> fmt::Debug for PrimeData<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Prime({})", self.p)
    }
}

pub trait LinkRing: Pid {
    const IS_LAURENT: bool;
    fn from_int(n: i64) -> Self;
    /// `f(1)` is nonzero (Laurent) or a unit (integers).
    fn is_alexander(&self) -> bool;
    /// `(sign, k)` when `self = sign * z^k` (`k = 0` for integers).
    fn signed_monomial_parts(&self) -> Option<(i8, i64)>;
    fn signed_monomial(sign: i8, k: i64) -> Self;
    /// Primes dividing a nonzero element, with multiplicities, in canonical order.
    fn prime_factors(x: &Self) -> Result<Vec<(PrimeData<Self>, u32)>, WittError>;
    fn format_fraction(num: &Self, den: &Self) -> String;
    fn parse_fraction(s: &str) -> Result<(Self, Self), WittError>;
    fn parse_elem(s: &str) -> Result<Self, WittError>;
}

impl LinkRing for BigInt {
    const IS_LAURENT: bool = false;

    fn from_int(n: i64) -> Self {
        BigInt::from(n)
    }

    fn is_alexander(&self) -> bool {
        self.is_unit()
    }

    fn signed_monomial_parts(&self) -> Option<(i8, i64)> {
        if self.is_one() {
            Some((1, 0))
        } else if self.neg().is_one() {
            Some((-1, 0))
        } else {
            None
        }
    }

    fn signed_monomial(sign: i8, k: i64) -> Self {
        assert_eq!(k, 0, "integers have no z-power units");
        BigInt::from(sign)
    }

    fn prime_factors(x: &Self) -> Result<Vec<(PrimeData<Self>, u32)>, WittError> {
        if x.is_zero() {
            return Err(WittError::Precondition("factorization of zero".into()));
        }
        let mut n = x.abs();
        let mut out = Vec::new();
        let mut d = BigInt::from(2);
        while &d * &d <= n {
            let mut k = 0;
            while n.is_multiple_of(&d) {
                n /= &d;
                k += 1;
            }
            if k > 0 {
                out.push((int_prime(d.clone()), k));
            }
            d += 1;
        }
        if n > BigInt::from(1) {
            out.push((int_prime(n), 1));
        }
        Ok(out)
    }

    fn format_fraction(num: &Self, den: &Self) -> String {
        if num.is_zero() {
            "0".into()
        } else {
            format!("{num}/{den}")
        }
    }

    fn parse_fraction(s: &str) -> Result<(Self, Self), WittError> {
        let bad = || WittError::Parse(format!("invalid fraction '{s}'"));
        match s.split_once('/') {
            Some((a, b)) => Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?)),
            None => Ok((s.trim().parse().map_err(|_| bad())?, BigInt::from(1))),
        }
    }

    fn parse_elem(s: &str) -> Result<Self, WittError> {
        s.trim().parse().map_err(|_| WittError::Parse(format!("invalid integer '{s}'")))
    }
}

fn int_prime(p: BigInt) -> PrimeData<BigInt> {
    PrimeData { p, symmetric: true, unit: BigInt::from(1), conjugate: None, factor: None }
}

impl LinkRing for LaurentPoly {
    const IS_LAURENT: bool = true;

    fn from_int(n: i64) -> Self {
        LaurentPoly::from_int(n)
    }

    fn is_alexander(&self) -> bool {
        LaurentPoly::is_alexander(self, false)
    }

    fn signed_monomial_parts(&self) -> Option<(i8, i64)> {
        let mut terms = self.terms();
        let (k, c) = terms.next()?;
        if terms.next().is_some() {
            return None;
        }
        if c == &rat(1) {
            Some((1, k))
        } else if c == &rat(-1) {
            Some((-1, k))
        } else {
            None
        }
    }

    fn signed_monomial(sign: i8, k: i64) -> Self {
        LaurentPoly::monomial(rat(sign as i64), k)
    }

    fn prime_factors(x: &Self) -> Result<Vec<(PrimeData<Self>, u32)>, WittError> {
        let fz = factor_q(x)?;
        Ok(fz
            .factors
            .into_iter()
            .map(|f| {
                let m = f.multiplicity;
                let data = PrimeData {
                    p: f.poly.clone(),
                    symmetric: f.symmetric,
                    unit: f.unit.clone().unwrap_or_else(LaurentPoly::one),
                    conjugate: f.conjugate.clone(),
                    factor: Some(f),
                };
                (data, m)
            })
            .collect())
    }

    fn format_fraction(num: &Self, den: &Self) -> String {
        if num.is_zero() {
            "0".into()
        } else {
            format!("({num})/({den})")
        }
    }

    /// `(num)/(den)` or a bare polynomial.
    fn parse_fraction(s: &str) -> Result<(Self, Self), WittError> {
        let t = s.trim();
        let bad = || WittError::Parse(format!("invalid fraction '{s}', expected '(num)/(den)'"));
        if let Some(rest) = t.strip_prefix('(') {
            let close = rest.find(')').ok_or_else(bad)?;
            let num = rest[..close].parse()?;
            let tail = rest[close + 1..].trim();
            let den_src = tail
                .strip_prefix('/')
                .map(str::trim)
                .and_then(|d| d.strip_prefix('('))
                .and_then(|d| d.strip_suffix(')'))
                .ok_or_else(bad)?;
            Ok((num, den_src.parse()?))
        } else {
            Ok((t.parse()?, LaurentPoly::one()))
        }
    }

    fn parse_elem(s: &str) -> Result<Self, WittError> {
        s.parse()
    }
}
