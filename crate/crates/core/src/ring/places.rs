//! Roots of symmetric primes on the unit circle, located through the trace
//! substitution `w = z + z^-1` and Sturm sequences.

use num_traits::{One, Zero};

use super::upoly::{self, QPoly};
use super::{rat, sign_of, LaurentPoly, PrimeFactor, Rational};
use crate::error::WittError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Boundary {
    Interior,
    /// Root at `z = 1`.
    One,
    /// Root at `z = -1`.
    MinusOne,
}

/// A conjugate pair `{e^{iθ}, e^{-iθ}}` of roots of a symmetric prime, or a
/// root at `z = ±1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitCirclePlace {
    pub prime: PrimeFactor,
    /// Isolating interval for the trace root `w = 2 cos θ`; degenerate at `±2`
    /// for boundary places.
    pub interval: (Rational, Rational),
    pub boundary: Boundary,
    /// Trace polynomial of the prime (`t(z + z^-1) = z^-m p(z)`).
    pub trace: QPoly,
}

impl UnitCirclePlace {
    /// Shrinks the isolating interval to width at most `2^-bits`.
    pub fn refined(&self, bits: u32) -> UnitCirclePlace {
        let mut out = self.clone();
        if self.boundary != Boundary::Interior {
            return out;
        }
        let target = Rational::new(1.into(), num_bigint::BigInt::from(1) << bits);
        let (mut a, mut b) = self.interval.clone();
        while &b - &a > target {
            match bisect(&self.trace, &a, &b) {
                Bisect::Exact(c) => {
                    a = c.clone();
                    b = c;
                    break;
                }
                Bisect::Left(c) => b = c,
                Bisect::Right(c) => a = c,
            }
        }
        out.interval = (a, b);
        out
    }
}

enum Bisect {
    Exact(Rational),
    Left(Rational),
    Right(Rational),
}

/// Halves an interval containing one simple root of `t` with `t(a) t(b) < 0`.
fn bisect(t: &[Rational], a: &Rational, b: &Rational) -> Bisect {
    let c = (a + b) / rat(2);
    let tc = upoly::eval(t, &c);
    if tc.is_zero() {
        return Bisect::Exact(c);
    }
    if sign_of(&tc) == sign_of(&upoly::eval(t, a)) {
        Bisect::Right(c)
    } else {
        Bisect::Left(c)
    }
}

/// Rewrites a self-conjugate Laurent polynomial as a polynomial in `w = z + z^-1`.
pub fn to_trace_poly(f: &LaurentPoly) -> Result<QPoly, WittError> {
    if !f.is_self_conjugate() {
        return Err(WittError::Precondition(format!("{f} is not self-conjugate")));
    }
    let top = f.max_exp().unwrap_or(0).max(0);
    // d[k] = z^k + z^-k as a polynomial in w
    let mut d: Vec<QPoly> = vec![vec![rat(2)], vec![Rational::zero(), Rational::one()]];
    while (d.len() as i64) <= top {
        let n = d.len();
        let next = upoly::sub(&upoly::mul(&[Rational::zero(), Rational::one()], &d[n - 1]), &d[n - 2]);
        d.push(next);
    }
    let mut out = vec![f.coeff(0)];
    for k in 1..=top {
        out = upoly::add(&out, &upoly::scale(&d[k as usize], &f.coeff(k)));
    }
    Ok(upoly::trim(out))
}

/// Places of a symmetric prime on the unit circle, ordered by decreasing trace
/// root (increasing angle θ in `(0, π)`), boundary places first/last.
pub fn unit_circle_places(p: &PrimeFactor) -> Result<Vec<UnitCirclePlace>, WittError> {
    if !p.symmetric {
        return Err(WittError::Precondition(format!("{} is not a symmetric prime", p.poly)));
    }
    let d = p.degree();
    if d == 1 {
        let root = -p.poly.coeff(0) / p.poly.coeff(1);
        let (boundary, w) = if root == rat(1) {
            (Boundary::One, rat(2))
        } else if root == rat(-1) {
            (Boundary::MinusOne, rat(-2))
        } else {
            return Err(WittError::Internal(format!("symmetric linear prime {} off the unit circle", p.poly)));
        };
        return Ok(vec![UnitCirclePlace {
            prime: p.clone(),
            interval: (w.clone(), w.clone()),
            boundary,
            trace: vec![-w, Rational::one()],
        }]);
    }
    let m = (d / 2) as i64;
    let centered = p.poly.shift(-m);
    let trace = to_trace_poly(&centered)?;
    let mut roots = upoly::isolate_roots(&trace, &rat(-2), &rat(2));
    roots.reverse();
    Ok(roots
        .into_iter()
        .map(|interval| UnitCirclePlace {
            prime: p.clone(),
            interval,
            boundary: Boundary::Interior,
            trace: trace.clone(),
        })
        .collect())
}

/// Exact sign of a self-conjugate `f` at the root of a place.
pub fn sign_at_place(f: &LaurentPoly, place: &UnitCirclePlace) -> Result<i8, WittError> {
    let g = to_trace_poly(f)?;
    if place.boundary != Boundary::Interior {
        return Ok(sign_of(&upoly::eval(&g, &place.interval.0)));
    }
    if g.is_empty() {
        return Ok(0);
    }
    let t = &place.trace;
    if upoly::rem(&g, t).is_empty() {
        return Ok(0);
    }
    // the trace polynomial of a prime is irreducible, so g does not vanish at the root
    let h = upoly::squarefree(&g);
    let seq = upoly::sturm_sequence(&h);
    let (mut a, mut b) = place.interval.clone();
    loop {
        if a == b {
            return Ok(sign_of(&upoly::eval(&g, &a)));
        }
        let ga = upoly::eval(&g, &a);
        if !ga.is_zero() && upoly::count_roots(&seq, &a, &b) == 0 {
            return Ok(sign_of(&ga));
        }
        match bisect(t, &a, &b) {
            Bisect::Exact(c) => {
                a = c.clone();
                b = c;
            }
            Bisect::Left(c) => b = c,
            Bisect::Right(c) => a = c,
        }
    }
}
