//! Dense univariate polynomials over Q, coefficients stored low degree first.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::Rational;

pub type QPoly = Vec<Rational>;

pub fn trim(mut f: QPoly) -> QPoly {
    while f.last().is_some_and(|c| c.is_zero()) {
        f.pop();
    }
    f
}

/// Degree, with `None` for the zero polynomial.
pub fn degree(f: &[Rational]) -> Option<usize> {
    f.iter().rposition(|c| !c.is_zero())
}

pub fn add(f: &[Rational], g: &[Rational]) -> QPoly {
    let n = f.len().max(g.len());
    let zero = Rational::zero();
    trim((0..n).map(|i| f.get(i).unwrap_or(&zero) + g.get(i).unwrap_or(&zero)).collect())
}

pub fn sub(f: &[Rational], g: &[Rational]) -> QPoly {
    let n = f.len().max(g.len());
    let zero = Rational::zero();
    trim((0..n).map(|i| f.get(i).unwrap_or(&zero) - g.get(i).unwrap_or(&zero)).collect())
}

pub fn mul(f: &[Rational], g: &[Rational]) -> QPoly {
    if f.is_empty() || g.is_empty() {
        return vec![];
    }
    let mut out = vec![Rational::zero(); f.len() + g.len() - 1];
    for (i, a) in f.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in g.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    trim(out)
}

pub fn scale(f: &[Rational], c: &Rational) -> QPoly {
    trim(f.iter().map(|a| a * c).collect())
}

pub fn neg(f: &[Rational]) -> QPoly {
    f.iter().map(|a| -a).collect()
}

/// Euclidean division; panics on a zero divisor.
pub fn div_rem(f: &[Rational], g: &[Rational]) -> (QPoly, QPoly) {
    let dg = degree(g).expect("division by zero polynomial");
    let mut r = trim(f.to_vec());
    let Some(df) = degree(&r) else {
        return (vec![], vec![]);
    };
    if df < dg {
        return (vec![], r);
    }
    let mut q = vec![Rational::zero(); df - dg + 1];
    let lead_inv = g[dg].recip();
    while let Some(dr) = degree(&r) {
        if dr < dg {
            break;
        }
        let c = &r[dr] * &lead_inv;
        let shift = dr - dg;
        for (i, b) in g.iter().enumerate().take(dg + 1) {
            r[i + shift] -= &c * b;
        }
        r.truncate(dr);
        r = trim(r);
        q[shift] = c;
    }
    (trim(q), r)
}

pub fn rem(f: &[Rational], g: &[Rational]) -> QPoly {
    div_rem(f, g).1
}

pub fn monic(f: &[Rational]) -> QPoly {
    match degree(f) {
        None => vec![],
        Some(d) => scale(f, &f[d].recip()),
    }
}

/// Monic gcd.
pub fn gcd(f: &[Rational], g: &[Rational]) -> QPoly {
    let (mut a, mut b) = (trim(f.to_vec()), trim(g.to_vec()));
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = std::mem::replace(&mut b, r);
    }
    monic(&a)
}

pub fn derivative(f: &[Rational]) -> QPoly {
    trim(f.iter().enumerate().skip(1).map(|(i, c)| c * BigRational::from_integer(BigInt::from(i))).collect())
}

pub fn eval(f: &[Rational], x: &Rational) -> Rational {
    f.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

/// Squarefree part (monic).
pub fn squarefree(f: &[Rational]) -> QPoly {
    let g = gcd(f, &derivative(f));
    monic(&div_rem(f, &g).0)
}

/// Sturm sequence of a squarefree polynomial.
pub fn sturm_sequence(f: &[Rational]) -> Vec<QPoly> {
    let mut seq = vec![trim(f.to_vec())];
    let d = derivative(f);
    if d.is_empty() {
        return seq;
    }
    seq.push(d);
    loop {
        let n = seq.len();
        let r = rem(&seq[n - 2], &seq[n - 1]);
        if r.is_empty() {
            break;
        }
        seq.push(neg(&r));
    }
    seq
}

fn sign_variations(seq: &[QPoly], x: &Rational) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for p in seq {
        let v = eval(p, x);
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Number of distinct real roots in the half-open interval `(a, b]`.
pub fn count_roots(seq: &[QPoly], a: &Rational, b: &Rational) -> usize {
    sign_variations(seq, a) - sign_variations(seq, b)
}

/// Isolating intervals `(a, b)` for the roots of a squarefree `f` in the open
/// interval `(lo, hi)`. Endpoints are never roots. Sorted increasingly.
pub fn isolate_roots(f: &[Rational], lo: &Rational, hi: &Rational) -> Vec<(Rational, Rational)> {
    let seq = sturm_sequence(f);
    let mut out = Vec::new();
    let mut stack = vec![(lo.clone(), hi.clone())];
    while let Some((a, b)) = stack.pop() {
        let mut n = count_roots(&seq, &a, &b);
        if eval(f, &b).is_zero() {
            n -= 1;
        }
        match n {
            0 => {}
            1 => out.push((a, b)),
            _ => {
                let c = split_point(f, &a, &b);
                stack.push((c.clone(), b));
                stack.push((a, c));
            }
        }
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    out
}

/// A point strictly inside `(a, b)` which is not a root of `f`.
pub fn split_point(f: &[Rational], a: &Rational, b: &Rational) -> Rational {
    let width = b - a;
    for den in 2i64.. {
        for num in 1..den {
            if num.gcd(&den) != 1 {
                continue;
            }
            let c = a + &width * BigRational::new(num.into(), den.into());
            if !eval(f, &c).is_zero() {
                return c;
            }
        }
    }
    unreachable!()
}

/// Primitive integer polynomial associated to `f` (positive leading coefficient).
pub fn primitive_integer(f: &[Rational]) -> Vec<BigInt> {
    let f = trim(f.to_vec());
    if f.is_empty() {
        return vec![];
    }
    let lcm = f.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = f.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let sign = if ints.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
    ints.into_iter().map(|c| c / &content * &sign).collect()
}

pub fn from_integers(f: &[BigInt]) -> QPoly {
    trim(f.iter().map(|c| BigRational::from_integer(c.clone())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    fn qp(c: &[i64]) -> QPoly {
        c.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn division_identity() {
        let f = qp(&[2, -5, 2]);
        let g = qp(&[-2, 1]);
        let (q, r) = div_rem(&f, &g);
        assert_eq!(q, qp(&[-1, 2]));
        assert!(r.is_empty());
    }

    #[test]
    fn sturm_counts_roots() {
        // w^2 - 2 has roots +-sqrt(2)
        let f = qp(&[-2, 0, 1]);
        let seq = sturm_sequence(&f);
        assert_eq!(count_roots(&seq, &rat(-2), &rat(2)), 2);
        assert_eq!(count_roots(&seq, &rat(0), &rat(2)), 1);
        let iv = isolate_roots(&f, &rat(-2), &rat(2));
        assert_eq!(iv.len(), 2);
        for (a, b) in iv {
            assert!(eval(&f, &a).signum() != eval(&f, &b).signum());
        }
    }

    #[test]
    fn isolation_avoids_rational_roots_at_endpoints() {
        let f = qp(&[-1, 1]);
        let iv = isolate_roots(&f, &rat(-2), &rat(2));
        assert_eq!(iv.len(), 1);
        let (a, b) = &iv[0];
        assert!(a < &rat(1) && &rat(1) < b);
    }

    #[test]
    fn primitive_form() {
        let f = vec![rat(-1), BigRational::new(1.into(), 2.into())];
        assert_eq!(primitive_integer(&f), vec![BigInt::from(-2), BigInt::from(1)]);
    }
}
