//! Factorization of Laurent polynomials over Q.
//!
//! Squarefree decomposition over Q, then for each squarefree part a
//! Zassenhaus-style factorization: Cantor–Zassenhaus modulo a small prime,
//! Hensel lifting, and recombination by trial division.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::modp::{Fp, FpPoly};
use super::upoly::{self, QPoly};
use super::{LaurentPoly, Pid, Rational, Ring};
use crate::error::WittError;

/// Irreducible factor over Q in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PrimeFactor {
    /// Primitive integer polynomial, exponents `0..=deg`, positive leading coefficient.
    pub poly: LaurentPoly,
    pub multiplicity: u32,
    /// True iff `poly` and its involute generate the same ideal.
    pub symmetric: bool,
    /// `u` with `poly = u * involute(poly)`, when symmetric.
    pub unit: Option<LaurentPoly>,
    /// Canonical form of the involute, when not symmetric.
    pub conjugate: Option<LaurentPoly>,
}

impl PrimeFactor {
    /// Builds the record for an irreducible polynomial, normalizing it first.
    pub fn from_irreducible(p: &LaurentPoly, multiplicity: u32) -> Self {
        let poly = p.canonical();
        let bar = poly.involute();
        let conj = bar.canonical();
        if conj == poly {
            let unit = poly.exact_div(&bar).expect("associate of its involute");
            Self { poly, multiplicity, symmetric: true, unit: Some(unit), conjugate: None }
        } else {
            Self { poly, multiplicity, symmetric: false, unit: None, conjugate: Some(conj) }
        }
    }

    pub fn degree(&self) -> u64 {
        self.poly.span()
    }

    /// The uniformizer's unit, panicking for non-symmetric primes.
    pub fn unit(&self) -> &LaurentPoly {
        self.unit.as_ref().expect("unit of a non-symmetric prime")
    }
}

impl fmt::Display for PrimeFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

impl fmt::Debug for PrimeFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PrimeFactor({}, m={}, symmetric={})", self.poly, self.multiplicity, self.symmetric)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    /// Monomial `c z^k` with `input = unit * prod poly^mult`.
    pub unit: LaurentPoly,
    /// Sorted by degree, then by printed form.
    pub factors: Vec<PrimeFactor>,
}

impl Factorization {
    pub fn symmetric(&self) -> impl Iterator<Item = &PrimeFactor> {
        self.factors.iter().filter(|f| f.symmetric)
    }

    /// Conjugate pairs `{p, p̄}`, each reported once.
    pub fn conjugate_pairs(&self) -> Vec<(&PrimeFactor, &PrimeFactor)> {
        let mut out = Vec::new();
        for (i, f) in self.factors.iter().enumerate() {
            let Some(c) = &f.conjugate else { continue };
            if let Some(g) = self.factors[i + 1..].iter().find(|g| &g.poly == c) {
                out.push((f, g));
            }
        }
        out
    }

    /// Factors whose involute does not occur (only possible for inputs that
    /// are not self-conjugate up to units).
    pub fn unpaired(&self) -> Vec<&PrimeFactor> {
        self.factors
            .iter()
            .filter(|f| match &f.conjugate {
                Some(c) => !self.factors.iter().any(|g| &g.poly == c),
                None => false,
            })
            .collect()
    }

    pub fn find(&self, poly: &LaurentPoly) -> Option<&PrimeFactor> {
        let c = poly.canonical();
        self.factors.iter().find(|f| f.poly == c)
    }

    pub fn product(&self) -> LaurentPoly {
        self.factors.iter().fold(self.unit.clone(), |acc, f| acc.mul(&f.poly.pow(f.multiplicity)))
    }
}

/// Factors a nonzero Laurent polynomial into irreducibles over Q.
pub fn factor_q(f: &LaurentPoly) -> Result<Factorization, WittError> {
    if f.is_zero() {
        return Err(WittError::Precondition("factor_q: zero polynomial".into()));
    }
    let (_, dense) = f.to_dense();
    let mut factors = Vec::new();
    for (part, mult) in squarefree_decomposition(&dense) {
        for g in factor_squarefree_integer(&upoly::primitive_integer(&part)) {
            let lp = LaurentPoly::from_dense(0, &upoly::from_integers(&g));
            factors.push(PrimeFactor::from_irreducible(&lp, mult));
        }
    }
    factors.sort_by_key(|a| (a.degree(), a.poly.to_string()));
    let prod = factors.iter().fold(LaurentPoly::one(), |acc, p| acc.mul(&p.poly.pow(p.multiplicity)));
    let unit = f
        .exact_div(&prod)
        .filter(|u| u.is_unit())
        .ok_or_else(|| WittError::Internal(format!("factorization of {f} does not reconstruct")))?;
    Ok(Factorization { unit, factors })
}

/// Yun's algorithm: monic `a_i` with `f = c * prod a_i^i`, constant parts omitted.
fn squarefree_decomposition(f: &[Rational]) -> Vec<(QPoly, u32)> {
    let mut out = Vec::new();
    if upoly::degree(f).unwrap_or(0) == 0 {
        return out;
    }
    let df = upoly::derivative(f);
    let b = upoly::gcd(f, &df);
    let mut c = upoly::div_rem(f, &b).0;
    let mut d = upoly::sub(&upoly::div_rem(&df, &b).0, &upoly::derivative(&c));
    let mut i = 1;
    while upoly::degree(&c).unwrap_or(0) > 0 {
        let a = upoly::gcd(&c, &d);
        c = upoly::div_rem(&c, &a).0;
        d = upoly::sub(&upoly::div_rem(&d, &a).0, &upoly::derivative(&c));
        if upoly::degree(&a).unwrap_or(0) > 0 {
            out.push((upoly::monic(&a), i));
        }
        i += 1;
    }
    out
}

type ZPoly = Vec<BigInt>;

fn ztrim(mut f: ZPoly) -> ZPoly {
    while f.last().is_some_and(|c| c.sign() == num_bigint::Sign::NoSign) {
        f.pop();
    }
    f
}

fn zmul(f: &[BigInt], g: &[BigInt]) -> ZPoly {
    if f.is_empty() || g.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::ZERO; f.len() + g.len() - 1];
    for (i, a) in f.iter().enumerate() {
        for (j, b) in g.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    ztrim(out)
}

fn zmod(f: &[BigInt], m: &BigInt) -> ZPoly {
    ztrim(f.iter().map(|c| c.mod_floor(m)).collect())
}

fn to_fp(f: &[BigInt], p: u64) -> FpPoly {
    let pb = BigInt::from(p);
    let mut v: FpPoly = f.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn from_fp(f: &[u64]) -> ZPoly {
    f.iter().map(|&c| BigInt::from(c)).collect()
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|n| (3..).step_by(2).take_while(|d| d * d <= *n).all(|d| n % d != 0))
}

/// Irreducible factors (primitive, positive leading coefficient) of a
/// squarefree primitive integer polynomial of positive degree.
fn factor_squarefree_integer(f: &[BigInt]) -> Vec<ZPoly> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    let lc = f[n].clone();
    // monic transform: lc^(n-1) f(x / lc)
    let fm: ZPoly = (0..=n)
        .map(|i| if i == n { BigInt::from(1) } else { &f[i] * num_traits::pow(lc.clone(), n - 1 - i) })
        .collect();
    let p = small_primes()
        .find(|&p| {
            let fp = Fp::new(p);
            fp.is_squarefree(&to_fp(&fm, p))
        })
        .expect("some prime keeps a squarefree polynomial squarefree");
    let fp = Fp::new(p);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ p);
    let mut modular = fp.factor_squarefree(&to_fp(&fm, p), &mut rng);
    if modular.len() == 1 {
        return vec![f.to_vec()];
    }
    modular.sort();

    let maxc = fm.iter().map(|c| c.abs()).max().unwrap();
    let bound = (BigInt::from(1) << (n + 2)) * BigInt::from(n + 1) * maxc;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut pk = pb.clone();
    while pk <= bound {
        pk *= &pb;
        k += 1;
    }
    let lifted = hensel_lift(&fm, &modular, p, k);

    let monic_factors = recombine(&fm, lifted, &pk);
    monic_factors
        .into_iter()
        .map(|g| {
            // g(lc * x), primitive part
            let scaled: QPoly =
                g.iter().enumerate().map(|(i, c)| Rational::from_integer(c * num_traits::pow(lc.clone(), i))).collect();
            upoly::primitive_integer(&scaled)
        })
        .collect()
}

/// Lifts a factorization of monic `f` modulo `p` into monic factors modulo `p^k`.
fn hensel_lift(f: &[BigInt], factors: &[FpPoly], p: u64, k: u32) -> Vec<ZPoly> {
    let modulus = BigInt::from(p).pow(k);
    if factors.len() == 1 {
        return vec![zmod(f, &modulus)];
    }
    let fp = Fp::new(p);
    let g0 = &factors[0];
    let h0 = factors[1..].iter().fold(vec![1u64], |acc, g| fp.mul(&acc, g));
    let (g, h) = lift_pair(f, g0, &h0, p, k);
    let mut out = vec![g];
    out.extend(hensel_lift(&h, &factors[1..], p, k));
    out
}

fn lift_pair(f: &[BigInt], g0: &[u64], h0: &[u64], p: u64, k: u32) -> (ZPoly, ZPoly) {
    let fp = Fp::new(p);
    let (one, _s, t) = fp.ext_gcd(g0, h0);
    debug_assert_eq!(one, vec![1]);
    let pb = BigInt::from(p);
    let mut g = from_fp(g0);
    let mut h = from_fp(h0);
    let mut pj = pb.clone();
    for _ in 1..k {
        let prod = zmul(&g, &h);
        let len = f.len().max(prod.len());
        let diff: ZPoly = (0..len)
            .map(|i| f.get(i).cloned().unwrap_or_default() - prod.get(i).cloned().unwrap_or_default())
            .collect();
        let e: ZPoly = diff.iter().map(|c| c / &pj).collect();
        let e = to_fp(&e, p);
        let tau = fp.rem(&fp.mul(&t, &e), g0);
        let sigma = fp.div_rem(&fp.sub(&e, &fp.mul(&tau, h0)), g0).0;
        let next = &pj * &pb;
        g = zadd_scaled(&g, &from_fp(&tau), &pj, &next);
        h = zadd_scaled(&h, &from_fp(&sigma), &pj, &next);
        pj = next;
    }
    (g, h)
}

/// `(a + c * b) mod m`.
fn zadd_scaled(a: &[BigInt], b: &[BigInt], c: &BigInt, m: &BigInt) -> ZPoly {
    let len = a.len().max(b.len());
    ztrim(
        (0..len)
            .map(|i| {
                let x = a.get(i).cloned().unwrap_or_default() + c * b.get(i).cloned().unwrap_or_default();
                x.mod_floor(m)
            })
            .collect(),
    )
}

fn symmetric_residue(f: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m / 2;
    ztrim(
        f.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn zdivides(g: &[BigInt], f: &[BigInt]) -> Option<ZPoly> {
    let (q, r) = upoly::div_rem(&upoly::from_integers(f), &upoly::from_integers(g));
    if !r.is_empty() || q.iter().any(|c| !c.is_integer()) {
        return None;
    }
    Some(q.iter().map(|c| c.to_integer()).collect())
}

/// Combines lifted modular factors into true monic integer factors of `f`.
fn recombine(f: &[BigInt], lifted: Vec<ZPoly>, m: &BigInt) -> Vec<ZPoly> {
    let mut rest = f.to_vec();
    let mut pool = lifted;
    let mut out = Vec::new();
    let mut size = 1;
    while 2 * size <= pool.len() {
        let mut found = None;
        for subset in combinations(pool.len(), size) {
            let prod = subset.iter().fold(vec![BigInt::from(1)], |acc, &i| zmod(&zmul(&acc, &pool[i]), m));
            let cand = symmetric_residue(&prod, m);
            if let Some(q) = zdivides(&cand, &rest) {
                found = Some((subset, cand, q));
                break;
            }
        }
        match found {
            Some((subset, cand, q)) => {
                out.push(cand);
                rest = q;
                pool = pool.into_iter().enumerate().filter(|(i, _)| !subset.contains(i)).map(|(_, g)| g).collect();
            }
            None => size += 1,
        }
    }
    if rest.len() > 1 {
        out.push(rest);
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}
