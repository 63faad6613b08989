//! Dense polynomials over a small prime field F_p, used by the factorizer.

use num_bigint::BigUint;
use rand::Rng;

pub(crate) type FpPoly = Vec<u64>;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        assert!(p > 2 && p < (1 << 31));
        Self { p }
    }

    fn trim(mut f: FpPoly) -> FpPoly {
        while f.last() == Some(&0) {
            f.pop();
        }
        f
    }

    #[cfg(test)]
    pub fn from_i64_slice(&self, f: &[i64]) -> FpPoly {
        let p = self.p as i64;
        Self::trim(f.iter().map(|c| c.rem_euclid(p) as u64).collect())
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p));
        self.pow(a, self.p - 2)
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * a % self.p;
            }
            a = a * a % self.p;
            e >>= 1;
        }
        acc
    }

    #[cfg(test)]
    pub fn add(&self, f: &[u64], g: &[u64]) -> FpPoly {
        let n = f.len().max(g.len());
        Self::trim((0..n).map(|i| (f.get(i).unwrap_or(&0) + g.get(i).unwrap_or(&0)) % self.p).collect())
    }

    pub fn sub(&self, f: &[u64], g: &[u64]) -> FpPoly {
        let n = f.len().max(g.len());
        Self::trim((0..n).map(|i| (f.get(i).unwrap_or(&0) + self.p - g.get(i).unwrap_or(&0)) % self.p).collect())
    }

    pub fn mul(&self, f: &[u64], g: &[u64]) -> FpPoly {
        if f.is_empty() || g.is_empty() {
            return vec![];
        }
        let mut out = vec![0u64; f.len() + g.len() - 1];
        for (i, a) in f.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in g.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) % self.p;
            }
        }
        Self::trim(out)
    }

    pub fn scale(&self, f: &[u64], c: u64) -> FpPoly {
        Self::trim(f.iter().map(|a| a * c % self.p).collect())
    }

    pub fn div_rem(&self, f: &[u64], g: &[u64]) -> (FpPoly, FpPoly) {
        let g = Self::trim(g.to_vec());
        assert!(!g.is_empty(), "division by zero polynomial mod p");
        let mut r = Self::trim(f.to_vec());
        if r.len() < g.len() {
            return (vec![], r);
        }
        let dg = g.len() - 1;
        let li = self.inv(g[dg]);
        let mut q = vec![0u64; r.len() - dg];
        while r.len() > dg {
            let dr = r.len() - 1;
            let c = r[dr] * li % self.p;
            let s = dr - dg;
            for (i, b) in g.iter().enumerate() {
                r[i + s] = (r[i + s] + self.p - c * b % self.p) % self.p;
            }
            q[s] = c;
            r = Self::trim(r);
        }
        (Self::trim(q), r)
    }

    pub fn rem(&self, f: &[u64], g: &[u64]) -> FpPoly {
        self.div_rem(f, g).1
    }

    pub fn monic(&self, f: &[u64]) -> FpPoly {
        match f.last() {
            None => vec![],
            Some(&l) => self.scale(f, self.inv(l)),
        }
    }

    pub fn gcd(&self, f: &[u64], g: &[u64]) -> FpPoly {
        let (mut a, mut b) = (Self::trim(f.to_vec()), Self::trim(g.to_vec()));
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = std::mem::replace(&mut b, r);
        }
        self.monic(&a)
    }

    /// `(g, s, t)` with `s f + t g = g`, `g` monic.
    pub fn ext_gcd(&self, f: &[u64], g: &[u64]) -> (FpPoly, FpPoly, FpPoly) {
        let (mut r0, mut r1) = (Self::trim(f.to_vec()), Self::trim(g.to_vec()));
        let (mut s0, mut s1) = (vec![1u64], vec![]);
        let (mut t0, mut t1) = (vec![], vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = self.div_rem(&r0, &r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = self.sub(&s0, &self.mul(&q, &s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = self.sub(&t0, &self.mul(&q, &t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        let li = self.inv(*r0.last().expect("gcd of zero polynomials"));
        (self.scale(&r0, li), self.scale(&s0, li), self.scale(&t0, li))
    }

    pub fn derivative(&self, f: &[u64]) -> FpPoly {
        Self::trim(f.iter().enumerate().skip(1).map(|(i, c)| (i as u64 % self.p) * c % self.p).collect())
    }

    pub fn pow_mod(&self, base: &[u64], e: &BigUint, m: &[u64]) -> FpPoly {
        let mut acc = self.rem(&[1], m);
        let b = self.rem(base, m);
        for i in (0..e.bits()).rev() {
            acc = self.rem(&self.mul(&acc, &acc), m);
            if e.bit(i) {
                acc = self.rem(&self.mul(&acc, &b), m);
            }
        }
        acc
    }

    pub fn is_squarefree(&self, f: &[u64]) -> bool {
        self.gcd(f, &self.derivative(f)).len() == 1
    }

    /// Complete factorization of a monic squarefree polynomial into monic irreducibles.
    pub fn factor_squarefree<G: Rng>(&self, f: &[u64], rng: &mut G) -> Vec<FpPoly> {
        let mut out = Vec::new();
        for (d, g) in self.distinct_degree(f) {
            self.equal_degree(&g, d, rng, &mut out);
        }
        out
    }

    fn distinct_degree(&self, f: &[u64]) -> Vec<(usize, FpPoly)> {
        let mut out = Vec::new();
        let mut rest = self.monic(f);
        let x = vec![0u64, 1];
        let mut h = x.clone();
        let pe = BigUint::from(self.p);
        let mut d = 0;
        while rest.len() > 1 {
            d += 1;
            if 2 * d > rest.len() - 1 {
                out.push((rest.len() - 1, rest));
                break;
            }
            h = self.pow_mod(&h, &pe, &rest);
            let g = self.gcd(&self.sub(&h, &x), &rest);
            if g.len() > 1 {
                rest = self.div_rem(&rest, &g).0;
                h = self.rem(&h, &rest);
                out.push((d, g));
            }
        }
        out
    }

    fn equal_degree<G: Rng>(&self, f: &[u64], d: usize, rng: &mut G, out: &mut Vec<FpPoly>) {
        let n = f.len() - 1;
        if n == d {
            out.push(f.to_vec());
            return;
        }
        let e = (BigUint::from(self.p).pow(d as u32) - 1u32) / 2u32;
        loop {
            let a: FpPoly = Self::trim((0..n).map(|_| rng.gen_range(0..self.p)).collect());
            if a.len() < 2 {
                continue;
            }
            let b = self.sub(&self.pow_mod(&a, &e, f), &[1]);
            let g = self.gcd(&b, f);
            if g.len() > 1 && g.len() < f.len() {
                let h = self.div_rem(f, &g).0;
                self.equal_degree(&g, d, rng, out);
                self.equal_degree(&self.monic(&h), d, rng, out);
                return;
            }
        }
    }
}
