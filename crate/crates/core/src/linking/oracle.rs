//! Exhaustive checks on finite linking forms over `Z_(p)`.
//!
//! Elements of `T = ⊕ Z/p^{a_i}` are indexed in mixed radix; subgroups are
//! bitsets over the element indices.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::form::{IntLinkingForm, RingTag};
use crate::error::WittError;

pub const DEFAULT_MAX_SIZE: usize = 6561;

/// A finite linking form with values stored as numerators over `p^top`.
#[derive(Clone, Debug)]
pub struct FiniteForm {
    p: u64,
    orders: Vec<u64>,
    strides: Vec<usize>,
    modulus: u64,
    num: Vec<Vec<u64>>,
    size: usize,
    /// Mixed-radix digits of every element, `size * rank`.
    digits: Vec<u16>,
    /// `c(y)` with `λ(x, y) = Σ x_i c(y)_i`, for every `y`, `size * rank`.
    funcs: Vec<u64>,
    /// `λ(x, x)` for every `x`.
    self_pairs: Vec<u64>,
}

/// A subgroup, as its sorted element indices and a generating set in coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    pub elements: Vec<usize>,
    pub generators: Vec<Vec<u64>>,
}

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
    fn disjoint_except_zero(&self, o: &Bits) -> bool {
        // element 0 is in every subgroup
        self.0.iter().zip(&o.0).map(|(a, b)| (a & b).count_ones()).sum::<u32>() == 1
    }
}

/// A node of the lagrangian search: an isotropic subgroup and its orthogonal complement.
struct Node {
    elems: Vec<usize>,
    gens: Vec<usize>,
    perp: Vec<usize>,
}

impl FiniteForm {
    pub fn from_form(l: &IntLinkingForm, max_size: usize) -> Result<Self, WittError> {
        let RingTag::Zp(p) = l.tag() else {
            return Err(WittError::Precondition("the finite oracle needs a Zp form".into()));
        };
        let orders: Vec<u64> = l
            .invariant_factors()
            .iter()
            .map(|d| d.to_u64().ok_or_else(|| WittError::Unsupported("module too large for the oracle".into())))
            .collect::<Result<_, _>>()?;
        let size = orders.iter().try_fold(1usize, |acc, &d| acc.checked_mul(d as usize));
        let size = match size {
            Some(s) if s <= max_size && s <= u16::MAX as usize => s,
            _ => {
                return Err(WittError::Unsupported(format!(
                    "module of order {} exceeds the oracle bound {max_size}",
                    l.order()
                )))
            }
        };
        let modulus = orders.iter().copied().max().unwrap_or(1);
        let m = BigInt::from(modulus);
        let r = orders.len();
        let num = (0..r)
            .map(|i| (0..r).map(|j| l.gram().get(i, j).numerator_over(&m).unwrap().to_u64().unwrap()).collect())
            .collect();
        let mut strides = Vec::with_capacity(r);
        let mut s = 1usize;
        for &d in &orders {
            strides.push(s);
            s *= d as usize;
        }
        let mut digits = Vec::with_capacity(size * r);
        for x in 0..size {
            for (i, &d) in orders.iter().enumerate() {
                digits.push(((x / strides[i]) as u64 % d) as u16);
            }
        }
        let mut f = FiniteForm { p, orders, strides, modulus, num, size, digits, funcs: vec![], self_pairs: vec![] };
        f.funcs = (0..size).flat_map(|y| f.compute_functional(y)).collect();
        f.self_pairs = (0..size).map(|x| f.apply(x, f.functional(x))).collect();
        Ok(f)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    fn digits_of(&self, x: usize) -> &[u16] {
        let r = self.orders.len();
        &self.digits[x * r..(x + 1) * r]
    }

    pub fn decode(&self, idx: usize) -> Vec<u64> {
        self.digits_of(idx).iter().map(|&c| c as u64).collect()
    }

    pub fn encode(&self, v: &[u64]) -> usize {
        v.iter().zip(&self.orders).zip(&self.strides).map(|((c, d), s)| (c % d) as usize * s).sum()
    }

    fn add(&self, x: usize, y: usize) -> usize {
        let (a, b) = (self.digits_of(x), self.digits_of(y));
        let mut idx = 0;
        for i in 0..a.len() {
            let d = self.orders[i] as u32;
            idx += ((a[i] as u32 + b[i] as u32) % d) as usize * self.strides[i];
        }
        idx
    }

    fn scale(&self, x: usize, k: u64) -> usize {
        let a = self.digits_of(x);
        (0..a.len()).map(|i| (a[i] as u64 * k % self.orders[i]) as usize * self.strides[i]).sum()
    }

    fn functional(&self, y: usize) -> &[u64] {
        let r = self.orders.len();
        &self.funcs[y * r..(y + 1) * r]
    }

    /// Coefficients `c` with `λ(x, y) = Σ x_i c_i`.
    fn compute_functional(&self, y: usize) -> Vec<u64> {
        let b = self.digits_of(y);
        let m = self.modulus;
        (0..b.len()).map(|i| (0..b.len()).map(|j| b[j] as u64 * self.num[i][j] % m).sum::<u64>() % m).collect()
    }

    fn apply(&self, x: usize, c: &[u64]) -> u64 {
        let a = self.digits_of(x);
        a.iter().zip(c).map(|(&u, &v)| u as u64 * v).sum::<u64>() % self.modulus
    }

    /// `λ(x, y)` as a numerator over `p^top`.
    pub fn pair(&self, x: usize, y: usize) -> u64 {
        self.apply(x, self.functional(y))
    }

    /// Adjoint bijectivity by brute force: no nonzero element pairs trivially with everything.
    pub fn is_nonsingular(&self) -> bool {
        (1..self.size).all(|x| (0..self.size).any(|y| self.apply(x, self.functional(y)) != 0))
    }

    fn multiples(&self, x: usize) -> Vec<usize> {
        let mut out = vec![0usize];
        let mut m = x;
        while m != 0 {
            out.push(m);
            m = self.add(m, x);
        }
        out
    }

    /// The subgroup generated by a subgroup `elems` and `x`.
    fn closure(&self, elems: &[usize], x: usize) -> Vec<usize> {
        let multiples = self.multiples(x);
        let mut seen = Bits::new(self.size);
        let mut out = Vec::with_capacity(elems.len() * multiples.len());
        for &e in elems {
            for &k in &multiples {
                let s = self.add(e, k);
                if !seen.get(s) {
                    seen.set(s);
                    out.push(s);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// All isotropic subgroups `N` with `|N|^2 = |T|`, in canonical order.
    ///
    /// Depth-first over isotropic subgroups. From a node `N`, the element `x`
    /// of `N^⊥` is skipped once some earlier `x'` had `x ∈ N + k x'` with
    /// `p ∤ k`, since then `N + <x> = N + <x'>`.
    pub fn lagrangians(&self) -> Vec<Subgroup> {
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut stack = vec![Node { elems: vec![0], gens: vec![], perp: (0..self.size).collect() }];
        let mut out = Vec::new();
        seen.insert(vec![0]);
        while let Some(node) = stack.pop() {
            let n = node.elems.len();
            if n * n == self.size {
                out.push(Subgroup {
                    generators: node.gens.iter().map(|&g| self.decode(g)).collect(),
                    elements: node.elems,
                });
                continue;
            }
            let mut covered = Bits::new(self.size);
            for &e in &node.elems {
                covered.set(e);
            }
            for &x in &node.perp {
                if covered.get(x) {
                    continue;
                }
                if self.self_pairs[x] != 0 {
                    continue;
                }
                let cx = self.functional(x);
                let next = self.closure(&node.elems, x);
                let ord = (next.len() / n) as u64;
                for k in (1..ord).filter(|k| k % self.p != 0) {
                    let kx = self.scale(x, k);
                    for &e in &node.elems {
                        covered.set(self.add(e, kx));
                    }
                }
                if next.len() * next.len() > self.size || !seen.insert(next.clone()) {
                    continue;
                }
                let perp: Vec<usize> = node.perp.iter().copied().filter(|&y| self.apply(y, cx) == 0).collect();
                let mut gens = node.gens.clone();
                gens.push(x);
                stack.push(Node { elems: next, gens, perp });
            }
        }
        out.sort_by(|a, b| a.elements.cmp(&b.elements));
        out
    }

    pub fn metabolic_witness(&self) -> Option<Subgroup> {
        self.lagrangians().into_iter().next()
    }

    pub fn hyperbolic_witness(&self) -> Option<(Subgroup, Subgroup)> {
        let lags = self.lagrangians();
        let bits: Vec<Bits> = lags
            .iter()
            .map(|l| {
                let mut b = Bits::new(self.size);
                for &e in &l.elements {
                    b.set(e);
                }
                b
            })
            .collect();
        for i in 0..lags.len() {
            for j in i + 1..lags.len() {
                if bits[i].disjoint_except_zero(&bits[j]) {
                    return Some((lags[i].clone(), lags[j].clone()));
                }
            }
        }
        if self.size == 1 {
            let zero = Subgroup { elements: vec![0], generators: vec![] };
            return Some((zero.clone(), zero));
        }
        None
    }

    fn order_of(&self, x: usize) -> u64 {
        let v = self.decode(x);
        v.iter().zip(&self.orders).map(|(&c, &d)| if c == 0 { 1 } else { d / gcd(c, d) }).max().unwrap_or(1)
    }

    /// Brute-force isometry test between two finite forms.
    pub fn isometric(&self, other: &FiniteForm) -> bool {
        if self.size != other.size || self.p != other.p {
            return false;
        }
        let mut o1 = self.orders.clone();
        let mut o2 = other.orders.clone();
        o1.sort_unstable();
        o2.sort_unstable();
        if o1 != o2 {
            return false;
        }
        // compare values on the common scale
        let scale_a = o1.last().copied().unwrap_or(1) / self.modulus.max(1);
        let scale_b = o1.last().copied().unwrap_or(1) / other.modulus.max(1);
        let r = self.orders.len();
        let gens: Vec<usize> =
            (0..r).map(|i| self.encode(&(0..r).map(|j| u64::from(i == j)).collect::<Vec<_>>())).collect();
        let mut images = Vec::new();
        self.search_isometry(other, &gens, &mut images, scale_a, scale_b)
    }

    fn search_isometry(&self, other: &FiniteForm, gens: &[usize], images: &mut Vec<usize>, sa: u64, sb: u64) -> bool {
        let k = images.len();
        if k == gens.len() {
            // images generate a subgroup of the right size
            let mut elems = vec![0usize];
            for &y in images.iter() {
                elems = other.closure(&elems, y);
            }
            return elems.len() == other.size;
        }
        let g = gens[k];
        let ord = self.order_of(g);
        for y in 0..other.size {
            if !ord.is_multiple_of(other.order_of(y)) {
                continue;
            }
            let ok = (0..=k).all(|i| {
                let (gi, yi) = if i == k { (g, y) } else { (gens[i], images[i]) };
                self.pair(g, gi) * sa == other.pair(y, yi) * sb && self.pair(gi, g) * sa == other.pair(yi, y) * sb
            });
            if !ok {
                continue;
            }
            images.push(y);
            if self.search_isometry(other, gens, images, sa, sb) {
                return true;
            }
            images.pop();
        }
        false
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn oracle_is_metabolic(l: &IntLinkingForm, max_size: usize) -> Result<Option<Subgroup>, WittError> {
    Ok(FiniteForm::from_form(l, max_size)?.metabolic_witness())
}

pub fn oracle_is_hyperbolic(l: &IntLinkingForm, max_size: usize) -> Result<Option<(Subgroup, Subgroup)>, WittError> {
    Ok(FiniteForm::from_form(l, max_size)?.hyperbolic_witness())
}

pub fn oracle_isometric(a: &IntLinkingForm, b: &IntLinkingForm, max_size: usize) -> Result<bool, WittError> {
    Ok(FiniteForm::from_form(a, max_size)?.isometric(&FiniteForm::from_form(b, max_size)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;
    use crate::linking::LinkingForm;

    fn zp(p: u64, d: &[i64], gram: &[&[&str]]) -> IntLinkingForm {
        let g =
            Matrix::from_rows(gram.iter().map(|r| r.iter().map(|s| s.parse().unwrap()).collect()).collect()).unwrap();
        LinkingForm::new(RingTag::Zp(p), BigInt::from(1), d.iter().map(|&x| BigInt::from(x)).collect(), g).unwrap()
    }

    #[test]
    fn z9_is_metabolic_not_hyperbolic() {
        let l = zp(3, &[9], &[&["1/9"]]);
        let w = oracle_is_metabolic(&l, DEFAULT_MAX_SIZE).unwrap().unwrap();
        assert_eq!(w.elements, vec![0, 3, 6]);
        assert!(oracle_is_hyperbolic(&l, DEFAULT_MAX_SIZE).unwrap().is_none());
    }

    #[test]
    fn z3_is_not_metabolic() {
        let l = zp(3, &[3], &[&["1/3"]]);
        assert!(oracle_is_metabolic(&l, DEFAULT_MAX_SIZE).unwrap().is_none());
    }

    #[test]
    fn plus_minus_is_hyperbolic() {
        let l = zp(3, &[3, 3], &[&["1/3", "0"], &["0", "-1/3"]]);
        let (a, b) = oracle_is_hyperbolic(&l, DEFAULT_MAX_SIZE).unwrap().unwrap();
        assert_eq!(a.elements.len(), 3);
        assert_eq!(b.elements.len(), 3);
        let same = zp(3, &[3, 3], &[&["1/3", "0"], &["0", "1/3"]]);
        assert!(oracle_is_hyperbolic(&same, DEFAULT_MAX_SIZE).unwrap().is_none());
    }

    #[test]
    fn brute_force_nonsingularity_matches() {
        for (g, expect) in [("1/9", true), ("3/9", false)] {
            let l = zp(3, &[9], &[&[g]]);
            let f = FiniteForm::from_form(&l, 100).unwrap();
            assert_eq!(f.is_nonsingular(), expect);
            assert_eq!(l.check_nonsingular(), expect);
        }
    }

    #[test]
    fn isometry_search() {
        let a = zp(3, &[3], &[&["1/3"]]);
        let b = zp(3, &[3], &[&["2/3"]]);
        let a2 = zp(3, &[3, 3], &[&["1/3", "0"], &["0", "1/3"]]);
        let b2 = zp(3, &[3, 3], &[&["2/3", "0"], &["0", "2/3"]]);
        assert!(!oracle_isometric(&a, &b, 100).unwrap());
        assert!(oracle_isometric(&a2, &b2, 100).unwrap());
        let big = zp(3, &[81, 81], &[&["1/81", "0"], &["0", "1/81"]]);
        assert!(FiniteForm::from_form(&big, 6561).is_ok());
        let huge = zp(3, &[81, 243], &[&["1/81", "0"], &["0", "1/243"]]);
        assert!(FiniteForm::from_form(&huge, 6561).is_err());
    }
}
