use super::coeff::{LinkRing, PrimeData};
use super::form::{LinkingForm, RingTag};
use super::residue::{ResidueForm, SymmetryUnit};
use crate::error::WittError;
use crate::linalg::Matrix;
use crate::ring::{inv_mod, valuation};

/// The `p`-primary part of a form at a symmetric prime.
#[derive(Clone)]
pub struct PrimaryPart<R> {
    pub prime: PrimeData<R>,
    pub form: LinkingForm<R>,
}

#[derive(Clone)]
pub struct PrimaryDecomposition<R> {
    /// One nonsingular form per symmetric prime, sorted by prime.
    pub symmetric: Vec<PrimaryPart<R>>,
    /// Summands `T_p ⊕ T_p̄` for conjugate pairs; these are hyperbolic.
    pub pairs: Vec<(PrimeData<R>, PrimeData<R>, LinkingForm<R>)>,
}

impl<R: LinkRing> PrimaryDecomposition<R> {
    pub fn part(&self, p: &R) -> Option<&PrimaryPart<R>> {
        self.symmetric.iter().find(|x| &x.prime.p == p)
    }
}

/// Splits a nonsingular form into primary parts.
///
/// For a prime `p` with `p^v || d_r`, the `p`-part is generated by
/// `(d_r / p^v) g_i`, of order `p^{v_p(d_i)}`.
pub fn primary_decompose<R: LinkRing>(l: &LinkingForm<R>) -> Result<PrimaryDecomposition<R>, WittError> {
    let mut out = PrimaryDecomposition { symmetric: vec![], pairs: vec![] };
    let Some(top) = l.invariant_factors().last() else {
        return Ok(out);
    };
    let primes = R::prime_factors(top)?;
    let mut parts = Vec::new();
    for (prime, _) in &primes {
        if let RingTag::Zp(q) = l.tag() {
            if prime.p != R::from_int(q as i64) {
                return Err(WittError::Internal(format!("prime {} in a {} form", prime.p, l.tag())));
            }
        }
        if l.tag() == RingTag::Z && prime.p == R::from_int(2) {
            return Err(WittError::Unsupported("the 2-primary part of a form over Z".into()));
        }
        parts.push((prime.clone(), primary_part(l, &prime.p)));
    }
    let mut used = vec![false; parts.len()];
    for i in 0..parts.len() {
        if used[i] {
            continue;
        }
        let (prime, form) = &parts[i];
        if prime.symmetric {
            out.symmetric.push(PrimaryPart { prime: prime.clone(), form: form.clone() });
            continue;
        }
        let conj = prime.conjugate.as_ref().expect("conjugate of a non-symmetric prime");
        let j = (i + 1..parts.len())
            .find(|&j| &parts[j].0.p == conj)
            .ok_or_else(|| WittError::Precondition(format!("prime {} occurs without its conjugate {conj}", prime.p)))?;
        used[j] = true;
        let pair = form.direct_sum(&parts[j].1)?;
        out.pairs.push((prime.clone(), parts[j].0.clone(), pair));
    }
    Ok(out)
}

fn primary_part<R: LinkRing>(l: &LinkingForm<R>, p: &R) -> LinkingForm<R> {
    let d = l.invariant_factors();
    let r = d.len();
    let top = &d[r - 1];
    let v = valuation(top, p);
    let c = top.exact_div(&p.pow(v)).unwrap();
    let idx: Vec<usize> = (0..r).filter(|&i| valuation(&d[i], p) > 0).collect();
    let gens = Matrix::from_fn(idx.len(), r, |a, j| if j == idx[a] { c.clone() } else { R::zero() });
    let orders = idx.iter().map(|&i| p.pow(valuation(&d[i], p))).collect();
    l.restrict(&gens, orders)
}

/// Exponents `a_i` with `d_i = p^{a_i}` for a `p`-primary form.
fn exponents<R: LinkRing>(l: &LinkingForm<R>, p: &R) -> Result<Vec<u32>, WittError> {
    l.invariant_factors()
        .iter()
        .map(|d| {
            let a = valuation(d, p);
            if d.associated(&p.pow(a)) {
                Ok(a)
            } else {
                Err(WittError::Precondition(format!("invariant factor {d} is not a power of {p}")))
            }
        })
        .collect()
}

/// Orthogonal splitting `T ≅ ⊕ T_l` with `T_l` free over `A/p^l`.
///
/// The top block is split off by projecting the remaining generators onto
/// its orthogonal complement, then the procedure repeats.
pub fn block_split<R: LinkRing>(l: &LinkingForm<R>, p: &R) -> Result<Vec<(u32, LinkingForm<R>)>, WittError> {
    let mut blocks = Vec::new();
    let mut cur = l.clone();
    while cur.rank() > 0 {
        let a = exponents(&cur, p)?;
        let d = *a.iter().max().unwrap();
        let top: Vec<usize> = (0..a.len()).filter(|&i| a[i] == d).collect();
        let rest: Vec<usize> = (0..a.len()).filter(|&i| a[i] < d).collect();
        let pd = p.pow(d);
        let g = cur.gram();
        let num = |i: usize, j: usize| g.get(i, j).numerator_over(&pd).expect("p-primary form");
        let n_top = Matrix::from_fn(top.len(), top.len(), |i, j| num(top[i], top[j]));
        let (adj, det) =
            n_top.adjugate_inverse().map_err(|_| WittError::Precondition("block_split: singular top block".into()))?;
        let det_inv = inv_mod(&det, &pd)
            .ok_or_else(|| WittError::Precondition("block_split: top block is singular mod p".into()))?;
        let n_inv = adj.map(|x| x.mul(&det_inv).reduce(&pd));
        let r = cur.rank();
        let top_gens = Matrix::from_fn(top.len(), r, |a, j| if j == top[a] { R::one() } else { R::zero() });
        let top_form = cur.restrict(&top_gens, top.iter().map(|_| pd.clone()).collect());
        let mut rest_gens = Matrix::zeros(rest.len(), r);
        for (row, &k) in rest.iter().enumerate() {
            rest_gens.set(row, k, R::one());
            for (ci, &i) in top.iter().enumerate() {
                let c =
                    (0..top.len()).fold(R::zero(), |acc, j| acc.add(&num(k, top[j]).mul(n_inv.get(j, ci)))).reduce(&pd);
                rest_gens.set(row, i, c.neg());
            }
        }
        let rest_orders = rest.iter().map(|&k| p.pow(a[k])).collect();
        let rest_form = cur.restrict(&rest_gens, rest_orders);
        blocks.push((d, top_form));
        cur = rest_form;
    }
    blocks.reverse();
    Ok(blocks)
}

/// `p^{l-1} λ(x, y)` read in `A/p` through `c/p -> c`, for `x, y` killed by `p^l`.
pub fn auxiliary_pairing<R: LinkRing>(l: &LinkingForm<R>, p: &R, level: u32, x: &[R], y: &[R]) -> R {
    let v = l.pair(x, y).scale(&p.pow(level - 1)).p_local_part(p);
    v.numerator_over(p).expect("value killed by p")
}

/// The `l`-th auxiliary form of a `p`-primary form, on the generators of order `p^l`.
pub fn auxiliary_form<R: LinkRing>(
    l: &LinkingForm<R>,
    prime: &PrimeData<R>,
    level: u32,
) -> Result<ResidueForm<R>, WittError> {
    if level == 0 {
        return Err(WittError::Precondition("auxiliary form level must be positive".into()));
    }
    let p = &prime.p;
    let a = exponents(l, p)?;
    let idx: Vec<usize> = (0..a.len()).filter(|&i| a[i] == level).collect();
    let r = l.rank();
    let unit_vec = |i: usize| -> Vec<R> { (0..r).map(|j| if j == i { R::one() } else { R::zero() }).collect() };
    let gram = Matrix::from_fn(idx.len(), idx.len(), |i, j| {
        auxiliary_pairing(l, p, level, &unit_vec(idx[i]), &unit_vec(idx[j]))
    });
    let u = SymmetryUnit::of(&prime.unit).expect("prime unit is a signed monomial");
    let eps = SymmetryUnit::of(l.epsilon())
        .ok_or_else(|| WittError::Precondition(format!("epsilon {} is not of the form +-z^k", l.epsilon())))?;
    Ok(ResidueForm::new(prime.clone(), level, u.pow(level).mul(eps), gram))
}
