//! Double Witt classes: the multisignature, its group law, the forgetful
//! map to the Witt group and the devissage computation of the latter.

use std::cmp::Ordering;
use std::fmt;

use super::fp::WittClassFp;
use super::{WittRing, DEFAULT_PLACE_BITS};
use crate::error::WittError;
use crate::linalg::Matrix;
use crate::linking::{auxiliary_form, primary_decompose, FracMod, LinkRing, LinkingForm, PrimeData, RingTag};
use crate::ring::{format_rational, valuation, LaurentPoly, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaceSignature {
    pub interval: (Rational, Rational),
    pub sigma: i64,
}

/// Invariant of a residue-field Witt class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Invariant {
    Fp(WittClassFp),
    /// Signatures at the unit-circle places and the rank parity; for `Q`
    /// and number fields these do not determine the class.
    Signatures {
        places: Vec<PlaceSignature>,
        rank_parity: u8,
    },
}

impl Invariant {
    pub fn is_zero(&self) -> bool {
        match self {
            Invariant::Fp(c) => c.is_zero(),
            Invariant::Signatures { places, rank_parity } => *rank_parity == 0 && places.iter().all(|s| s.sigma == 0),
        }
    }

    /// Nonzero signature or nonzero `F_p` class; rank parity alone is not counted.
    pub fn has_signature_or_fp_obstruction(&self) -> bool {
        match self {
            Invariant::Fp(c) => !c.is_zero(),
            Invariant::Signatures { places, .. } => places.iter().any(|s| s.sigma != 0),
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self, WittError> {
        match (self, o) {
            (Invariant::Fp(a), Invariant::Fp(b)) if a.p == b.p => Ok(Invariant::Fp(a.add(b))),
            (
                Invariant::Signatures { places: pa, rank_parity: ra },
                Invariant::Signatures { places: pb, rank_parity: rb },
            ) if pa.len() == pb.len() && pa.iter().zip(pb).all(|(x, y)| x.interval == y.interval) => {
                Ok(Invariant::Signatures {
                    places: pa
                        .iter()
                        .zip(pb)
                        .map(|(x, y)| PlaceSignature { interval: x.interval.clone(), sigma: x.sigma + y.sigma })
                        .collect(),
                    rank_parity: ra ^ rb,
                })
            }
            _ => Err(WittError::Precondition("adding invariants of different residue fields".into())),
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            Invariant::Fp(c) => Invariant::Fp(c.neg()),
            Invariant::Signatures { places, rank_parity } => Invariant::Signatures {
                places: places
                    .iter()
                    .map(|s| PlaceSignature { interval: s.interval.clone(), sigma: -s.sigma })
                    .collect(),
                rank_parity: *rank_parity,
            },
        }
    }
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Invariant::Fp(c) => write!(f, "W(F_{}) code {:?}", c.p, c.code()),
            Invariant::Signatures { places, rank_parity } => {
                let s: Vec<String> = places
                    .iter()
                    .map(|p| {
                        format!(
                            "{} on [{}, {}]",
                            p.sigma,
                            format_rational(&p.interval.0),
                            format_rational(&p.interval.1)
                        )
                    })
                    .collect();
                write!(f, "signatures [{}], rank parity {rank_parity}", s.join("; "))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DwEntry {
    pub prime: String,
    pub l: u32,
    pub invariant: Invariant,
}

/// The double Witt multisignature: nonzero entries indexed by `(prime, l)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DWClass {
    pub ring: RingTag,
    /// False when some residue field was only probed by signatures and rank.
    pub complete: bool,
    pub entries: Vec<DwEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittEntry {
    pub prime: String,
    pub invariant: Invariant,
}

/// A Witt class, one entry per prime with nonzero invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittClass {
    pub ring: RingTag,
    pub complete: bool,
    pub entries: Vec<WittEntry>,
}

impl WittClass {
    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entry(&self, prime: &str) -> Option<&Invariant> {
        self.entries.iter().find(|e| e.prime == prime).map(|e| &e.invariant)
    }
}

fn prime_key(ring: RingTag, label: &str) -> (u64, String) {
    if ring.is_laurent() {
        let deg = label.parse::<LaurentPoly>().map(|p| p.span()).unwrap_or(u64::MAX);
        (deg, label.to_string())
    } else {
        (label.len() as u64, label.to_string())
    }
}

fn entry_cmp(ring: RingTag, a: (&str, u32), b: (&str, u32)) -> Ordering {
    prime_key(ring, a.0).cmp(&prime_key(ring, b.0)).then(a.1.cmp(&b.1))
}

impl DWClass {
    pub fn zero(ring: RingTag) -> Self {
        Self { ring, complete: true, entries: vec![] }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entry(&self, prime: &str, l: u32) -> Option<&Invariant> {
        self.entries.iter().find(|e| e.prime == prime && e.l == l).map(|e| &e.invariant)
    }

    /// Puts entries in canonical order and drops zero ones.
    pub fn normalized(mut self) -> Self {
        let ring = self.ring;
        self.entries.retain(|e| !e.invariant.is_zero());
        self.entries.sort_by(|a, b| entry_cmp(ring, (&a.prime, a.l), (&b.prime, b.l)));
        self
    }

    /// Multiple `n * self` for `n >= 0`.
    pub fn times(&self, n: u32) -> Result<Self, WittError> {
        (0..n).try_fold(DWClass { complete: self.complete, ..DWClass::zero(self.ring) }, |acc, _| dw_add(&acc, self))
    }
}

pub fn dw_add(a: &DWClass, b: &DWClass) -> Result<DWClass, WittError> {
    if a.ring != b.ring {
        return Err(WittError::Precondition(format!("adding classes over {} and {}", a.ring, b.ring)));
    }
    let mut entries = a.entries.clone();
    for e in &b.entries {
        match entries.iter_mut().find(|x| x.prime == e.prime && x.l == e.l) {
            Some(x) => x.invariant = x.invariant.add(&e.invariant)?,
            None => entries.push(e.clone()),
        }
    }
    Ok(DWClass { ring: a.ring, complete: a.complete && b.complete, entries }.normalized())
}

pub fn dw_neg(c: &DWClass) -> DWClass {
    DWClass {
        ring: c.ring,
        complete: c.complete,
        entries: c
            .entries
            .iter()
            .map(|e| DwEntry { prime: e.prime.clone(), l: e.l, invariant: e.invariant.neg() })
            .collect(),
    }
}

fn levels<R: LinkRing>(l: &LinkingForm<R>, p: &R) -> Vec<u32> {
    let mut a: Vec<u32> = l.invariant_factors().iter().map(|d| valuation(d, p)).collect();
    a.sort_unstable();
    a.dedup();
    a
}

fn check_input<R: LinkRing>(l: &LinkingForm<R>) -> Result<(), WittError> {
    if !l.check_symmetric() {
        return Err(WittError::Precondition(format!("form is not {}-symmetric", l.epsilon())));
    }
    if !l.check_nonsingular() {
        return Err(WittError::Precondition("form is singular".into()));
    }
    Ok(())
}

/// Invariant of the level-`level` auxiliary form, with its completeness.
fn level_invariant<R: WittRing>(
    l: &LinkingForm<R>,
    prime: &PrimeData<R>,
    level: u32,
    place_bits: u32,
) -> Result<Option<(Invariant, bool)>, WittError> {
    let b = auxiliary_form(l, prime, level)?;
    if b.rank() == 0 {
        return Ok(None);
    }
    let b = R::unit_symmetry_reduce(&b)?;
    R::residue_invariant(&b, place_bits).map(Some)
}

/// The double Witt multisignature `(p, l) -> [b_l(λ_p)]`.
pub fn multisignature<R: WittRing>(l: &LinkingForm<R>) -> Result<DWClass, WittError> {
    multisignature_with_precision(l, DEFAULT_PLACE_BITS)
}

/// [`multisignature`] with place intervals of width at most `2^-place_bits`.
pub fn multisignature_with_precision<R: WittRing>(l: &LinkingForm<R>, place_bits: u32) -> Result<DWClass, WittError> {
    check_input(l)?;
    let dec = primary_decompose(l)?;
    let mut out = DWClass::zero(l.tag());
    for part in &dec.symmetric {
        for level in levels(&part.form, &part.prime.p) {
            if let Some((inv, complete)) = level_invariant(&part.form, &part.prime, level, place_bits)? {
                out.complete &= complete;
                out.entries.push(DwEntry { prime: part.prime.label(), l: level, invariant: inv });
            }
        }
    }
    Ok(out.normalized())
}

/// Sum over odd `l` of the entries at each prime.
pub fn forgetful(c: &DWClass) -> Result<WittClass, WittError> {
    let mut entries: Vec<WittEntry> = Vec::new();
    for e in c.entries.iter().filter(|e| e.l % 2 == 1) {
        match entries.iter_mut().find(|x| x.prime == e.prime) {
            Some(x) => x.invariant = x.invariant.add(&e.invariant)?,
            None => entries.push(WittEntry { prime: e.prime.clone(), invariant: e.invariant.clone() }),
        }
    }
    entries.retain(|e| !e.invariant.is_zero());
    Ok(WittClass { ring: c.ring, complete: c.complete, entries })
}

/// One devissage step for a `p`-primary form of exponent `d >= 2`: the form
/// induced on `L^⊥ / L` for `L = p^k T`, `k = ⌈d/2⌉`, where `L^⊥ = T[p^k]`.
fn devissage_step<R: LinkRing>(t: &LinkingForm<R>, p: &R, d: u32) -> Result<LinkingForm<R>, WittError> {
    let k = d.div_ceil(2);
    let a: Vec<u32> = t.invariant_factors().iter().map(|x| valuation(x, p)).collect();
    let s: Vec<u32> = a.iter().map(|&ai| ai.saturating_sub(k)).collect();
    let orders: Vec<R> = a.iter().map(|&ai| p.pow(if ai <= k { ai } else { 2 * k - ai })).collect();
    let ps: Vec<R> = s.iter().map(|&si| p.pow(si)).collect();
    let g = t.gram();
    let gram: Matrix<FracMod<R>> =
        Matrix::from_fn(a.len(), a.len(), |i, j| g.get(i, j).scale(&ps[i].mul(&ps[j].involute())));
    LinkingForm::new(t.tag(), t.epsilon().clone(), orders, gram)
}

/// The Witt class of `l` computed by devissage: each `p`-primary part is
/// reduced through `L^⊥ / L` until it is killed by `p`, then read over the
/// residue field.
pub fn witt_class_via_devissage<R: WittRing>(l: &LinkingForm<R>) -> Result<WittClass, WittError> {
    witt_class_via_devissage_with_precision(l, DEFAULT_PLACE_BITS)
}

/// [`witt_class_via_devissage`] with place intervals of width at most `2^-place_bits`.
pub fn witt_class_via_devissage_with_precision<R: WittRing>(
    l: &LinkingForm<R>,
    place_bits: u32,
) -> Result<WittClass, WittError> {
    check_input(l)?;
    let dec = primary_decompose(l)?;
    let mut out = WittClass { ring: l.tag(), complete: true, entries: vec![] };
    for part in &dec.symmetric {
        let p = &part.prime.p;
        let mut t = part.form.clone();
        loop {
            let d = levels(&t, p).last().copied().unwrap_or(0);
            if d <= 1 {
                break;
            }
            t = devissage_step(&t, p, d)?;
        }
        if t.rank() == 0 {
            continue;
        }
        if let Some((inv, complete)) = level_invariant(&t, &part.prime, 1, place_bits)? {
            out.complete &= complete;
            if !inv.is_zero() {
                out.entries.push(WittEntry { prime: part.prime.label(), invariant: inv });
            }
        }
    }
    Ok(out)
}
