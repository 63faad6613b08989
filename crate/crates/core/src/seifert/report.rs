use std::fmt;

use super::form::{alexander_polynomial, covering, SeifertForm};
use crate::error::WittError;
use crate::linalg::p_valuations;
use crate::linking::{LinkRing, PrimeData};
use crate::ring::{unit_circle_places, LaurentPoly};
use crate::witt::{forgetful, multisignature_with_precision, DWClass, Invariant, WittClass, DEFAULT_PLACE_BITS};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Obstructed,
    NoObstructionFound,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Obstructed => "OBSTRUCTED",
            Verdict::NoObstructionFound => "NO_OBSTRUCTION_FOUND",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "OBSTRUCTED" => Some(Verdict::Obstructed),
            "NO_OBSTRUCTION_FOUND" => Some(Verdict::NoObstructionFound),
            _ => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeRow {
    pub prime: String,
    pub symmetric: bool,
    /// Multiplicity in the Alexander polynomial.
    pub multiplicity: u32,
    /// Exponents of the prime in the invariant factors, ascending.
    pub l_profile: Vec<u32>,
    /// Number of unit-circle places (symmetric primes only).
    pub places: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub epsilon: i8,
    pub alexander: LaurentPoly,
    pub primes: Vec<PrimeRow>,
    pub dw: DWClass,
    pub witt: WittClass,
    pub verdict: Verdict,
    /// Entries `(prime, l)` whose residue form has odd rank. Over number
    /// fields this is a nonzero Witt invariant that the verdict does not use.
    pub odd_rank: Vec<(String, u32)>,
}

fn row(p: &PrimeData<LaurentPoly>, m: u32, d: &[LaurentPoly]) -> Result<PrimeRow, WittError> {
    let places = match (&p.factor, p.symmetric) {
        (Some(f), true) => unit_circle_places(f)?.len(),
        _ => 0,
    };
    Ok(PrimeRow { prime: p.label(), symmetric: p.symmetric, multiplicity: m, l_profile: p_valuations(d, &p.p), places })
}

/// Covering, multisignature and forgetful image, with a verdict.
///
/// The verdict is `OBSTRUCTED` iff some `F_p` class or some place
/// signature is nonzero.
pub fn doubly_slice_report(f: &SeifertForm) -> Result<Report, WittError> {
    doubly_slice_report_with_precision(f, DEFAULT_PLACE_BITS)
}

/// [`doubly_slice_report`] with place intervals of width at most `2^-place_bits`.
pub fn doubly_slice_report_with_precision(f: &SeifertForm, place_bits: u32) -> Result<Report, WittError> {
    let alexander = alexander_polynomial(f)?;
    let cov = covering(f)?;
    let d = cov.form.invariant_factors();
    let primes = if alexander.span() == 0 {
        vec![]
    } else {
        LaurentPoly::prime_factors(&alexander)?.iter().map(|(p, m)| row(p, *m, d)).collect::<Result<Vec<_>, _>>()?
    };
    let dw = multisignature_with_precision(&cov.form, place_bits)?;
    let witt = forgetful(&dw)?;
    let obstructed = dw.entries.iter().any(|e| e.invariant.has_signature_or_fp_obstruction());
    let odd_rank = dw
        .entries
        .iter()
        .filter(|e| matches!(e.invariant, Invariant::Signatures { rank_parity: 1, .. }))
        .map(|e| (e.prime.clone(), e.l))
        .collect();
    Ok(Report {
        epsilon: f.epsilon(),
        alexander,
        primes,
        dw,
        witt,
        verdict: if obstructed { Verdict::Obstructed } else { Verdict::NoObstructionFound },
        odd_rank,
    })
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Alexander polynomial: {}", self.alexander)?;
        writeln!(f, "primes:")?;
        for r in &self.primes {
            let kind = if r.symmetric { "symmetric" } else { "conjugate pair" };
            writeln!(
                f,
                "  {}  multiplicity {}  {}  l-profile {:?}  unit-circle places {}",
                r.prime, r.multiplicity, kind, r.l_profile, r.places
            )?;
        }
        writeln!(f, "double Witt class{}:", if self.dw.complete { "" } else { " (signatures only)" })?;
        if self.dw.entries.is_empty() {
            writeln!(f, "  0")?;
        }
        for e in &self.dw.entries {
            writeln!(f, "  ({}, l={}): {}", e.prime, e.l, e.invariant)?;
        }
        writeln!(f, "Witt class:")?;
        if self.witt.entries.is_empty() {
            writeln!(f, "  0")?;
        }
        for e in &self.witt.entries {
            writeln!(f, "  {}: {}", e.prime, e.invariant)?;
        }
        for (p, l) in &self.odd_rank {
            writeln!(f, "note: b_{l} at {p} has odd rank (not counted by the verdict)")?;
        }
        write!(f, "verdict: {}", self.verdict)
    }
}
