//! Witt invariants over residue fields and the double Witt multisignature.

mod diag;
mod dw;
mod fp;
mod signature;

use num_bigint::BigInt;

pub use diag::diagonalize;
pub use dw::{
    dw_add, dw_neg, forgetful, multisignature, multisignature_with_precision, witt_class_via_devissage,
    witt_class_via_devissage_with_precision, DWClass, DwEntry, Invariant, PlaceSignature, WittClass, WittEntry,
};
pub use fp::{witt_class_fp, WittClassFp};
pub use signature::{signatures, signatures_with_precision, SignatureRecord, DEFAULT_PLACE_BITS};

use crate::error::WittError;
use crate::linking::{LinkRing, ResidueForm, SymmetryUnit};
use crate::ring::{LaurentPoly, Ring};

/// Coefficient rings whose residue forms we can classify.
pub trait WittRing: LinkRing {
    /// Rescales to symmetry `±1` by a documented deterministic unit.
    fn unit_symmetry_reduce(form: &ResidueForm<Self>) -> Result<ResidueForm<Self>, WittError>;
    /// Invariant of a `±1`-symmetric form, and whether it determines the class.
    /// Place intervals are refined to width at most `2^-place_bits`.
    fn residue_invariant(form: &ResidueForm<Self>, place_bits: u32) -> Result<(Invariant, bool), WittError>;
}

impl WittRing for BigInt {
    fn unit_symmetry_reduce(form: &ResidueForm<Self>) -> Result<ResidueForm<Self>, WittError> {
        let v = form.symmetry_elem();
        let sym = if v.is_one() { SymmetryUnit::PLUS } else { SymmetryUnit::MINUS };
        Ok(ResidueForm { symmetry: sym, ..form.clone() })
    }

    fn residue_invariant(form: &ResidueForm<Self>, _place_bits: u32) -> Result<(Invariant, bool), WittError> {
        Ok((Invariant::Fp(witt_class_fp(form)?), true))
    }
}

impl WittRing for LaurentPoly {
    fn unit_symmetry_reduce(form: &ResidueForm<Self>) -> Result<ResidueForm<Self>, WittError> {
        signature::reduce_laurent(form)
    }

    fn residue_invariant(form: &ResidueForm<Self>, place_bits: u32) -> Result<(Invariant, bool), WittError> {
        let sigs = signatures_with_precision(form, place_bits)?;
        let skew_over_q = form.p().span() == 1 && !form.symmetry_elem().is_one();
        let rank_parity = if skew_over_q { 0 } else { (form.rank() % 2) as u8 };
        let places =
            sigs.into_iter().map(|s| PlaceSignature { interval: s.place.interval.clone(), sigma: s.value }).collect();
        Ok((Invariant::Signatures { places, rank_parity }, skew_over_q || form.rank() == 0))
    }
}

/// See [`WittRing::unit_symmetry_reduce`].
pub fn unit_symmetry_reduce<R: WittRing>(form: &ResidueForm<R>) -> Result<ResidueForm<R>, WittError> {
    R::unit_symmetry_reduce(form)
}

#[cfg(test)]
mod tests;
