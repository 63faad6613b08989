//! Residue forms over `Q[z]/(p)` for symmetric primes `p`: symmetry
//! normalization and signatures at the unit-circle places.

use super::diag::diagonalize;
use crate::error::WittError;
use crate::linking::{ResidueForm, SymmetryUnit};
use crate::ring::{rat, sign_at_place, unit_circle_places, LaurentPoly, Pid, Rational, Ring, UnitCirclePlace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignatureRecord {
    pub place: UnitCirclePlace,
    pub value: i64,
}

fn trivial_involution(form: &ResidueForm<LaurentPoly>) -> bool {
    form.p().span() == 1
}

/// `z p'(z)`, a unit modulo the squarefree prime `p`.
fn log_derivative(p: &LaurentPoly) -> LaurentPoly {
    LaurentPoly::from_terms(p.terms().map(|(k, c)| (k, c * rat(k))))
}

fn zeta_pow(k: i64) -> LaurentPoly {
    LaurentPoly::monomial(rat(1), k)
}

/// Rescales a residue form to symmetry `±1`.
///
/// Over `Q[z]/(p)` with nontrivial involution the form is read as `b_l` of a
/// linking form with symmetry `ε = v u_p^{-l}`. The multiplier is
/// `± (z p'(z))^{-l} q`, where `q` is the principal square root of `ε`'s
/// `z`-power, and the sign is `(-1)^{l + n/2}` with `n = δ - l - δ'`. At a
/// unit-circle place the result is then a real multiple of the leading
/// coefficient of `λ(e^{iθ})` in `(θ - θ_0)`, up to a power of `i`. When
/// `p = z ± 1` the multiplier is `u_p^{-⌊l/2⌋}`.
pub(crate) fn reduce_laurent(form: &ResidueForm<LaurentPoly>) -> Result<ResidueForm<LaurentPoly>, WittError> {
    let l = form.level as i64;
    if trivial_involution(form) {
        let u = form.prime.unit.clone();
        let w = form.inv(&u.pow((l / 2) as u32)).expect("unit");
        let v = form.symmetry_elem();
        let sym = if v.is_one() { SymmetryUnit::PLUS } else { SymmetryUnit::MINUS };
        return Ok(form.scaled(&w, sym));
    }
    let u = SymmetryUnit::of(&form.prime.unit).expect("prime unit is a signed monomial");
    let eps = form.symmetry.mul(SymmetryUnit { sign: u.pow(form.level).sign, zeta_power: -u.zeta_power * l });
    let k = eps.zeta_power;
    let delta = i64::from(eps.sign < 0);
    let q =
        if k % 2 == 0 { zeta_pow(-k / 2) } else { LaurentPoly::one().add(&zeta_pow(-1)).mul(&zeta_pow(-(k - 1) / 2)) };
    let delta2 = (delta + l).rem_euclid(2);
    let n = delta - l - delta2;
    // odd levels are negated so that a level-1 signature is half the jump of
    // the Tristram-Levine signature as θ increases through the place
    let sigma = if (n / 2 + l).rem_euclid(2) == 0 { 1 } else { -1 };
    let dinv = form.inv(&log_derivative(form.p())).expect("p is squarefree");
    let w = form.reduce(&dinv.pow(form.level).mul(&q).scale(&rat(sigma)));
    let sym = if delta2 == 0 { SymmetryUnit::PLUS } else { SymmetryUnit::MINUS };
    let out = form.scaled(&w, sym);
    if !out.check_symmetric() {
        return Err(WittError::Internal(format!("symmetry reduction failed for {form:?}")));
    }
    Ok(out)
}

/// `(x + conj x) / 2`, the self-conjugate lift of an involution-fixed residue.
fn symmetrize(x: &LaurentPoly) -> LaurentPoly {
    x.add(&x.involute()).scale(&Rational::new(1.into(), 2.into()))
}

/// Signatures at the unit-circle places of a `±1`-symmetric form.
///
/// A `-1`-symmetric form is first multiplied by `z - z^-1`, which is `i`
/// times a positive real at every place `e^{iθ}`, `0 < θ < π`. Over
/// `Q = Q[z]/(z ± 1)` a skew form has no places with nonzero signature.
pub fn signatures(form: &ResidueForm<LaurentPoly>) -> Result<Vec<SignatureRecord>, WittError> {
    signatures_with_precision(form, DEFAULT_PLACE_BITS)
}

/// Default width `2^-10` of the trace intervals naming places.
pub const DEFAULT_PLACE_BITS: u32 = 10;

/// [`signatures`] with place intervals of width at most `2^-place_bits`.
pub fn signatures_with_precision(
    form: &ResidueForm<LaurentPoly>,
    place_bits: u32,
) -> Result<Vec<SignatureRecord>, WittError> {
    let factor =
        form.prime.factor.as_ref().ok_or_else(|| WittError::Internal("residue form without a prime record".into()))?;
    let places: Vec<UnitCirclePlace> = unit_circle_places(factor)?.iter().map(|p| p.refined(place_bits)).collect();
    let v = form.symmetry_elem();
    let plus = if v.is_one() {
        form.clone()
    } else if form.reduce(&v.neg()).is_one() {
        if trivial_involution(form) {
            if !form.is_nondegenerate() {
                return Err(WittError::Precondition("degenerate skew form".into()));
            }
            return Ok(places.into_iter().map(|place| SignatureRecord { place, value: 0 }).collect());
        }
        let t = LaurentPoly::z().sub(&zeta_pow(-1));
        form.scaled(&form.reduce(&t), SymmetryUnit::PLUS)
    } else {
        return Err(WittError::Precondition(format!("signatures need symmetry +-1, got {}", form.symmetry)));
    };
    let diag = diagonalize(&plus)?;
    let lifts: Vec<LaurentPoly> = diag.iter().map(symmetrize).collect();
    places
        .into_iter()
        .map(|place| {
            let mut value = 0i64;
            for d in &lifts {
                value += i64::from(sign_at_place(d, &place)?);
            }
            Ok(SignatureRecord { place, value })
        })
        .collect()
}
