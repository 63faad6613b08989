//! Hermitian forms over the residue field `A/p`.

use std::fmt;

use super::coeff::{LinkRing, PrimeData};
use crate::error::WittError;
use crate::linalg::Matrix;
use crate::ring::inv_mod;

/// A symmetry unit `sign * ζ^k`, `ζ` the class of `z` (`k = 0` over `F_p`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SymmetryUnit {
    pub sign: i8,
    pub zeta_power: i64,
}

impl SymmetryUnit {
    pub const PLUS: SymmetryUnit = SymmetryUnit { sign: 1, zeta_power: 0 };
    pub const MINUS: SymmetryUnit = SymmetryUnit { sign: -1, zeta_power: 0 };

    pub fn mul(self, o: SymmetryUnit) -> SymmetryUnit {
        SymmetryUnit { sign: self.sign * o.sign, zeta_power: self.zeta_power + o.zeta_power }
    }

    pub fn pow(self, n: u32) -> SymmetryUnit {
        SymmetryUnit { sign: if n.is_multiple_of(2) { 1 } else { self.sign }, zeta_power: self.zeta_power * n as i64 }
    }

    pub fn of<R: LinkRing>(x: &R) -> Option<SymmetryUnit> {
        x.signed_monomial_parts().map(|(sign, zeta_power)| SymmetryUnit { sign, zeta_power })
    }

    pub fn to_elem<R: LinkRing>(self) -> R {
        R::signed_monomial(self.sign, self.zeta_power)
    }

    pub fn is_sign(self) -> bool {
        self.zeta_power == 0
    }
}

impl fmt::Display for SymmetryUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.sign < 0 { "-" } else { "" };
        match self.zeta_power {
            0 => write!(f, "{s}1"),
            1 => write!(f, "{s}ζ"),
            k => write!(f, "{s}ζ^{k}"),
        }
    }
}

/// Form over `A/p` with `gram[j][i] = v * conj(gram[i][j])`; entries are
/// canonical residues modulo `p`.
#[derive(Clone, PartialEq, Eq)]
pub struct ResidueForm<R> {
    pub prime: PrimeData<R>,
    pub level: u32,
    pub symmetry: SymmetryUnit,
    pub gram: Matrix<R>,
}

impl<R: LinkRing> ResidueForm<R> {
    pub fn new(prime: PrimeData<R>, level: u32, symmetry: SymmetryUnit, gram: Matrix<R>) -> Self {
        let p = prime.p.clone();
        let gram = gram.map(|x| x.reduce(&p));
        Self { prime, level, symmetry, gram }
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn p(&self) -> &R {
        &self.prime.p
    }

    pub fn reduce(&self, x: &R) -> R {
        x.reduce(self.p())
    }

    pub fn conj(&self, x: &R) -> R {
        x.involute().reduce(self.p())
    }

    pub fn inv(&self, x: &R) -> Option<R> {
        inv_mod(x, self.p())
    }

    pub fn mul(&self, a: &R, b: &R) -> R {
        a.mul(b).reduce(self.p())
    }

    pub fn symmetry_elem(&self) -> R {
        self.reduce(&self.symmetry.to_elem::<R>())
    }

    pub fn check_symmetric(&self) -> bool {
        let v = self.symmetry_elem();
        (0..self.rank())
            .all(|i| (0..self.rank()).all(|j| *self.gram.get(j, i) == self.mul(&v, &self.conj(self.gram.get(i, j)))))
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.rank() == 0 || !self.reduce(&self.gram.det()).is_zero()
    }

    /// Multiplies the form by a unit `w` of the field; `symmetry` is the new
    /// symmetry unit, which the caller computes as `v * w / conj(w)`.
    pub fn scaled(&self, w: &R, symmetry: SymmetryUnit) -> Self {
        Self { prime: self.prime.clone(), level: self.level, symmetry, gram: self.gram.map(|x| self.mul(x, w)) }
    }

    pub fn direct_sum(&self, o: &Self) -> Result<Self, WittError> {
        if self.prime.p != o.prime.p || self.symmetry != o.symmetry {
            return Err(WittError::Precondition("direct sum of residue forms over different data".into()));
        }
        Ok(Self {
            prime: self.prime.clone(),
            level: self.level,
            symmetry: self.symmetry,
            gram: self.gram.block_diag(&o.gram, R::zero()),
        })
    }
}

impl<R: LinkRing> fmt::Debug for ResidueForm<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ResidueForm(p={}, l={}, v={}, gram={})", self.prime.p, self.level, self.symmetry, self.gram)
    }
}
