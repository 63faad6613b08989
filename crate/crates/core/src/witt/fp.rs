//! Witt classes of symmetric forms over `F_p`, `p` odd.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::diag::diagonalize;
use crate::error::WittError;
use crate::linking::ResidueForm;
use crate::ring::{Pid, Ring};

/// Class in `W(F_p)`: `Z/4` generated by `<1>` when `p = 3 mod 4`,
/// `Z/2 + Z/2` (rank parity, discriminant) when `p = 1 mod 4`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WittClassFp {
    pub p: u64,
    pub rank_parity: u8,
    /// 1 iff the signed discriminant `(-1)^{n(n-1)/2} det` is a non-residue.
    pub disc_nonresidue: u8,
}

impl WittClassFp {
    pub fn zero(p: u64) -> Self {
        Self { p, rank_parity: 0, disc_nonresidue: 0 }
    }

    /// `<a>` for a nonzero residue `a`.
    pub fn of_unit(p: u64, a: i64) -> Self {
        Self { p, rank_parity: 1, disc_nonresidue: u8::from(!is_square(a.rem_euclid(p as i64) as u64, p)) }
    }

    pub fn is_cyclic(&self) -> bool {
        self.p % 4 == 3
    }

    pub fn is_zero(&self) -> bool {
        self.rank_parity == 0 && self.disc_nonresidue == 0
    }

    /// `[c]` with `c` in `Z/4`, or `[rank_parity, disc]`.
    pub fn code(&self) -> Vec<u8> {
        if self.is_cyclic() {
            vec![match (self.rank_parity, self.disc_nonresidue) {
                (0, 0) => 0,
                (1, 0) => 1,
                (0, _) => 2,
                _ => 3,
            }]
        } else {
            vec![self.rank_parity, self.disc_nonresidue]
        }
    }

    pub fn from_code(p: u64, code: &[u8]) -> Result<Self, WittError> {
        let bad = || WittError::Parse(format!("invalid W(F_{p}) code {code:?}"));
        let (rank_parity, disc_nonresidue) = if p % 4 == 3 {
            match code {
                [0] => (0, 0),
                [1] => (1, 0),
                [2] => (0, 1),
                [3] => (1, 1),
                _ => return Err(bad()),
            }
        } else {
            match code {
                [a, b] if *a < 2 && *b < 2 => (*a, *b),
                _ => return Err(bad()),
            }
        };
        Ok(Self { p, rank_parity, disc_nonresidue })
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.p, o.p, "adding Witt classes over different fields");
        if self.is_cyclic() {
            let c = (self.code()[0] + o.code()[0]) % 4;
            return Self::from_code(self.p, &[c]).unwrap();
        }
        Self {
            p: self.p,
            rank_parity: self.rank_parity ^ o.rank_parity,
            disc_nonresidue: self.disc_nonresidue ^ o.disc_nonresidue,
        }
    }

    pub fn neg(&self) -> Self {
        if self.is_cyclic() {
            let c = (4 - self.code()[0]) % 4;
            return Self::from_code(self.p, &[c]).unwrap();
        }
        self.clone()
    }
}

fn is_square(a: u64, p: u64) -> bool {
    let a = BigInt::from(a);
    a.modpow(&BigInt::from((p - 1) / 2), &BigInt::from(p)) == BigInt::from(1)
}

/// Class of a `±1`-symmetric form over `F_p`. Skew forms are hyperbolic.
pub fn witt_class_fp(form: &ResidueForm<BigInt>) -> Result<WittClassFp, WittError> {
    let p = form
        .p()
        .to_u64()
        .filter(|p| p % 2 == 1)
        .ok_or_else(|| WittError::Unsupported(format!("residue field F_{}", form.p())))?;
    if form.reduce(&form.symmetry_elem().neg()).is_one() {
        if !form.is_nondegenerate() {
            return Err(WittError::Precondition("degenerate skew form".into()));
        }
        return Ok(WittClassFp::zero(p));
    }
    let d = diagonalize(form)?;
    let n = d.len() as u64;
    let mut disc = d.iter().fold(BigInt::from(1), |acc, x| acc * x);
    if (n * n.saturating_sub(1) / 2) % 2 == 1 {
        disc = -disc;
    }
    let disc = disc.reduce(form.p()).to_u64().unwrap();
    Ok(WittClassFp { p, rank_parity: (n % 2) as u8, disc_nonresidue: u8::from(!is_square(disc, p)) })
}
