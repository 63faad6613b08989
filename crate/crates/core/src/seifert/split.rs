use super::form::{e_endomorphism, QMatrix, SeifertForm, SeifertModule};
use crate::error::WittError;
use crate::linalg::Matrix;
use crate::ring::Rational;

/// Minimal `k` with `(e(1 - e))^k = 0`, if `e` is a near-projection.
pub fn near_projection_test(m: &SeifertModule) -> Option<u32> {
    let n = m.e.rows();
    let f = m.e.mul_q(&Matrix::identity_q(n).sub_q(&m.e));
    let mut pow = f.clone();
    for k in 1..=n.max(1) as u32 {
        if pow.is_zero_q() {
            return Some(k);
        }
        pow = pow.mul_q(&f);
    }
    None
}

/// A splitting `K = K_+ ⊕ K_-` with `ψ` vanishing on both summands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperbolicSplit {
    /// Basis of `K_+` as columns.
    pub k_plus: QMatrix,
    pub k_minus: QMatrix,
    /// `P = [K_+ | K_-]`, invertible.
    pub change_of_basis: QMatrix,
    /// `P^T ψ P`, zero on the diagonal blocks.
    pub block_form: QMatrix,
}

fn power(m: &QMatrix, k: u32) -> QMatrix {
    (0..k).fold(Matrix::identity_q(m.rows()), |acc, _| acc.mul_q(m))
}

/// `p_e = (e^k + (1 - e)^k)^-1 e^k`, `K_+ = im p_e`, `K_- = im (1 - p_e)`.
pub fn hyperbolic_split(f: &SeifertForm) -> Result<HyperbolicSplit, WittError> {
    let m = e_endomorphism(f)?;
    let k = near_projection_test(&m)
        .ok_or_else(|| WittError::Precondition("e is not a near-projection: e(1-e) is not nilpotent".into()))?;
    let n = f.size();
    let id = Matrix::identity_q(n);
    let ek = power(&m.e, k);
    let fk = power(&id.sub_q(&m.e), k);
    let s = ek.add_q(&fk).inverse_q().ok_or_else(|| WittError::Internal("e^k + (1-e)^k is singular".into()))?;
    let p = s.mul_q(&ek);
    let k_plus = p.column_basis_q();
    let k_minus = id.sub_q(&p).column_basis_q();
    let change = k_plus.hstack(&k_minus);
    if change.inverse_q().is_none() {
        return Err(WittError::Internal("K_+ and K_- do not span".into()));
    }
    let block = change.transpose().mul_q(f.psi()).mul_q(&change);
    let a = k_plus.cols();
    let zero_block = |r: std::ops::Range<usize>| {
        r.clone().all(|i| r.clone().all(|j| block.get(i, j) == &Rational::from_integer(0.into())))
    };
    if !zero_block(0..a) || !zero_block(a..n) {
        return Err(WittError::Internal("psi does not vanish on K_+ and K_-".into()));
    }
    Ok(HyperbolicSplit { k_plus, k_minus, change_of_basis: change, block_form: block })
}
