use super::form::{covering, e_endomorphism, to_laurent, Covering, QMatrix, SeifertForm};
use crate::error::WittError;
use crate::linalg::{smith_normal_form, Matrix};
use crate::ring::{LaurentPoly, Ring};

/// Image of a Seifert lagrangian in the covering linking form.
#[derive(Clone)]
pub struct CoverLagrangian {
    pub covering: Covering,
    /// Generators of `B(L)` as rows, in the coordinates of `covering.form`.
    pub generators: Matrix<LaurentPoly>,
}

/// Pushes `L = span(j)` into `B(K)` and certifies `N = N^⊥`.
///
/// Requires `L` to be `e`-invariant, `j^T ψ j = 0` and `dim L = n / 2`.
/// `N` is certified by checking that all pairings of generators vanish and
/// that `N` and `T / N` have orders of the same degree.
pub fn cover_lagrangian(f: &SeifertForm, j: &QMatrix) -> Result<CoverLagrangian, WittError> {
    let n = f.size();
    if j.rows() != n {
        return Err(WittError::Precondition(format!("basis has {} rows, expected {n}", j.rows())));
    }
    let k = j.rank_q();
    if 2 * k != n {
        return Err(WittError::Precondition(format!("L has rank {k}, a lagrangian needs rank {}", n / 2)));
    }
    let restricted = j.transpose().mul_q(f.psi()).mul_q(j);
    if !restricted.is_zero_q() {
        return Err(WittError::Precondition(format!("psi does not vanish on L: j^T psi j = {restricted}")));
    }
    let m = e_endomorphism(f)?;
    if j.hstack(&m.e.mul_q(j)).rank_q() != k {
        return Err(WittError::Precondition("L is not e-invariant".into()));
    }
    let cov = covering(f)?;
    let jl = to_laurent(j);
    let gens_rows: Vec<Vec<LaurentPoly>> = (0..j.cols())
        .map(|c| {
            let col: Vec<LaurentPoly> = (0..n).map(|r| jl.get(r, c).clone()).collect();
            cov.image(&col)
        })
        .collect();
    let r = cov.form.rank();
    let generators = Matrix::from_fn(gens_rows.len(), r, |a, b| gens_rows[a][b].clone());
    for a in 0..generators.rows() {
        for b in 0..generators.rows() {
            let v = cov.form.pair(generators.row(a), generators.row(b));
            if !v.is_zero() {
                return Err(WittError::Internal(format!("image of L is not isotropic: pairing {v}")));
            }
        }
    }
    // T / N = A^r / (G + D)
    let d = cov.form.invariant_factors();
    let quotient_order = if r == 0 {
        LaurentPoly::one()
    } else {
        let rel = generators.transpose().hstack(&Matrix::diag(d));
        smith_normal_form(&rel).diagonal().iter().fold(LaurentPoly::one(), |acc, x| acc.mul(x))
    };
    let total = cov.form.order();
    if 2 * quotient_order.span() != total.span() {
        return Err(WittError::Internal(format!(
            "image of L is not a lagrangian: |T/N| has degree {}, |T| has degree {}",
            quotient_order.span(),
            total.span()
        )));
    }
    Ok(CoverLagrangian { covering: cov, generators })
}
