use crate::error::WittError;
use crate::linalg::Matrix;
use crate::linking::{LinkRing, ResidueForm};

/// `B G B*` for a change of basis whose rows are the new basis vectors.
pub(crate) fn congruence<R: LinkRing>(form: &ResidueForm<R>, b: &Matrix<R>) -> Matrix<R> {
    let g = &form.gram;
    let n = g.rows();
    let bg = Matrix::from_fn(b.rows(), n, |i, l| {
        (0..n).fold(R::zero(), |acc, k| acc.add(&b.get(i, k).mul(g.get(k, l)))).reduce(form.p())
    });
    Matrix::from_fn(b.rows(), b.rows(), |i, j| {
        (0..n).fold(R::zero(), |acc, l| acc.add(&bg.get(i, l).mul(&form.conj(b.get(j, l))))).reduce(form.p())
    })
}

/// Gram–Schmidt for a `+1`-symmetric form over the residue field.
///
/// Returns the diagonal of a congruent diagonal form.
pub fn diagonalize<R: LinkRing>(form: &ResidueForm<R>) -> Result<Vec<R>, WittError> {
    if !form.symmetry_elem().is_one() {
        return Err(WittError::Precondition(format!(
            "diagonalize needs a +1-symmetric form, got symmetry {}",
            form.symmetry
        )));
    }
    if !form.is_nondegenerate() {
        return Err(WittError::Precondition("diagonalize: degenerate form".into()));
    }
    let mut g = form.gram.clone();
    let mut out = Vec::with_capacity(g.rows());
    while g.rows() > 0 {
        let n = g.rows();
        let mut basis = Matrix::identity(n);
        match (0..n).find(|&i| !g.get(i, i).is_zero()) {
            Some(i) => {
                basis.swap_rows(0, i);
            }
            None => {
                // all diagonal entries vanish: e_i + c e_j has value 2 N(c) for c = g_ij
                let (i, j) = (0..n)
                    .flat_map(|i| (0..n).map(move |j| (i, j)))
                    .find(|&(i, j)| !g.get(i, j).is_zero())
                    .expect("nondegenerate");
                basis.set(i, j, g.get(i, j).clone());
                basis.swap_rows(0, i);
            }
        }
        let cur = ResidueForm { gram: g, ..form.clone() };
        let h = congruence(&cur, &basis);
        let d = h.get(0, 0).clone();
        debug_assert!(!d.is_zero());
        let dinv = form.inv(&d).expect("nonzero element of a field");
        let mut elim = Matrix::identity(n);
        for j in 1..n {
            elim.set(j, 0, form.mul(h.get(j, 0), &dinv).neg().reduce(form.p()));
        }
        let cur = ResidueForm { gram: h, ..form.clone() };
        let h = congruence(&cur, &elim);
        out.push(d);
        let rest: Vec<usize> = (1..n).collect();
        g = h.submatrix(&rest, &rest);
    }
    Ok(out)
}
