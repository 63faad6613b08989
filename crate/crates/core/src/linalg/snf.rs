use super::Matrix;
use crate::ring::{valuation, Pid};

/// `u * a * v = d` with `d` diagonal, `d_1 | d_2 | ...`, then zeros.
#[derive(Clone)]
pub struct SnfResult<R> {
    pub u: Matrix<R>,
    pub u_inv: Matrix<R>,
    pub d: Matrix<R>,
    pub v: Matrix<R>,
    pub v_inv: Matrix<R>,
}

impl<R: Pid> SnfResult<R> {
    pub fn diagonal(&self) -> Vec<R> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d.get(i, i).clone()).collect()
    }

    /// Nonzero diagonal entries.
    pub fn invariant_factors(&self) -> Vec<R> {
        self.diagonal().into_iter().filter(|x| !x.is_zero()).collect()
    }

    /// Rechecks the product identity, the inverses and the divisibility chain.
    pub fn certify(&self, a: &Matrix<R>) -> bool {
        if self.u.mul(a).mul(&self.v) != self.d {
            return false;
        }
        if !self.u.mul(&self.u_inv).is_identity() || !self.v.mul(&self.v_inv).is_identity() {
            return false;
        }
        for i in 0..self.d.rows() {
            for j in 0..self.d.cols() {
                if i != j && !self.d.get(i, j).is_zero() {
                    return false;
                }
            }
        }
        let diag = self.diagonal();
        diag.windows(2).all(|w| w[0].divides(&w[1]))
    }
}

struct Work<R> {
    a: Matrix<R>,
    u: Matrix<R>,
    u_inv: Matrix<R>,
    v: Matrix<R>,
    v_inv: Matrix<R>,
}

impl<R: Pid> Work<R> {
    /// row_i -= q * row_t
    fn row_sub(&mut self, i: usize, t: usize, q: &R) {
        for m in [&mut self.a, &mut self.u] {
            for j in 0..m.cols() {
                let v = m.get(i, j).sub(&q.mul(m.get(t, j)));
                m.set(i, j, v);
            }
        }
        let m = &mut self.u_inv;
        for r in 0..m.rows() {
            let v = m.get(r, t).add(&q.mul(m.get(r, i)));
            m.set(r, t, v);
        }
    }

    /// col_j -= q * col_t
    fn col_sub(&mut self, j: usize, t: usize, q: &R) {
        for m in [&mut self.a, &mut self.v] {
            for r in 0..m.rows() {
                let v = m.get(r, j).sub(&q.mul(m.get(r, t)));
                m.set(r, j, v);
            }
        }
        let m = &mut self.v_inv;
        for c in 0..m.cols() {
            let v = m.get(t, c).add(&q.mul(m.get(j, c)));
            m.set(t, c, v);
        }
    }

    fn swap_rows(&mut self, i: usize, t: usize) {
        self.a.swap_rows(i, t);
        self.u.swap_rows(i, t);
        self.u_inv.swap_cols(i, t);
    }

    fn swap_cols(&mut self, j: usize, t: usize) {
        self.a.swap_cols(j, t);
        self.v.swap_cols(j, t);
        self.v_inv.swap_rows(j, t);
    }

    /// row_t *= w for a unit w.
    fn scale_row(&mut self, t: usize, w: &R) {
        let wi = w.unit_inv().expect("scaling by a unit");
        for m in [&mut self.a, &mut self.u] {
            for j in 0..m.cols() {
                let v = m.get(t, j).mul(w);
                m.set(t, j, v);
            }
        }
        let m = &mut self.u_inv;
        for r in 0..m.rows() {
            let v = m.get(r, t).mul(&wi);
            m.set(r, t, v);
        }
    }
}

/// Smith normal form with transformation matrices.
///
/// Pivots are chosen with minimal Euclidean norm, ties broken in row-major
/// order, so the output is deterministic.
pub fn smith_normal_form<R: Pid>(a: &Matrix<R>) -> SnfResult<R> {
    let (m, n) = (a.rows(), a.cols());
    let mut w = Work {
        a: a.clone(),
        u: Matrix::identity(m),
        u_inv: Matrix::identity(m),
        v: Matrix::identity(n),
        v_inv: Matrix::identity(n),
    };
    for t in 0..m.min(n) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let x = w.a.get(i, j);
                    if x.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| x.euclid_norm() < w.a.get(bi, bj).euclid_norm()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break;
            };
            w.swap_rows(pi, t);
            w.swap_cols(pj, t);
            let pivot = w.a.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..m {
                if w.a.get(i, t).is_zero() {
                    continue;
                }
                let (q, r) = w.a.get(i, t).div_rem(&pivot);
                w.row_sub(i, t, &q);
                clean &= r.is_zero();
            }
            for j in t + 1..n {
                if w.a.get(t, j).is_zero() {
                    continue;
                }
                let (q, r) = w.a.get(t, j).div_rem(&pivot);
                w.col_sub(j, t, &q);
                clean &= r.is_zero();
            }
            if !clean {
                continue;
            }
            // divisibility: fold a bad row into the pivot row and repeat
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !pivot.divides(w.a.get(i, j))));
            if let Some(i) = bad {
                w.row_sub(t, i, &R::one().neg());
                continue;
            }
            let (_, unit) = pivot.normalize();
            w.scale_row(t, &unit.unit_inv().expect("unit"));
            break;
        }
    }
    SnfResult { u: w.u, u_inv: w.u_inv, d: w.a, v: w.v, v_inv: w.v_inv }
}

/// Positive valuations at `p` of the nonzero entries of `diag`, sorted.
pub fn p_valuations<R: Pid>(diag: &[R], p: &R) -> Vec<u32> {
    let mut out: Vec<u32> = diag.iter().filter(|d| !d.is_zero()).map(|d| valuation(d, p)).filter(|&l| l > 0).collect();
    out.sort_unstable();
    out
}
