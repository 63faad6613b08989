use std::fmt;

use num_traits::{One, Zero};

use crate::error::WittError;
use crate::linalg::{smith_normal_form, Matrix, SnfResult};
use crate::linking::{FracMod, LaurentLinkingForm, LinkingForm, RingTag};
use crate::ring::{rat, LaurentPoly, Pid, Rational, Ring};

pub type QMatrix = Matrix<Rational>;

/// A square rational matrix `ψ` with `ψ + ε ψ^T` invertible.
#[derive(Clone, PartialEq, Eq)]
pub struct SeifertForm {
    psi: QMatrix,
    epsilon: i8,
}

impl SeifertForm {
    pub fn new(psi: QMatrix, epsilon: i8) -> Result<Self, WittError> {
        if !psi.is_square() {
            return Err(WittError::Parse("Seifert matrix must be square".into()));
        }
        if epsilon != 1 && epsilon != -1 {
            return Err(WittError::Parse(format!("epsilon must be 1 or -1, got {epsilon}")));
        }
        let f = Self { psi, epsilon };
        if f.theta().inverse_q().is_none() {
            return Err(WittError::Precondition(format!(
                "theta = psi + epsilon psi^T is singular (epsilon = {})",
                f.epsilon
            )));
        }
        Ok(f)
    }

    pub fn from_ints(rows: &[&[i64]], epsilon: i8) -> Result<Self, WittError> {
        let m = Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())?;
        Self::new(m, epsilon)
    }

    pub fn psi(&self) -> &QMatrix {
        &self.psi
    }

    pub fn epsilon(&self) -> i8 {
        self.epsilon
    }

    pub fn size(&self) -> usize {
        self.psi.rows()
    }

    /// `ψ + ε ψ^T`.
    pub fn theta(&self) -> QMatrix {
        self.psi.add_q(&self.psi.transpose().scale_q(&rat(self.epsilon as i64)))
    }

    pub fn direct_sum(&self, o: &Self) -> Result<Self, WittError> {
        if self.epsilon != o.epsilon {
            return Err(WittError::Precondition("direct sum of Seifert forms with different epsilon".into()));
        }
        Self::new(self.psi.block_diag(&o.psi, Rational::zero()), self.epsilon)
    }

    pub fn negate(&self) -> Self {
        Self { psi: self.psi.scale_q(&rat(-1)), epsilon: self.epsilon }
    }
}

impl fmt::Debug for SeifertForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SeifertForm(eps={}, psi={})", self.epsilon, self.psi)
    }
}

/// The endomorphism `e` giving the half-unit action `s x = e x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertModule {
    pub e: QMatrix,
}

/// `e = (ψ + εψ^T)^-1 ψ`, with both defining identities rechecked.
pub fn e_endomorphism(f: &SeifertForm) -> Result<SeifertModule, WittError> {
    let theta = f.theta();
    let inv = theta.inverse_q().ok_or_else(|| WittError::Precondition("psi + eps psi^T is singular".into()))?;
    let e = inv.mul_q(f.psi());
    let n = f.size();
    let one_minus = Matrix::identity_q(n).sub_q(&e);
    let other = inv.mul_q(&f.psi().transpose()).scale_q(&rat(f.epsilon() as i64));
    if theta.mul_q(&e) != *f.psi() || one_minus != other {
        return Err(WittError::Internal("e_endomorphism identities failed".into()));
    }
    Ok(SeifertModule { e })
}

pub(crate) fn to_laurent(m: &QMatrix) -> Matrix<LaurentPoly> {
    m.map(|x| LaurentPoly::constant(x.clone()))
}

/// `(1 - e) + e z`.
pub fn presentation_matrix(m: &SeifertModule) -> Matrix<LaurentPoly> {
    let n = m.e.rows();
    let one_minus = to_laurent(&Matrix::identity_q(n).sub_q(&m.e));
    one_minus.add(&to_laurent(&m.e).scale(&LaurentPoly::z()))
}

/// `det((1 - e) + e z)` normalized to its canonical associate.
pub fn alexander_polynomial(f: &SeifertForm) -> Result<LaurentPoly, WittError> {
    let a = presentation_matrix(&e_endomorphism(f)?);
    if a.rows() == 0 {
        return Ok(LaurentPoly::one());
    }
    Ok(a.det().normalize_assoc()?.0)
}

/// The covering linking form together with the data used to build it.
#[derive(Clone)]
pub struct Covering {
    pub form: LaurentLinkingForm,
    pub presentation: Matrix<LaurentPoly>,
    pub snf: SnfResult<LaurentPoly>,
    /// Rows of the Smith transform `u` that survive as generators.
    pub kept: Vec<usize>,
    /// `-(1 - z^-1) (ψ + εψ^T)` times the adjugate of `conj(A)`, over `det conj(A)`.
    pub pairing_numerators: Matrix<LaurentPoly>,
    pub pairing_denominator: LaurentPoly,
}

impl Covering {
    /// Image of a column vector of `Q[z, z^-1]^n` in the generators of the form.
    pub fn image(&self, x: &[LaurentPoly]) -> Vec<LaurentPoly> {
        let u = &self.snf.u;
        let d = self.form.invariant_factors();
        self.kept
            .iter()
            .zip(d)
            .map(|(&i, di)| {
                (0..x.len()).fold(LaurentPoly::zero(), |acc, k| acc.add(&u.get(i, k).mul(&x[k]))).reduce(di)
            })
            .collect()
    }
}

/// The Blanchfield-type linking form on `coker((1 - e) + e z)`.
///
/// With column vectors and `λ(x, y) = x^T M conj(y)`, the matrix
/// `M = -(1 - z^-1) Θ conj(A)^-1` is well defined on the cokernel because
/// `conj(A)^T Θ = z^-1 Θ A`, and satisfies `M^T = -ε conj(M)`. The Smith
/// form `U A V = D` moves it to generators `U^-1 e_i`.
pub fn covering(f: &SeifertForm) -> Result<Covering, WittError> {
    let m = e_endomorphism(f)?;
    let a = presentation_matrix(&m);
    let n = a.rows();
    let eps_form = LaurentPoly::from_int(-(f.epsilon() as i64));
    if n == 0 {
        let form = LinkingForm::zero(RingTag::QzP, eps_form);
        let snf = smith_normal_form(&a);
        return Ok(Covering {
            form,
            presentation: a,
            snf,
            kept: vec![],
            pairing_numerators: Matrix::zeros(0, 0),
            pairing_denominator: LaurentPoly::one(),
        });
    }
    let abar = a.involute();
    let (adj, det) = abar.adjugate_inverse()?;
    let c = LaurentPoly::one().sub(&LaurentPoly::monomial(Rational::one(), -1)).neg();
    let num = to_laurent(&f.theta()).mul(&adj).scale(&c);
    let snf = smith_normal_form(&a);
    let uinv = &snf.u_inv;
    let g = uinv.transpose().mul(&num).mul(&uinv.involute());
    let d = snf.diagonal();
    let kept: Vec<usize> = (0..n).filter(|&i| !d[i].is_unit()).collect();
    let gram = Matrix::from_fn(kept.len(), kept.len(), |i, j| {
        FracMod::new(g.get(kept[i], kept[j]).clone(), det.clone()).expect("nonzero determinant")
    });
    let factors: Vec<LaurentPoly> = kept.iter().map(|&i| d[i].clone()).collect();
    let form = LinkingForm::new(RingTag::QzP, eps_form, factors, gram)?;
    Ok(Covering { form, presentation: a, snf, kept, pairing_numerators: num, pairing_denominator: det })
}
