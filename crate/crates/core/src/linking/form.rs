use std::fmt;

use num_bigint::BigInt;

use super::coeff::LinkRing;
use super::frac::FracMod;
use crate::error::WittError;
use crate::linalg::{smith_normal_form, Matrix};
use crate::ring::{valuation, LaurentPoly};

/// Which ring and multiplicative set a linking form lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RingTag {
    /// `Z` localized at an odd prime, torsion of `p`-power order.
    Zp(u64),
    /// `Z` with all nonzero integers inverted (only odd primes are supported downstream).
    Z,
    /// `Q[z, z^-1]` with `S` the Alexander polynomials (`f(1) != 0`).
    QzP,
    /// `Q[z, z^-1]` with all nonzero elements inverted.
    QzFull,
}

impl RingTag {
    pub fn name(&self) -> &'static str {
        match self {
            RingTag::Zp(_) => "Zp",
            RingTag::Z => "Z",
            RingTag::QzP => "QzP",
            RingTag::QzFull => "QzFull",
        }
    }

    pub fn is_laurent(&self) -> bool {
        matches!(self, RingTag::QzP | RingTag::QzFull)
    }
}

impl fmt::Display for RingTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingTag::Zp(p) => write!(f, "Zp({p})"),
            t => write!(f, "{}", t.name()),
        }
    }
}

/// `(T, λ)` with `T = ⊕ A/(d_i)` on generators `g_i` and `gram[i][j] = λ(g_i, g_j)`.
///
/// `λ` is linear in the first and conjugate-linear in the second variable.
#[derive(Clone, PartialEq, Eq)]
pub struct LinkingForm<R> {
    tag: RingTag,
    epsilon: R,
    invariant_factors: Vec<R>,
    gram: Matrix<FracMod<R>>,
}

pub type IntLinkingForm = LinkingForm<BigInt>;
pub type LaurentLinkingForm = LinkingForm<LaurentPoly>;

impl<R: LinkRing> LinkingForm<R> {
    /// Validates and canonicalizes: over `Zp` the data are localized at `p`;
    /// generators of unit order are dropped. Well-definedness is checked;
    /// symmetry and nonsingularity are not.
    pub fn new(
        tag: RingTag,
        epsilon: R,
        invariant_factors: Vec<R>,
        gram: Matrix<FracMod<R>>,
    ) -> Result<Self, WittError> {
        let r = invariant_factors.len();
        if gram.rows() != r || gram.cols() != r {
            return Err(WittError::Parse(format!("gram must be {r}x{r}")));
        }
        if !epsilon.is_unit() || !epsilon.mul(&epsilon.involute()).is_one() {
            return Err(WittError::Precondition(format!(
                "epsilon {epsilon} is not a unit with epsilon * conj(epsilon) = 1"
            )));
        }
        if invariant_factors.iter().any(|d| d.is_zero()) {
            return Err(WittError::Precondition("zero invariant factor: module is not torsion".into()));
        }
        if tag.is_laurent() != R::IS_LAURENT {
            return Err(WittError::Precondition(format!("ring tag {tag} does not match the coefficient type")));
        }
        let (factors, gram) = match tag {
            RingTag::Zp(p) => {
                if p < 3 || !is_prime(p) {
                    return Err(WittError::Precondition(format!("Zp requires an odd prime, got {p}")));
                }
                if !(epsilon.is_one() || epsilon.neg().is_one()) {
                    return Err(WittError::Precondition("Zp requires epsilon = +-1".into()));
                }
                let pr = R::from_int(p as i64);
                let factors: Vec<R> = invariant_factors.iter().map(|d| pr.pow(valuation(d, &pr))).collect();
                let gram = gram.map(|x| x.p_local_part(&pr));
                (factors, gram)
            }
            RingTag::QzP => {
                for d in &invariant_factors {
                    if !d.is_alexander() {
                        return Err(WittError::Precondition(format!(
                            "invariant factor {d} is not an Alexander polynomial"
                        )));
                    }
                }
                (invariant_factors.iter().map(|d| d.canonical()).collect(), gram)
            }
            RingTag::Z | RingTag::QzFull => (invariant_factors.iter().map(|d| d.canonical()).collect(), gram),
        };
        let form = Self { tag, epsilon, invariant_factors: factors, gram };
        form.check_well_defined()?;
        Ok(form.drop_units())
    }

    fn check_well_defined(&self) -> Result<(), WittError> {
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                let x = self.gram.get(i, j);
                if !x.annihilated_by(&self.invariant_factors[i])
                    || !x.annihilated_by(&self.invariant_factors[j].involute())
                {
                    return Err(WittError::Precondition(format!(
                        "gram[{i}][{j}] = {x} is not annihilated by the generator orders"
                    )));
                }
            }
        }
        Ok(())
    }

    fn drop_units(self) -> Self {
        let keep: Vec<usize> = (0..self.rank()).filter(|&i| !self.invariant_factors[i].is_unit()).collect();
        if keep.len() == self.rank() {
            return self;
        }
        Self {
            invariant_factors: keep.iter().map(|&i| self.invariant_factors[i].clone()).collect(),
            gram: self.gram.submatrix(&keep, &keep),
            ..self
        }
    }

    /// The zero module.
    pub fn zero(tag: RingTag, epsilon: R) -> Self {
        Self { tag, epsilon, invariant_factors: vec![], gram: Matrix::from_fn(0, 0, |_, _| FracMod::zero()) }
    }

    pub fn tag(&self) -> RingTag {
        self.tag
    }

    pub fn epsilon(&self) -> &R {
        &self.epsilon
    }

    pub fn invariant_factors(&self) -> &[R] {
        &self.invariant_factors
    }

    pub fn gram(&self) -> &Matrix<FracMod<R>> {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// `λ(x, y)` for coefficient vectors on the generators.
    pub fn pair(&self, x: &[R], y: &[R]) -> FracMod<R> {
        let mut acc = FracMod::zero();
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                acc = acc.add(&self.gram.get(i, j).scale(&a.mul(&b.involute())));
            }
        }
        acc
    }

    pub fn check_symmetric(&self) -> bool {
        (0..self.rank()).all(|i| {
            (0..self.rank()).all(|j| *self.gram.get(i, j) == self.gram.get(j, i).involute().scale(&self.epsilon))
        })
    }

    /// True iff the adjoint `T -> T^` is bijective.
    ///
    /// The adjoint sends `g_i` to the functional with values `λ(g_i, g_j)`,
    /// which we read in `⊕ A/(conj d_j)` through the numerators of
    /// `conj(d_j) λ(g_i, g_j)`. It is bijective iff these rows together
    /// with the relations `conj(d_j)` span `A^r`.
    pub fn check_nonsingular(&self) -> bool {
        let r = self.rank();
        if r == 0 {
            return true;
        }
        let dbar: Vec<R> = self.invariant_factors.iter().map(|d| d.involute().canonical()).collect();
        let rows =
            Matrix::from_fn(r, r, |i, j| self.gram.get(i, j).numerator_over(&dbar[j]).expect("well-defined gram"));
        let stacked = rows.vstack(&Matrix::diag(&dbar));
        let snf = smith_normal_form(&stacked);
        let diag = snf.diagonal();
        diag.len() == r && diag.iter().all(|d| d.is_unit())
    }

    pub fn negate(&self) -> Self {
        Self { gram: self.gram.map(|x| x.neg()), ..self.clone() }
    }

    /// Multiplies every value by `c`; the symmetry becomes `epsilon * c / conj(c)`.
    pub fn scale_values(&self, c: &R) -> Result<Self, WittError> {
        let cbar = c.involute();
        let eps = self
            .epsilon
            .mul(c)
            .exact_div(&cbar)
            .filter(|e| e.is_unit())
            .ok_or_else(|| WittError::Precondition(format!("{c} / conj({c}) is not a unit")))?;
        Ok(Self { epsilon: eps, gram: self.gram.map(|x| x.scale(c)), ..self.clone() })
    }

    /// Form induced on the submodule generated by the rows of `gens`, whose
    /// orders are given. The orders must form a divisibility chain.
    pub fn restrict(&self, gens: &Matrix<R>, orders: Vec<R>) -> Self {
        let k = gens.rows();
        let gram = Matrix::from_fn(k, k, |a, b| self.pair(gens.row(a), gens.row(b)));
        Self { tag: self.tag, epsilon: self.epsilon.clone(), invariant_factors: orders, gram }.drop_units()
    }

    /// Rewrites the form on generators whose orders form a divisibility chain.
    pub fn to_chain(&self) -> Self {
        let d = &self.invariant_factors;
        if d.windows(2).all(|w| w[0].divides(&w[1])) {
            return self.clone();
        }
        let snf = smith_normal_form(&Matrix::diag(d));
        // new generator i is column i of u^-1 on the old generators
        let gens = snf.u_inv.transpose();
        let orders = snf.diagonal().iter().map(|x| x.canonical()).collect();
        self.restrict(&gens, orders)
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self, WittError> {
        if self.tag != other.tag || self.epsilon != other.epsilon {
            return Err(WittError::Precondition(format!(
                "direct sum of forms over {} (epsilon {}) and {} (epsilon {})",
                self.tag, self.epsilon, other.tag, other.epsilon
            )));
        }
        let mut factors = self.invariant_factors.clone();
        factors.extend(other.invariant_factors.iter().cloned());
        let gram = self.gram.block_diag(&other.gram, FracMod::zero());
        let sum = Self { tag: self.tag, epsilon: self.epsilon.clone(), invariant_factors: factors, gram };
        Ok(sum.to_chain())
    }

    /// Orthogonal sum of several forms; the empty sum is the zero module.
    pub fn sum_all<'a>(tag: RingTag, epsilon: R, forms: impl IntoIterator<Item = &'a Self>) -> Result<Self, WittError>
    where
        R: 'a,
    {
        forms.into_iter().try_fold(Self::zero(tag, epsilon), |acc, f| acc.direct_sum(f))
    }

    /// Order of the module (product of invariant factors).
    pub fn order(&self) -> R {
        self.invariant_factors.iter().fold(R::one(), |acc, d| acc.mul(d))
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl<R: LinkRing> fmt::Debug for LinkingForm<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d: Vec<String> = self.invariant_factors.iter().map(|x| x.to_string()).collect();
        write!(f, "LinkingForm({}, eps={}, d=[{}], gram={})", self.tag, self.epsilon, d.join(", "), self.gram)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    #[allow(unused_imports)]
    use crate::ring::{Pid, Ring};

    pub(crate) fn zp(p: u64, eps: i64, d: &[i64], gram: &[&[&str]]) -> IntLinkingForm {
        let g =
            Matrix::from_rows(gram.iter().map(|r| r.iter().map(|s| s.parse().unwrap()).collect()).collect()).unwrap();
        LinkingForm::new(RingTag::Zp(p), BigInt::from(eps), d.iter().map(|&x| BigInt::from(x)).collect(), g).unwrap()
    }

    #[test]
    fn symmetry_examples() {
        assert!(zp(3, 1, &[9], &[&["1/9"]]).check_symmetric());
        assert!(!zp(3, 1, &[3, 3], &[&["0", "1/3"], &["-1/3", "0"]]).check_symmetric());
        assert!(zp(3, -1, &[3, 3], &[&["0", "1/3"], &["-1/3", "0"]]).check_symmetric());
    }

    #[test]
    fn nonsingularity_examples() {
        assert!(zp(3, 1, &[9], &[&["1/9"]]).check_nonsingular());
        assert!(!zp(3, 1, &[9], &[&["3/9"]]).check_nonsingular());
        let g: Matrix<FracMod<LaurentPoly>> = Matrix::from_rows(vec![vec!["(1)/(z+1)".parse().unwrap()]]).unwrap();
        let l = LinkingForm::new(RingTag::QzFull, "z^-1".parse().unwrap(), vec!["z+1".parse().unwrap()], g).unwrap();
        assert!(l.check_symmetric());
        assert!(l.check_nonsingular());
    }

    #[test]
    fn localization_at_p() {
        let l = zp(3, 1, &[15], &[&["1/15"]]);
        assert_eq!(l.invariant_factors(), &[BigInt::from(3)]);
        assert_eq!(l.gram().get(0, 0).to_string(), "2/3");
        let l = zp(3, 1, &[5], &[&["1/5"]]);
        assert_eq!(l.rank(), 0);
    }

    #[test]
    fn ill_defined_gram_is_rejected() {
        let g = Matrix::from_rows(vec![vec!["1/9".parse().unwrap()]]).unwrap();
        assert!(LinkingForm::new(RingTag::Zp(3), BigInt::from(1), vec![BigInt::from(3)], g).is_err());
        let g = Matrix::from_rows(vec![vec!["1/3".parse().unwrap()]]).unwrap();
        assert!(LinkingForm::new(RingTag::Zp(2), BigInt::from(1), vec![BigInt::from(2)], g.clone()).is_err());
        assert!(LinkingForm::new(RingTag::Zp(3), BigInt::from(2), vec![BigInt::from(3)], g).is_err());
    }

    #[test]
    fn direct_sums() {
        let a = zp(3, 1, &[3], &[&["1/3"]]);
        let b = zp(3, 1, &[9], &[&["1/9"]]);
        let s = a.direct_sum(&b).unwrap();
        assert_eq!(s.invariant_factors(), &[BigInt::from(3), BigInt::from(9)]);
        let s2 = b.direct_sum(&a).unwrap();
        assert_eq!(s2.invariant_factors(), &[BigInt::from(3), BigInt::from(9)]);
        assert!(s2.check_symmetric() && s2.check_nonsingular());
        let z = LinkingForm::zero(RingTag::Zp(3), BigInt::from(1));
        assert_eq!(a.direct_sum(&z).unwrap(), a);
        let c = zp(3, -1, &[3], &[&["0"]]);
        assert!(a.direct_sum(&c).is_err());
    }
}
