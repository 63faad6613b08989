use num_bigint::BigInt;

use super::*;
use crate::linalg::Matrix;
use crate::linking::oracle::{oracle_is_hyperbolic, DEFAULT_MAX_SIZE};
use crate::linking::{auxiliary_form, FracMod, IntLinkingForm, LinkingForm, PrimeData, RingTag};
use crate::ring::{rat, Pid};

fn zp(p: u64, eps: i64, d: &[i64], gram: &[&[&str]]) -> IntLinkingForm {
    let g = Matrix::from_rows(gram.iter().map(|r| r.iter().map(|s| s.parse().unwrap()).collect()).collect()).unwrap();
    LinkingForm::new(RingTag::Zp(p), BigInt::from(eps), d.iter().map(|&x| BigInt::from(x)).collect(), g).unwrap()
}

/// `<a_1, ..., a_n>` on `(Z/p)^n`.
fn diag_form(p: u64, a: &[i64]) -> IntLinkingForm {
    let n = a.len();
    let g = Matrix::from_fn(n, n, |i, j| {
        if i == j {
            FracMod::new(BigInt::from(a[i]), BigInt::from(p)).unwrap()
        } else {
            FracMod::zero()
        }
    });
    LinkingForm::new(RingTag::Zp(p), BigInt::from(1), vec![BigInt::from(p); n], g).unwrap()
}

fn int_prime(p: i64) -> PrimeData<BigInt> {
    BigInt::prime_factors(&BigInt::from(p)).unwrap()[0].0.clone()
}

fn laurent_prime(s: &str) -> PrimeData<LaurentPoly> {
    LaurentPoly::prime_factors(&s.parse().unwrap()).unwrap()[0].0.clone()
}

fn fp_form(p: i64, rows: &[&[i64]]) -> ResidueForm<BigInt> {
    let g = Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()).unwrap();
    ResidueForm::new(int_prime(p), 1, SymmetryUnit::PLUS, g)
}

fn code_of(l: &IntLinkingForm) -> Vec<u8> {
    let c = witt_class_via_devissage(l).unwrap();
    match c.entries.first() {
        Some(WittEntry { invariant: Invariant::Fp(c), .. }) => c.code(),
        None => vec![],
        other => panic!("unexpected entry {other:?}"),
    }
}

fn fp_entry(c: &DWClass, prime: &str, l: u32) -> Option<Vec<u8>> {
    match c.entry(prime, l) {
        Some(Invariant::Fp(x)) => Some(x.code()),
        None => None,
        other => panic!("unexpected entry {other:?}"),
    }
}

#[test]
fn diagonalize_examples() {
    let h = fp_form(3, &[&[0, 1], &[1, 0]]);
    let d = diagonalize(&h).unwrap();
    assert_eq!(d.len(), 2);
    // the product of a hyperbolic plane's diagonal is -1 times a square
    let prod = (&d[0] * &d[1]).reduce(&BigInt::from(3));
    assert_eq!(prod, BigInt::from(2));
    assert_eq!(diagonalize(&fp_form(3, &[&[1]])).unwrap(), vec![BigInt::from(1)]);
    let f = fp_form(5, &[&[2, 1], &[1, 2]]);
    let d = diagonalize(&f).unwrap();
    let prod = (&d[0] * &d[1]).reduce(&BigInt::from(5));
    // det = 3, a non-residue mod 5, as is the product
    assert!([2, 3].contains(&prod.to_string().parse::<i64>().unwrap()));
    assert!(diagonalize(&fp_form(3, &[&[1, 1], &[1, 1]])).is_err());
}

#[test]
fn fp_class_examples() {
    assert_eq!(witt_class_fp(&fp_form(3, &[&[1]])).unwrap().code(), vec![1]);
    assert_eq!(witt_class_fp(&fp_form(3, &[&[1, 0], &[0, 2]])).unwrap().code(), vec![0]);
    assert_eq!(witt_class_fp(&fp_form(3, &[&[1, 0], &[0, 1]])).unwrap().code(), vec![2]);
    assert_eq!(witt_class_fp(&fp_form(5, &[&[1, 0], &[0, 1]])).unwrap().code(), vec![0, 0]);
    let skew = ResidueForm::new(
        int_prime(5),
        1,
        SymmetryUnit::MINUS,
        Matrix::from_rows(vec![vec![BigInt::from(0), BigInt::from(1)], vec![BigInt::from(-1), BigInt::from(0)]])
            .unwrap(),
    );
    assert!(witt_class_fp(&skew).unwrap().is_zero());
}

fn all_diagonals(p: i64, n: usize) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|v| (1..p).map(move |a| [v.clone(), vec![a]].concat())).collect();
    }
    out
}

/// The code table is checked against brute force: over `F_3` and `F_5`,
/// for every diagonal form of rank at most 4, code zero iff hyperbolic, and
/// codes add under orthogonal sum.
#[test]
fn code_table_matches_brute_force() {
    for p in [3i64, 5] {
        for n in 0..=4 {
            for a in all_diagonals(p, n) {
                let l = diag_form(p as u64, &a);
                let c = WittClassFp::from_code(p as u64, &code_of_or_zero(&l, p)).unwrap();
                let hyp = oracle_is_hyperbolic(&l, DEFAULT_MAX_SIZE).unwrap().is_some();
                assert_eq!(c.is_zero(), hyp, "p = {p}, <{a:?}>");
                if n >= 1 {
                    let (x, y) = a.split_at(1);
                    let cx = WittClassFp::from_code(p as u64, &code_of_or_zero(&diag_form(p as u64, x), p)).unwrap();
                    let cy = WittClassFp::from_code(p as u64, &code_of_or_zero(&diag_form(p as u64, y), p)).unwrap();
                    assert_eq!(cx.add(&cy), c);
                }
            }
        }
    }
}

fn code_of_or_zero(l: &IntLinkingForm, p: i64) -> Vec<u8> {
    let c = code_of(l);
    if c.is_empty() {
        WittClassFp::zero(p as u64).code()
    } else {
        c
    }
}

#[test]
fn unit_symmetry_reduce_examples() {
    let prime = laurent_prime("z^2-z+1");
    let zeta: LaurentPoly = "z".parse().unwrap();
    let f = ResidueForm::new(
        prime.clone(),
        2,
        SymmetryUnit { sign: 1, zeta_power: 2 },
        Matrix::diag(std::slice::from_ref(&zeta)),
    );
    assert!(f.check_symmetric());
    let r = unit_symmetry_reduce(&f).unwrap();
    assert_eq!(r.symmetry, SymmetryUnit::PLUS);
    // a positive multiple of conj(zeta) * zeta
    let v = r.gram.get(0, 0);
    assert_eq!(v.span(), 0);
    assert!(v.coeff(0) > rat(0));

    let t: LaurentPoly = "z-z^-1".parse().unwrap();
    let g = f.reduce(&zeta.mul(&t));
    let f = ResidueForm::new(prime.clone(), 2, SymmetryUnit { sign: -1, zeta_power: 2 }, Matrix::diag(&[g]));
    assert!(f.check_symmetric());
    let r = unit_symmetry_reduce(&f).unwrap();
    assert_eq!(r.symmetry, SymmetryUnit::MINUS);
    assert!(r.check_symmetric());

    let f = ResidueForm::new(int_prime(3), 1, SymmetryUnit::PLUS, Matrix::diag(&[BigInt::from(2)]));
    assert_eq!(unit_symmetry_reduce(&f).unwrap(), f);
}

#[test]
fn z9_multisignature_and_devissage() {
    let l = zp(3, 1, &[9], &[&["1/9"]]);
    let c = multisignature(&l).unwrap();
    assert!(c.complete);
    assert_eq!(c.entries.len(), 1);
    assert_eq!(fp_entry(&c, "3", 2), Some(vec![1]));
    assert!(forgetful(&c).unwrap().is_zero());
    assert!(witt_class_via_devissage(&l).unwrap().is_zero());
}

#[test]
fn hyperbolic_form_has_zero_class() {
    let l = zp(3, 1, &[3, 3], &[&["0", "1/3"], &["1/3", "0"]]);
    assert!(multisignature(&l).unwrap().is_zero());
}

#[test]
fn devissage_examples() {
    assert_eq!(code_of(&zp(3, 1, &[3], &[&["1/3"]])), vec![1]);
    let l = zp(3, 1, &[27], &[&["1/27"]]);
    let b3 = auxiliary_form(&l, &int_prime(3), 3).unwrap();
    assert_eq!(code_of(&l), witt_class_fp(&b3).unwrap().code());
    let l = zp(5, 1, &[125], &[&["2/125"]]);
    let b3 = auxiliary_form(&l, &int_prime(5), 3).unwrap();
    assert_eq!(code_of(&l), witt_class_fp(&b3).unwrap().code());
}

#[test]
fn forgetful_kills_odd_level_cancellation() {
    let l = zp(3, 1, &[3], &[&["1/3"]]).direct_sum(&zp(3, 1, &[27], &[&["-1/27"]])).unwrap();
    let c = multisignature(&l).unwrap();
    assert_eq!(fp_entry(&c, "3", 1), Some(vec![1]));
    assert_eq!(fp_entry(&c, "3", 3), Some(vec![3]));
    assert!(forgetful(&c).unwrap().is_zero());
    assert!(witt_class_via_devissage(&l).unwrap().is_zero());
    assert!(forgetful(&DWClass::zero(RingTag::Zp(3))).unwrap().is_zero());
}

#[test]
fn group_laws() {
    let l = zp(3, 1, &[3], &[&["1/3"]]);
    let c = multisignature(&l).unwrap();
    assert_eq!(dw_add(&c, &DWClass::zero(RingTag::Zp(3))).unwrap(), c);
    let neg = multisignature(&l.negate()).unwrap();
    assert!(dw_add(&c, &neg).unwrap().is_zero());
    assert_eq!(dw_neg(&c), neg);
    assert!(!c.times(2).unwrap().is_zero());
    assert!(c.times(4).unwrap().is_zero());
    let c5 = multisignature(&zp(5, 1, &[5], &[&["1/5"]])).unwrap();
    assert!(!c5.is_zero());
    assert!(c5.times(2).unwrap().is_zero());
    assert!(dw_add(&c, &c5).is_err());
}

#[test]
fn z_plus_one_example() {
    let g = Matrix::from_rows(vec![vec!["(1)/(z+1)".parse::<FracMod<LaurentPoly>>().unwrap()]]).unwrap();
    let l = LinkingForm::new(RingTag::QzFull, "z^-1".parse().unwrap(), vec!["z+1".parse().unwrap()], g).unwrap();
    let c = multisignature(&l).unwrap();
    assert!(!c.complete);
    match c.entry("z+1", 1) {
        Some(Invariant::Signatures { places, rank_parity }) => {
            assert_eq!(places.len(), 1);
            assert_eq!(places[0].sigma, 1);
            assert_eq!(*rank_parity, 1);
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn signature_examples() {
    let prime = laurent_prime("z+1");
    let f = ResidueForm::new(prime.clone(), 1, SymmetryUnit::PLUS, Matrix::diag(&[LaurentPoly::one()]));
    assert_eq!(signatures(&f).unwrap()[0].value, 1);
    let f =
        ResidueForm::new(prime, 1, SymmetryUnit::PLUS, Matrix::diag(&[LaurentPoly::one(), LaurentPoly::one().neg()]));
    assert_eq!(signatures(&f).unwrap()[0].value, 0);
    let prime = laurent_prime("z^4-z^3+z^2-z+1");
    let f =
        ResidueForm::new(prime, 1, SymmetryUnit::PLUS, Matrix::diag(&[LaurentPoly::one(), LaurentPoly::one().neg()]));
    let s = signatures(&f).unwrap();
    assert_eq!(s.len(), 2);
    assert!(s.iter().all(|r| r.value == 0));
}
