//! JSON encodings of forms, classes and reports.
//!
//! Ring elements and rationals are always strings in the text grammar of
//! [`crate::ring`]; key order is the declaration order of the structs below,
//! so equal values serialize to identical bytes.

use serde::{Deserialize, Serialize};

use crate::error::WittError;
use crate::linalg::Matrix;
use crate::linking::oracle::Subgroup;
use crate::linking::{FracMod, IntLinkingForm, LaurentLinkingForm, LinkRing, LinkingForm, RingTag};
use crate::ring::{format_rational, parse_rational, LaurentPoly};
use crate::seifert::{PrimeRow, Report, SeifertForm, Verdict};
use crate::witt::{DWClass, DwEntry, Invariant, PlaceSignature, WittClass, WittClassFp, WittEntry};

fn parse_err(e: serde_json::Error) -> WittError {
    WittError::Parse(format!("invalid JSON: {e}"))
}

fn to_pretty<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("JSON values are always serializable")
}

fn from_str<'a, T: Deserialize<'a>>(s: &'a str) -> Result<T, WittError> {
    serde_json::from_str(s).map_err(parse_err)
}

fn tag_fields(tag: RingTag) -> (String, Option<u64>) {
    match tag {
        RingTag::Zp(p) => ("Zp".into(), Some(p)),
        t => (t.name().into(), None),
    }
}

fn parse_tag(ring: &str, p: Option<u64>) -> Result<RingTag, WittError> {
    match (ring, p) {
        ("Zp", Some(p)) => Ok(RingTag::Zp(p)),
        ("Zp", None) => Err(WittError::Parse("ring Zp needs a prime \"p\"".into())),
        ("Z", None) => Ok(RingTag::Z),
        ("QzP", None) => Ok(RingTag::QzP),
        ("QzFull", None) => Ok(RingTag::QzFull),
        (r @ ("Z" | "QzP" | "QzFull"), Some(_)) => Err(WittError::Parse(format!("ring {r} takes no \"p\""))),
        (r, _) => Err(WittError::Parse(format!("unknown ring '{r}', expected Zp, Z, QzP or QzFull"))),
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LinkingFormJson {
    ring: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    p: Option<u64>,
    epsilon: String,
    invariant_factors: Vec<String>,
    gram: Vec<Vec<String>>,
}

/// A linking form over either coefficient ring, as read from JSON.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyLinkingForm {
    Int(IntLinkingForm),
    Laurent(LaurentLinkingForm),
}

impl AnyLinkingForm {
    pub fn from_json(s: &str) -> Result<Self, WittError> {
        let j: LinkingFormJson = from_str(s)?;
        let tag = parse_tag(&j.ring, j.p)?;
        if tag.is_laurent() {
            Ok(AnyLinkingForm::Laurent(build_form(tag, &j)?))
        } else {
            Ok(AnyLinkingForm::Int(build_form(tag, &j)?))
        }
    }

    pub fn to_json(&self) -> String {
        match self {
            AnyLinkingForm::Int(l) => linking_form_to_json(l),
            AnyLinkingForm::Laurent(l) => linking_form_to_json(l),
        }
    }
}

fn build_form<R: LinkRing>(tag: RingTag, j: &LinkingFormJson) -> Result<LinkingForm<R>, WittError> {
    let epsilon = R::parse_elem(&j.epsilon)?;
    let factors = j.invariant_factors.iter().map(|s| R::parse_elem(s)).collect::<Result<Vec<_>, _>>()?;
    let rows = j
        .gram
        .iter()
        .map(|r| r.iter().map(|s| s.parse::<FracMod<R>>()).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    if rows.len() != factors.len() || rows.iter().any(|r| r.len() != factors.len()) {
        return Err(WittError::Parse(format!("gram must be {n}x{n}", n = factors.len())));
    }
    let gram = Matrix::from_fn(factors.len(), factors.len(), |i, k| rows[i][k].clone());
    LinkingForm::new(tag, epsilon, factors, gram)
}

pub fn linking_form_to_json<R: LinkRing>(l: &LinkingForm<R>) -> String {
    let (ring, p) = tag_fields(l.tag());
    to_pretty(&LinkingFormJson {
        ring,
        p,
        epsilon: l.epsilon().to_string(),
        invariant_factors: l.invariant_factors().iter().map(|d| d.to_string()).collect(),
        gram: l.gram().to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect(),
    })
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PlaceJson {
    interval: [String; 2],
    sigma: i64,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
enum InvariantJson {
    Fp { code: Vec<u8> },
    Signatures { places: Vec<PlaceJson>, rank_parity: u8 },
}

fn invariant_json(i: &Invariant) -> InvariantJson {
    match i {
        Invariant::Fp(c) => InvariantJson::Fp { code: c.code() },
        Invariant::Signatures { places, rank_parity } => InvariantJson::Signatures {
            places: places
                .iter()
                .map(|s| PlaceJson {
                    interval: [format_rational(&s.interval.0), format_rational(&s.interval.1)],
                    sigma: s.sigma,
                })
                .collect(),
            rank_parity: *rank_parity,
        },
    }
}

fn invariant_from(j: InvariantJson, ring: RingTag, prime: &str) -> Result<Invariant, WittError> {
    match j {
        InvariantJson::Fp { code } => {
            if ring.is_laurent() {
                return Err(WittError::Parse("F_p invariant over a Laurent ring".into()));
            }
            let p: u64 = prime.parse().map_err(|_| WittError::Parse(format!("invalid integer prime '{prime}'")))?;
            Ok(Invariant::Fp(WittClassFp::from_code(p, &code)?))
        }
        InvariantJson::Signatures { places, rank_parity } => {
            if !ring.is_laurent() {
                return Err(WittError::Parse("signature invariant over an integer ring".into()));
            }
            if rank_parity > 1 {
                return Err(WittError::Parse(format!("rank parity must be 0 or 1, got {rank_parity}")));
            }
            let bad = |s: &str| WittError::Parse(format!("invalid rational '{s}'"));
            let places = places
                .into_iter()
                .map(|p| {
                    let a = parse_rational(&p.interval[0]).ok_or_else(|| bad(&p.interval[0]))?;
                    let b = parse_rational(&p.interval[1]).ok_or_else(|| bad(&p.interval[1]))?;
                    Ok(PlaceSignature { interval: (a, b), sigma: p.sigma })
                })
                .collect::<Result<Vec<_>, WittError>>()?;
            Ok(Invariant::Signatures { places, rank_parity })
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DwEntryJson {
    prime: String,
    l: u32,
    invariant: InvariantJson,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DwClassJson {
    ring: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    p: Option<u64>,
    complete: bool,
    entries: Vec<DwEntryJson>,
}

fn dw_json(c: &DWClass) -> DwClassJson {
    let (ring, p) = tag_fields(c.ring);
    DwClassJson {
        ring,
        p,
        complete: c.complete,
        entries: c
            .entries
            .iter()
            .map(|e| DwEntryJson { prime: e.prime.clone(), l: e.l, invariant: invariant_json(&e.invariant) })
            .collect(),
    }
}

fn dw_from(j: DwClassJson) -> Result<DWClass, WittError> {
    let ring = parse_tag(&j.ring, j.p)?;
    let entries = j
        .entries
        .into_iter()
        .map(|e| {
            if e.l == 0 {
                return Err(WittError::Parse("level l must be positive".into()));
            }
            let invariant = invariant_from(e.invariant, ring, &e.prime)?;
            Ok(DwEntry { prime: e.prime, l: e.l, invariant })
        })
        .collect::<Result<Vec<_>, WittError>>()?;
    Ok(DWClass { ring, complete: j.complete, entries }.normalized())
}

pub fn dw_class_to_json(c: &DWClass) -> String {
    to_pretty(&dw_json(c))
}

pub fn dw_class_from_json(s: &str) -> Result<DWClass, WittError> {
    dw_from(from_str(s)?)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WittEntryJson {
    prime: String,
    invariant: InvariantJson,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WittClassJson {
    ring: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    p: Option<u64>,
    complete: bool,
    entries: Vec<WittEntryJson>,
}

fn witt_json(c: &WittClass) -> WittClassJson {
    let (ring, p) = tag_fields(c.ring);
    WittClassJson {
        ring,
        p,
        complete: c.complete,
        entries: c
            .entries
            .iter()
            .map(|e| WittEntryJson { prime: e.prime.clone(), invariant: invariant_json(&e.invariant) })
            .collect(),
    }
}

fn witt_from(j: WittClassJson) -> Result<WittClass, WittError> {
    let ring = parse_tag(&j.ring, j.p)?;
    let entries = j
        .entries
        .into_iter()
        .map(|e| {
            let invariant = invariant_from(e.invariant, ring, &e.prime)?;
            Ok(WittEntry { prime: e.prime, invariant })
        })
        .collect::<Result<Vec<_>, WittError>>()?;
    Ok(WittClass { ring, complete: j.complete, entries })
}

pub fn witt_class_to_json(c: &WittClass) -> String {
    to_pretty(&witt_json(c))
}

pub fn witt_class_from_json(s: &str) -> Result<WittClass, WittError> {
    witt_from(from_str(s)?)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SeifertJson {
    epsilon: i8,
    matrix: Vec<Vec<String>>,
}

fn seifert_json(f: &SeifertForm) -> SeifertJson {
    SeifertJson {
        epsilon: f.epsilon(),
        matrix: f.psi().to_rows().iter().map(|r| r.iter().map(format_rational).collect()).collect(),
    }
}

fn seifert_from(j: SeifertJson) -> Result<SeifertForm, WittError> {
    let rows = j
        .matrix
        .iter()
        .map(|r| {
            r.iter()
                .map(|s| parse_rational(s).ok_or_else(|| WittError::Parse(format!("invalid rational '{s}'"))))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    SeifertForm::new(Matrix::from_rows(rows)?, j.epsilon)
}

pub fn seifert_form_to_json(f: &SeifertForm) -> String {
    to_pretty(&seifert_json(f))
}

pub fn seifert_form_from_json(s: &str) -> Result<SeifertForm, WittError> {
    seifert_from(from_str(s)?)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PrimeRowJson {
    prime: String,
    symmetric: bool,
    multiplicity: u32,
    l_profile: Vec<u32>,
    places: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OddRankJson {
    prime: String,
    l: u32,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ReportJson {
    epsilon: i8,
    alexander: String,
    primes: Vec<PrimeRowJson>,
    dw: DwClassJson,
    witt: WittClassJson,
    odd_rank: Vec<OddRankJson>,
    verdict: String,
}

pub fn report_to_json(r: &Report) -> String {
    to_pretty(&ReportJson {
        epsilon: r.epsilon,
        alexander: r.alexander.to_string(),
        primes: r
            .primes
            .iter()
            .map(|p| PrimeRowJson {
                prime: p.prime.clone(),
                symmetric: p.symmetric,
                multiplicity: p.multiplicity,
                l_profile: p.l_profile.clone(),
                places: p.places,
            })
            .collect(),
        dw: dw_json(&r.dw),
        witt: witt_json(&r.witt),
        odd_rank: r.odd_rank.iter().map(|(prime, l)| OddRankJson { prime: prime.clone(), l: *l }).collect(),
        verdict: r.verdict.as_str().into(),
    })
}

pub fn report_from_json(s: &str) -> Result<Report, WittError> {
    let j: ReportJson = from_str(s)?;
    Ok(Report {
        epsilon: j.epsilon,
        alexander: j.alexander.parse::<LaurentPoly>()?,
        primes: j
            .primes
            .into_iter()
            .map(|p| PrimeRow {
                prime: p.prime,
                symmetric: p.symmetric,
                multiplicity: p.multiplicity,
                l_profile: p.l_profile,
                places: p.places,
            })
            .collect(),
        dw: dw_from(j.dw)?,
        witt: witt_from(j.witt)?,
        verdict: Verdict::parse(&j.verdict)
            .ok_or_else(|| WittError::Parse(format!("unknown verdict '{}'", j.verdict)))?,
        odd_rank: j.odd_rank.into_iter().map(|o| (o.prime, o.l)).collect(),
    })
}

/// Result of the exhaustive metabolic and hyperbolic searches.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleReport {
    pub metabolic: bool,
    pub hyperbolic: bool,
    pub witnesses: OracleWitnesses,
}

/// Generators, in coordinates of the form's generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleWitnesses {
    pub lagrangian: Option<Vec<Vec<u64>>>,
    pub hyperbolic_pair: Option<[Vec<Vec<u64>>; 2]>,
}

impl OracleReport {
    pub fn new(lagrangian: Option<Subgroup>, pair: Option<(Subgroup, Subgroup)>) -> Self {
        OracleReport {
            metabolic: lagrangian.is_some(),
            hyperbolic: pair.is_some(),
            witnesses: OracleWitnesses {
                lagrangian: lagrangian.map(|g| g.generators),
                hyperbolic_pair: pair.map(|(a, b)| [a.generators, b.generators]),
            },
        }
    }

    pub fn to_json(&self) -> String {
        to_pretty(self)
    }

    pub fn from_json(s: &str) -> Result<Self, WittError> {
        let r: OracleReport = from_str(s)?;
        if r.metabolic != r.witnesses.lagrangian.is_some() || r.hyperbolic != r.witnesses.hyperbolic_pair.is_some() {
            return Err(WittError::Parse("oracle flags disagree with witnesses".into()));
        }
        Ok(r)
    }
}

/// Reads a form that must be over `Zp` or `Z`.
pub fn int_form_from_json(s: &str) -> Result<IntLinkingForm, WittError> {
    match AnyLinkingForm::from_json(s)? {
        AnyLinkingForm::Int(l) => Ok(l),
        AnyLinkingForm::Laurent(_) => Err(WittError::Parse("expected an integer ring (Zp or Z)".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seifert::{covering, doubly_slice_report};
    use crate::witt::{forgetful, multisignature};

    const Z9: &str = r#"{"ring": "Zp", "p": 3, "epsilon": "1", "invariant_factors": ["9"], "gram": [["1/9"]]}"#;

    #[test]
    fn linking_form_round_trip() {
        let l = AnyLinkingForm::from_json(Z9).unwrap();
        let s = l.to_json();
        assert_eq!(AnyLinkingForm::from_json(&s).unwrap(), l);
        assert_eq!(AnyLinkingForm::from_json(&s).unwrap().to_json(), s);
        let f = SeifertForm::from_ints(&[&[-1, 1], &[0, -1]], -1).unwrap();
        let c = AnyLinkingForm::Laurent(covering(&f).unwrap().form);
        let s = c.to_json();
        assert_eq!(AnyLinkingForm::from_json(&s).unwrap(), c);
    }

    #[test]
    fn classes_and_reports_round_trip() {
        let AnyLinkingForm::Int(l) = AnyLinkingForm::from_json(Z9).unwrap() else { panic!() };
        let c = multisignature(&l).unwrap();
        assert_eq!(dw_class_from_json(&dw_class_to_json(&c)).unwrap(), c);
        let w = forgetful(&c).unwrap();
        assert_eq!(witt_class_from_json(&witt_class_to_json(&w)).unwrap(), w);
        let f = SeifertForm::from_ints(&[&[-1, 1], &[0, -1]], -1).unwrap();
        assert_eq!(seifert_form_from_json(&seifert_form_to_json(&f)).unwrap(), f);
        let r = doubly_slice_report(&f).unwrap();
        let s = report_to_json(&r);
        assert_eq!(report_from_json(&s).unwrap(), r);
        assert!(s.find("\"epsilon\"").unwrap() < s.find("\"verdict\"").unwrap());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(AnyLinkingForm::from_json("{"), Err(WittError::Parse(_))));
        assert!(matches!(
            AnyLinkingForm::from_json(r#"{"ring": "Zq", "epsilon": "1", "invariant_factors": [], "gram": []}"#),
            Err(WittError::Parse(_))
        ));
        assert!(matches!(
            AnyLinkingForm::from_json(
                r#"{"ring": "Zp", "p": 3, "epsilon": "1", "invariant_factors": ["9"], "gram": [["1/9", "0"]]}"#
            ),
            Err(WittError::Parse(_))
        ));
        assert!(matches!(
            seifert_form_from_json(r#"{"epsilon": 1, "matrix": [["0", "1"], ["-1", "0"]]}"#),
            Err(WittError::Precondition(_))
        ));
    }
}
