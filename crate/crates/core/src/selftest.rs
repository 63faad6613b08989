//! A small embedded corpus with known answers, run by `wittkit selftest`.

use crate::error::WittError;
use crate::io::{int_form_from_json, seifert_form_from_json, AnyLinkingForm};
use crate::linking::oracle::{oracle_is_hyperbolic, oracle_is_metabolic};
use crate::linking::IntLinkingForm;
use crate::seifert::{doubly_slice_report, Verdict};
use crate::witt::{forgetful, multisignature, witt_class_via_devissage, Invariant};

pub const TREFOIL: &str = r#"{"epsilon": -1, "matrix": [["-1", "1"], ["0", "-1"]]}"#;
pub const FIGURE_EIGHT: &str = r#"{"epsilon": -1, "matrix": [["1", "1"], ["0", "-1"]]}"#;
pub const STEVEDORE: &str = r#"{"epsilon": -1, "matrix": [["1", "1"], ["0", "-2"]]}"#;
pub const Z9: &str = r#"{"ring": "Zp", "p": 3, "epsilon": "1", "invariant_factors": ["9"], "gram": [["1/9"]]}"#;
pub const Z3: &str = r#"{"ring": "Zp", "p": 3, "epsilon": "1", "invariant_factors": ["3"], "gram": [["1/3"]]}"#;
pub const Z5: &str = r#"{"ring": "Zp", "p": 5, "epsilon": "1", "invariant_factors": ["5"], "gram": [["1/5"]]}"#;
pub const Z_PLUS_ONE: &str =
    r#"{"ring": "QzFull", "epsilon": "z^-1", "invariant_factors": ["z+1"], "gram": [["(1)/(z+1)"]]}"#;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn copies(l: &IntLinkingForm, n: usize) -> Result<IntLinkingForm, WittError> {
    IntLinkingForm::sum_all(l.tag(), l.epsilon().clone(), std::iter::repeat_n(l, n))
}

fn z9(max: usize) -> Result<String, WittError> {
    let l = int_form_from_json(Z9)?;
    let met = oracle_is_metabolic(&l, max)?.is_some();
    let hyp = oracle_is_hyperbolic(&l, max)?.is_some();
    let c = multisignature(&l)?;
    let keys: Vec<(String, u32)> = c.entries.iter().map(|e| (e.prime.clone(), e.l)).collect();
    let ok = met
        && !hyp
        && keys == [("3".to_string(), 2)]
        && forgetful(&c)?.is_zero()
        && witt_class_via_devissage(&l)?.is_zero();
    if ok {
        Ok("metabolic, not hyperbolic, single entry (3, l=2)".into())
    } else {
        Err(WittError::Internal(format!("metabolic {met}, hyperbolic {hyp}, entries {keys:?}")))
    }
}

/// Order of `[l]` in the double Witt group, cross-checked with the oracle.
fn order(src: &str, expected: usize, max: usize) -> Result<String, WittError> {
    let l = int_form_from_json(src)?;
    let c = multisignature(&l)?;
    let n = (1..=4).find(|&k| c.times(k as u32).map(|x| x.is_zero()).unwrap_or(false));
    let hyp_n = oracle_is_hyperbolic(&copies(&l, expected)?, max)?.is_some();
    let hyp_half = oracle_is_hyperbolic(&copies(&l, expected / 2)?, max)?.is_some();
    if n == Some(expected) && hyp_n && !hyp_half {
        Ok(format!("order {expected}"))
    } else {
        Err(WittError::Internal(format!("order {n:?}, oracle {hyp_n}/{hyp_half}")))
    }
}

fn knot(src: &str, verdict: Verdict, dw_zero: Option<bool>) -> Result<String, WittError> {
    let r = doubly_slice_report(&seifert_form_from_json(src)?)?;
    if r.verdict != verdict || dw_zero.is_some_and(|z| z != r.dw.is_zero()) {
        return Err(WittError::Internal(format!("verdict {}, DW zero {}", r.verdict, r.dw.is_zero())));
    }
    Ok(format!("Alexander {}, {}", r.alexander, r.verdict))
}

fn z_plus_one() -> Result<String, WittError> {
    let AnyLinkingForm::Laurent(l) = AnyLinkingForm::from_json(Z_PLUS_ONE)? else {
        return Err(WittError::Internal("expected a Laurent form".into()));
    };
    match multisignature(&l)?.entry("z+1", 1) {
        Some(Invariant::Signatures { places, .. }) if places.len() == 1 && places[0].sigma == 1 => {
            Ok("signature +1 at z = -1".into())
        }
        other => Err(WittError::Internal(format!("entry {other:?}"))),
    }
}

/// Runs every check; never panics.
pub fn run_selftest(max_oracle_size: usize) -> Vec<Check> {
    let checks: Vec<(&'static str, Result<String, WittError>)> = vec![
        ("Z/9 metabolic, DW entry at l=2", z9(max_oracle_size)),
        ("(Z/3, 1/3) has order 4", order(Z3, 4, max_oracle_size)),
        ("(Z/5, 1/5) has order 2", order(Z5, 2, max_oracle_size)),
        ("trefoil obstructed", knot(TREFOIL, Verdict::Obstructed, Some(false))),
        ("figure-eight no obstruction", knot(FIGURE_EIGHT, Verdict::NoObstructionFound, None)),
        ("stevedore zero class", knot(STEVEDORE, Verdict::NoObstructionFound, Some(true))),
        ("Q[z]/(z+1) signature", z_plus_one()),
    ];
    checks
        .into_iter()
        .map(|(name, r)| match r {
            Ok(detail) => Check { name, passed: true, detail },
            Err(e) => Check { name, passed: false, detail: e.to_string() },
        })
        .collect()
}
