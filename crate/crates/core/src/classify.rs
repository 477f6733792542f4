//! Decide whether a two-variable word is a power operation.
//!
//! The decision is read off the normal form. Alongside it, the word is
//! pushed into the free group on `{x, y1, y2}` twice (`y ↦ y1` and
//! `y ↦ y2`) and the relator `w1 · w2⁻¹` is cyclically reduced. A power
//! operation leaves exactly `y1 y2⁻¹`; any other outcome means the word
//! cannot be an endofunctor. The two paths are checked against each other on
//! every call.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::freealg::{quandle_image, quandle_nf, rack_nf};
use crate::group::{GroupWord, Letter};
use crate::term::{gen, Generator, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("word uses generators outside {{x, y}}: {}", .0.iter().map(|g| g.as_str()).collect::<Vec<_>>().join(", "))]
    WrongVariables(Vec<Generator>),
    #[error("normal-form and relator decisions disagree on `{word}`: {detail}")]
    CrossCheckFailed { word: String, detail: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Theory {
    #[serde(rename = "quandle")]
    Quandle,
    #[serde(rename = "rack")]
    Rack,
}

impl Theory {
    pub fn keyword(self) -> &'static str {
        match self {
            Theory::Quandle => "quandle",
            Theory::Rack => "rack",
        }
    }
}

impl std::fmt::Display for Theory {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.keyword())
    }
}

impl std::str::FromStr for Theory {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "quandle" => Ok(Theory::Quandle),
            "rack" => Ok(Theory::Rack),
            other => Err(format!("unknown theory {other:?}, expected `quandle` or `rack`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Reason {
    XSurvives,
    RelatorTrivial,
    BaseNotY,
    PrefixNotTwoBlock,
}

/// The relator computation for a word over `{x, y}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelatorReport {
    pub w1: GroupWord,
    pub w2: GroupWord,
    pub relator: GroupWord,
    pub cyclically_reduced: GroupWord,
    pub survivors: BTreeSet<Generator>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RefutationTrace {
    #[serde(flatten)]
    pub report: RelatorReport,
    pub reason: Reason,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Classification {
    /// `x ▷^k y`.
    QuandlePower { k: i64 },
    /// `x ▷^k F^j(y)`.
    RackPower { k: i64, j: i64 },
    NotEndofunctor { trace: RefutationTrace },
}

impl Classification {
    pub fn is_endofunctor(&self) -> bool {
        !matches!(self, Classification::NotEndofunctor { .. })
    }
}

pub fn x() -> Generator {
    gen("x")
}
pub fn y() -> Generator {
    gen("y")
}
pub fn y1() -> Generator {
    gen("y1")
}
pub fn y2() -> Generator {
    gen("y2")
}

fn check_variables(w: &Word) -> Result<(), ClassifyError> {
    let allowed = [x(), y()];
    let extra: Vec<Generator> = w
        .generators()
        .into_iter()
        .filter(|g| !allowed.contains(g))
        .collect();
    if extra.is_empty() {
        Ok(())
    } else {
        Err(ClassifyError::WrongVariables(extra))
    }
}

/// `w1 = w[y ↦ y1]`, `w2 = w[y ↦ y2]` in the free group on `{x, y1, y2}`,
/// and the cyclic reduction of `w1 · w2⁻¹`.
pub fn one_relator_test(w: &Word) -> Result<RelatorReport, ClassifyError> {
    check_variables(w)?;
    let image = |target: Generator| {
        let rename = BTreeMap::from([(x(), x()), (y(), target)]);
        quandle_image(w, &rename).expect("rename covers {x, y}")
    };
    let w1 = image(y1());
    let w2 = image(y2());
    let relator = w1.concat(&w2.invert());
    let cyclically_reduced = relator.cyclic_reduce();
    let survivors = cyclically_reduced.generators();
    Ok(RelatorReport {
        w1,
        w2,
        relator,
        cyclically_reduced,
        survivors,
    })
}

fn is_y1_y2_inverse(word: &GroupWord) -> bool {
    word.letters() == [Letter::pos(y1()), Letter::neg(y2())]
}

fn cross_check(w: &Word, report: &RelatorReport, power: Option<i64>) -> Result<(), ClassifyError> {
    let fail = |detail: String| {
        Err(ClassifyError::CrossCheckFailed {
            word: w.to_string(),
            detail,
        })
    };
    let relator_says_power = is_y1_y2_inverse(&report.cyclically_reduced);
    match power {
        Some(k) => {
            if !relator_says_power {
                return fail(format!(
                    "power {k} but relator reduces to {}",
                    report.cyclically_reduced
                ));
            }
            let extracted = report.w1.as_conjugate_power(&x(), &y1());
            if extracted != Some(k) {
                return fail(format!("power {k} but w1 = {} gives {extracted:?}", report.w1));
            }
        }
        None if relator_says_power => {
            return fail("relator reduces to y1 y2^-1 but normal form is not a power".into());
        }
        None => {}
    }
    Ok(())
}

pub fn classify_quandle(w: &Word) -> Result<Classification, ClassifyError> {
    let report = one_relator_test(w)?;
    let nf = quandle_nf(w);
    let power = if nf.base == y() {
        nf.prefix.as_two_block_power(&x(), &y()).map(|(k, j)| {
            debug_assert_eq!(j, 0, "prefix cannot end in the base");
            k
        })
    } else {
        None
    };
    cross_check(w, &report, power)?;
    Ok(match power {
        Some(k) => Classification::QuandlePower { k },
        None => {
            let reason = if report.survivors.contains(&x()) {
                Reason::XSurvives
            } else if report.relator.is_identity() {
                Reason::RelatorTrivial
            } else {
                Reason::BaseNotY
            };
            Classification::NotEndofunctor {
                trace: RefutationTrace { report, reason },
            }
        }
    })
}

pub fn classify_rack(w: &Word) -> Result<Classification, ClassifyError> {
    let report = one_relator_test(w)?;
    let nf = rack_nf(w);
    let power = if nf.base == y() {
        nf.prefix.as_two_block_power(&x(), &y())
    } else {
        None
    };
    cross_check(w, &report, power.map(|(k, _)| k))?;
    Ok(match power {
        Some((k, j)) => Classification::RackPower { k, j },
        None => {
            let reason = if nf.base == y() {
                Reason::PrefixNotTwoBlock
            } else if report.survivors.contains(&x()) {
                Reason::XSurvives
            } else {
                Reason::BaseNotY
            };
            Classification::NotEndofunctor {
                trace: RefutationTrace { report, reason },
            }
        }
    })
}

pub fn classify(w: &Word, theory: Theory) -> Result<Classification, ClassifyError> {
    match theory {
        Theory::Quandle => classify_quandle(w),
        Theory::Rack => classify_rack(w),
    }
}
