//! Regression corpora: expected judgments for a list of phrases.
//!
//! Format, one case per line, tab separated:
//!
//! ```text
//! OK|BAD|KNOWN_DIVERGENT <TAB> phrase [<TAB> agr [<TAB> wh [<TAB> note]]]
//! ```
//!
//! `agr` and `wh` may be left empty. Lines starting with `#` are comments.

use std::fmt;

use crate::features::{Agr, Polarity};
use crate::lexicon::Lexicon;
use crate::parser::{judge, Judgment, PhraseError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expectation {
    Ok,
    Bad,
    /// Reported, never fails a run.
    KnownDivergent,
}

impl fmt::Display for Expectation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Expectation::Ok => "OK",
            Expectation::Bad => "BAD",
            Expectation::KnownDivergent => "KNOWN_DIVERGENT",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusCase {
    pub line: usize,
    pub expectation: Expectation,
    pub phrase: String,
    pub expected_agr: Option<Agr>,
    pub expected_wh: Option<Polarity>,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("corpus line {line}: {detail}")]
pub struct CorpusError {
    pub line: usize,
    pub detail: String,
}

pub fn parse_corpus(text: &str) -> Result<Vec<CorpusCase>, CorpusError> {
    let mut cases = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let raw = raw.trim_end_matches('\r');
        if raw.trim().is_empty() || raw.trim_start().starts_with('#') {
            continue;
        }
        let err = |detail: String| CorpusError { line, detail };
        let cols: Vec<&str> = raw.split('\t').collect();
        let expectation = match cols[0].trim() {
            "OK" => Expectation::Ok,
            "BAD" => Expectation::Bad,
            "KNOWN_DIVERGENT" => Expectation::KnownDivergent,
            other => return Err(err(format!("unknown expectation `{other}`"))),
        };
        let phrase = cols
            .get(1)
            .map(|p| p.trim())
            .filter(|p| !p.is_empty())
            .ok_or_else(|| err("missing phrase".into()))?;
        let expected_agr = match cols.get(2).map(|c| c.trim()).filter(|c| !c.is_empty()) {
            Some(a) => Some(a.parse().map_err(|_| err(format!("unknown agr `{a}`")))?),
            None => None,
        };
        let expected_wh = match cols.get(3).map(|c| c.trim()).filter(|c| !c.is_empty()) {
            Some(w) => Some(w.parse().map_err(|_| err(format!("unknown wh `{w}`")))?),
            None => None,
        };
        if cols.len() > 5 {
            return Err(err(format!("expected at most 5 columns, found {}", cols.len())));
        }
        cases.push(CorpusCase {
            line,
            expectation,
            phrase: phrase.to_string(),
            expected_agr,
            expected_wh,
            note: cols.get(4).map(|n| n.trim().to_string()).unwrap_or_default(),
        });
    }
    Ok(cases)
}

#[derive(Clone, Debug, PartialEq)]
pub struct CaseOutcome {
    pub case: CorpusCase,
    pub judgment: Result<Judgment, PhraseError>,
    /// `None` when the case matched its expectation.
    pub diff: Option<String>,
}

impl CaseOutcome {
    pub fn passed(&self) -> bool {
        self.diff.is_none()
    }

    pub fn counts_as_failure(&self) -> bool {
        !self.passed() && self.case.expectation != Expectation::KnownDivergent
    }
}

fn verdict(j: &Result<Judgment, PhraseError>) -> String {
    match j {
        Ok(Judgment::Grammatical(a)) => {
            let readings: Vec<String> = a
                .iter()
                .map(|x| format!("agr={} wh={}", x.np_agr, x.np_wh))
                .collect();
            format!("GRAMMATICAL ({})", readings.join("; "))
        }
        Ok(Judgment::Ungrammatical(c)) => format!("UNGRAMMATICAL ({})", c[0]),
        Err(e) => format!("ERROR ({e})"),
    }
}

pub fn check_case(case: &CorpusCase, lexicon: &Lexicon) -> CaseOutcome {
    let judgment = judge(&case.phrase, lexicon);
    let grammatical = matches!(judgment, Ok(Judgment::Grammatical(_)));
    let features_match = match &judgment {
        Ok(Judgment::Grammatical(a)) => a.iter().any(|x| {
            case.expected_agr.is_none_or(|agr| agr == x.np_agr)
                && case.expected_wh.is_none_or(|wh| wh == x.np_wh)
        }),
        _ => false,
    };
    let ok = match case.expectation {
        Expectation::Ok => grammatical && features_match,
        Expectation::Bad => matches!(judgment, Ok(Judgment::Ungrammatical(_))),
        // Divergent cases record the linguistically expected reading, which
        // the grammar is known not to produce.
        Expectation::KnownDivergent => grammatical && features_match,
    };
    let diff = (!ok).then(|| {
        let mut want = match case.expectation {
            Expectation::Bad => "UNGRAMMATICAL".to_string(),
            _ => "GRAMMATICAL".to_string(),
        };
        if case.expectation != Expectation::Bad {
            if let Some(a) = case.expected_agr {
                want.push_str(&format!(" agr={a}"));
            }
            if let Some(w) = case.expected_wh {
                want.push_str(&format!(" wh={w}"));
            }
        }
        format!("expected {want}, got {}", verdict(&judgment))
    });
    CaseOutcome {
        case: case.clone(),
        judgment,
        diff,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CorpusReport {
    pub outcomes: Vec<CaseOutcome>,
}

impl CorpusReport {
    pub fn failures(&self) -> usize {
        self.outcomes.iter().filter(|o| o.counts_as_failure()).count()
    }

    pub fn divergent(&self) -> usize {
        self.outcomes
            .iter()
            .filter(|o| o.case.expectation == Expectation::KnownDivergent)
            .count()
    }

    pub fn passed(&self) -> usize {
        self.outcomes
            .iter()
            .filter(|o| o.passed() && o.case.expectation != Expectation::KnownDivergent)
            .count()
    }

    pub fn all_passed(&self) -> bool {
        self.failures() == 0
    }

    pub fn summary(&self) -> String {
        format!(
            "{} cases: {} passed, {} failed, {} known-divergent",
            self.outcomes.len(),
            self.passed(),
            self.failures(),
            self.divergent()
        )
    }
}

/// Judges every case. Cases are split across threads; outcomes keep input
/// order.
pub fn run_corpus(cases: &[CorpusCase], lexicon: &Lexicon) -> CorpusReport {
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(8);
    let chunk = cases.len().div_ceil(workers).max(1);
    let outcomes = std::thread::scope(|s| {
        let handles: Vec<_> = cases
            .chunks(chunk)
            .map(|part| s.spawn(move || part.iter().map(|c| check_case(c, lexicon)).collect::<Vec<_>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("corpus worker panicked"))
            .collect()
    });
    CorpusReport { outcomes }
}
