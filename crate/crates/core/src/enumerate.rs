//! Exhaustive enumeration of determiner sequences, and a deliberately naive
//! second judge to check the composition engine against.

use std::fmt::Write as _;

use crate::compose::{attach_to_noun, compose_sequence, Clash, DetPhrase, DetUnit, NpFeatures};
use crate::features::{Agr, FeatureBundle, Polarity};
use crate::lexicon::{DetEntry, NounEntry};

pub const MAX_LEN: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum EnumerateError {
    #[error("max length must be between 1 and {MAX_LEN}, got {0}")]
    MaxLen(usize),
    #[error("determiner inventory is empty")]
    EmptyInventory,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Accepted {
    pub phrase: DetPhrase,
    pub np: NpFeatures,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub sequence: Vec<String>,
    /// Inventory indices of `sequence`.
    pub indices: Vec<usize>,
    pub result: Result<Accepted, Clash>,
}

impl Outcome {
    pub fn is_accepted(&self) -> bool {
        self.result.is_ok()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EnumerationReport {
    pub max_len: usize,
    pub det_inventory: Vec<String>,
    pub noun: String,
    /// Every sequence, shorter first, lexicographic by inventory index within
    /// a length.
    pub outcomes: Vec<Outcome>,
}

impl EnumerationReport {
    pub fn accepted(&self) -> impl Iterator<Item = (&[String], &FeatureBundle)> {
        self.outcomes.iter().filter_map(|o| match &o.result {
            Ok(a) => Some((o.sequence.as_slice(), &a.phrase.root)),
            Err(_) => None,
        })
    }

    pub fn rejected(&self) -> impl Iterator<Item = (&[String], &Clash)> {
        self.outcomes.iter().filter_map(|o| match &o.result {
            Err(c) => Some((o.sequence.as_slice(), c)),
            Ok(_) => None,
        })
    }

    /// One row per sequence: verdict, sequence, root features, clash.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for o in &self.outcomes {
            let seq = o.sequence.join(" ");
            match &o.result {
                Ok(a) => writeln!(out, "ACCEPT\t{seq}\t{}\t", a.phrase.root).unwrap(),
                Err(c) => {
                    let clash = match c.feature {
                        Some(f) => format!("{}:{}", c.stage, f),
                        None => c.stage.to_string(),
                    };
                    writeln!(out, "REJECT\t{seq}\t\t{clash}").unwrap()
                }
            }
        }
        out
    }
}

fn check_bounds(inventory: &[DetEntry], max_len: usize) -> Result<(), EnumerateError> {
    if !(1..=MAX_LEN).contains(&max_len) {
        return Err(EnumerateError::MaxLen(max_len));
    }
    if inventory.is_empty() {
        return Err(EnumerateError::EmptyInventory);
    }
    Ok(())
}

/// Index tuples of every length `1..=max_len`, in report order.
pub fn sequences(size: usize, max_len: usize) -> impl Iterator<Item = Vec<usize>> {
    (1..=max_len).flat_map(move |len| {
        let total = size.pow(len as u32);
        (0..total).map(move |mut code| {
            let mut seq = vec![0; len];
            for slot in seq.iter_mut().rev() {
                *slot = code % size;
                code /= size;
            }
            seq
        })
    })
}

/// Composes and attaches every sequence over `inventory` up to `max_len`.
pub fn enumerate(
    inventory: &[DetEntry],
    max_len: usize,
    noun: &NounEntry,
) -> Result<EnumerationReport, EnumerateError> {
    check_bounds(inventory, max_len)?;
    let outcomes = sequences(inventory.len(), max_len)
        .map(|indices| {
            let units = indices
                .iter()
                .map(|&i| DetUnit::from_entry(inventory[i].clone()))
                .collect();
            let result = compose_sequence(units).and_then(|phrase| {
                let position = indices.len();
                attach_to_noun(Some(&phrase), noun)
                    .map(|np| Accepted { phrase, np })
                    .map_err(|c| c.at(position))
            });
            Outcome {
                sequence: indices.iter().map(|&i| inventory[i].lemma.clone()).collect(),
                indices,
                result,
            }
        })
        .collect();
    Ok(EnumerationReport {
        max_len,
        det_inventory: inventory.iter().map(|d| d.lemma.clone()).collect(),
        noun: noun.lemma.clone(),
        outcomes,
    })
}

// Oracle below: keep it free of calls into `compose` and `features`
// unification.

const SG: usize = 0;
const PL: usize = 1;
const SGPL: usize = 2;
const FREE: usize = 3;

/// Agreement meet written out as a table, rows and columns in the order
/// 3sg, 3pl, 3sgpl, unspecified. `None` is a clash.
const AGR_TABLE: [[Option<usize>; 4]; 4] = [
    [Some(SG), None, Some(SG), Some(SG)],
    [None, Some(PL), Some(PL), Some(PL)],
    [Some(SG), Some(PL), Some(SGPL), Some(SGPL)],
    [Some(SG), Some(PL), Some(SGPL), Some(FREE)],
];

fn agr_slot(agr: Agr) -> usize {
    match agr {
        Agr::ThreeSg => SG,
        Agr::ThreePl => PL,
        Agr::ThreeSgPl => SGPL,
        Agr::Unspec => FREE,
    }
}

fn polar_list(b: &FeatureBundle) -> [Polarity; 7] {
    [
        b.definite,
        b.quantity,
        b.cardinal,
        b.genitive,
        b.wh,
        b.decreasing,
        b.constancy,
    ]
}

fn literally_matches(required: Polarity, found: Polarity) -> bool {
    required == Polarity::Unspec || found == Polarity::Unspec || required == found
}

/// Accepts a sequence iff every adjacent pair is licensed by the left
/// determiner's restriction against the right determiner's own features,
/// the agreement thread survives right to left, and the noun agrees.
pub fn naive_judge(sequence: &[DetEntry], noun: &NounEntry) -> bool {
    if sequence.is_empty() {
        return !noun.det_required;
    }
    if !noun.takes_det {
        return false;
    }
    let mut thread = agr_slot(sequence[sequence.len() - 1].own.agr);
    for pair in sequence.windows(2).rev() {
        let (left, right) = (&pair[0], &pair[1]);
        let Some(sel) = &left.selection else {
            return false;
        };
        let pairs_ok = polar_list(sel)
            .iter()
            .zip(polar_list(&right.own).iter())
            .all(|(&want, &have)| literally_matches(want, have));
        if !pairs_ok || AGR_TABLE[agr_slot(sel.agr)][thread].is_none() {
            return false;
        }
        if left.agree_with_foot {
            match AGR_TABLE[agr_slot(left.own.agr)][thread] {
                Some(next) => thread = next,
                None => return false,
            }
        }
    }
    AGR_TABLE[thread][agr_slot(noun.agr)].is_some()
}

/// Runs [`naive_judge`] over the same sequences as `report` and returns the
/// sequences on which the two disagree.
pub fn oracle_disagreements(
    inventory: &[DetEntry],
    report: &EnumerationReport,
    noun: &NounEntry,
) -> Vec<Vec<String>> {
    report
        .outcomes
        .iter()
        .filter(|o| {
            let seq: Vec<DetEntry> = o.indices.iter().map(|&i| inventory[i].clone()).collect();
            naive_judge(&seq, noun) != o.is_accepted()
        })
        .map(|o| o.sequence.clone())
        .collect()
}
