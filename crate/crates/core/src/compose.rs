//! Determiner-phrase composition.
//!
//! A determiner standing alone anchors an initial tree whose root carries the
//! determiner's own features. A determiner that modifies another DetP anchors
//! an auxiliary tree: its selectional restriction is checked against the foot
//! (the DetP built so far), and the new root takes every feature from the
//! anchor except `agr`, which comes up from the foot. Anchors flagged
//! `agree_with_foot` additionally unify their own `agr` with the foot's.

use std::fmt;

use crate::features::{satisfy_diagnose, unify_agr, Agr, Feature, FeatureBundle, Polarity};
use crate::lexicon::{
    genitive_features, partitive_entry, AdverbEntry, DetEntry, DetKind, NounEntry,
};
use crate::parser::NpAnalysis;

/// The structure behind one determiner unit.
#[derive(Clone, Debug, PartialEq)]
pub enum UnitKind {
    /// A lexical determiner or genitive pronoun.
    Simple(DetEntry),
    Cardinal(DetEntry),
    /// `NP 's`, with the embedded NP's analysis.
    Genitive(Box<NpAnalysis>),
    /// `[DetP] head of` or `Det of`.
    Partitive {
        inner: Option<Box<DetPhrase>>,
        head: Option<NounEntry>,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct DetUnit {
    pub kind: UnitKind,
    pub own: FeatureBundle,
    pub selection: Option<FeatureBundle>,
    pub agree_with_foot: bool,
    /// A class-3 adverb modifying this unit, e.g. *almost* in *almost all*.
    pub modifier: Option<AdverbEntry>,
}

impl DetUnit {
    pub fn from_entry(entry: DetEntry) -> DetUnit {
        DetUnit {
            own: entry.own,
            selection: entry.selection,
            agree_with_foot: entry.agree_with_foot,
            modifier: None,
            kind: match entry.kind {
                DetKind::Cardinal => UnitKind::Cardinal(entry),
                _ => UnitKind::Simple(entry),
            },
        }
    }

    pub fn genitive(np: NpAnalysis) -> DetUnit {
        DetUnit {
            kind: UnitKind::Genitive(Box::new(np)),
            own: genitive_features(),
            selection: None,
            agree_with_foot: false,
            modifier: None,
        }
    }

    pub fn partitive(inner: Option<DetPhrase>, head: Option<NounEntry>) -> DetUnit {
        let part = partitive_entry();
        DetUnit {
            kind: UnitKind::Partitive {
                inner: inner.map(Box::new),
                head,
            },
            own: part.own,
            selection: part.selection,
            agree_with_foot: part.agree_with_foot,
            modifier: None,
        }
    }

    pub fn with_modifier(mut self, adverb: AdverbEntry) -> DetUnit {
        self.modifier = Some(adverb);
        self
    }

    /// The lexeme, for simple and cardinal units.
    pub fn lemma(&self) -> Option<&str> {
        match &self.kind {
            UnitKind::Simple(e) | UnitKind::Cardinal(e) => Some(&e.lemma),
            _ => None,
        }
    }

    pub fn is_partitive(&self) -> bool {
        matches!(self.kind, UnitKind::Partitive { .. })
    }

    /// Short name used in traces and diagnostics.
    pub fn label(&self) -> String {
        match &self.kind {
            UnitKind::Simple(e) => e.lemma.clone(),
            UnitKind::Cardinal(e) => format!("CARD({})", e.lemma),
            UnitKind::Genitive(np) => format!("GEN({} 's)", np.words()),
            UnitKind::Partitive { inner, head } => {
                let mut words = Vec::new();
                if let Some(inner) = inner {
                    words.push(inner.words());
                }
                if let Some(head) = head {
                    words.push(head.lemma.clone());
                }
                words.push("of".into());
                format!("PART({})", words.join(" "))
            }
        }
    }

    /// The surface words of this unit, including any modifier.
    pub fn words(&self) -> String {
        let body = match &self.kind {
            UnitKind::Simple(e) | UnitKind::Cardinal(e) => e.lemma.clone(),
            UnitKind::Genitive(np) => format!("{} 's", np.words()),
            UnitKind::Partitive { .. } => {
                let label = self.label();
                label["PART(".len()..label.len() - 1].to_string()
            }
        };
        match &self.modifier {
            Some(adv) => format!("{} {body}", adv.lemma),
            None => body,
        }
    }
}

/// Where the root's `agr` came from in one adjunction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AgrSource {
    /// Passed up from the foot unchanged.
    Foot,
    /// The anchor's own agr unified with the foot's.
    AnchorAndFoot,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AdjunctionStep {
    pub anchor: DetUnit,
    pub foot_root_before: FeatureBundle,
    /// The foot root after meeting the anchor's restriction.
    pub merged_foot: FeatureBundle,
    pub root_after: FeatureBundle,
    pub agr_source: AgrSource,
    /// Label of the foot's leftmost unit.
    pub foot_label: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DetPhrase {
    pub root: FeatureBundle,
    /// Leftmost first. The last unit anchors the initial tree.
    pub units: Vec<DetUnit>,
    /// One step per adjunction, innermost first.
    pub trace: Vec<AdjunctionStep>,
}

impl DetPhrase {
    pub fn words(&self) -> String {
        self.units
            .iter()
            .map(DetUnit::words)
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn leftmost(&self) -> &DetUnit {
        &self.units[0]
    }

    /// `[DetP u0 [DetP u1 [DetP u2]]]`, mirroring the right-nested adjunction.
    pub fn bracketed(&self) -> String {
        fn go(units: &[DetUnit]) -> String {
            let head = bracket_unit(&units[0]);
            if units.len() == 1 {
                format!("[DetP {head}]")
            } else {
                format!("[DetP {head} {}]", go(&units[1..]))
            }
        }
        go(&self.units)
    }
}

pub(crate) fn bracket_unit(unit: &DetUnit) -> String {
    let body = match &unit.kind {
        UnitKind::Simple(e) | UnitKind::Cardinal(e) => e.lemma.clone(),
        UnitKind::Genitive(np) => format!("[G {} 's]", np.bracketed()),
        UnitKind::Partitive { inner, head } => {
            let mut parts = vec!["PART".to_string()];
            if let Some(inner) = inner {
                parts.push(inner.bracketed());
            }
            if let Some(head) = head {
                parts.push(head.lemma.clone());
            }
            parts.push("of".into());
            format!("[{}]", parts.join(" "))
        }
    };
    match &unit.modifier {
        Some(adv) => format!("[{} {body}]", adv.lemma),
        None => body,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClashStage {
    NoAuxTree,
    Selectional,
    FootAgreement,
    NounAgreement,
    DetRequired,
    AdverbLicense,
    WhPosition,
    UnknownToken,
    NoParse,
}

impl ClashStage {
    pub fn name(self) -> &'static str {
        match self {
            ClashStage::NoAuxTree => "NoAuxTree",
            ClashStage::Selectional => "Selectional",
            ClashStage::FootAgreement => "FootAgreement",
            ClashStage::NounAgreement => "NounAgreement",
            ClashStage::DetRequired => "DetRequired",
            ClashStage::AdverbLicense => "AdverbLicense",
            ClashStage::WhPosition => "WhPosition",
            ClashStage::UnknownToken => "UnknownToken",
            ClashStage::NoParse => "NoParse",
        }
    }
}

impl fmt::Display for ClashStage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Why an analysis failed.
///
/// `left`/`right` are stage-specific: the required and found values for
/// feature clashes, the two parties otherwise. `position` is a unit index
/// when produced by [`compose_sequence`] and a token index once the phrase
/// parser has mapped it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clash {
    pub stage: ClashStage,
    pub feature: Option<Feature>,
    pub left: String,
    pub right: String,
    pub position: usize,
}

impl Clash {
    pub fn new(stage: ClashStage, left: impl Into<String>, right: impl Into<String>) -> Clash {
        Clash {
            stage,
            feature: None,
            left: left.into(),
            right: right.into(),
            position: 0,
        }
    }

    fn on_feature(
        stage: ClashStage,
        feature: Feature,
        left: impl fmt::Display,
        right: impl fmt::Display,
    ) -> Clash {
        Clash {
            stage,
            feature: Some(feature),
            left: left.to_string(),
            right: right.to_string(),
            position: 0,
        }
    }

    pub fn at(mut self, position: usize) -> Clash {
        self.position = position;
        self
    }
}

impl fmt::Display for Clash {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pos = self.position;
        let (l, r) = (&self.left, &self.right);
        match self.stage {
            ClashStage::Selectional => {
                let feat = self.feature.map(Feature::name).unwrap_or("?");
                write!(f, "{feat}: {l} required, {r} found at position {pos}")
            }
            ClashStage::FootAgreement => write!(
                f,
                "agr: anchor {l} does not agree with foot {r} at position {pos}"
            ),
            ClashStage::NounAgreement => write!(
                f,
                "agr: determiner phrase {l} does not agree with noun {r} at position {pos}"
            ),
            ClashStage::NoAuxTree => write!(
                f,
                "{l} has no auxiliary tree (only nouns) and cannot modify {r} at position {pos}"
            ),
            ClashStage::DetRequired if r == "present" => write!(
                f,
                "proper noun {l} takes no determiner at position {pos}"
            ),
            ClashStage::DetRequired => {
                write!(f, "noun {l} requires a determiner at position {pos}")
            }
            ClashStage::AdverbLicense => {
                write!(f, "adverb {l} not licensed: {r} at position {pos}")
            }
            ClashStage::WhPosition => write!(
                f,
                "wh+ determiner {r} must be leftmost; {l} cannot modify it at position {pos}"
            ),
            ClashStage::UnknownToken => write!(f, "unknown token `{l}` at position {pos}"),
            ClashStage::NoParse => {
                write!(f, "no analysis covers the phrase beyond position {pos}")
            }
        }
    }
}

/// An initial tree: a single determiner standing alone.
pub fn leaf(unit: DetUnit) -> DetPhrase {
    DetPhrase {
        root: unit.own,
        units: vec![unit],
        trace: Vec::new(),
    }
}

/// Adjoins `anchor`'s auxiliary tree onto `foot`.
pub fn adjoin(anchor: DetUnit, foot: DetPhrase) -> Result<DetPhrase, Clash> {
    let Some(selection) = anchor.selection else {
        return Err(Clash::new(
            ClashStage::NoAuxTree,
            anchor.label(),
            foot.leftmost().label(),
        ));
    };
    let merged_foot = satisfy_diagnose(&foot.root, &selection).map_err(|c| {
        Clash::on_feature(ClashStage::Selectional, c.feature, c.required, c.found)
    })?;

    let mut root = anchor.own;
    let agr_source = if anchor.agree_with_foot {
        root.agr = unify_agr(anchor.own.agr, foot.root.agr).ok_or_else(|| {
            Clash::on_feature(
                ClashStage::FootAgreement,
                Feature::Agr,
                anchor.own.agr,
                foot.root.agr,
            )
        })?;
        AgrSource::AnchorAndFoot
    } else {
        root.agr = foot.root.agr;
        AgrSource::Foot
    };

    let DetPhrase {
        root: foot_root,
        mut units,
        mut trace,
    } = foot;
    let foot_label = units[0].label();
    trace.push(AdjunctionStep {
        anchor: anchor.clone(),
        foot_root_before: foot_root,
        merged_foot,
        root_after: root,
        agr_source,
        foot_label,
    });
    units.insert(0, anchor);
    Ok(DetPhrase { root, units, trace })
}

/// Composes a linear determiner sequence: the rightmost unit anchors the
/// initial tree and the rest adjoin right to left. Clash positions are unit
/// indices.
///
/// A selectional failure caused by a wh+ foot is reported as
/// [`ClashStage::WhPosition`].
///
/// # Panics
/// If `units` is empty.
pub fn compose_sequence(units: Vec<DetUnit>) -> Result<DetPhrase, Clash> {
    assert!(!units.is_empty(), "compose_sequence needs at least one unit");
    let mut units = units;
    let last = units.pop().unwrap();
    let mut phrase = leaf(last);
    for (index, anchor) in units.into_iter().enumerate().rev() {
        let foot_wh = phrase.root.wh;
        let foot_label = phrase.leftmost().label();
        let anchor_label = anchor.label();
        phrase = adjoin(anchor, phrase).map_err(|clash| {
            if clash.stage == ClashStage::Selectional
                && clash.feature == Some(Feature::Wh)
                && foot_wh == Polarity::Plus
            {
                Clash::new(ClashStage::WhPosition, anchor_label, foot_label).at(index)
            } else {
                clash.at(index)
            }
        })?;
    }
    Ok(phrase)
}

/// Agreement and wh values percolated to the NP node.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NpFeatures {
    pub wh: Polarity,
    pub agr: Agr,
}

/// Substitutes a DetP (or nothing) into a noun's NP.
pub fn attach_to_noun(detp: Option<&DetPhrase>, noun: &NounEntry) -> Result<NpFeatures, Clash> {
    match detp {
        Some(_) if !noun.takes_det => {
            Err(Clash::new(ClashStage::DetRequired, &noun.lemma, "present"))
        }
        None if noun.det_required => {
            Err(Clash::new(ClashStage::DetRequired, &noun.lemma, "missing"))
        }
        None => Ok(NpFeatures {
            wh: Polarity::Minus,
            agr: noun.agr,
        }),
        Some(d) => {
            let agr = unify_agr(d.root.agr, noun.agr).ok_or_else(|| {
                Clash::on_feature(ClashStage::NounAgreement, Feature::Agr, d.root.agr, noun.agr)
            })?;
            Ok(NpFeatures {
                wh: d.root.wh,
                agr,
            })
        }
    }
}
