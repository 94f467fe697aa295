//! Lexical entries, the built-in lexicon, cardinal recognition, and the
//! tab-separated lexicon file format.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Read;

use crate::features::{Agr, BundleParseError, Feature, FeatureBundle, Polarity};

/// The genitive marker token, category G.
pub const GENITIVE_MARKER: &str = "'s";

/// The preposition anchoring partitive constructions.
pub const PARTITIVE_PREPOSITION: &str = "of";

/// The fourteen table determiners, in table order, before the cardinal.
pub const CORE_DETERMINERS: [&str; 14] = [
    "all", "this", "that", "these", "those", "what", "the", "every", "each", "any", "a", "no",
    "few", "many",
];

/// Lemmas class-3 adverbs may modify besides cardinals.
pub const CLASS3_PREDETERMINERS: [&str; 3] = ["all", "double", "half"];

const BUILTIN_TSV: &str = include_str!("builtin.tsv");

const CARDINAL_WORDS: [&str; 20] = [
    "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten", "eleven",
    "twelve", "thirteen", "fourteen", "fifteen", "sixteen", "seventeen", "eighteen", "nineteen",
    "twenty",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LexCategory {
    Determiner,
    CommonNoun,
    ProperNoun,
    GenitivePronoun,
    GenitiveMarker,
    PartitiveHeadNoun,
    Adverb,
    Preposition,
}

/// How a determiner entry came to be.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DetKind {
    Simple,
    GenitivePronoun,
    Cardinal,
    Partitive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetEntry {
    pub lemma: String,
    pub kind: DetKind,
    pub own: FeatureBundle,
    /// Restriction on the DetP this determiner adjoins onto. `None` means
    /// the determiner has no auxiliary tree and only combines with nouns.
    pub selection: Option<FeatureBundle>,
    /// Whether the anchor's own agr must also agree with the foot's.
    pub agree_with_foot: bool,
    /// Not part of the determiner feature table.
    pub extension: bool,
}

impl DetEntry {
    pub fn category(&self) -> LexCategory {
        match self.kind {
            DetKind::GenitivePronoun => LexCategory::GenitivePronoun,
            _ => LexCategory::Determiner,
        }
    }

    pub fn has_aux_tree(&self) -> bool {
        self.selection.is_some()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NounKind {
    Common,
    Proper,
    PartitiveHead,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NounEntry {
    pub lemma: String,
    pub kind: NounKind,
    pub agr: Agr,
    /// Singular count nouns cannot stand without a determiner.
    pub det_required: bool,
    /// False for proper nouns.
    pub takes_det: bool,
    pub mass: bool,
}

impl NounEntry {
    pub fn common(lemma: &str, agr: Agr, det_required: bool) -> Self {
        NounEntry {
            lemma: lemma.to_string(),
            kind: NounKind::Common,
            agr,
            det_required,
            takes_det: true,
            mass: false,
        }
    }

    pub fn proper(lemma: &str) -> Self {
        NounEntry {
            lemma: lemma.to_string(),
            kind: NounKind::Proper,
            agr: Agr::ThreeSg,
            det_required: false,
            takes_det: false,
            mass: false,
        }
    }

    pub fn category(&self) -> LexCategory {
        match self.kind {
            NounKind::Common => LexCategory::CommonNoun,
            NounKind::Proper => LexCategory::ProperNoun,
            NounKind::PartitiveHead => LexCategory::PartitiveHeadNoun,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AdverbClass {
    /// especially, even, just, only: any wh- NP.
    NpClass1,
    /// hardly, merely, simply: NPs with certain determiners.
    NpClass2,
    /// almost, approximately, relatively: the determiner itself.
    DetClass3,
}

impl AdverbClass {
    pub fn number(self) -> u8 {
        match self {
            AdverbClass::NpClass1 => 1,
            AdverbClass::NpClass2 => 2,
            AdverbClass::DetClass3 => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdverbEntry {
    pub lemma: String,
    pub class: AdverbClass,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LexEntry {
    Det(DetEntry),
    Noun(NounEntry),
    Adverb(AdverbEntry),
    GenitiveMarker,
    Preposition(String),
}

impl LexEntry {
    pub fn category(&self) -> LexCategory {
        match self {
            LexEntry::Det(d) => d.category(),
            LexEntry::Noun(n) => n.category(),
            LexEntry::Adverb(_) => LexCategory::Adverb,
            LexEntry::GenitiveMarker => LexCategory::GenitiveMarker,
            LexEntry::Preposition(_) => LexCategory::Preposition,
        }
    }

    pub fn lemma(&self) -> &str {
        match self {
            LexEntry::Det(d) => &d.lemma,
            LexEntry::Noun(n) => &n.lemma,
            LexEntry::Adverb(a) => &a.lemma,
            LexEntry::GenitiveMarker => GENITIVE_MARKER,
            LexEntry::Preposition(p) => p,
        }
    }
}

/// Own features of a cardinal number; `agr` is 3sg only for *one*.
pub fn cardinal_features(agr: Agr) -> FeatureBundle {
    use Polarity::*;
    FeatureBundle {
        definite: Plus,
        quantity: Plus,
        cardinal: Plus,
        genitive: Minus,
        wh: Minus,
        decreasing: Minus,
        constancy: Plus,
        agr,
    }
}

/// Own features of any genitive determiner, pronoun or `NP 's`.
pub fn genitive_features() -> FeatureBundle {
    use Polarity::*;
    FeatureBundle {
        definite: Plus,
        quantity: Minus,
        cardinal: Minus,
        genitive: Plus,
        wh: Minus,
        decreasing: Minus,
        constancy: Plus,
        agr: Agr::Unspec,
    }
}

/// Own features of a partitive construction.
pub fn partitive_features() -> FeatureBundle {
    use Polarity::*;
    FeatureBundle {
        definite: Minus,
        quantity: Minus,
        cardinal: Minus,
        genitive: Minus,
        wh: Minus,
        decreasing: Minus,
        constancy: Plus,
        agr: Agr::Unspec,
    }
}

/// The restriction a partitive imposes on the DetP it adjoins onto.
pub fn partitive_selection() -> FeatureBundle {
    FeatureBundle::UNSPEC.with(Feature::Wh, Polarity::Minus)
}

/// The pseudo-entry for the partitive construction.
pub fn partitive_entry() -> DetEntry {
    DetEntry {
        lemma: "PART".to_string(),
        kind: DetKind::Partitive,
        own: partitive_features(),
        selection: Some(partitive_selection()),
        agree_with_foot: false,
        extension: false,
    }
}

/// Recognizes single-token cardinal numbers of value at least one.
pub fn classify_cardinal(token: &str) -> Option<DetEntry> {
    let lower = token.to_lowercase();
    let is_one = if let Some(i) = CARDINAL_WORDS.iter().position(|w| *w == lower) {
        i == 0
    } else if lower == "hundred" || lower == "thousand" {
        false
    } else if !lower.is_empty() && lower.bytes().all(|b| b.is_ascii_digit()) {
        let digits = lower.trim_start_matches('0');
        if digits.is_empty() {
            return None;
        }
        digits == "1"
    } else {
        return None;
    };
    let agr = if is_one { Agr::ThreeSg } else { Agr::ThreePl };
    Some(DetEntry {
        lemma: lower,
        kind: DetKind::Cardinal,
        own: cardinal_features(agr),
        selection: None,
        agree_with_foot: false,
        extension: false,
    })
}

#[derive(Debug, thiserror::Error)]
pub enum LexiconError {
    #[error("line {line}: malformed {field}: {detail}")]
    Malformed {
        line: usize,
        field: &'static str,
        detail: String,
    },
    #[error("line {line}: unknown agr value `{token}`")]
    UnknownAgr { line: usize, token: String },
    #[error("line {line}: unknown feature value `{token}`")]
    UnknownValue { line: usize, token: String },
    #[error("line {line}: unknown feature `{token}`")]
    UnknownFeature { line: usize, token: String },
    #[error("reading lexicon: {0}")]
    Io(#[from] std::io::Error),
}

/// Token-indexed collection of lexical entries. Cardinals, the genitive
/// marker, and *of* are recognized by rule rather than stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Lexicon {
    entries: BTreeMap<String, Vec<LexEntry>>,
}

impl Lexicon {
    /// A lexicon holding only the rule-recognized closed classes.
    pub fn empty() -> Self {
        Lexicon::default()
    }

    /// Adds an entry, replacing any existing entry with the same lemma and
    /// category.
    pub fn insert(&mut self, entry: LexEntry) {
        let slot = self.entries.entry(entry.lemma().to_string()).or_default();
        match slot.iter_mut().find(|e| e.category() == entry.category()) {
            Some(existing) => *existing = entry,
            None => slot.push(entry),
        }
    }

    /// Every entry the token can be. Never fails; unknown tokens yield an
    /// empty list. Lookup is case-insensitive except for proper nouns.
    pub fn lookup(&self, token: &str) -> Vec<LexEntry> {
        if token == GENITIVE_MARKER || token == "\u{2019}s" {
            return vec![LexEntry::GenitiveMarker];
        }
        let lower = token.to_lowercase();
        let mut found = Vec::new();
        if lower == PARTITIVE_PREPOSITION {
            found.push(LexEntry::Preposition(lower.clone()));
        }
        if let Some(entries) = self.entries.get(&lower) {
            found.extend(
                entries
                    .iter()
                    .filter(|e| e.category() != LexCategory::ProperNoun)
                    .cloned(),
            );
        }
        if let Some(entries) = self.entries.get(token) {
            found.extend(
                entries
                    .iter()
                    .filter(|e| e.category() == LexCategory::ProperNoun)
                    .cloned(),
            );
        }
        if let Some(card) = classify_cardinal(token) {
            found.push(LexEntry::Det(card));
        }
        found
    }

    /// The stored determiner entry for a lemma, or a cardinal.
    pub fn determiner(&self, lemma: &str) -> Option<DetEntry> {
        self.lookup(lemma).into_iter().find_map(|e| match e {
            LexEntry::Det(d) => Some(d),
            _ => None,
        })
    }

    pub fn noun(&self, lemma: &str) -> Option<NounEntry> {
        self.lookup(lemma).into_iter().find_map(|e| match e {
            LexEntry::Noun(n) if n.kind != NounKind::PartitiveHead => Some(n),
            _ => None,
        })
    }

    pub fn entries(&self) -> impl Iterator<Item = &LexEntry> {
        self.entries.values().flatten()
    }

    pub fn determiners(&self) -> impl Iterator<Item = &DetEntry> {
        self.entries().filter_map(|e| match e {
            LexEntry::Det(d) => Some(d),
            _ => None,
        })
    }

    pub fn nouns(&self) -> impl Iterator<Item = &NounEntry> {
        self.entries().filter_map(|e| match e {
            LexEntry::Noun(n) => Some(n),
            _ => None,
        })
    }

    /// The table determiners plus the cardinal *three*.
    pub fn core_inventory(&self) -> Vec<DetEntry> {
        CORE_DETERMINERS
            .iter()
            .filter_map(|l| self.determiner(l))
            .chain(classify_cardinal("three"))
            .collect()
    }

    /// Every simple determiner in the lexicon plus the cardinals *one* and
    /// *three*.
    pub fn full_inventory(&self) -> Vec<DetEntry> {
        self.determiners()
            .filter(|d| d.kind == DetKind::Simple)
            .cloned()
            .chain(classify_cardinal("one"))
            .chain(classify_cardinal("three"))
            .collect()
    }

    /// Reads entries from the tab-separated format, shadowing existing
    /// entries with the same lemma and category.
    pub fn extend_from_tsv(&mut self, text: &str) -> Result<(), LexiconError> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim_end_matches('\r');
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            self.insert(parse_line(i + 1, line)?);
        }
        Ok(())
    }

    /// Serializes all stored entries; reading the result into
    /// [`Lexicon::empty`] reproduces this lexicon.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for entry in self.entries() {
            match entry {
                LexEntry::Det(d) => {
                    let cat = match d.kind {
                        DetKind::GenitivePronoun => "genpro",
                        _ => "det",
                    };
                    write!(out, "{cat}\t{}\t{}", d.lemma, d.own.to_pairs()).unwrap();
                    if let Some(sel) = &d.selection {
                        write!(out, "\tsel:{}", sel.to_pairs()).unwrap();
                    }
                    let mut flags = vec![if d.agree_with_foot {
                        "foot_agr=agree"
                    } else {
                        "foot_agr=pass"
                    }];
                    if d.extension {
                        flags.push("ext");
                    }
                    writeln!(out, "\t{}", flags.join(" ")).unwrap();
                }
                LexEntry::Noun(n) => {
                    let cat = if n.kind == NounKind::Proper { "propn" } else { "noun" };
                    let own = FeatureBundle::UNSPEC.with_agr(n.agr).to_pairs();
                    write!(out, "{cat}\t{}\t{own}", n.lemma).unwrap();
                    let mut flags = Vec::new();
                    if n.det_required {
                        flags.push("det_required");
                    }
                    if n.mass {
                        flags.push("mass");
                    }
                    if n.kind == NounKind::PartitiveHead {
                        flags.push("partitive");
                    }
                    if !flags.is_empty() {
                        write!(out, "\t{}", flags.join(" ")).unwrap();
                    }
                    out.push('\n');
                }
                LexEntry::Adverb(a) => {
                    writeln!(out, "adv{}\t{}", a.class.number(), a.lemma).unwrap();
                }
                LexEntry::GenitiveMarker | LexEntry::Preposition(_) => {}
            }
        }
        out
    }
}

fn bundle_error(line: usize, err: BundleParseError) -> LexiconError {
    match err {
        BundleParseError::UnknownAgr(token) => LexiconError::UnknownAgr { line, token },
        BundleParseError::UnknownPolarity(token) => LexiconError::UnknownValue { line, token },
        BundleParseError::UnknownFeature(token) => LexiconError::UnknownFeature { line, token },
        BundleParseError::NotAPair(token) => LexiconError::Malformed {
            line,
            field: "features",
            detail: format!("expected name=value, found `{token}`"),
        },
    }
}

fn parse_line(line: usize, text: &str) -> Result<LexEntry, LexiconError> {
    let cols: Vec<&str> = text.split('\t').collect();
    if cols.len() < 2 || cols[1].trim().is_empty() {
        return Err(LexiconError::Malformed {
            line,
            field: "lemma",
            detail: "expected at least category and lemma columns".into(),
        });
    }
    let category = cols[0].trim();
    let lemma = cols[1].trim().to_string();
    let own = match cols.get(2) {
        Some(c) => FeatureBundle::parse_pairs(c).map_err(|e| bundle_error(line, e))?,
        None => FeatureBundle::UNSPEC,
    };
    let mut selection = None;
    let mut flags: Vec<&str> = Vec::new();
    for col in cols.iter().skip(3) {
        if let Some(sel) = col.trim_start().strip_prefix("sel:") {
            if selection.is_some() {
                return Err(LexiconError::Malformed {
                    line,
                    field: "sel",
                    detail: "more than one restriction column".into(),
                });
            }
            selection = Some(FeatureBundle::parse_pairs(sel).map_err(|e| bundle_error(line, e))?);
        } else {
            flags.extend(col.split_whitespace());
        }
    }
    let bad_flag = |flag: &str| LexiconError::Malformed {
        line,
        field: "flags",
        detail: format!("flag `{flag}` does not apply to `{category}`"),
    };

    match category {
        "det" | "genpro" => {
            let mut agree_with_foot = false;
            let mut extension = false;
            for flag in flags {
                match flag {
                    "foot_agr=agree" => agree_with_foot = true,
                    "foot_agr=pass" => agree_with_foot = false,
                    "ext" => extension = true,
                    other => return Err(bad_flag(other)),
                }
            }
            if let Some(sel) = &selection {
                if sel.wh != Polarity::Minus {
                    return Err(LexiconError::Malformed {
                        line,
                        field: "sel",
                        detail: "a selectional restriction must require wh=-".into(),
                    });
                }
            }
            Ok(LexEntry::Det(DetEntry {
                lemma,
                kind: if category == "det" {
                    DetKind::Simple
                } else {
                    DetKind::GenitivePronoun
                },
                own,
                selection,
                agree_with_foot,
                extension,
            }))
        }
        "noun" | "propn" => {
            if selection.is_some() {
                return Err(bad_flag("sel:"));
            }
            if own.specified().any(|(f, _)| f != Feature::Agr) {
                return Err(LexiconError::Malformed {
                    line,
                    field: "features",
                    detail: "nouns carry only agr".into(),
                });
            }
            let proper = category == "propn";
            let mut noun = if proper {
                NounEntry::proper(&lemma)
            } else {
                NounEntry::common(&lemma, own.agr, false)
            };
            noun.agr = own.agr;
            for flag in flags {
                match flag {
                    "det_required" if !proper => noun.det_required = true,
                    "mass" if !proper => noun.mass = true,
                    "partitive" if !proper => noun.kind = NounKind::PartitiveHead,
                    other => return Err(bad_flag(other)),
                }
            }
            if noun.mass && noun.det_required {
                return Err(bad_flag("mass"));
            }
            Ok(LexEntry::Noun(noun))
        }
        "adv1" | "adv2" | "adv3" => {
            if selection.is_some() || own != FeatureBundle::UNSPEC {
                return Err(LexiconError::Malformed {
                    line,
                    field: "features",
                    detail: "adverbs carry no features".into(),
                });
            }
            if let Some(flag) = flags.first() {
                return Err(bad_flag(flag));
            }
            let class = match category {
                "adv1" => AdverbClass::NpClass1,
                "adv2" => AdverbClass::NpClass2,
                _ => AdverbClass::DetClass3,
            };
            Ok(LexEntry::Adverb(AdverbEntry { lemma, class }))
        }
        other => Err(LexiconError::Malformed {
            line,
            field: "category",
            detail: format!("unknown category `{other}`"),
        }),
    }
}

/// The lexicon shipped with the crate.
pub fn builtin_lexicon() -> Lexicon {
    let mut lexicon = Lexicon::empty();
    lexicon
        .extend_from_tsv(BUILTIN_TSV)
        .expect("built-in lexicon parses");
    lexicon
}

/// Reads a lexicon file and merges it over the built-in lexicon.
pub fn load_lexicon(mut source: impl Read) -> Result<Lexicon, LexiconError> {
    let mut text = String::new();
    source.read_to_string(&mut text)?;
    let mut lexicon = builtin_lexicon();
    lexicon.extend_from_tsv(&text)?;
    Ok(lexicon)
}
