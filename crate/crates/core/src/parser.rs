//! Tokenizing and parsing noun phrases into determiner analyses.
//!
//! The phrase grammar:
//!
//! ```text
//! NP      -> [Adv1 | Adv2] DetSeq? Noun | [Adv1] ProperNoun
//! DetSeq  -> Unit+
//! Unit    -> [Adv3] ( Det | Card | NP 's | DetSeq? PartHead of | Det of )
//! ```
//!
//! Every span is parsed exhaustively and memoized, so a phrase yields all of
//! its analyses. Each candidate determiner sequence goes through
//! [`compose_sequence`], [`attach_to_noun`], and adverb licensing; candidates
//! that fail leave their [`Clash`] behind for the judgment.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use crate::compose::{
    attach_to_noun, compose_sequence, Clash, ClashStage, DetPhrase, DetUnit,
    UnitKind,
};
use crate::features::{Agr, Polarity};
use crate::lexicon::{
    AdverbClass, AdverbEntry, DetKind, LexEntry, Lexicon, NounEntry, NounKind,
    CLASS3_PREDETERMINERS, GENITIVE_MARKER,
};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PhraseError {
    #[error("empty phrase")]
    Empty,
}

/// Splits on whitespace and detaches a trailing `'s` into its own token.
pub fn tokenize(text: &str) -> Result<Vec<String>, PhraseError> {
    let mut tokens = Vec::new();
    for word in text.split_whitespace() {
        let split = ["'s", "\u{2019}s"]
            .iter()
            .find_map(|m| word.strip_suffix(m).filter(|stem| !stem.is_empty()));
        match split {
            Some(stem) => {
                tokens.push(stem.to_string());
                tokens.push(GENITIVE_MARKER.to_string());
            }
            None if word == "\u{2019}s" => tokens.push(GENITIVE_MARKER.to_string()),
            None => tokens.push(word.to_string()),
        }
    }
    if tokens.is_empty() {
        return Err(PhraseError::Empty);
    }
    Ok(tokens)
}

/// One complete reading of a noun phrase.
#[derive(Clone, Debug, PartialEq)]
pub struct NpAnalysis {
    /// NP-level adverb (class 1 or 2). Class-3 adverbs sit on their unit.
    pub adverb: Option<AdverbEntry>,
    pub detp: Option<DetPhrase>,
    pub head: NounEntry,
    pub np_wh: Polarity,
    pub np_agr: Agr,
    /// Token span `[start, end)` in the parsed input.
    pub span: (usize, usize),
}

impl NpAnalysis {
    pub fn words(&self) -> String {
        let mut words = Vec::new();
        if let Some(adv) = &self.adverb {
            words.push(adv.lemma.clone());
        }
        if let Some(d) = &self.detp {
            words.push(d.words());
        }
        words.push(self.head.lemma.clone());
        words.join(" ")
    }

    pub fn bracketed(&self) -> String {
        let mut parts = Vec::new();
        if let Some(adv) = &self.adverb {
            parts.push(adv.lemma.clone());
        }
        if let Some(d) = &self.detp {
            parts.push(d.bracketed());
        }
        parts.push(self.head.lemma.clone());
        format!("[NP {}]", parts.join(" "))
    }

    /// How many genitive NPs are nested inside this one.
    pub fn genitive_depth(&self) -> usize {
        self.detp.as_ref().map_or(0, detp_genitive_depth)
    }

    pub fn has_partitive(&self) -> bool {
        self.detp.as_ref().is_some_and(|d| {
            d.units.iter().any(|u| match &u.kind {
                UnitKind::Partitive { .. } => true,
                UnitKind::Genitive(np) => np.has_partitive(),
                _ => false,
            })
        })
    }

    /// `(adverb, target description, licensing reason)` for every adverb in
    /// this NP, outermost first.
    pub fn adverb_notes(&self) -> Vec<(String, String, String)> {
        let mut notes = Vec::new();
        if let Some(adv) = &self.adverb {
            let ctx = AdverbContext::Np {
                detp: self.detp.as_ref(),
                wh: self.np_wh,
            };
            if let Ok(reason) = license_adverb(adv, ctx) {
                notes.push((adv.lemma.clone(), "NP".to_string(), reason));
            }
        }
        if let Some(d) = &self.detp {
            for unit in &d.units {
                if let Some(adv) = &unit.modifier {
                    let mut bare = unit.clone();
                    bare.modifier = None;
                    if let Ok(reason) = license_adverb(adv, AdverbContext::Unit(&bare)) {
                        notes.push((adv.lemma.clone(), bare.words(), reason));
                    }
                }
            }
        }
        notes
    }
}

fn detp_genitive_depth(d: &DetPhrase) -> usize {
    d.units
        .iter()
        .map(|u| match &u.kind {
            UnitKind::Genitive(np) => 1 + np.genitive_depth(),
            UnitKind::Partitive { inner: Some(inner), .. } => detp_genitive_depth(inner),
            _ => 0,
        })
        .max()
        .unwrap_or(0)
}

/// What an adverb is asked to modify.
#[derive(Clone, Copy, Debug)]
pub enum AdverbContext<'a> {
    Np {
        detp: Option<&'a DetPhrase>,
        wh: Polarity,
    },
    Unit(&'a DetUnit),
}

/// Checks an adverb's class restriction. On success returns a short
/// description of the condition that licensed it.
pub fn license_adverb(adverb: &AdverbEntry, context: AdverbContext<'_>) -> Result<String, Clash> {
    let fail = |why: &str| Clash::new(ClashStage::AdverbLicense, &adverb.lemma, why);
    match (adverb.class, context) {
        (AdverbClass::NpClass1, AdverbContext::Np { wh, .. }) => {
            if wh == Polarity::Minus {
                Ok("class 1: NP is wh-".into())
            } else {
                Err(fail("class 1 requires a wh- NP"))
            }
        }
        (AdverbClass::NpClass2, AdverbContext::Np { detp, .. }) => {
            let Some(d) = detp else {
                return Err(fail("class 2 does not modify NPs without determiners"));
            };
            if d.root.definite == Polarity::Minus && d.root.constancy == Polarity::Plus {
                Ok("class 2: defin=- const=+".into())
            } else if d.root.genitive == Polarity::Plus {
                Ok("class 2: gen=+".into())
            } else if d.leftmost().lemma() == Some("the") {
                Ok("class 2: determiner is the".into())
            } else {
                Err(fail(
                    "class 2 requires a determiner with defin=- const=+, gen=+, or the",
                ))
            }
        }
        (AdverbClass::DetClass3, AdverbContext::Unit(unit)) => {
            if unit.own.cardinal == Polarity::Plus {
                Ok("class 3: card=+".into())
            } else if let Some(lemma) = unit
                .lemma()
                .filter(|l| CLASS3_PREDETERMINERS.contains(l))
            {
                Ok(format!(
                    "class 3: {lemma} \u{2208} {{{}}}",
                    CLASS3_PREDETERMINERS.join(",")
                ))
            } else {
                Err(fail("class 3 requires a card+ determiner or all, double, half"))
            }
        }
        (AdverbClass::DetClass3, AdverbContext::Np { .. }) => {
            Err(fail("class 3 modifies determiners, not NPs"))
        }
        (_, AdverbContext::Unit(_)) => Err(fail("classes 1 and 2 modify NPs, not determiners")),
    }
}

#[derive(Clone, Debug)]
struct Placed {
    unit: DetUnit,
    /// Token index of the unit's body (after any class-3 modifier).
    start: usize,
    end: usize,
}

struct Failure {
    span: (usize, usize),
    clash: Clash,
}

type Memo<T> = RefCell<HashMap<(usize, usize), Rc<Vec<T>>>>;

struct Parser<'a> {
    tokens: &'a [String],
    entries: Vec<Vec<LexEntry>>,
    nps: Memo<NpAnalysis>,
    seqs: Memo<Vec<Placed>>,
    units: Memo<Placed>,
    failures: RefCell<Vec<Failure>>,
}

impl<'a> Parser<'a> {
    fn new(tokens: &'a [String], lexicon: &Lexicon) -> Self {
        Parser {
            tokens,
            entries: tokens.iter().map(|t| lexicon.lookup(t)).collect(),
            nps: Default::default(),
            seqs: Default::default(),
            units: Default::default(),
            failures: Default::default(),
        }
    }

    fn fail(&self, span: (usize, usize), clash: Clash) {
        self.failures.borrow_mut().push(Failure { span, clash });
    }

    fn is_marker(&self, i: usize) -> bool {
        self.entries[i].contains(&LexEntry::GenitiveMarker)
    }

    fn is_of(&self, i: usize) -> bool {
        self.entries[i]
            .iter()
            .any(|e| matches!(e, LexEntry::Preposition(_)))
    }

    fn adverbs(&self, i: usize) -> impl Iterator<Item = &AdverbEntry> {
        self.entries[i].iter().filter_map(|e| match e {
            LexEntry::Adverb(a) => Some(a),
            _ => None,
        })
    }

    fn nouns(&self, i: usize) -> impl Iterator<Item = &NounEntry> {
        self.entries[i].iter().filter_map(|e| match e {
            LexEntry::Noun(n) => Some(n),
            _ => None,
        })
    }

    fn lexical_dets(&self, i: usize) -> impl Iterator<Item = DetUnit> + '_ {
        self.entries[i].iter().filter_map(|e| match e {
            LexEntry::Det(d) if d.kind != DetKind::Partitive => Some(DetUnit::from_entry(d.clone())),
            _ => None,
        })
    }

    /// NPs covering exactly `[i, j)`.
    fn np(&self, i: usize, j: usize) -> Rc<Vec<NpAnalysis>> {
        if let Some(hit) = self.nps.borrow().get(&(i, j)) {
            return hit.clone();
        }
        let mut out = Vec::new();
        let noun_at = j - 1;
        let heads: Vec<NounEntry> = self
            .nouns(noun_at)
            .filter(|n| n.kind != NounKind::PartitiveHead)
            .cloned()
            .collect();
        for head in &heads {
            let mut adverb_choices: Vec<Option<AdverbEntry>> = vec![None];
            if noun_at > i {
                adverb_choices.extend(
                    self.adverbs(i)
                        .filter(|a| a.class != AdverbClass::DetClass3)
                        .cloned()
                        .map(Some),
                );
            }
            for adverb in adverb_choices {
                let det_start = if adverb.is_some() { i + 1 } else { i };
                if det_start == noun_at {
                    self.finish_np(&mut out, (i, j), adverb, None, head);
                } else {
                    for seq in self.seq(det_start, noun_at).iter() {
                        let units: Vec<DetUnit> = seq.iter().map(|p| p.unit.clone()).collect();
                        match compose_sequence(units) {
                            Ok(d) => self.finish_np(&mut out, (i, j), adverb.clone(), Some(d), head),
                            Err(c) => {
                                let at = seq[c.position].start;
                                self.fail((i, j), c.at(at));
                            }
                        }
                    }
                }
            }
        }
        let out = Rc::new(out);
        self.nps.borrow_mut().insert((i, j), out.clone());
        out
    }

    fn finish_np(
        &self,
        out: &mut Vec<NpAnalysis>,
        span: (usize, usize),
        adverb: Option<AdverbEntry>,
        detp: Option<DetPhrase>,
        head: &NounEntry,
    ) {
        let np = match attach_to_noun(detp.as_ref(), head) {
            Ok(np) => np,
            Err(c) => return self.fail(span, c.at(span.1 - 1)),
        };
        if let Some(adv) = &adverb {
            let ctx = AdverbContext::Np {
                detp: detp.as_ref(),
                wh: np.wh,
            };
            if let Err(c) = license_adverb(adv, ctx) {
                return self.fail(span, c.at(span.0));
            }
        }
        out.push(NpAnalysis {
            adverb,
            detp,
            head: head.clone(),
            np_wh: np.wh,
            np_agr: np.agr,
            span,
        });
    }

    /// Determiner sequences covering exactly `[a, b)`.
    fn seq(&self, a: usize, b: usize) -> Rc<Vec<Vec<Placed>>> {
        if let Some(hit) = self.seqs.borrow().get(&(a, b)) {
            return hit.clone();
        }
        let mut out = Vec::new();
        for first in self.units_at(a, b).iter() {
            if first.end == b {
                out.push(vec![first.clone()]);
            } else {
                for rest in self.seq(first.end, b).iter() {
                    let mut s = Vec::with_capacity(rest.len() + 1);
                    s.push(first.clone());
                    s.extend(rest.iter().cloned());
                    out.push(s);
                }
            }
        }
        let out = Rc::new(out);
        self.seqs.borrow_mut().insert((a, b), out.clone());
        out
    }

    /// Units starting at `p` (possibly with a class-3 modifier) and ending at
    /// or before `b`.
    fn units_at(&self, p: usize, b: usize) -> Rc<Vec<Placed>> {
        if let Some(hit) = self.units.borrow().get(&(p, b)) {
            return hit.clone();
        }
        let mut out = self.bare_units(p, b);
        if p + 1 < b {
            let advs: Vec<AdverbEntry> = self
                .adverbs(p)
                .filter(|a| a.class == AdverbClass::DetClass3)
                .cloned()
                .collect();
            for adv in advs {
                for placed in self.bare_units(p + 1, b) {
                    match license_adverb(&adv, AdverbContext::Unit(&placed.unit)) {
                        Ok(_) => out.push(Placed {
                            unit: placed.unit.with_modifier(adv.clone()),
                            ..placed
                        }),
                        Err(c) => self.fail((p, placed.end), c.at(p)),
                    }
                }
            }
        }
        let out = Rc::new(out);
        self.units.borrow_mut().insert((p, b), out.clone());
        out
    }

    /// A lexical determiner at `p`, optionally preceded by a licensed
    /// class-3 adverb; returns `(unit, body start, end)`.
    fn lexical_units(&self, p: usize, b: usize) -> Vec<Placed> {
        let mut out: Vec<Placed> = if p < b {
            self.lexical_dets(p)
                .map(|unit| Placed { unit, start: p, end: p + 1 })
                .collect()
        } else {
            Vec::new()
        };
        if p + 1 < b {
            for adv in self.adverbs(p).filter(|a| a.class == AdverbClass::DetClass3) {
                for unit in self.lexical_dets(p + 1) {
                    if license_adverb(adv, AdverbContext::Unit(&unit)).is_ok() {
                        out.push(Placed {
                            unit: unit.with_modifier(adv.clone()),
                            start: p + 1,
                            end: p + 2,
                        });
                    }
                }
            }
        }
        out
    }

    fn bare_units(&self, p: usize, b: usize) -> Vec<Placed> {
        let mut out: Vec<Placed> = self
            .lexical_dets(p)
            .map(|unit| Placed { unit, start: p, end: p + 1 })
            .collect();

        // NP 's
        for k in p + 1..b {
            if self.is_marker(k) {
                for np in self.np(p, k).iter() {
                    out.push(Placed {
                        unit: DetUnit::genitive(np.clone()),
                        start: p,
                        end: k + 1,
                    });
                }
            }
        }

        // DetSeq? PartHead of
        for h in p..b.saturating_sub(1) {
            if !self.is_of(h + 1) {
                continue;
            }
            let heads: Vec<NounEntry> = self
                .nouns(h)
                .filter(|n| n.kind == NounKind::PartitiveHead)
                .cloned()
                .collect();
            for head in heads {
                let span = (p, h + 2);
                if h == p {
                    match attach_to_noun(None, &head) {
                        Ok(_) => out.push(Placed {
                            unit: DetUnit::partitive(None, Some(head.clone())),
                            start: p,
                            end: h + 2,
                        }),
                        Err(c) => self.fail(span, c.at(h)),
                    }
                    continue;
                }
                for seq in self.seq(p, h).iter() {
                    let units: Vec<DetUnit> = seq.iter().map(|s| s.unit.clone()).collect();
                    let inner = match compose_sequence(units) {
                        Ok(d) => d,
                        Err(c) => {
                            let at = seq[c.position].start;
                            self.fail(span, c.at(at));
                            continue;
                        }
                    };
                    match attach_to_noun(Some(&inner), &head) {
                        Ok(_) => out.push(Placed {
                            unit: DetUnit::partitive(Some(inner), Some(head.clone())),
                            start: p,
                            end: h + 2,
                        }),
                        Err(c) => self.fail(span, c.at(h)),
                    }
                }
            }
        }

        // Det of
        for lexical in self.lexical_units(p, b) {
            let of_at = lexical.end;
            if of_at < b && self.is_of(of_at) {
                out.push(Placed {
                    unit: DetUnit::partitive(Some(crate::compose::leaf(lexical.unit)), None),
                    start: p,
                    end: of_at + 1,
                });
            }
        }

        out.retain(|u| u.end <= b);
        out
    }

    /// Index of the first token no determiner-sequence prefix reaches.
    fn furthest(&self) -> usize {
        let n = self.tokens.len();
        let adv_start = self.adverbs(0).next().is_some() as usize;
        (1..n)
            .rev()
            .find(|&k| {
                !self.seq(0, k).is_empty() || (adv_start == 1 && k > 1 && !self.seq(1, k).is_empty())
            })
            .unwrap_or(0)
    }
}

/// Every analysis of `tokens` as a complete noun phrase.
pub fn parse_np(tokens: &[String], lexicon: &Lexicon) -> Vec<NpAnalysis> {
    if tokens.is_empty() {
        return Vec::new();
    }
    let parser = Parser::new(tokens, lexicon);
    let out = parser.np(0, tokens.len());
    out.as_ref().clone()
}

/// The verdict on one phrase.
#[derive(Clone, Debug, PartialEq)]
pub enum Judgment {
    Grammatical(Vec<NpAnalysis>),
    /// One clash per failed analysis path, rightmost progress first.
    Ungrammatical(Vec<Clash>),
}

impl Judgment {
    pub fn is_grammatical(&self) -> bool {
        matches!(self, Judgment::Grammatical(_))
    }

    pub fn analyses(&self) -> &[NpAnalysis] {
        match self {
            Judgment::Grammatical(a) => a,
            Judgment::Ungrammatical(_) => &[],
        }
    }

    pub fn clashes(&self) -> &[Clash] {
        match self {
            Judgment::Grammatical(_) => &[],
            Judgment::Ungrammatical(c) => c,
        }
    }
}

/// Tokenizes and parses `text`, returning all surviving analyses or the
/// clashes that sank each candidate.
pub fn judge(text: &str, lexicon: &Lexicon) -> Result<Judgment, PhraseError> {
    let tokens = tokenize(text)?;
    Ok(judge_tokens(&tokens, lexicon))
}

pub fn judge_tokens(tokens: &[String], lexicon: &Lexicon) -> Judgment {
    let parser = Parser::new(tokens, lexicon);
    let unknown: Vec<Clash> = parser
        .entries
        .iter()
        .enumerate()
        .filter(|(_, e)| e.is_empty())
        .map(|(i, _)| Clash::new(ClashStage::UnknownToken, &tokens[i], "").at(i))
        .collect();
    if !unknown.is_empty() {
        return Judgment::Ungrammatical(unknown);
    }
    let analyses = parser.np(0, tokens.len());
    if !analyses.is_empty() {
        return Judgment::Grammatical(analyses.as_ref().clone());
    }
    let mut failures = std::mem::take(&mut *parser.failures.borrow_mut());
    failures.sort_by(|a, b| {
        b.span
            .1
            .cmp(&a.span.1)
            .then(a.span.0.cmp(&b.span.0))
            .then(b.clash.position.cmp(&a.clash.position))
    });
    let mut clashes: Vec<Clash> = Vec::new();
    for f in failures {
        if !clashes.contains(&f.clash) {
            clashes.push(f.clash);
        }
    }
    if clashes.is_empty() {
        clashes.push(Clash::new(ClashStage::NoParse, "", "").at(parser.furthest()));
    }
    Judgment::Ungrammatical(clashes)
}
