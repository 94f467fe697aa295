//! Acceptance criteria. Each test prints one `PASS`/`FAIL` line.
//!
//! Run with `cargo test -p detseq --test acceptance -- --nocapture` to see
//! the lines.

use std::time::{Duration, Instant};

use detseq::compose::{AdjunctionStep, AgrSource, DetPhrase, UnitKind};
use detseq::corpus::{parse_corpus, run_corpus, Expectation};
use detseq::enumerate::{enumerate, naive_judge, oracle_disagreements};
use detseq::features::Feature;
use detseq::lexicon::{cardinal_features, partitive_features, partitive_selection, DetKind, NounKind};
use detseq::{
    builtin_lexicon, judge, parse_np, tokenize, unify_agr, unify_polarity, Agr, FeatureBundle,
    Judgment, Lexicon, NpAnalysis, Polarity,
};

const CORPUS: &str = include_str!("example_corpus.tsv");

fn report(n: u32, name: &str, ok: bool, detail: &str) {
    println!(
        "criterion {n} [{name}]: {} ({detail})",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {n} failed: {detail}");
}

#[test]
fn criterion_1_example_corpus() {
    let lex = builtin_lexicon();
    let cases = parse_corpus(CORPUS).unwrap();
    let report_ = run_corpus(&cases, &lex);
    for o in &report_.outcomes {
        println!(
            "  {:<16} {:<40} {}",
            o.case.expectation.to_string(),
            o.case.phrase,
            o.diff.as_deref().unwrap_or("ok")
        );
    }
    let ok_count = cases.iter().filter(|c| c.expectation == Expectation::Ok).count();
    let bad_count = cases.iter().filter(|c| c.expectation == Expectation::Bad).count();
    let divergent = report_.divergent();
    report(
        1,
        "example corpus",
        report_.all_passed() && ok_count == 11 && bad_count == 6 && divergent == 2,
        &report_.summary(),
    );
}

/// Determiner feature table, columns defin quan card gen wh decreas const agr;
/// `.` marks a blank cell.
const FEATURE_GRID: &str = "\
all   + + - - - - + 3pl
this  + - - - - - + 3sg
that  + - - - - - + 3sg
what  + - - - + - + 3sgpl
the   + - - - - - + 3sgpl
every + + - - - - + 3sg
each  + + - - - - + 3sg
any   - + - - - - + 3sg
a     - - - - - - + 3sg
no    + + - - - - + 3sgpl
few   - + - - - + - 3pl
many  - + - - - - - 3pl
GEN   + - - + - - + .
CARD  + + + - - - + 3pl
PART  - - - - - - + .
";

fn cell_polarity(s: &str) -> Polarity {
    match s {
        "+" => Polarity::Plus,
        "-" => Polarity::Minus,
        "." => Polarity::Unspec,
        other => panic!("bad cell {other}"),
    }
}

fn cell_agr(s: &str) -> Agr {
    match s {
        "3sg" => Agr::ThreeSg,
        "3pl" => Agr::ThreePl,
        "3sgpl" => Agr::ThreeSgPl,
        "." => Agr::Unspec,
        other => panic!("bad cell {other}"),
    }
}

fn builtin_rows(lex: &Lexicon, row: &str) -> Vec<FeatureBundle> {
    match row {
        "GEN" => lex
            .determiners()
            .filter(|d| d.kind == DetKind::GenitivePronoun)
            .map(|d| d.own)
            .collect(),
        "CARD" => ["two", "three", "twenty", "hundred", "42"]
            .iter()
            .map(|t| lex.determiner(t).unwrap().own)
            .collect(),
        "PART" => vec![partitive_features()],
        lemma => vec![lex.determiner(lemma).unwrap().own],
    }
}

#[test]
fn criterion_2_table_transcription() {
    let lex = builtin_lexicon();
    let mut checked = 0;
    let mut mismatches = Vec::new();
    let mut rows = 0;
    for line in FEATURE_GRID.lines() {
        let cells: Vec<&str> = line.split_whitespace().collect();
        assert_eq!(cells.len(), 9);
        rows += 1;
        let row = cells[0];
        let bundles = builtin_rows(&lex, row);
        assert!(!bundles.is_empty(), "{row}");
        for own in bundles {
            for (i, feature) in Feature::POLAR.iter().enumerate() {
                checked += 1;
                if own.polarity(*feature) != Some(cell_polarity(cells[i + 1])) {
                    mismatches.push(format!("{row}.{feature}"));
                }
            }
            checked += 1;
            if own.agr != cell_agr(cells[8]) {
                mismatches.push(format!("{row}.agr"));
            }
        }
    }
    // footnote: cardinal "one" is 3sg
    checked += 1;
    if lex.determiner("one").unwrap().own != cardinal_features(Agr::ThreeSg) {
        mismatches.push("one.agr".into());
    }
    // these/those are the plural counterparts of this/that
    for (pl, sg) in [("these", "this"), ("those", "that")] {
        checked += 1;
        let (p, s) = (lex.determiner(pl).unwrap(), lex.determiner(sg).unwrap());
        if p.own != s.own.with_agr(Agr::ThreePl) || p.selection != s.selection {
            mismatches.push(pl.into());
        }
    }

    // "only nouns" rows have no auxiliary tree
    let mut only_nouns: Vec<detseq::DetEntry> = ["many", "no"]
        .iter()
        .map(|l| lex.determiner(l).unwrap())
        .collect();
    only_nouns.extend(lex.determiners().filter(|d| d.kind == DetKind::GenitivePronoun).cloned());
    only_nouns.push(lex.determiner("seven").unwrap());
    for d in &only_nouns {
        checked += 1;
        if d.selection.is_some() {
            mismatches.push(format!("{} has an auxiliary tree", d.lemma));
        }
    }
    // printed restrictions
    let expect_sel = |lemma: &str, pairs: &str| {
        lex.determiner(lemma).unwrap().selection == Some(FeatureBundle::parse_pairs(pairs).unwrap())
    };
    for (lemma, pairs) in [
        ("all", "defin=+ quan=- card=- wh=-"),
        ("the", "card=+ wh=-"),
        ("every", "card=+ wh=-"),
        ("what", "card=+ wh=-"),
    ] {
        checked += 1;
        if !expect_sel(lemma, pairs) {
            mismatches.push(format!("{lemma} selection"));
        }
    }
    checked += 1;
    if partitive_selection() != FeatureBundle::parse_pairs("wh=-").unwrap() {
        mismatches.push("PART selection".into());
    }
    // every restriction requires wh-
    for d in lex.determiners() {
        if let Some(sel) = d.selection {
            checked += 1;
            if sel.wh != Polarity::Minus {
                mismatches.push(format!("{} selection wh", d.lemma));
            }
        }
    }
    report(
        2,
        "table transcription",
        rows == 15 && mismatches.is_empty(),
        &format!("{rows} rows, {checked} cells checked, mismatches: {mismatches:?}"),
    );
}

fn test_nouns(lex: &Lexicon) -> Vec<detseq::NounEntry> {
    lex.nouns()
        .filter(|n| n.kind != NounKind::PartitiveHead)
        .cloned()
        .collect()
}

#[test]
fn criterion_3_oracle_equivalence() {
    let lex = builtin_lexicon();
    let mut total = 0;
    let mut disagreements = Vec::new();
    for (name, inventory) in [("core", lex.core_inventory()), ("full", lex.full_inventory())] {
        for noun in test_nouns(&lex) {
            let report_ = enumerate(&inventory, 3, &noun).unwrap();
            total += report_.outcomes.len();
            for seq in oracle_disagreements(&inventory, &report_, &noun) {
                disagreements.push(format!("{name}/{}: {}", noun.lemma, seq.join(" ")));
            }
        }
    }
    let core = lex.core_inventory();
    let core_seqs = enumerate(&core, 3, &lex.noun("people").unwrap()).unwrap().outcomes.len();
    report(
        3,
        "oracle equivalence",
        core.len() == 15 && core_seqs == 3615 && disagreements.is_empty(),
        &format!(
            "{core_seqs} core sequences per noun, {total} verdicts compared, {} disagreements",
            disagreements.len()
        ),
    );
}

#[test]
fn criterion_4_unification_algebra() {
    let mut checks = 0usize;
    let mut failures = Vec::new();
    macro_rules! law {
        ($cond:expr, $($arg:tt)*) => {{
            checks += 1;
            if !$cond {
                failures.push(format!($($arg)*));
            }
        }};
    }
    for a in Polarity::ALL {
        law!(unify_polarity(a, a) == Some(a), "idem {a}");
        law!(unify_polarity(a, Polarity::Unspec) == Some(a), "right id {a}");
        law!(unify_polarity(Polarity::Unspec, a) == Some(a), "left id {a}");
        for b in Polarity::ALL {
            law!(unify_polarity(a, b) == unify_polarity(b, a), "comm {a} {b}");
            for c in Polarity::ALL {
                let l = unify_polarity(a, b).and_then(|x| unify_polarity(x, c));
                let r = unify_polarity(b, c).and_then(|x| unify_polarity(a, x));
                law!(l == r, "assoc {a} {b} {c}");
            }
        }
    }
    for a in Agr::ALL {
        law!(unify_agr(a, a) == Some(a), "idem {a}");
        law!(unify_agr(a, Agr::Unspec) == Some(a), "right id {a}");
        law!(unify_agr(Agr::Unspec, a) == Some(a), "left id {a}");
        for b in Agr::ALL {
            law!(unify_agr(a, b) == unify_agr(b, a), "comm {a} {b}");
            for c in Agr::ALL {
                let l = unify_agr(a, b).and_then(|x| unify_agr(x, c));
                let r = unify_agr(b, c).and_then(|x| unify_agr(a, x));
                law!(l == r, "assoc {a} {b} {c}");
            }
        }
    }
    law!(unify_agr(Agr::ThreeSg, Agr::ThreePl).is_none(), "sg/pl clash");
    law!(unify_polarity(Polarity::Plus, Polarity::Minus).is_none(), "+/- clash");
    report(
        4,
        "unification algebra",
        failures.is_empty(),
        &format!("{checks} laws checked, failures: {failures:?}"),
    );
}

struct LawCounter {
    assertions: usize,
    steps: usize,
    violations: Vec<String>,
}

impl LawCounter {
    fn check_step(&mut self, step: &AdjunctionStep) {
        self.steps += 1;
        for feature in Feature::POLAR {
            self.assertions += 1;
            if step.root_after.polarity(feature) != step.anchor.own.polarity(feature) {
                self.violations
                    .push(format!("{} {feature}", step.anchor.label()));
            }
        }
        if !step.anchor.agree_with_foot {
            self.assertions += 1;
            if step.root_after.agr != step.foot_root_before.agr
                || step.agr_source != AgrSource::Foot
            {
                self.violations.push(format!("{} agr", step.anchor.label()));
            }
        } else {
            self.assertions += 1;
            if Some(step.root_after.agr) != unify_agr(step.anchor.own.agr, step.foot_root_before.agr) {
                self.violations.push(format!("{} agree", step.anchor.label()));
            }
        }
    }

    fn check_phrase(&mut self, d: &DetPhrase) {
        for step in &d.trace {
            self.check_step(step);
        }
        self.assertions += 1;
        let expected_root = d.trace.last().map_or(d.units.last().unwrap().own, |s| s.root_after);
        if expected_root != d.root {
            self.violations.push("root differs from trace".into());
        }
        for unit in &d.units {
            match &unit.kind {
                UnitKind::Genitive(np) => self.check_np(np),
                UnitKind::Partitive { inner: Some(inner), .. } => self.check_phrase(inner),
                _ => {}
            }
        }
    }

    fn check_np(&mut self, np: &NpAnalysis) {
        if let Some(d) = &np.detp {
            self.check_phrase(d);
        }
    }
}

#[test]
fn criterion_5_percolation_laws() {
    let lex = builtin_lexicon();
    let mut counter = LawCounter {
        assertions: 0,
        steps: 0,
        violations: Vec::new(),
    };
    for case in parse_corpus(CORPUS).unwrap() {
        if let Ok(Judgment::Grammatical(analyses)) = judge(&case.phrase, &lex) {
            for a in &analyses {
                counter.check_np(a);
            }
        }
    }
    for inventory in [lex.core_inventory(), lex.full_inventory()] {
        for noun in test_nouns(&lex) {
            let report_ = enumerate(&inventory, 3, &noun).unwrap();
            for o in &report_.outcomes {
                if let Ok(acc) = &o.result {
                    counter.check_phrase(&acc.phrase);
                }
            }
        }
    }
    report(
        5,
        "percolation laws",
        counter.assertions > 1000 && counter.violations.is_empty(),
        &format!(
            "{} adjunction steps, {} assertions, {} violations",
            counter.steps,
            counter.assertions,
            counter.violations.len()
        ),
    );
}

#[test]
fn criterion_6_wh_leftmost() {
    let lex = builtin_lexicon();
    let inventory = lex.full_inventory();
    let mut accepted = 0;
    let mut violations = 0;
    let mut what_non_initial = 0;
    let mut what_initial = 0;
    for noun in test_nouns(&lex) {
        let report_ = enumerate(&inventory, 3, &noun).unwrap();
        for o in report_.outcomes.iter().filter(|o| o.is_accepted()) {
            accepted += 1;
            for (pos, &i) in o.indices.iter().enumerate() {
                if inventory[i].own.wh == Polarity::Plus && pos > 0 {
                    violations += 1;
                }
                if inventory[i].lemma == "what" {
                    if pos > 0 {
                        what_non_initial += 1;
                    } else if o.indices.len() > 1 {
                        what_initial += 1;
                    }
                }
            }
        }
    }
    report(
        6,
        "wh leftmost",
        violations == 0 && what_non_initial == 0 && what_initial > 0,
        &format!(
            "{accepted} accepted sequences, {violations} wh+ non-initial, \
             what initial in {what_initial} multi-determiner sequences, non-initial in {what_non_initial}"
        ),
    );
}

fn genitive_chain(depth: usize) -> String {
    let mut s = String::from("John");
    for _ in 1..depth {
        s.push_str(" 's friend");
    }
    s.push_str(" 's dog");
    s
}

#[test]
fn criterion_7_genitive_recursion() {
    let lex = builtin_lexicon();
    let mut ok = true;
    let mut details = Vec::new();
    let mut depth5 = Duration::ZERO;
    for depth in 1..=5 {
        let tokens = tokenize(&genitive_chain(depth)).unwrap();
        let start = Instant::now();
        let analyses = parse_np(&tokens, &lex);
        let elapsed = start.elapsed();
        if depth == 5 {
            depth5 = elapsed;
        }
        let single = analyses.len() == 1 && analyses[0].genitive_depth() == depth;
        let linear = tokens.len() == 2 * depth + 1;
        ok &= single && linear;
        details.push(format!(
            "depth {depth}: {} tokens, {} analyses, {elapsed:?}",
            tokens.len(),
            analyses.len()
        ));
    }
    ok &= depth5 < Duration::from_millis(100);
    report(7, "genitive recursion", ok, &details.join("; "));
}

#[test]
fn criterion_8_partitive_agreement() {
    let lex = builtin_lexicon();
    let the = lex.determiner("the").unwrap().own.agr;
    let mut ok = true;
    let mut details = Vec::new();
    for inner in ["a", "some"] {
        for (noun, noun_agr) in [("machine", Agr::ThreeSg), ("machines", Agr::ThreePl)] {
            let expected = unify_agr(the, noun_agr).unwrap();
            let mut seen = Vec::new();
            for head in ["kind", "kinds"] {
                let phrase = format!("{inner} {head} of the {noun}");
                let analyses = parse_np(&tokenize(&phrase).unwrap(), &lex);
                let inner_agrees = unify_agr(
                    lex.determiner(inner).unwrap().own.agr,
                    lex.lookup(head)
                        .iter()
                        .find_map(|e| match e {
                            detseq::LexEntry::Noun(n) => Some(n.agr),
                            _ => None,
                        })
                        .unwrap(),
                )
                .is_some();
                if !inner_agrees {
                    ok &= analyses.is_empty();
                    continue;
                }
                ok &= analyses.len() == 1 && analyses[0].np_agr == expected;
                seen.extend(analyses.iter().map(|a| a.np_agr));
                details.push(format!(
                    "{phrase} -> {}",
                    analyses.first().map_or("none".into(), |a| a.np_agr.to_string())
                ));
            }
            ok &= !seen.is_empty() && seen.iter().all(|a| *a == expected);
        }
    }
    // naive cross-check of the outer agreement thread
    ok &= naive_judge(&[lex.determiner("the").unwrap()], &lex.noun("machines").unwrap());
    report(8, "partitive agreement", ok, &details.join("; "));
}
