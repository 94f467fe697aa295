use proptest::prelude::*;

use detseq::compose::ClashStage;
use detseq::features::Feature;
use detseq::{
    attach_to_noun, builtin_lexicon, compose_sequence, judge, leaf, parse_np, satisfy,
    satisfy_diagnose, tokenize, Agr, DetEntry, DetUnit, FeatureBundle, Polarity,
};

fn polarity() -> impl Strategy<Value = Polarity> {
    prop::sample::select(Polarity::ALL.to_vec())
}

fn agr() -> impl Strategy<Value = Agr> {
    prop::sample::select(Agr::ALL.to_vec())
}

fn bundle() -> impl Strategy<Value = FeatureBundle> {
    (prop::array::uniform7(polarity()), agr()).prop_map(|(p, agr)| FeatureBundle {
        definite: p[0],
        quantity: p[1],
        cardinal: p[2],
        genitive: p[3],
        wh: p[4],
        decreasing: p[5],
        constancy: p[6],
        agr,
    })
}

fn inventory() -> Vec<DetEntry> {
    builtin_lexicon().full_inventory()
}

fn det_sequence(max: usize) -> impl Strategy<Value = Vec<DetEntry>> {
    let inv = inventory();
    prop::collection::vec(prop::sample::select(inv), 1..=max)
}

const WORDS: &[&str] = &[
    "all", "the", "these", "this", "three", "one", "a", "any", "every", "no", "what", "my",
    "her", "John", "'s", "friend", "dog", "dogs", "people", "machines", "water", "kind",
    "kinds", "of", "some", "half", "almost", "just", "hardly", "only", "few", "many",
];

proptest! {
    #[test]
    fn satisfy_is_symmetric(a in bundle(), b in bundle()) {
        prop_assert_eq!(satisfy(&a, &b).is_some(), satisfy(&b, &a).is_some());
        prop_assert_eq!(satisfy(&a, &b), satisfy(&b, &a));
    }

    #[test]
    fn satisfy_result_refines_both(a in bundle(), b in bundle()) {
        if let Some(m) = satisfy(&a, &b) {
            prop_assert!(m.refines(&a));
            prop_assert!(m.refines(&b));
        }
    }

    #[test]
    fn diagnosed_clash_is_real(a in bundle(), b in bundle()) {
        if let Err(c) = satisfy_diagnose(&a, &b) {
            prop_assert!(c.required.is_specified() && c.found.is_specified());
            // everything earlier in the order unified
            for f in Feature::ALL.iter().take_while(|f| **f != c.feature) {
                let ok = match f {
                    Feature::Agr => a.agr.unify(b.agr).is_some(),
                    _ => a.polarity(*f).unwrap().unify(b.polarity(*f).unwrap()).is_some(),
                };
                prop_assert!(ok);
            }
        }
    }

    #[test]
    fn root_feature_law(seq in det_sequence(4)) {
        let units: Vec<DetUnit> = seq.iter().cloned().map(DetUnit::from_entry).collect();
        if let Ok(d) = compose_sequence(units) {
            prop_assert_eq!(d.units.len(), seq.len());
            prop_assert_eq!(d.trace.len(), seq.len() - 1);
            for step in &d.trace {
                for f in Feature::POLAR {
                    prop_assert_eq!(step.root_after.polarity(f), step.anchor.own.polarity(f));
                }
                if !step.anchor.agree_with_foot {
                    prop_assert_eq!(step.root_after.agr, step.foot_root_before.agr);
                }
            }
            // wh+ only leftmost
            for (i, u) in d.units.iter().enumerate() {
                prop_assert!(i == 0 || u.own.wh != Polarity::Plus);
            }
            prop_assert!(d.root.wh != Polarity::Plus || d.units[0].own.wh == Polarity::Plus);
        }
    }

    #[test]
    fn innermost_only_law(seq in det_sequence(4)) {
        let units: Vec<DetUnit> = seq.iter().cloned().map(DetUnit::from_entry).collect();
        let result = compose_sequence(units);
        // the rightmost unit that cannot adjoin, if any, is where composition stops
        let last_blocked = seq[..seq.len() - 1].iter().rposition(|d| d.selection.is_none());
        if let Some(i) = last_blocked {
            let clash = result.unwrap_err();
            prop_assert!(clash.position >= i);
            if clash.position == i {
                prop_assert_eq!(clash.stage, ClashStage::NoAuxTree);
            }
        }
    }

    #[test]
    fn monotone_rejection(seq in det_sequence(3), extra in prop::sample::select(inventory())) {
        let compose = |s: &[DetEntry]| compose_sequence(s.iter().cloned().map(DetUnit::from_entry).collect());
        if compose(&seq).is_err() {
            let mut prefixed = vec![extra.clone()];
            prefixed.extend(seq.iter().cloned());
            prop_assert!(compose(&prefixed).is_err());
        }
    }

    #[test]
    fn single_unit_is_leaf(d in prop::sample::select(inventory())) {
        let unit = DetUnit::from_entry(d);
        prop_assert_eq!(compose_sequence(vec![unit.clone()]).unwrap(), leaf(unit));
    }

    #[test]
    fn analyses_revalidate(words in prop::collection::vec(prop::sample::select(WORDS.to_vec()), 1..7)) {
        let lex = builtin_lexicon();
        let text = words.join(" ");
        let tokens = tokenize(&text).unwrap();
        let analyses = parse_np(&tokens, &lex);
        for a in &analyses {
            let detp = a.detp.as_ref().map(|d| compose_sequence(d.units.clone()).unwrap());
            let np = attach_to_noun(detp.as_ref(), &a.head).unwrap();
            prop_assert_eq!(np.wh, a.np_wh);
            prop_assert_eq!(np.agr, a.np_agr);
            prop_assert_eq!(a.span, (0, tokens.len()));
        }
        let first = judge(&text, &lex).unwrap();
        let second = judge(&text, &lex).unwrap();
        prop_assert_eq!(first.is_grammatical(), !analyses.is_empty());
        prop_assert_eq!(&first, &second);
        match first {
            detseq::Judgment::Grammatical(a) => prop_assert!(!a.is_empty()),
            detseq::Judgment::Ungrammatical(c) => prop_assert!(!c.is_empty()),
        }
    }
}

#[test]
fn genitive_chains_have_one_analysis() {
    let lex = builtin_lexicon();
    let mut phrase = "Mary".to_string();
    for depth in 1..=5 {
        let text = format!("{phrase} 's dog");
        let a = parse_np(&tokenize(&text).unwrap(), &lex);
        assert_eq!(a.len(), 1, "{text}");
        assert_eq!(a[0].genitive_depth(), depth);
        phrase.push_str(" 's friend");
    }
}

#[test]
fn partitive_agreement_ignores_head_number() {
    let lex = builtin_lexicon();
    for outer in ["these", "the", "those"] {
        for noun in ["machine", "machines"] {
            let mut agrs = Vec::new();
            for inner in ["some kind", "some kinds", "a kind", "all kinds"] {
                let text = format!("{inner} of {outer} {noun}");
                for a in parse_np(&tokenize(&text).unwrap(), &lex) {
                    agrs.push(a.np_agr);
                }
            }
            let outer_agr = lex.determiner(outer).unwrap().own.agr;
            let noun_agr = lex.noun(noun).unwrap().agr;
            match outer_agr.unify(noun_agr) {
                Some(expected) => {
                    assert!(!agrs.is_empty());
                    assert!(agrs.iter().all(|a| *a == expected), "{outer} {noun}");
                }
                None => assert!(agrs.is_empty(), "{outer} {noun}"),
            }
        }
    }
}

#[test]
fn order_sensitivity() {
    let lex = builtin_lexicon();
    assert!(judge("all the people", &lex).unwrap().is_grammatical());
    assert!(!judge("the all people", &lex).unwrap().is_grammatical());
}

#[test]
fn ambiguous_adverb_scope() {
    let lex = builtin_lexicon();
    // [only [John 's dog]] and [[only John] 's dog]
    let a = parse_np(&tokenize("only John's dog").unwrap(), &lex);
    assert_eq!(a.len(), 2);
    // class-3 adverb on an embedded cardinal
    assert!(judge("the approximately three people", &lex).unwrap().is_grammatical());
    assert!(judge("almost three people", &lex).unwrap().is_grammatical());
    assert!(judge("simply John's dog", &lex).unwrap().is_grammatical());
    assert!(!judge("only what dogs", &lex).unwrap().is_grammatical());
}

#[test]
fn wh_determiner_marks_the_np() {
    let lex = builtin_lexicon();
    let j = judge("what three dogs", &lex).unwrap();
    assert_eq!(j.analyses()[0].np_wh, Polarity::Plus);
    let j = judge("all what dogs", &lex).unwrap();
    assert_eq!(j.clashes()[0].stage, ClashStage::WhPosition);
}

#[test]
fn clashes_lead_with_rightmost_progress() {
    let lex = builtin_lexicon();
    let j = judge("these John 's dog", &lex).unwrap();
    let clashes = j.clashes();
    assert!(!clashes.is_empty());
    let positions: Vec<usize> = clashes.iter().map(|c| c.position).collect();
    assert!(positions.contains(&1), "{clashes:?}");

    let j = judge("dog the", &lex).unwrap();
    assert_eq!(j.clashes()[0].stage, ClashStage::NoParse);
}
