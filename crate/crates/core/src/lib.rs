//! Feature-based determiner sequencing for English noun phrases.
//!
//! Every determiner carries values for eight features (definiteness,
//! quantity, cardinality, genitive, wh, decreasing, constancy, and number
//! agreement) plus, if it can modify another determiner, a selectional
//! restriction on what it modifies. Sequences are built right to left by
//! adjunction; a sequence is grammatical when every restriction unifies and
//! agreement survives up to the noun.
//!
//! ```
//! use detseq::{builtin_lexicon, judge, Agr};
//!
//! let lexicon = builtin_lexicon();
//! let ok = judge("almost all the people", &lexicon).unwrap();
//! assert!(ok.is_grammatical());
//! assert_eq!(ok.analyses()[0].np_agr, Agr::ThreePl);
//!
//! let bad = judge("all what no dogs", &lexicon).unwrap();
//! assert!(!bad.is_grammatical());
//! ```
//!
//! The `book/` directory next to this crate walks through the model chapter
//! by chapter; its code samples run as doc-tests of this crate.

pub mod cli;
pub mod compose;
pub mod corpus;
pub mod enumerate;
pub mod features;
pub mod lexicon;
pub mod parser;

pub use compose::{
    adjoin, attach_to_noun, compose_sequence, leaf, AdjunctionStep, AgrSource, Clash, ClashStage,
    DetPhrase, DetUnit, NpFeatures, UnitKind,
};
pub use enumerate::{enumerate, naive_judge, EnumerationReport};
pub use features::{
    satisfy, satisfy_diagnose, unify_agr, unify_polarity, Agr, Feature, FeatureBundle, Polarity,
};
pub use lexicon::{
    builtin_lexicon, classify_cardinal, load_lexicon, AdverbClass, AdverbEntry, DetEntry,
    DetKind, LexCategory, LexEntry, Lexicon, LexiconError, NounEntry, NounKind,
};
pub use parser::{judge, license_adverb, parse_np, tokenize, AdverbContext, Judgment, NpAnalysis};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/features.md")]
    mod features {}
    #[doc = include_str!("../../../book/src/lexicon.md")]
    mod lexicon {}
    #[doc = include_str!("../../../book/src/composition.md")]
    mod composition {}
    #[doc = include_str!("../../../book/src/phrases.md")]
    mod phrases {}
    #[doc = include_str!("../../../book/src/enumeration.md")]
    mod enumeration {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
