//! Rule-based Scottish Gaelic morphology.
//!
//! Vocabularies of principal parts are read from SVF files ([`svf`]), every
//! other form is derived by a declarative rule file ([`rules`]) built on the
//! orthographic transforms in [`orthography`], and the results feed the
//! recognition index in [`lexicon`] and the corpus statistics in [`analysis`].

pub mod analysis;
pub mod cli;
pub mod export;
pub mod lexicon;
pub mod orthography;
pub mod rules;
pub mod svf;

pub use lexicon::{build_all_forms, AllFormsIndex, FoldPolicy, Vocabulary};
pub use orthography::{GaelicWord, SuffixAlternation, VowelClass};
pub use rules::{all_surface_forms, conjugate, decline, inflect, parse_rules, FormCode, RuleSet};
pub use svf::{parse_svf_line, serialize_entry, validate, Entry, Gender, PartOfSpeech, PartValue};
