#![allow(dead_code)]

use std::path::PathBuf;

use faclair::{Entry, GaelicWord, Gender, PartOfSpeech, PartValue};
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

pub fn read_fixture(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn w(s: &str) -> GaelicWord {
    GaelicWord::new(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

/// Words built from the native alphabet plus accented vowels, optionally
/// with an inner apostrophe, hyphen or space.
pub fn word() -> impl Strategy<Value = GaelicWord> {
    "[abcdefghilmnoprstuàèìòùéóABCDFGLMST]{1,9}([ '-][abcdghilmnorstuàòù]{1,6})?"
        .prop_map(|s| GaelicWord::new(&s).expect("generated word is valid"))
}

pub fn part_value() -> impl Strategy<Value = PartValue> {
    prop_oneof![
        6 => word().prop_map(PartValue::Present),
        1 => Just(PartValue::Unknown),
        1 => Just(PartValue::NonExistent),
    ]
}

pub fn valid_entry() -> impl Strategy<Value = Entry> {
    let noun = (word(), any::<bool>(), part_value(), part_value(), any::<bool>()).prop_map(|(l, m, np, gs, irr)| {
        Entry::noun(l, if m { Gender::M } else { Gender::F }, np, gs).with_irregular(irr)
    });
    let verb = (word(), part_value(), any::<bool>()).prop_map(|(l, vn, irr)| Entry::verb(l, vn).with_irregular(irr));
    let adj =
        (word(), part_value(), any::<bool>()).prop_map(|(l, cp, irr)| Entry::adjective(l, cp).with_irregular(irr));
    prop_oneof![noun, verb, adj]
}

/// `n` entries from a fixed seed.
pub fn generate_entries(n: usize) -> Vec<Entry> {
    let rng = TestRng::from_seed(RngAlgorithm::ChaCha, &[7; 32]);
    let mut runner = TestRunner::new_with_rng(Config::default(), rng);
    let strategy = valid_entry();
    (0..n)
        .map(|_| {
            strategy
                .new_tree(&mut runner)
                .expect("strategy never rejects")
                .current()
        })
        .collect()
}

/// The integrity constraint written out directly, plus the mandatory parts.
pub fn brute_force_valid(pos: PartOfSpeech, gr: bool, np: bool, gs: bool, vn: bool, cp: bool) -> bool {
    let is = |p| pos == p;
    let dnf = ((!gr && !np && !gs) || is(PartOfSpeech::Noun))
        && (!vn || is(PartOfSpeech::Verb))
        && (!cp || is(PartOfSpeech::Adj));
    let mandatory = match pos {
        PartOfSpeech::Noun => gr && np && gs,
        PartOfSpeech::Verb => vn,
        PartOfSpeech::Adj => cp,
    };
    dnf && mandatory
}

/// An entry with exactly the given fields set.
pub fn entry_with(pos: PartOfSpeech, gr: bool, np: bool, gs: bool, vn: bool, cp: bool) -> Entry {
    let part = |on: bool| on.then(|| PartValue::Present(w("x")));
    Entry {
        lemma: w("facal"),
        pos,
        irregular: false,
        gender: gr.then_some(Gender::F),
        np: part(np),
        gs: part(gs),
        vn: part(vn),
        cp: part(cp),
    }
}

/// Hand-listed surface forms of the twenty-entry vocabulary.
pub fn hand_forms() -> Vec<Vec<GaelicWord>> {
    read_fixture("vocab20.forms")
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| l.split(' ').map(w).collect())
        .collect()
}

/// (mode, fold, matched_types, total_types, matched_tokens, total_tokens)
pub fn expected_coverage() -> Vec<(String, String, usize, usize, u64, u64)> {
    read_fixture("coverage_expected.tsv")
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| {
            let f: Vec<&str> = l.split('\t').collect();
            (
                f[0].into(),
                f[1].into(),
                f[2].parse().unwrap(),
                f[3].parse().unwrap(),
                f[4].parse().unwrap(),
                f[5].parse().unwrap(),
            )
        })
        .collect()
}

/// The frequency fixture read with plain string splitting.
pub fn naive_frequency_rows() -> Vec<(String, u64)> {
    read_fixture("freq50.tsv")
        .lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split('\t').collect();
            (f[1].to_string(), f[2].parse().unwrap())
        })
        .collect()
}

/// Indefinite and vocative cells of the reference saoghal table.
pub const SAOGHAL_CELLS: &[(&str, &[&str])] = &[
    ("NS", &["saoghal"]),
    ("NP", &["saoghalan"]),
    ("GS", &["saoghail"]),
    ("GP", &["shaoghalan"]),
    ("DS", &["saoghal"]),
    ("DP", &["saoghalan"]),
    ("VS", &["shaoghail"]),
    ("VP", &["shaoghalan"]),
];

pub const SAOGHAL_LEXEMES: &[&str] = &[
    "saoghal",
    "saoghalan",
    "saoghail",
    "shaoghalan",
    "shaoghail",
    "shaoghal",
];

/// Every populated cell of the reference òl table.
pub const OL_CELLS: &[(&str, &[&str])] = &[
    ("IMP2S", &["òl"]),
    ("VN", &["òl"]),
    ("PASTP", &["òlta"]),
    ("PAST_IND", &["dh'òl"]),
    ("PAST_PASS", &["dh'òladh"]),
    ("PAST_DEP", &["dh'òl"]),
    ("FUT_IND", &["òlaidh"]),
    ("FUT_PASS", &["òlar", "òltar"]),
    ("FUT_DEP", &["òl"]),
    ("COND1S_IND", &["dh'òlainn"]),
    ("COND1P_IND", &["dh'òlamaid"]),
    ("COND23_IND", &["dh'òladh"]),
    ("COND_PASS", &["dh'òltadh"]),
    ("COND1S_DEP", &["òlainn"]),
    ("COND1P_DEP", &["òlamaid"]),
    ("COND23_DEP", &["òladh"]),
    ("RELFUT", &["dh'òlas"]),
    ("RELFUT_PASS", &["dh'òlar"]),
    ("IMP1S", &["òlam"]),
    ("IMP3S", &["òladh"]),
    ("IMP1P", &["òlamaid"]),
    ("IMP2P", &["òlaibh"]),
    ("IMP3P", &["òladh"]),
    ("IMP_PASS", &["òlar", "òltar"]),
];

/// Compares a paradigm against expected cells; returns the mismatches.
pub fn paradigm_mismatches(p: &faclair::rules::Paradigm, expected: &[(&str, &[&str])]) -> Vec<String> {
    let mut bad = Vec::new();
    for (code, want) in expected {
        let form: faclair::FormCode = code.parse().unwrap();
        let got: Vec<String> = match p.get(&form) {
            Some(Ok(ws)) => ws.iter().map(|w| w.to_string()).collect(),
            Some(Err(e)) => vec![format!("error: {e}")],
            None => vec!["absent".into()],
        };
        if got != *want {
            bad.push(format!("{code}: got {got:?}, want {want:?}"));
        }
    }
    bad
}
