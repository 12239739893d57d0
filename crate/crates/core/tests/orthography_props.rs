mod common;

use common::{w, word};
use faclair::lexicon::FoldPolicy;
use faclair::orthography::{
    attach_suffix, glottal_past_prefix, is_harmonic, last_vowel_class, lenite, normalize_accents, slenderize,
    strip_prothesis, AccentMode, SuffixAlternation, VowelClass,
};
use faclair::GaelicWord;
use proptest::prelude::*;

#[test]
fn reference_examples() {
    for (a, b) in [
        ("cat", "chat"),
        ("tuit", "thuit"),
        ("saoghal", "shaoghal"),
        ("òl", "òl"),
    ] {
        assert_eq!(lenite(&w(a)), w(b));
    }
    assert_eq!(glottal_past_prefix(&w("òl")), w("dh'òl"));
    assert_eq!(strip_prothesis(&w("n-iasg")), w("iasg"));
    assert_eq!(strip_prothesis(&w("t-saoghail")), w("saoghail"));
    assert_eq!(slenderize(&w("fear")).unwrap(), w("fir"));
    assert_eq!(slenderize(&w("saoghal")).unwrap(), w("saoghail"));
}

/// Stems whose vowels all share one class.
fn harmonic_stem() -> impl Strategy<Value = GaelicWord> {
    prop_oneof![
        "[bcdfglmnprst]{0,2}[aou]{1,2}([bcdfglmnrst]{1,2}[aou]{1,2}){0,2}[bcdglmnrst]{0,2}",
        "[bcdfglmnprst]{0,2}[ei]{1,2}([bcdfglmnrst]{1,2}[ei]{1,2}){0,2}[bcdglmnrst]{0,2}",
    ]
    .prop_map(|s| w(&s))
}

fn suffix() -> impl Strategy<Value = SuffixAlternation> {
    prop::sample::select(vec![
        ("an", "ean"),
        ("ta", "te"),
        ("adh", "eadh"),
        ("aidh", "idh"),
        ("ar", "ear"),
        ("tar", "tear"),
        ("as", "eas"),
        ("ainn", "inn"),
        ("amaid", "eamaid"),
        ("tadh", "teadh"),
        ("am", "eam"),
        ("aibh", "ibh"),
    ])
    .prop_map(|(b, s)| SuffixAlternation::new(b, s).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn lenition_is_idempotent(x in word()) {
        let once = lenite(&x);
        prop_assert_eq!(lenite(&once), once);
    }

    #[test]
    fn lenition_inserts_at_most_one_h(x in word()) {
        let l = lenite(&x);
        let grew = l.char_len() - x.char_len();
        prop_assert!(grew <= 1);
        if grew == 1 {
            let mut chars: Vec<char> = l.as_str().chars().collect();
            prop_assert_eq!(chars.remove(1), 'h');
            prop_assert_eq!(chars.into_iter().collect::<String>(), x.as_str());
        }
    }

    #[test]
    fn prothesis_round_trip(x in "[a-zàèìòù]{1,8}", prefix in prop::sample::select(vec!["t-", "n-", "h-", "dh'"])) {
        let base = w(&x);
        prop_assert_eq!(strip_prothesis(&w(&format!("{prefix}{x}"))), base);
    }

    #[test]
    fn folding_is_idempotent(x in word()) {
        for policy in [FoldPolicy::Exact, FoldPolicy::FoldAccents, FoldPolicy::FoldAccentsAndCase] {
            let once = policy.key(&x);
            prop_assert_eq!(policy.key(&w(&once)), once);
        }
        for mode in [AccentMode::FoldAcuteToGrave, AccentMode::StripAll, AccentMode::None] {
            let once = normalize_accents(&x, mode);
            prop_assert_eq!(normalize_accents(&once, mode), once);
        }
    }

    #[test]
    fn slenderized_words_end_slender(x in word()) {
        if let Ok(s) = slenderize(&x) {
            prop_assert_eq!(last_vowel_class(&s).unwrap(), VowelClass::Slender);
        }
    }

    #[test]
    fn suffixing_keeps_harmony(stem in harmonic_stem(), alt in suffix()) {
        prop_assert!(is_harmonic(&stem));
        let out = attach_suffix(&stem, &alt).unwrap();
        prop_assert!(is_harmonic(&out), "{} + {} = {}", stem, alt, out);
    }
}
