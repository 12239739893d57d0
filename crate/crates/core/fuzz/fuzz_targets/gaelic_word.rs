#![no_main]

use faclair::lexicon::FoldPolicy;
use faclair::orthography::{glottal_past_prefix, harmony_violations, lenite, slenderize, strip_prothesis};
use faclair::GaelicWord;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    let Ok(w) = GaelicWord::new(text) else { return };
    let l = lenite(&w);
    assert_eq!(lenite(&l), l);
    assert!(l.char_len() <= w.char_len() + 1);
    let _ = glottal_past_prefix(&w);
    let _ = strip_prothesis(&w);
    let _ = slenderize(&w);
    let _ = harmony_violations(&w);
    for policy in [FoldPolicy::FoldAccents, FoldPolicy::FoldAccentsAndCase] {
        let key = policy.key(&w);
        if let Ok(k) = GaelicWord::new(&key) {
            assert_eq!(policy.key(&k), key);
        }
    }
});
