#![no_main]

use faclair::rules::{inflect, parse_rules};
use faclair::{parse_svf_line, FormCode};
use libfuzzer_sys::fuzz_target;

const ENTRIES: [&str; 4] = [
    "NOUN M \"saoghal\" \"saoghalan\" \"saoghail\"",
    "NOUN F \"caileag\" - ?",
    "VERB \"òl\" \"òl\"",
    "ADJ \"math\" \"fheàrr\" IRREG",
];

fuzz_target!(|text: &str| {
    let Ok(rules) = parse_rules(text) else { return };
    for line in ENTRIES {
        let e = parse_svf_line(line).unwrap();
        for form in FormCode::for_pos(e.pos) {
            let _ = inflect(&e, form, &rules);
        }
    }
});
