#![no_main]

use faclair::svf::parse_vocabulary;
use faclair::{build_all_forms, serialize_entry, FoldPolicy, RuleSet, Vocabulary};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    let report = parse_vocabulary(text);
    assert_eq!(report.total_lines(), text.lines().count());
    let again: String = report.entries.iter().map(|e| serialize_entry(e) + "\n").collect();
    assert_eq!(parse_vocabulary(&again).entries, report.entries);
    let v = Vocabulary::new(report.entries, FoldPolicy::FoldAccents);
    let index = build_all_forms(&v, &RuleSet::default_rules());
    for form in index.forms() {
        assert!(!index.recognize(form).is_empty());
    }
});
