#![no_main]

use faclair::analysis::{cumulative_coverage_curve, hapax_report, parse_frequency_list, Delimiter};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    for delimiter in [Delimiter::Auto, Delimiter::Tab, Delimiter::Comma] {
        let Ok(load) = parse_frequency_list(text, delimiter) else {
            continue;
        };
        let fl = load.list;
        assert!(!fl.is_empty());
        let curve = cumulative_coverage_curve(&fl, fl.len()).unwrap();
        assert!(curve.windows(2).all(|p| p[0].1 <= p[1].1));
        let (n, words) = hapax_report(&fl);
        assert_eq!(n, words.len());
    }
});
