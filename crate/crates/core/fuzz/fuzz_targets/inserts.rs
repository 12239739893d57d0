#![no_main]

use faclair::export::{emit_inserts, parse_inserts};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|sql: &str| {
    if let Ok(entries) = parse_inserts(sql) {
        assert_eq!(parse_inserts(&emit_inserts(&entries).sql).unwrap(), entries);
    }
});
