#![no_main]

use faclair::{parse_svf_line, serialize_entry};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|line: &str| {
    if let Ok(e) = parse_svf_line(line) {
        let canonical = serialize_entry(&e);
        assert_eq!(parse_svf_line(&canonical).as_ref(), Ok(&e));
    }
});
