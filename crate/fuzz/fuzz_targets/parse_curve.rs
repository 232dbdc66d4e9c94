#![no_main]

use libfuzzer_sys::fuzz_target;
use semistab::io::{curve_to_json, parse_curve};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(c) = parse_curve(text) {
        let again = parse_curve(&curve_to_json(&c).to_string()).expect("serialized curve parses");
        assert_eq!(again, c);
    }
});
