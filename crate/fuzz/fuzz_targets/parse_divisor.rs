#![no_main]

use libfuzzer_sys::fuzz_target;
use semistab::fixtures;
use semistab::io::parse_divisor_str;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    for c in [fixtures::elliptic_q(), fixtures::genus2_f5()] {
        if let Ok(d) = parse_divisor_str(&c, text) {
            assert_eq!(parse_divisor_str(&c, &d.to_json().to_string()).unwrap(), d);
        }
    }
});
