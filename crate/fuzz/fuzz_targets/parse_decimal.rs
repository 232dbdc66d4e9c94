#![no_main]

use libfuzzer_sys::fuzz_target;
use semistab::bounds::parse_decimal;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if text.len() <= 4096 {
        let _ = parse_decimal(text);
    }
});
