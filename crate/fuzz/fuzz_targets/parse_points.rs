#![no_main]

use libfuzzer_sys::fuzz_target;
use semistab::fixtures;
use semistab::io::parse_points;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let _ = parse_points(&fixtures::genus2_q(), text);
    let _ = parse_points(&fixtures::elliptic_f3(), text);
});
