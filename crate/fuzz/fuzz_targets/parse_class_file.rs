#![no_main]

use libfuzzer_sys::fuzz_target;
use semistab::io::{parse_class_file, NoResolver};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let _ = parse_class_file(text, &NoResolver);
});
