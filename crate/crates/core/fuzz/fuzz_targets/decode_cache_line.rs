#![no_main]

use cubic_census::cli_store::cache::{decode_line, encode_line};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(e) = decode_line(s) {
            // an accepted line re-encodes to one that decodes to the same entry
            let line = encode_line(&e);
            assert_eq!(decode_line(line.trim_end()).expect("re-decode"), e);
        }
    }
});
