#![no_main]

use cubic_census::cli_store::parse_poly;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(p) = parse_poly(s) {
            // coefficients print back to an equal polynomial
            let c = p.coeffs();
            let again = parse_poly(&format!("{},{},{}", c[0], c[1], c[2])).expect("reparse");
            assert_eq!(again, p);
        }
    }
});
