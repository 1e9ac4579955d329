#![no_main]

use cubic_census::cli_store::{parse_complex, parse_list, parse_primes, Config};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let _ = parse_list::<i64>(s);
    if let Ok(grid) = parse_list::<f64>(s) {
        if let Ok(primes) = parse_primes("2,3") {
            if let Ok(c) = Config::new(primes, grid) {
                assert!(c.grid.windows(2).all(|w| w[0] < w[1]));
                assert!(c.grid.iter().all(|x| *x >= 2.0));
            }
        }
    }
    if let Ok(p) = parse_primes(s) {
        assert!(p.len() >= 2);
    }
    if let Ok(z) = parse_complex(s) {
        assert!(z.re.is_finite() && z.im.is_finite());
    }
});
