#![no_main]

use cubic_census::cubic_fields::{CubicField, FieldRecord};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(rec) = serde_json::from_slice::<FieldRecord>(data) {
        if let Ok(f) = CubicField::from_record(&rec) {
            assert_eq!(f.record(), rec);
        }
    }
});
