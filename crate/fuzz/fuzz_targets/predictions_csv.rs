#![no_main]

use libfuzzer_sys::fuzz_target;
use mfsurrogate::data::parse_predictions_csv;

fuzz_target!(|data: &[u8]| {
    if let Ok(p) = parse_predictions_csv(data) {
        assert!(p.iter().all(|v| v.is_finite()));
    }
});
