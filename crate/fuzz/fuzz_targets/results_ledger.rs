#![no_main]

use libfuzzer_sys::fuzz_target;
use mfsurrogate::experiments::{markdown_report, parse_results_csv, results_csv};

fuzz_target!(|data: &[u8]| {
    if let Ok(rows) = parse_results_csv(data) {
        let text = results_csv(&rows);
        let again = parse_results_csv(text.as_bytes()).expect("written ledger parses");
        assert_eq!(results_csv(&again), text);
        let _ = markdown_report(&rows);
    }
});
