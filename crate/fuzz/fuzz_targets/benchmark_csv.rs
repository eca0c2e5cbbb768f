#![no_main]

use libfuzzer_sys::fuzz_target;
use mfsurrogate::data::parse_benchmark_csv;
use mfsurrogate::FidelityLevel;

fuzz_target!(|data: &[u8]| {
    if let Ok(ds) = parse_benchmark_csv(data, None) {
        assert_eq!(ds.inputs.rows(), ds.targets.len());
        assert!(ds.targets.iter().all(|y| y.is_finite()));
        // pinning the level the file already has must not change the outcome
        assert!(parse_benchmark_csv(data, Some(ds.level)).is_ok());
    }
    for level in [FidelityLevel::Lf, FidelityLevel::Mf, FidelityLevel::Hf] {
        let _ = parse_benchmark_csv(data, Some(level));
    }
});
