#![no_main]

use libfuzzer_sys::fuzz_target;
use mfsurrogate::data::{parse_onc_csv, BoundsPolicy, OncOutput};

fuzz_target!(|data: &[u8]| {
    for policy in [BoundsPolicy::Warn, BoundsPolicy::Reject, BoundsPolicy::Strict] {
        if let Ok(onc) = parse_onc_csv(data, policy, None) {
            for out in OncOutput::ALL {
                let _ = onc.to_dataset(out);
            }
        }
    }
});
