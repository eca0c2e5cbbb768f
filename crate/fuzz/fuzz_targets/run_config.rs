#![no_main]

use libfuzzer_sys::fuzz_target;
use mfsurrogate::config::RunConfig;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(cfg) = RunConfig::parse(text) {
        let written = cfg.to_text();
        let again = RunConfig::parse(&written).expect("written config parses");
        assert_eq!(again, cfg);
        assert_eq!(again.to_text(), written);
    }
});
