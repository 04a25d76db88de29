#![no_main]

use betauto::numfield::config::ContextConfig;
use betauto::numfield::BetaSpec;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(config) = ContextConfig::parse(text) else { return };
    // keep root isolation cheap
    if let Ok(BetaSpec::MinPoly(p)) = config.beta_spec() {
        if p.degree().unwrap_or(0) > 8 || config.digits.len() > 8 {
            return;
        }
    }
    let _ = config.build(Some(12));
});
