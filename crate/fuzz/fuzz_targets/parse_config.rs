#![no_main]

use libfuzzer_sys::fuzz_target;
use smoothmin_cli::{parse_config, Figure1Args, Figure1Run, HminArgs, HminRun, VerifyArgs, VerifyRun};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(config) = parse_config(text) else { return };
    // Resolution must reject or accept without panicking.
    let _ = HminRun::resolve(&HminArgs::default(), &config.hmin);
    let _ = Figure1Run::resolve(&Figure1Args::default(), &config.figure1);
    let _ = VerifyRun::resolve(&VerifyArgs::default(), &config.verify);
});
