#![no_main]

use libfuzzer_sys::fuzz_target;
use smoothmin::classical::{hmin_trace_relaxed, witness_violation};
use smoothmin::io::parse_joint_csv;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(p) = parse_joint_csv(text) else { return };
    let total: f64 = p.table().iter().sum();
    assert!((total - 1.0).abs() < 1e-9);
    if p.nx() * p.ny() <= 64 {
        let (lambda, w) = hmin_trace_relaxed(&p, 0.1).expect("valid joint distribution");
        assert!((0.0..=1.0 + 1e-12).contains(&lambda));
        assert!(witness_violation(&p, 0.1, &w) <= 1e-8);
    }
});
