#![no_main]

use libfuzzer_sys::fuzz_target;
use smoothmin::io::parse_distribution;
use smoothmin::psme::solve_qp_distribution;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(p) = parse_distribution(text) else { return };
    let total: f64 = p.probs().iter().sum();
    assert!((total - 1.0).abs() < 1e-9);
    assert!(p.probs().iter().all(|&x| x > 0.0 && x.is_finite()));
    if p.len() <= 64 {
        let sol = solve_qp_distribution(&p, 0.1).expect("valid distribution");
        assert!(sol.log2_f.log2().is_finite());
    }
});
