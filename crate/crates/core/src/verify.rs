//! Seeded randomized verification suites.
//!
//! Each suite draws instances from a ChaCha8 stream, evaluates one family of
//! invariants and records the worst observed residual against its limit.
//! The same `(suite, trials, seed)` always produces the same report.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::asympt::{compression_curves, n_grid, EtaChoice};
use crate::classical::{
    hmin_purified_classical, hmin_trace_global_lp, hmin_trace_partial_lp, hmin_trace_relaxed, imax_global_lp,
    imax_partial_from_global, imax_partial_lp, witness_violation, JointDistribution, SmoothingMode,
};
use crate::dist::{iid_product, Distribution};
use crate::error::{Error, Result};
use crate::psme::{build_certificate, eta_from_solution, qp_oracle, solve_qp, solve_qp_distribution};
use crate::spectrum::{beta, d_lower, d_upper, e_gamma, SortedSpectrum};

/// Smoothing parameters exercised by the quadratic-program suites.
pub const QP_EPS: [f64; 5] = [0.05, 0.1, 0.3, 0.6, 0.9];
/// Smoothing parameters exercised by the trace-distance suite.
pub const TRACE_EPS: [f64; 3] = [0.05, 0.1, 0.3];
/// Smoothing parameters exercised by the max-information suite.
pub const IMAX_EPS: [f64; 2] = [0.05, 0.2];

/// The joint distribution with `P(0,0) = P(0,1) = 1/4`, `P(1,0) = 0`,
/// `P(1,1) = 1/2` whose partial and global purified-distance smoothing differ.
pub fn counterexample_joint() -> JointDistribution {
    JointDistribution::new(vec![vec![0.25, 0.25], vec![0.0, 0.5]]).expect("valid table")
}

pub const COUNTEREXAMPLE_EPS: f64 = 0.1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Certificates,
    Oracle,
    Sandwich,
    Qp,
    Spectrum,
    TraceEquivalence,
    Counterexample,
    Imax,
    PurifiedEquivalence,
    Curves,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Certificates,
        Suite::Oracle,
        Suite::Sandwich,
        Suite::Qp,
        Suite::Spectrum,
        Suite::TraceEquivalence,
        Suite::Counterexample,
        Suite::Imax,
        Suite::PurifiedEquivalence,
        Suite::Curves,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Certificates => "certificates",
            Suite::Oracle => "oracle",
            Suite::Sandwich => "sandwich",
            Suite::Qp => "qp",
            Suite::Spectrum => "spectrum",
            Suite::TraceEquivalence => "trace-equivalence",
            Suite::Counterexample => "counterexample",
            Suite::Imax => "imax",
            Suite::PurifiedEquivalence => "purified-equivalence",
            Suite::Curves => "curves",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite `{s}`")))
    }
}

/// Worst observed value of one residual and the limit it must not exceed.
#[derive(Clone, Debug, PartialEq)]
pub struct Metric {
    pub name: &'static str,
    pub worst: f64,
    pub limit: f64,
}

impl Metric {
    pub fn passed(&self) -> bool {
        self.worst <= self.limit
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub instances: usize,
    pub metrics: Vec<Metric>,
    /// Informational values (not pass/fail).
    pub values: Vec<(String, f64)>,
    pub failures: Vec<String>,
}

const MAX_RECORDED_FAILURES: usize = 10;

impl SuiteReport {
    fn new(suite: Suite) -> Self {
        SuiteReport { suite, instances: 0, metrics: Vec::new(), values: Vec::new(), failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.metrics.iter().all(Metric::passed)
    }

    fn metric(&mut self, name: &'static str, limit: f64) -> usize {
        self.metrics.push(Metric { name, worst: 0.0, limit });
        self.metrics.len() - 1
    }

    /// Records a residual; NaN counts as an infinite violation.
    fn observe(&mut self, id: usize, value: f64, context: impl FnOnce() -> String) {
        let value = if value.is_nan() { f64::INFINITY } else { value };
        let m = &mut self.metrics[id];
        if value > m.worst {
            m.worst = value;
        }
        if value > m.limit {
            let name = m.name;
            self.fail(|| format!("{name} = {value:e} at {}", context()));
        }
    }

    fn fail(&mut self, message: impl FnOnce() -> String) {
        if self.failures.len() < MAX_RECORDED_FAILURES {
            self.failures.push(message());
        }
    }

    fn check<T>(&mut self, result: Result<T>, context: impl FnOnce() -> String) -> Option<T> {
        match result {
            Ok(v) => Some(v),
            Err(e) => {
                self.fail(|| format!("{} failed: {e}", context()));
                None
            }
        }
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(f, "suite {}: {status} ({} instances)", self.suite, self.instances)?;
        for m in &self.metrics {
            writeln!(f, "  {:<32} worst {:.3e}  limit {:.1e}", m.name, m.worst, m.limit)?;
        }
        for (name, v) in &self.values {
            writeln!(f, "  {name:<32} {v:.12}")?;
        }
        for msg in &self.failures {
            writeln!(f, "  failure: {msg}")?;
        }
        Ok(())
    }
}

/// Random distribution on at most `max_dim` outcomes, with occasional ties
/// and strongly skewed weights.
pub fn random_distribution(rng: &mut impl Rng, max_dim: usize) -> Distribution {
    let d = rng.gen_range(1..=max_dim);
    let mut weights: Vec<f64> = Vec::with_capacity(d);
    for i in 0..d {
        let w = if i > 0 && rng.gen_bool(0.2) {
            weights[i - 1]
        } else {
            rng.gen_range(0.01f64..1.0).powi(rng.gen_range(1..=3))
        };
        weights.push(w);
    }
    Distribution::from_weights(&weights).expect("positive weights")
}

/// Random joint distribution with `|X|, |Y| ≤ max_dim` and some zero cells.
pub fn random_joint(rng: &mut impl Rng, max_dim: usize) -> JointDistribution {
    let nx = rng.gen_range(1..=max_dim);
    let ny = rng.gen_range(1..=max_dim);
    let mut rows: Vec<Vec<f64>> = (0..nx)
        .map(|_| (0..ny).map(|_| if rng.gen_bool(0.25) { 0.0 } else { rng.gen_range(0.01..1.0) }).collect())
        .collect();
    if rows.iter().flatten().all(|&v| v == 0.0) {
        rows[0][0] = 1.0;
    }
    JointDistribution::from_weights(rows).expect("positive weights")
}

fn random_weights(rng: &mut impl Rng, max_dim: usize) -> Vec<f64> {
    let d = rng.gen_range(1..=max_dim);
    (0..d).map(|_| rng.gen_range(0.01..1.0)).collect()
}

fn describe(p: &Distribution, eps: f64) -> String {
    format!("P = {:?}, eps = {eps}", p.probs())
}

fn describe_joint(p: &JointDistribution, eps: f64) -> String {
    format!("P = {:?}, eps = {eps}", p.rows())
}

/// Runs one suite with `trials` random instances (per smoothing parameter
/// where applicable).
pub fn run_suite(suite: Suite, trials: usize, seed: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SuiteReport::new(suite);
    match suite {
        Suite::Certificates => certificates(&mut report, &mut rng, trials),
        Suite::Oracle => oracle(&mut report, &mut rng, trials),
        Suite::Sandwich => sandwich(&mut report, &mut rng, trials),
        Suite::Qp => qp(&mut report, &mut rng, trials),
        Suite::Spectrum => spectrum(&mut report, &mut rng, trials),
        Suite::TraceEquivalence => trace_equivalence(&mut report, &mut rng, trials),
        Suite::Counterexample => counterexample(&mut report),
        Suite::Imax => imax(&mut report, &mut rng, trials),
        Suite::PurifiedEquivalence => purified_equivalence(&mut report, &mut rng, trials),
        Suite::Curves => curves(&mut report),
    }
    report
}

fn certificates(report: &mut SuiteReport, rng: &mut ChaCha8Rng, trials: usize) {
    let gap = report.metric("relative duality gap", 1e-8);
    let eig = report.metric("dual max eigenvalue", 1e-9);
    let primal = report.metric("primal residual", 1e-9);
    for _ in 0..trials {
        let p = random_distribution(rng, 8);
        for eps in QP_EPS {
            report.instances += 1;
            let Some(sol) = report.check(solve_qp_distribution(&p, eps), || describe(&p, eps)) else { continue };
            let Some(cert) = report.check(build_certificate(&p, eps, &sol), || describe(&p, eps)) else { continue };
            report.observe(gap, cert.relative_gap(), || describe(&p, eps));
            report.observe(eig, cert.dual_max_eigenvalue, || describe(&p, eps));
            report.observe(primal, cert.worst_primal_violation(), || describe(&p, eps));
        }
    }
}

fn oracle(report: &mut SuiteReport, rng: &mut ChaCha8Rng, trials: usize) {
    let diff = report.metric("|solve_qp - oracle|", 1e-5);
    for _ in 0..trials {
        let p = random_distribution(rng, 4);
        for eps in QP_EPS {
            report.instances += 1;
            let Some(sol) = report.check(solve_qp_distribution(&p, eps), || describe(&p, eps)) else { continue };
            let Some(o) = report.check(qp_oracle(&p, eps), || describe(&p, eps)) else { continue };
            report.observe(diff, (sol.log2_f.value() - o.value).abs(), || describe(&p, eps));
        }
    }
}

/// Slack of `log2 f ≤ log2 β` style inequalities, scaled to bits of the
/// larger side.
fn log_excess(lhs: f64, rhs: f64) -> f64 {
    (lhs - rhs) / lhs.abs().max(rhs.abs()).max(1.0)
}

fn sandwich_instance(report: &mut SuiteReport, ids: (usize, usize), spec: &SortedSpectrum, eps: f64, ctx: &dyn Fn() -> String) {
    report.instances += 1;
    let Some(sol) = report.check(solve_qp(spec, eps), ctx) else { return };
    let log2_f = sol.log2_f.log2();
    let alpha = (1.0 - eps * eps).sqrt();
    if let Some(b) = report.check(beta(spec, alpha.min(spec.total_mass())), ctx) {
        report.observe(ids.0, log_excess(log2_f, b.log2()), ctx);
    }
    let eta = eta_from_solution(spec, &sol);
    let lower_alpha = alpha - eta;
    // η* can reach √(1-ε²), which makes the lower bound vacuous.
    if lower_alpha > 1e-12 {
        if let Some(b) = report.check(beta(spec, lower_alpha), ctx) {
            report.observe(ids.1, log_excess(b.log2(), log2_f), ctx);
        }
    }
}

fn sandwich(report: &mut SuiteReport, rng: &mut ChaCha8Rng, trials: usize) {
    let upper = report.metric("f - beta(sqrt(1-eps^2))", 1e-9);
    let lower = report.metric("beta(sqrt(1-eps^2)-eta) - f", 1e-9);
    for _ in 0..trials {
        let p = random_distribution(rng, 8);
        let spec = SortedSpectrum::from_distribution(&p);
        for eps in QP_EPS {
            sandwich_instance(report, (upper, lower), &spec, eps, &|| describe(&p, eps));
        }
    }
    for delta in [0.9, 0.7, 0.55] {
        let q = Distribution::qubit(delta).expect("valid delta");
        for n in [1usize, 2, 10, 100, 500, 1000] {
            let Some(ens) = report.check(iid_product(&q, n), || format!("delta = {delta}, n = {n}")) else { continue };
            let Some(spec) = report.check(SortedSpectrum::from_ensemble(&ens), || format!("n = {n}")) else { continue };
            for eps in QP_EPS {
                sandwich_instance(report, (upper, lower), &spec, eps, &|| format!("delta = {delta}, n = {n}, eps = {eps}"));
            }
        }
    }
}

fn qp(report: &mut SuiteReport, rng: &mut ChaCha8Rng, trials: usize) {
    let mono = report.metric("f increase along eps", 1e-12);
    let kkt = report.metric("|overlap - sqrt(1-eps^2)|", 1e-9);
    let scaling = report.metric("|log2 f flat - ensemble|", 1e-9);
    for _ in 0..trials {
        let p = random_distribution(rng, 8);
        let spec = SortedSpectrum::from_distribution(&p);
        let mut prev: Option<f64> = None;
        for i in 1..20 {
            let eps = i as f64 / 20.0;
            report.instances += 1;
            let Some(sol) = report.check(solve_qp(&spec, eps), || describe(&p, eps)) else { continue };
            let f = sol.log2_f.value();
            if let Some(prev) = prev {
                report.observe(mono, (f - prev) / prev.max(1.0), || describe(&p, eps));
            }
            prev = Some(f);
            let overlap: f64 = p.probs().iter().map(|&x| sol.g(x.log2()) * x).sum();
            report.observe(kkt, (overlap - (1.0 - eps * eps).sqrt()).abs(), || describe(&p, eps));
        }
    }
    for _ in 0..trials.min(20) {
        let delta = rng.gen_range(0.05..0.95);
        let q = Distribution::qubit(delta).expect("valid delta");
        let n = rng.gen_range(1..=12);
        let eps = QP_EPS[rng.gen_range(0..QP_EPS.len())];
        let ctx = || format!("delta = {delta}, n = {n}, eps = {eps}");
        report.instances += 1;
        let Some(flat) = report.check(q.flat_power(n), ctx) else { continue };
        let Some(ens) = report.check(iid_product(&q, n).and_then(|e| SortedSpectrum::from_ensemble(&e)), ctx) else {
            continue;
        };
        let (Some(a), Some(b)) = (report.check(solve_qp_distribution(&flat, eps), ctx), report.check(solve_qp(&ens, eps), ctx))
        else {
            continue;
        };
        report.observe(scaling, (a.log2_f.log2() - b.log2_f.log2()).abs(), ctx);
    }
}

fn spectrum(report: &mut SuiteReport, rng: &mut ChaCha8Rng, trials: usize) {
    let mono = report.metric("e_gamma increase", 1e-15);
    let lower = report.metric("|e_gamma(d_lower) - (1-eps)|", 1e-9);
    let upper = report.metric("|e_gamma(d_upper) - eps|", 1e-9);
    let beta_mono = report.metric("beta decrease along alpha", 1e-12);
    for _ in 0..trials {
        let p = random_distribution(rng, 8);
        let spec = SortedSpectrum::from_distribution(&p);
        report.instances += 1;
        let g1 = rng.gen_range(-12.0..1.0);
        let g2 = g1 + rng.gen_range(0.0..4.0);
        report.observe(mono, e_gamma(&spec, g2) - e_gamma(&spec, g1), || format!("{}, gammas {g1} {g2}", describe(&p, 0.0)));
        for eps in QP_EPS {
            if let Some(g) = report.check(d_lower(&spec, eps), || describe(&p, eps)) {
                report.observe(lower, (e_gamma(&spec, g) - (1.0 - eps)).abs(), || describe(&p, eps));
            }
            if let Some(g) = report.check(d_upper(&spec, eps), || describe(&p, eps)) {
                report.observe(upper, (e_gamma(&spec, g) - eps).abs(), || describe(&p, eps));
            }
        }
        let mut prev = f64::NEG_INFINITY;
        for i in 1..=20 {
            let alpha = i as f64 / 20.0;
            if let Some(b) = report.check(beta(&spec, alpha.min(spec.total_mass())), || describe(&p, alpha)) {
                let b = b.value();
                report.observe(beta_mono, prev - b, || describe(&p, alpha));
                prev = b;
            }
        }
    }
}

fn trace_equivalence(report: &mut SuiteReport, rng: &mut ChaCha8Rng, trials: usize) {
    let equal = report.metric("|partial LP - relaxed|", 1e-7);
    let chain = report.metric("|global LP - relaxed|", 1e-7);
    let witness = report.metric("witness violation", 1e-8);
    for _ in 0..trials {
        let p = random_joint(rng, 4);
        for eps in TRACE_EPS {
            report.instances += 1;
            let ctx = || describe_joint(&p, eps);
            let Some((relaxed, w_r)) = report.check(hmin_trace_relaxed(&p, eps), ctx) else { continue };
            let Some((partial, w_p)) = report.check(hmin_trace_partial_lp(&p, eps), ctx) else { continue };
            let Some((global, w_g)) = report.check(hmin_trace_global_lp(&p, eps), ctx) else { continue };
            report.observe(equal, (partial - relaxed).abs(), ctx);
            report.observe(chain, (global - relaxed).abs(), ctx);
            for w in [&w_r, &w_p, &w_g] {
                report.observe(witness, witness_violation(&p, eps, w), ctx);
            }
        }
    }
}

fn counterexample(report: &mut SuiteReport) {
    let p = counterexample_joint();
    let eps = COUNTEREXAMPLE_EPS;
    let gap_shortfall = report.metric("1e-3 - (partial - global)", 0.0);
    let witness = report.metric("witness violation", 1e-8);
    report.instances = 1;
    let ctx = || describe_joint(&p, eps);
    let partial = report.check(hmin_purified_classical(&p, eps, SmoothingMode::Partial), ctx);
    let global = report.check(hmin_purified_classical(&p, eps, SmoothingMode::Global), ctx);
    if let (Some((lp, wp)), Some((lg, wg))) = (partial, global) {
        report.values.push(("partial lambda".into(), lp));
        report.values.push(("global lambda".into(), lg));
        report.values.push(("gap".into(), lp - lg));
        report.observe(gap_shortfall, 1e-3 - (lp - lg), ctx);
        report.observe(witness, witness_violation(&p, eps, &wp), ctx);
        report.observe(witness, witness_violation(&p, eps, &wg), ctx);
    }
}

fn imax(report: &mut SuiteReport, rng: &mut ChaCha8Rng, trials: usize) {
    let feasible = report.metric("constructed witness violation", 1e-8);
    let objective = report.metric("|constructed - global|", 1e-7);
    let independent = report.metric("|partial LP - global LP|", 1e-7);
    for _ in 0..trials {
        let p = random_joint(rng, 4);
        for eps in IMAX_EPS {
            report.instances += 1;
            let ctx = || describe_joint(&p, eps);
            let Some((global, w)) = report.check(imax_global_lp(&p, eps), ctx) else { continue };
            if let Some((built, value)) = report.check(imax_partial_from_global(&p, eps, &w), ctx) {
                report.observe(feasible, witness_violation(&p, eps, &built), ctx);
                report.observe(objective, (value - global).abs(), ctx);
            }
            if let Some((partial, _)) = report.check(imax_partial_lp(&p, eps), ctx) {
                report.observe(independent, (partial - global).abs(), ctx);
            }
        }
    }
}

fn purified_equivalence(report: &mut SuiteReport, rng: &mut ChaCha8Rng, trials: usize) {
    let product = report.metric("|partial - global| product", 1e-7);
    let correlated = report.metric("|partial - global| correlated", 1e-7);
    let order = report.metric("global - partial", 1e-9);
    let witness = report.metric("witness violation", 1e-8);
    for i in 0..trials {
        let eps = QP_EPS[i % QP_EPS.len()];
        let u = random_weights(rng, 5);
        let q = random_weights(rng, 5);
        let c = random_weights(rng, 5);
        let cases = [
            (product, JointDistribution::product(&u, &q)),
            (correlated, JointDistribution::correlated(&c)),
            (order, Ok(random_joint(rng, 4))),
        ];
        for (id, p) in cases {
            let Some(p) = report.check(p, || "instance construction".into()) else { continue };
            report.instances += 1;
            let ctx = || describe_joint(&p, eps);
            let Some((lp, wp)) = report.check(hmin_purified_classical(&p, eps, SmoothingMode::Partial), ctx) else {
                continue;
            };
            let Some((lg, wg)) = report.check(hmin_purified_classical(&p, eps, SmoothingMode::Global), ctx) else {
                continue;
            };
            let value = if id == order { lg - lp } else { (lp - lg).abs() };
            report.observe(id, value, ctx);
            report.observe(witness, witness_violation(&p, eps, &wp), ctx);
            report.observe(witness, witness_violation(&p, eps, &wg), ctx);
        }
    }
}

fn curves(report: &mut SuiteReport) {
    let sandwich_lo = report.metric("qp_converse - direct_achiev", 0.0);
    let sandwich_hi = report.metric("direct_achiev - is_achiev", 0.0);
    let improvement = report.metric("dl_converse - qp_converse", 0.0);
    let grid = n_grid(50, 1000, 50).expect("valid grid");
    let Some(c) = report.check(compression_curves(0.9, 0.1, &grid, &EtaChoice::Optimize), || "delta 0.9, eps 0.1".into())
    else {
        return;
    };
    for r in &c.rows {
        report.instances += 1;
        let ctx = || format!("n = {}", r.n);
        report.observe(sandwich_lo, r.qp_converse - r.direct_achiev, ctx);
        report.observe(sandwich_hi, r.direct_achiev - r.is_achiev, ctx);
        report.observe(improvement, r.dl_converse - r.qp_converse, ctx);
    }
}
