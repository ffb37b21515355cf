//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Values are checked against oracles written here, independent of the
//! library code paths they test. Criteria listed in `UNATTAINABLE` are
//! reported as FAIL but do not fail the process; everything else does.

use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use smoothmin::asympt::{compression_curves, n_grid, EtaChoice};
use smoothmin::classical::{
    hmin_purified_classical, hmin_trace_partial_lp, hmin_trace_relaxed, imax_global_lp, imax_partial_from_global,
    imax_partial_lp, JointDistribution, SmoothingMode, SmoothingWitness,
};
use smoothmin::dist::iid_product;
use smoothmin::psme::{build_certificate, eta_diagnostic, qp_oracle, solve_qp};
use smoothmin::verify::{counterexample_joint, random_distribution, random_joint};
use smoothmin::{Distribution, SortedSpectrum};

const QP_EPS: [f64; 5] = [0.05, 0.1, 0.3, 0.6, 0.9];

/// Criteria that cannot hold as stated; see the README.
const UNATTAINABLE: &[&str] = &["4c"];

struct Outcome {
    id: &'static str,
    passed: bool,
    detail: String,
}

fn outcome(id: &'static str, passed: bool, detail: String) -> Outcome {
    Outcome { id, passed, detail }
}

// ---------- independent oracles ----------

fn binary_entropy(d: f64) -> f64 {
    -d * d.log2() - (1.0 - d) * (1.0 - d).log2()
}

fn binary_variance(d: f64) -> f64 {
    d * (1.0 - d) * ((1.0 - d) / d).log2().powi(2)
}

fn phi(x: f64) -> f64 {
    0.5 * libm::erfc(-x / std::f64::consts::SQRT_2)
}

/// Normal quantile by bisection on the CDF.
fn phi_inv(p: f64) -> f64 {
    let (mut lo, mut hi) = (-40.0f64, 40.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if phi(mid) < p {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// True when `tol·I - m` admits a Cholesky factorization, i.e. every
/// eigenvalue of `m` is below `tol`.
fn max_eigenvalue_below(m: &[f64], d: usize, tol: f64) -> bool {
    let mut a: Vec<f64> = (0..d * d).map(|k| if k / d == k % d { tol } else { 0.0 } - m[k]).collect();
    for j in 0..d {
        for k in 0..j {
            a[j * d + j] -= a[j * d + k] * a[j * d + k];
        }
        if a[j * d + j] <= 0.0 {
            return false;
        }
        a[j * d + j] = a[j * d + j].sqrt();
        for i in (j + 1)..d {
            for k in 0..j {
                a[i * d + j] -= a[i * d + k] * a[j * d + k];
            }
            a[i * d + j] /= a[j * d + j];
        }
    }
    true
}

/// `log2 β_α` for levels `(log2 p, log2 count)` by Neyman-Pearson.
fn beta_oracle(levels: &[(f64, f64)], alpha: f64) -> f64 {
    let mut sorted = levels.to_vec();
    sorted.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut mass = 0.0;
    let mut count_log2 = f64::NEG_INFINITY;
    let add = |a: f64, b: f64| if a == f64::NEG_INFINITY { b } else { a.max(b) + (1.0 + 2f64.powf(-(a - b).abs())).log2() };
    for &(lp, lc) in &sorted {
        let level_mass = 2f64.powf(lp + lc);
        if mass + level_mass >= alpha {
            let take = (alpha - mass) / 2f64.powf(lp);
            return add(count_log2, take.log2());
        }
        mass += level_mass;
        count_log2 = add(count_log2, lc);
    }
    count_log2
}

fn explicit_levels(p: &Distribution) -> Vec<(f64, f64)> {
    p.probs().iter().map(|&x| (x.log2(), 0.0)).collect()
}

fn binomial_levels(delta: f64, n: usize) -> Vec<(f64, f64)> {
    let ln_choose = |k: usize| libm::lgamma(n as f64 + 1.0) - libm::lgamma(k as f64 + 1.0) - libm::lgamma((n - k) as f64 + 1.0);
    (0..=n)
        .map(|k| ((n - k) as f64 * delta.log2() + k as f64 * (1.0 - delta).log2(), ln_choose(k) / std::f64::consts::LN_2))
        .collect()
}

/// Least `λ` with `Σ max(0, P - λ P_Y) ≤ ε`, by bisection.
fn relaxed_lambda_oracle(p: &JointDistribution, eps: f64) -> f64 {
    let excess = |lambda: f64| -> f64 {
        let mut s = 0.0;
        for x in 0..p.nx() {
            for y in 0..p.ny() {
                s += (p.get(x, y) - lambda * p.py(y)).max(0.0);
            }
        }
        s
    };
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if excess(mid) <= eps {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Constraint violation of a partial max-information witness `(Q, T, R)`.
fn imax_partial_violation(p: &JointDistribution, eps: f64, w: &SmoothingWitness) -> f64 {
    let (nx, ny) = (p.nx(), p.ny());
    let mut worst = 0.0f64;
    let r_sum: f64 = w.r_marginal.iter().sum();
    worst = worst.max((r_sum - w.lambda).abs());
    worst = worst.max(w.w_table.iter().sum::<f64>() - eps);
    for v in w.s_table.iter().chain(&w.w_table).chain(&w.r_marginal) {
        worst = worst.max(-v);
    }
    for x in 0..nx {
        let row: f64 = (0..ny).map(|y| w.s_table[x * ny + y]).sum();
        worst = worst.max((row - p.px(x)).abs());
        for y in 0..ny {
            let c = x * ny + y;
            worst = worst.max(w.s_table[c] - p.px(x) * w.r_marginal[y]);
            worst = worst.max(p.get(x, y) - w.w_table[c] - w.s_table[c]);
        }
    }
    worst
}

/// Constraint violation of a purified-distance witness.
fn purified_violation(p: &JointDistribution, eps: f64, w: &SmoothingWitness, mode: SmoothingMode) -> f64 {
    let (nx, ny) = (p.nx(), p.ny());
    let mut worst = 0.0f64;
    let mut fid = 0.0;
    for x in 0..nx {
        for y in 0..ny {
            let s = w.s_table[x * ny + y];
            worst = worst.max(-s).max(s - w.lambda * p.py(y));
            fid += (p.get(x, y) * s.max(0.0)).sqrt();
        }
    }
    worst = worst.max((1.0 - eps * eps).sqrt() - fid);
    match mode {
        SmoothingMode::Partial => {
            for y in 0..ny {
                let col: f64 = (0..nx).map(|x| w.s_table[x * ny + y]).sum();
                worst = worst.max(col - p.py(y));
            }
        }
        SmoothingMode::Global => worst = worst.max(w.s_table.iter().sum::<f64>() - 1.0),
    }
    worst
}

// ---------- criteria ----------

fn criterion_1(rng: &mut ChaCha8Rng) -> Outcome {
    let start = Instant::now();
    let (mut gap, mut primal, mut value_err) = (0.0f64, 0.0f64, 0.0f64);
    let mut failures = 0usize;
    let mut instances = 0usize;
    for _ in 0..200 {
        let p = random_distribution(rng, 8);
        let d = p.len();
        for eps in QP_EPS {
            instances += 1;
            let spec = SortedSpectrum::from_distribution(&p);
            let Ok(sol) = solve_qp(&spec, eps) else {
                failures += 1;
                continue;
            };
            let Ok(cert) = build_certificate(&p, eps, &sol) else {
                failures += 1;
                continue;
            };
            // Dual operator μψ - K - T rebuilt from the certificate fields.
            let probs = p.probs();
            let m: Vec<f64> = (0..d * d)
                .map(|k| {
                    let (i, j) = (k / d, k % d);
                    cert.mu * probs[i] * probs[j]
                        - if i == j { cert.k_diag[i] } else { 0.0 }
                        - cert.t_scale * cert.g[i] * cert.g[j]
                })
                .collect();
            let sym: Vec<f64> = (0..d * d).map(|k| 0.5 * (m[k] + m[(k % d) * d + k / d])).collect();
            if !max_eigenvalue_below(&sym, d, 1e-9) || cert.k_diag.iter().any(|&k| k < 0.0) {
                failures += 1;
            }
            let norm_sq: f64 = cert.g.iter().map(|g| g * g).sum();
            let overlap: f64 = cert.g.iter().zip(probs).map(|(g, q)| g * q).sum();
            let dual = cert.mu * (1.0 - eps * eps) - cert.k_diag.iter().sum::<f64>();
            gap = gap.max((norm_sq - dual).abs() / norm_sq.max(1.0));
            primal = primal
                .max((1.0 - eps * eps).sqrt() - overlap)
                .max(cert.g.iter().map(|g| (g - 1.0).max(-g)).fold(0.0, f64::max));
            value_err = value_err.max((norm_sq - sol.log2_f.value()).abs() / norm_sq.max(1.0));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let passed = failures == 0 && gap <= 1e-8 && primal <= 1e-9 && value_err <= 1e-8 && secs < 10.0;
    outcome(
        "1",
        passed,
        format!(
            "certificates: {instances} instances, {failures} failures, rel gap {gap:.2e} (<= 1e-8), primal residual {primal:.2e} (<= 1e-9), dual eig <= 1e-9 by Cholesky, {secs:.2}s (< 10s)"
        ),
    )
}

fn criterion_2(rng: &mut ChaCha8Rng) -> Outcome {
    let mut worst = 0.0f64;
    let mut failures = 0;
    for _ in 0..200 {
        let p = random_distribution(rng, 4);
        for eps in QP_EPS {
            let spec = SortedSpectrum::from_distribution(&p);
            match (solve_qp(&spec, eps), qp_oracle(&p, eps)) {
                (Ok(a), Ok(b)) => worst = worst.max((a.log2_f.value() - b.value).abs()),
                _ => failures += 1,
            }
        }
    }
    // Grid oracle: g0 on a 1e-4 grid, least feasible g1 on the same grid.
    let target = 0.99f64.sqrt();
    let step = 1e-4;
    let mut grid_f = f64::INFINITY;
    for i in 0..=10_000 {
        let g0 = i as f64 * step;
        let need = ((target - 0.9 * g0) / 0.1).max(0.0);
        let g1 = (need / step - 1e-9).ceil() * step;
        if g1 <= 1.0 + 1e-12 {
            grid_f = grid_f.min(g0 * g0 + g1 * g1);
        }
    }
    let spec = SortedSpectrum::from_distribution(&Distribution::new(vec![0.9, 0.1]).unwrap());
    let f = solve_qp(&spec, 0.1).map(|s| s.log2_f.value()).unwrap_or(f64::NAN);
    let passed = failures == 0 && worst <= 1e-5 && (f - grid_f).abs() <= 2e-3 && (grid_f - 1.9022).abs() <= 2e-3;
    outcome(
        "2",
        passed,
        format!("oracle: 1000 instances, {failures} failures, worst |f - oracle| {worst:.2e} (<= 1e-5); (0.9,0.1) eps 0.1: f = {f:.6}, grid {grid_f:.6}"),
    )
}

fn criterion_3(rng: &mut ChaCha8Rng) -> Outcome {
    // Allowed excess in log2: a relative error of 1e-9 on the values.
    let tol = (1.0f64 + 1e-9).log2();
    let mut worst_upper = f64::NEG_INFINITY;
    let mut worst_lower = f64::NEG_INFINITY;
    let mut instances = 0usize;
    let mut vacuous = 0usize;
    let mut failures = 0usize;
    let mut check = |spec: &SortedSpectrum, levels: &[(f64, f64)], eps: f64| {
        instances += 1;
        let (Ok(sol), Ok(eta)) = (solve_qp(spec, eps), eta_diagnostic(spec, eps)) else {
            failures += 1;
            return;
        };
        let log2_f = sol.log2_f.log2();
        let alpha = (1.0 - eps * eps).sqrt();
        worst_upper = worst_upper.max(log2_f - beta_oracle(levels, alpha));
        if alpha - eta > 1e-12 {
            worst_lower = worst_lower.max(beta_oracle(levels, alpha - eta) - log2_f);
        } else {
            vacuous += 1;
        }
    };
    for _ in 0..200 {
        let p = random_distribution(rng, 8);
        let spec = SortedSpectrum::from_distribution(&p);
        let levels = explicit_levels(&p);
        for eps in QP_EPS {
            check(&spec, &levels, eps);
        }
    }
    for delta in [0.9, 0.75, 0.6] {
        for n in [1usize, 5, 50, 200, 500, 1000] {
            let spec = SortedSpectrum::from_ensemble(&iid_product(&Distribution::qubit(delta).unwrap(), n).unwrap()).unwrap();
            let levels = binomial_levels(delta, n);
            for eps in QP_EPS {
                check(&spec, &levels, eps);
            }
        }
    }
    let passed = failures == 0 && worst_upper <= tol && worst_lower <= tol;
    outcome(
        "3",
        passed,
        format!(
            "sandwich: {instances} instances (binary ensembles to n = 1000), {failures} failures, max log2(f/beta_upper) {worst_upper:.2e}, max log2(beta_lower/f) {worst_lower:.2e} (<= {tol:.2e}), {vacuous} vacuous lower bounds"
        ),
    )
}

fn criterion_4_5() -> Vec<Outcome> {
    let start = Instant::now();
    let grid = n_grid(50, 1000, 50).unwrap();
    let curves = match compression_curves(0.9, 0.1, &grid, &EtaChoice::Optimize) {
        Ok(c) => c,
        Err(e) => {
            return ["4a", "4b", "4c", "4d", "5"].into_iter().map(|id| outcome(id, false, format!("curves failed: {e}"))).collect();
        }
    };
    let secs = start.elapsed().as_secs_f64();
    let rows = &curves.rows;
    let (h, v) = (binary_entropy(0.9), binary_variance(0.9));
    let second = |n: usize| h + phi_inv(0.9f64.sqrt()) * (v / n as f64).sqrt();
    let mut out = Vec::new();

    let sandwich_bad: Vec<usize> =
        rows.iter().filter(|r| !(r.qp_converse <= r.direct_achiev && r.direct_achiev <= r.is_achiev)).map(|r| r.n).collect();
    out.push(outcome(
        "4a",
        sandwich_bad.is_empty() && secs < 30.0,
        format!("figure sandwich qp <= direct <= is_achiev: violations at n = {sandwich_bad:?}; grid computed in {secs:.2}s (< 30s)"),
    ));

    let improve_bad: Vec<usize> = rows.iter().filter(|r| r.qp_converse <= r.dl_converse).map(|r| r.n).collect();
    let min_margin = rows.iter().map(|r| r.qp_converse - r.dl_converse).fold(f64::INFINITY, f64::min);
    out.push(outcome(
        "4b",
        improve_bad.is_empty(),
        format!("qp converse above spectrum converse: violations at n = {improve_bad:?}, smallest margin {min_margin:.4}"),
    ));

    let mut outside = Vec::new();
    for r in rows {
        for (name, v) in [("qp", r.qp_converse), ("dl", r.dl_converse), ("is", r.is_achiev), ("direct", r.direct_achiev)] {
            if !(v > 0.5 && v < 0.64) {
                outside.push(format!("{name}@{}={v:.4}", r.n));
            }
        }
    }
    out.push(outcome("4c", outside.is_empty(), format!("four curves inside (0.5, 0.64): outside points {outside:?}")));

    let at = |n: usize| rows.iter().find(|r| r.n == n).unwrap();
    let mut second_err = 0.0f64;
    for r in rows {
        second_err = second_err.max((r.second_order - second(r.n)).abs());
    }
    let qp_ok = (at(1000).qp_converse - second(1000)).abs() < (at(250).qp_converse - second(250)).abs();
    let is_ok = (at(1000).is_achiev - second(1000)).abs() < (at(250).is_achiev - second(250)).abs();
    out.push(outcome(
        "4d",
        qp_ok && is_ok && second_err < 1e-9,
        format!(
            "convergence to second order: |qp - so| {:.4} (n=250) -> {:.4} (n=1000), |is - so| {:.4} -> {:.4}, second-order column error {second_err:.1e}",
            (at(250).qp_converse - second(250)).abs(),
            (at(1000).qp_converse - second(1000)).abs(),
            (at(250).is_achiev - second(250)).abs(),
            (at(1000).is_achiev - second(1000)).abs()
        ),
    ));

    // Remainder band and third-order lower bound, with eps' = √0.1 as in
    // the converse curve.
    let ratio = |n: usize| n as f64 * (at(n).qp_converse - second(n)).abs() / (n as f64).log2();
    let ratios = [ratio(250), ratio(500), ratio(1000)];
    let band = ratios.iter().cloned().fold(f64::NEG_INFINITY, f64::max) / ratios.iter().cloned().fold(f64::INFINITY, f64::min);
    let eps_s = 0.1f64.sqrt();
    let quantile = phi_inv((1.0 - eps_s * eps_s).sqrt());
    let offsets: Vec<f64> = rows
        .iter()
        .map(|r| {
            let n = r.n as f64;
            n * r.qp_converse - (n * h + (n * v).sqrt() * quantile - 0.5 * n.log2())
        })
        .collect();
    let min_offset = offsets.iter().cloned().fold(f64::INFINITY, f64::min);
    const THIRD_ORDER_CONSTANT: f64 = -3.0;
    out.push(outcome(
        "5",
        band <= 3.0 && min_offset >= THIRD_ORDER_CONSTANT,
        format!(
            "remainder n|qp - so|/log2 n = {:.4}, {:.4}, {:.4} (band {band:.3} <= 3); third-order offset min {min_offset:.4} (>= {THIRD_ORDER_CONSTANT})",
            ratios[0], ratios[1], ratios[2]
        ),
    ));
    out
}

fn criterion_6(rng: &mut ChaCha8Rng) -> Outcome {
    let (mut worst, mut oracle_err) = (0.0f64, 0.0f64);
    let mut failures = 0;
    for _ in 0..200 {
        let p = random_joint(rng, 4);
        for eps in [0.05, 0.1, 0.3] {
            match (hmin_trace_partial_lp(&p, eps), hmin_trace_relaxed(&p, eps)) {
                (Ok((a, _)), Ok((b, _))) => {
                    worst = worst.max((a - b).abs());
                    oracle_err = oracle_err.max((b - relaxed_lambda_oracle(&p, eps)).abs());
                }
                _ => failures += 1,
            }
        }
    }
    outcome(
        "6",
        failures == 0 && worst <= 1e-7 && oracle_err <= 1e-7,
        format!("trace distance: 600 instances, {failures} failures, |partial LP - relaxed| {worst:.2e} (<= 1e-7), relaxed vs bisection oracle {oracle_err:.2e}"),
    )
}

/// Least `λ` over a grid on `S` for the counterexample, both modes.
fn counterexample_grid(step: f64) -> (f64, f64) {
    let target = 0.99f64.sqrt();
    let (mut partial, mut global) = (f64::INFINITY, f64::INFINITY);
    let m = (1.0 / step).round() as usize;
    for i in 0..=m {
        let s00 = i as f64 * step;
        for j in 0..=m {
            let s01 = j as f64 * step;
            let rest = target - (0.25 * s00).sqrt() - (0.25 * s01).sqrt();
            let need = if rest <= 0.0 { 0.0 } else { rest * rest / 0.5 };
            let s11 = (need / step - 1e-9).ceil() * step;
            let lambda = (s00 / 0.25).max(s01 / 0.75).max(s11 / 0.75);
            if s00 + s01 + s11 <= 1.0 + 1e-12 {
                global = global.min(lambda);
            }
            if s00 <= 0.25 + 1e-12 && s01 + s11 <= 0.75 + 1e-12 {
                partial = partial.min(lambda);
            }
        }
    }
    (partial, global)
}

fn criterion_7() -> Outcome {
    let p = counterexample_joint();
    let (Ok((lp, _)), Ok((lg, _))) =
        (hmin_purified_classical(&p, 0.1, SmoothingMode::Partial), hmin_purified_classical(&p, 0.1, SmoothingMode::Global))
    else {
        return outcome("7", false, "purified smoothing failed".into());
    };
    let step = 1e-3;
    let (gp, gg) = counterexample_grid(step);
    // The grid value is an upper bound; it is within step / min P_Y of the optimum.
    let slack = step / 0.25 + 1e-9;
    let close = |exact: f64, grid: f64| exact <= grid + 1e-9 && grid - exact <= slack;
    outcome(
        "7",
        lp - lg > 1e-3 && close(lp, gp) && close(lg, gg) && gp - gg > 1e-3,
        format!("counterexample: partial {lp:.6} (grid {gp:.4}), global {lg:.6} (grid {gg:.4}), gap {:.6} (> 1e-3)", lp - lg),
    )
}

fn criterion_8(rng: &mut ChaCha8Rng) -> Outcome {
    let (mut feas, mut obj, mut indep) = (0.0f64, 0.0f64, 0.0f64);
    let mut failures = 0;
    for i in 0..200 {
        let p = random_joint(rng, 4);
        let eps = if i % 2 == 0 { 0.05 } else { 0.2 };
        let Ok((global, w)) = imax_global_lp(&p, eps) else {
            failures += 1;
            continue;
        };
        match imax_partial_from_global(&p, eps, &w) {
            Ok((built, value)) => {
                feas = feas.max(imax_partial_violation(&p, eps, &built));
                obj = obj.max((value - global).abs());
            }
            Err(_) => failures += 1,
        }
        match imax_partial_lp(&p, eps) {
            Ok((partial, _)) => indep = indep.max((partial - global).abs()),
            Err(_) => failures += 1,
        }
    }
    outcome(
        "8",
        failures == 0 && feas <= 1e-8 && obj <= 1e-7 && indep <= 1e-7,
        format!("max-information: 200 instances, {failures} failures, constructed residual {feas:.2e} (<= 1e-8), objective diff {obj:.2e}, partial LP diff {indep:.2e} (<= 1e-7)"),
    )
}

fn criterion_9(rng: &mut ChaCha8Rng) -> Outcome {
    let (mut worst, mut witness) = (0.0f64, 0.0f64);
    let mut failures = 0;
    let mut instances = 0;
    for i in 0..200 {
        let eps = QP_EPS[i % QP_EPS.len()];
        let weights = |rng: &mut ChaCha8Rng| -> Vec<f64> {
            let d = rng.gen_range(1..=5);
            (0..d).map(|_| rng.gen_range(0.01..1.0)).collect()
        };
        let u = weights(rng);
        let q = weights(rng);
        let c = weights(rng);
        for p in [JointDistribution::product(&u, &q).unwrap(), JointDistribution::correlated(&c).unwrap()] {
            instances += 1;
            match (hmin_purified_classical(&p, eps, SmoothingMode::Partial), hmin_purified_classical(&p, eps, SmoothingMode::Global)) {
                (Ok((a, wa)), Ok((b, wb))) => {
                    worst = worst.max((a - b).abs());
                    witness = witness
                        .max(purified_violation(&p, eps, &wa, SmoothingMode::Partial))
                        .max(purified_violation(&p, eps, &wb, SmoothingMode::Global));
                }
                _ => failures += 1,
            }
        }
    }
    outcome(
        "9",
        failures == 0 && worst <= 1e-7 && witness <= 1e-8,
        format!("product and correlated sources: {instances} instances, {failures} failures, |partial - global| {worst:.2e} (<= 1e-7), witness residual {witness:.2e}"),
    )
}

fn main() -> ExitCode {
    let mut rng = ChaCha8Rng::seed_from_u64(20_260_101);
    let mut outcomes = vec![criterion_1(&mut rng), criterion_2(&mut rng), criterion_3(&mut rng)];
    outcomes.extend(criterion_4_5());
    outcomes.push(criterion_6(&mut rng));
    outcomes.push(criterion_7());
    outcomes.push(criterion_8(&mut rng));
    outcomes.push(criterion_9(&mut rng));

    let mut unexpected = 0;
    for o in &outcomes {
        let status = if o.passed { "PASS" } else { "FAIL" };
        let note = if !o.passed && UNATTAINABLE.contains(&o.id) { " [unattainable as stated]" } else { "" };
        println!("criterion {:<3} {status}{note}: {}", o.id, o.detail);
        if !o.passed && !UNATTAINABLE.contains(&o.id) {
            unexpected += 1;
        }
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    println!("acceptance: {passed}/{} criteria passed", outcomes.len());
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
