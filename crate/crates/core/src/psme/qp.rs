use crate::error::{domain, Result};
use crate::numerics::{bisect_monotone, log_sum_exp, neumaier_sum, LogWeight};
use crate::spectrum::SortedSpectrum;
use crate::Distribution;

/// Default tolerance on `|h(a) - √(1-ε²)|` for the bisection.
pub const OVERLAP_TOL: f64 = 1e-12;

/// Optimal point of the single-variable program.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QpSolution {
    pub eps: f64,
    /// `log2(a*/2)`; `+inf` at `ε = 0`.
    pub log2_half_a: f64,
    /// `log2 f_QP`, i.e. `-H_min`.
    pub log2_f: LogWeight,
    /// `Σ g_x p_x` at the returned multiplier.
    pub achieved_overlap: f64,
}

impl QpSolution {
    /// The KKT multiplier `a*` (may overflow to `inf` for long blocks).
    pub fn a_star(&self) -> f64 {
        2.0 * self.log2_half_a.exp2()
    }

    /// Smoothed min-entropy `H_min^{ε,P}(A|Ṙ) = -log2 f`.
    pub fn hmin(&self) -> f64 {
        -self.log2_f.log2()
    }

    /// Optimal `g` for an element of probability `2^log2_prob`.
    pub fn g(&self, log2_prob: f64) -> f64 {
        (self.log2_half_a + log2_prob).exp2().min(1.0)
    }

    /// Whether the element sits in the saturated (`g = 1`) set.
    pub fn is_saturated(&self, log2_prob: f64) -> bool {
        self.log2_half_a + log2_prob >= 0.0
    }
}

/// `h(t) = Σ mult_k p_k min(2^{t} p_k, 1)` with `t = log2(a/2)`.
fn overlap(spec: &SortedSpectrum, t: f64) -> f64 {
    neumaier_sum(spec.levels().iter().map(|l| {
        let lp = l.log2_prob.log2();
        (l.log2_mult.log2() + lp + (t + lp).min(0.0)).exp2()
    }))
}

fn objective(spec: &SortedSpectrum, t: f64) -> LogWeight {
    let terms: Vec<LogWeight> = spec
        .levels()
        .iter()
        .map(|l| {
            let lp = l.log2_prob.log2();
            if t + lp >= 0.0 {
                l.log2_mult
            } else {
                LogWeight::from_log2(l.log2_mult.log2() + 2.0 * (t + lp))
            }
        })
        .collect();
    log_sum_exp(&terms)
}

/// Solves the program for a (possibly huge) spectrum.
pub fn solve_qp(spec: &SortedSpectrum, eps: f64) -> Result<QpSolution> {
    if !(0.0..1.0).contains(&eps) {
        return Err(domain(format!("smoothing parameter must lie in [0, 1), got {eps}")));
    }
    if eps == 0.0 {
        return Ok(QpSolution {
            eps,
            log2_half_a: f64::INFINITY,
            log2_f: spec.total_count(),
            achieved_overlap: spec.total_mass(),
        });
    }
    let target = (1.0 - eps * eps).sqrt();
    let levels = spec.levels();

    if levels.len() == 1 {
        // Flat spectrum: every g_x equals √(1-ε²).
        let l = levels[0];
        let log2_half_a = target.log2() - l.log2_prob.log2();
        return Ok(QpSolution {
            eps,
            log2_half_a,
            log2_f: LogWeight::from_log2(l.log2_mult.log2() + 2.0 * target.log2()),
            achieved_overlap: overlap(spec, log2_half_a),
        });
    }

    let lo = -levels[0].log2_prob.log2() - 64.0;
    let hi = -levels[levels.len() - 1].log2_prob.log2() + 64.0;
    let mut t = bisect_monotone(|t| overlap(spec, t), target, (lo, hi), OVERLAP_TOL)?;

    // Closed form on the segment the bisection landed in: with saturated
    // prefix A, h = mass(A) + (a/2) Σ_{k ∉ A} mult_k p_k².
    let j = levels.iter().position(|l| t + l.log2_prob.log2() < 0.0).unwrap_or(levels.len());
    if j < levels.len() {
        let mass_a = if j == 0 { 0.0 } else { spec.cumulative_mass(j - 1) };
        let curvature: Vec<LogWeight> = levels[j..]
            .iter()
            .map(|l| LogWeight::from_log2(l.log2_mult.log2() + 2.0 * l.log2_prob.log2()))
            .collect();
        let rest = target - mass_a;
        if rest > 0.0 {
            let t_exact = rest.log2() - log_sum_exp(&curvature).log2();
            let fits_above = j == 0 || t_exact + levels[j - 1].log2_prob.log2() >= 0.0;
            let fits_below = t_exact + levels[j].log2_prob.log2() < 0.0;
            if fits_above && fits_below {
                t = t_exact;
            }
        }
    }

    Ok(QpSolution { eps, log2_half_a: t, log2_f: objective(spec, t), achieved_overlap: overlap(spec, t) })
}

/// Convenience wrapper for explicit distributions.
pub fn solve_qp_distribution(p: &Distribution, eps: f64) -> Result<QpSolution> {
    solve_qp(&SortedSpectrum::from_distribution(p), eps)
}

/// `η* = (a*/2) Σ_{a* p/2 < 1} mult p²`, the mass the saturated-set test
/// falls short of `√(1-ε²)`.
pub fn eta_from_solution(spec: &SortedSpectrum, sol: &QpSolution) -> f64 {
    let terms: Vec<LogWeight> = spec
        .levels()
        .iter()
        .filter(|l| !sol.is_saturated(l.log2_prob.log2()))
        .map(|l| LogWeight::from_log2(l.log2_mult.log2() + sol.log2_half_a + 2.0 * l.log2_prob.log2()))
        .collect();
    log_sum_exp(&terms).value()
}

/// Solves the program and returns `η*`.
pub fn eta_diagnostic(spec: &SortedSpectrum, eps: f64) -> Result<f64> {
    let sol = solve_qp(spec, eps)?;
    Ok(eta_from_solution(spec, &sol))
}
