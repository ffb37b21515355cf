//! Hypothesis testing against the identity and information-spectrum
//! entropies for commuting (classical) spectra.
//!
//! With `σ = 1` the likelihood-ratio order is simply the probability order,
//! so everything here reduces to scans over a sorted list of
//! `(probability, multiplicity)` pairs.

use crate::dist::{ClassEnsemble, Distribution};
use crate::error::{domain, Result};
use crate::numerics::{bisect_monotone, log_sum_exp, neumaier_sum, LogWeight};

const TIE_TOL: f64 = 1e-12;
const MASS_TOL: f64 = 1e-9;

/// One level of a spectrum: probability of each element and how many
/// elements share it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Level {
    pub log2_prob: LogWeight,
    pub log2_mult: LogWeight,
}

impl Level {
    pub fn prob(&self) -> f64 {
        self.log2_prob.value()
    }

    pub fn mass(&self) -> f64 {
        (self.log2_prob * self.log2_mult).value()
    }
}

/// Spectrum with strictly decreasing levels and prefix sums.
#[derive(Clone, Debug, PartialEq)]
pub struct SortedSpectrum {
    levels: Vec<Level>,
    // cum_mass[k] = total mass of levels 0..=k
    cum_mass: Vec<f64>,
    // cum_count[k] = number of elements in levels 0..=k
    cum_count: Vec<LogWeight>,
}

impl SortedSpectrum {
    /// Sorts, merges equal probabilities and checks normalization.
    pub fn from_levels(mut raw: Vec<Level>) -> Result<Self> {
        raw.retain(|l| !l.log2_prob.is_zero() && !l.log2_mult.is_zero());
        if raw.iter().any(|l| !l.log2_prob.log2().is_finite() || !l.log2_mult.log2().is_finite()) {
            return Err(domain("spectrum levels must be finite"));
        }
        if raw.is_empty() {
            return Err(domain("empty spectrum"));
        }
        raw.sort_by(|a, b| b.log2_prob.total_cmp(&a.log2_prob));
        let mut levels: Vec<Level> = Vec::with_capacity(raw.len());
        for l in raw {
            match levels.last_mut() {
                Some(last)
                    if (last.log2_prob.log2() - l.log2_prob.log2()).abs()
                        <= TIE_TOL * last.log2_prob.log2().abs().max(1.0) =>
                {
                    last.log2_mult = log_sum_exp(&[last.log2_mult, l.log2_mult]);
                }
                _ => levels.push(l),
            }
        }
        let masses: Vec<f64> = levels.iter().map(Level::mass).collect();
        let mut cum_mass = Vec::with_capacity(levels.len());
        let (mut sum, mut comp) = (0.0f64, 0.0f64);
        for m in &masses {
            let t = sum + m;
            comp += if sum.abs() >= m.abs() { (sum - t) + m } else { (m - t) + sum };
            sum = t;
            cum_mass.push(sum + comp);
        }
        let total = *cum_mass.last().unwrap();
        if (total - 1.0).abs() > MASS_TOL {
            return Err(domain(format!("spectrum mass is {total}, not 1")));
        }
        let mut cum_count = Vec::with_capacity(levels.len());
        let mut acc = LogWeight::ZERO;
        for l in &levels {
            acc = log_sum_exp(&[acc, l.log2_mult]);
            cum_count.push(acc);
        }
        Ok(SortedSpectrum { levels, cum_mass, cum_count })
    }

    pub fn from_distribution(p: &Distribution) -> Self {
        let levels = p
            .probs()
            .iter()
            .map(|&q| Level { log2_prob: LogWeight::from_value(q), log2_mult: LogWeight::ONE })
            .collect();
        Self::from_levels(levels).expect("a validated distribution is a valid spectrum")
    }

    pub fn from_ensemble(e: &ClassEnsemble) -> Result<Self> {
        let levels = e
            .classes()
            .iter()
            .map(|c| Level { log2_prob: c.log2_prob, log2_mult: c.log2_mult })
            .collect();
        Self::from_levels(levels)
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// Mass of levels `0..=k`.
    pub fn cumulative_mass(&self, k: usize) -> f64 {
        self.cum_mass[k]
    }

    /// Number of elements in levels `0..=k`.
    pub fn cumulative_count(&self, k: usize) -> LogWeight {
        self.cum_count[k]
    }

    pub fn total_mass(&self) -> f64 {
        *self.cum_mass.last().unwrap()
    }

    /// Support size.
    pub fn total_count(&self) -> LogWeight {
        *self.cum_count.last().unwrap()
    }

    /// Mass strictly above level `k` (levels `0..k`).
    fn mass_before(&self, k: usize) -> f64 {
        if k == 0 { 0.0 } else { self.cum_mass[k - 1] }
    }

    fn count_before(&self, k: usize) -> LogWeight {
        if k == 0 { LogWeight::ZERO } else { self.cum_count[k - 1] }
    }
}

/// `β_α(P, 1)`: the smallest test size with success probability `α`.
///
/// Elements are accepted in order of decreasing probability; the last one
/// fractionally.
pub fn beta(spec: &SortedSpectrum, alpha: f64) -> Result<LogWeight> {
    if !(alpha > 0.0) {
        return Err(domain(format!("beta needs alpha > 0, got {alpha}")));
    }
    let total = spec.total_mass();
    if alpha > total + 1e-12 {
        return Err(domain(format!("alpha = {alpha} exceeds the total mass {total}")));
    }
    let k = spec.cum_mass.iter().position(|&m| m >= alpha).unwrap_or(spec.len() - 1);
    let level = spec.levels[k];
    let rest = (alpha - spec.mass_before(k)).max(0.0);
    let mut frac = LogWeight::from_value(rest) / level.log2_prob;
    if frac > level.log2_mult {
        frac = level.log2_mult;
    }
    Ok(log_sum_exp(&[spec.count_before(k), frac]))
}

/// `E_γ(P, 1) = Σ max(0, p - γ)` with `γ = 2^log2_gamma`.
///
/// Each positive part is evaluated as `p (1 - γ/p)` so no cancellation occurs
/// between the mass and count sums.
pub fn e_gamma(spec: &SortedSpectrum, log2_gamma: f64) -> f64 {
    neumaier_sum(spec.levels.iter().take_while(|l| l.log2_prob.log2() > log2_gamma).map(|l| {
        let delta = log2_gamma - l.log2_prob.log2();
        l.mass() * -(delta * std::f64::consts::LN_2).exp_m1()
    }))
}

/// Solves `E_{2^γ} = target` for `target` in `(0, 1)`, returning `γ`.
///
/// `E` is piecewise linear in `u = 2^γ` with breakpoints at the level
/// probabilities; the breakpoint values are accumulated upwards from
/// `E(p_max) = 0` using only positive increments.
fn solve_e_gamma(spec: &SortedSpectrum, target: f64) -> Result<f64> {
    let levels = &spec.levels;
    let ln2 = std::f64::consts::LN_2;
    // e_k = E(p_k), starting from E(p_max) = 0
    let mut e_k = 0.0f64;
    for k in 0..levels.len() {
        let count = spec.cum_count[k];
        let lp_k = levels[k].log2_prob.log2();
        // Next breakpoint down (0 below the smallest level).
        let (lp_next, e_next) = if k + 1 < levels.len() {
            let lp_next = levels[k + 1].log2_prob.log2();
            let inc = (count * levels[k].log2_prob).value() * -((lp_next - lp_k) * ln2).exp_m1();
            (Some(lp_next), e_k + inc)
        } else {
            (None, spec.total_mass())
        };
        if e_next >= target {
            // u = p_k - (target - E(p_k)) / C_k on this segment.
            let r = (target - e_k) * (-(count * levels[k].log2_prob).log2()).exp2();
            let gamma = match lp_next {
                _ if r <= 0.5 => lp_k + (-r).ln_1p() / ln2,
                Some(lp_next) => {
                    // Closer to the lower breakpoint: u = p_next (1 + s).
                    let s = (e_next - target) * (-(count.log2() + lp_next)).exp2();
                    lp_next + s.ln_1p() / ln2
                }
                // Last segment reaches E(0) = total: u = (total - target) / C_k.
                None => (spec.total_mass() - target).max(0.0).log2() - count.log2(),
            };
            if gamma.is_finite() && (e_gamma(spec, gamma) - target).abs() <= 1e-9 {
                return Ok(gamma);
            }
            break;
        }
        e_k = e_next;
    }
    // Fallback: bisection in log2 γ.
    let hi = levels[0].log2_prob.log2();
    let lo = levels.last().unwrap().log2_prob.log2() + (1.0 - target).log2() - spec.total_count().log2() - 1.0;
    bisect_monotone(|g| e_gamma(spec, g), target, (lo, hi), 1e-13)
}

fn check_eps(eps: f64) -> Result<()> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(domain(format!("smoothing parameter must lie in (0, 1), got {eps}")));
    }
    Ok(())
}

/// `sup{γ : E_{2^γ}(P, 1) >= 1 - eps}`.
pub fn d_lower(spec: &SortedSpectrum, eps: f64) -> Result<f64> {
    check_eps(eps)?;
    solve_e_gamma(spec, 1.0 - eps)
}

/// `inf{γ : E_{2^γ}(P, 1) <= eps}`.
pub fn d_upper(spec: &SortedSpectrum, eps: f64) -> Result<f64> {
    check_eps(eps)?;
    solve_e_gamma(spec, eps)
}

/// Upper information-spectrum entropy `-D_lower`.
pub fn h_spectrum_upper(spec: &SortedSpectrum, eps: f64) -> Result<f64> {
    Ok(-d_lower(spec, eps)?)
}

/// Lower information-spectrum entropy `-D_upper`.
pub fn h_spectrum_lower(spec: &SortedSpectrum, eps: f64) -> Result<f64> {
    Ok(-d_upper(spec, eps)?)
}
