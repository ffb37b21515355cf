use crate::error::{domain, Error, Result};
use crate::numerics::bisect_monotone;

use super::{JointDistribution, SmoothingProgram, SmoothingWitness};

/// Normalization constraint on the smoothed distribution `S_XY`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SmoothingMode {
    /// `Σ_x S(x,y) <= P(y)` for every `y`.
    Partial,
    /// `Σ_{x,y} S(x,y) <= 1`.
    Global,
}

/// Maximizes `Σ √(P_i S_i)` over `0 <= S_i <= cap_i`, `Σ S_i <= budget`.
///
/// The stationary point is `S_i = s P_i` clipped at the caps, with the common
/// scale `s = 1/(4μ²)` set so that the budget binds.
fn water_fill(weights: &[f64], caps: &[f64], budget: f64) -> Result<Vec<f64>> {
    let cap_total: f64 = caps.iter().sum();
    if cap_total <= budget {
        return Ok(caps.to_vec());
    }
    let fill = |s: f64| -> f64 { weights.iter().zip(caps).map(|(w, c)| (s * w).min(*c)).sum() };
    let s_max = weights.iter().zip(caps).map(|(w, c)| c / w).fold(0.0, f64::max);
    let s = bisect_monotone(fill, budget, (0.0, s_max), 0.0).map_err(|e| match e {
        Error::Bracket { .. } | Error::NonMonotone { .. } => Error::Internal(format!("water-filling: {e}")),
        other => other,
    })?;
    let mut out: Vec<f64> = weights.iter().zip(caps).map(|(w, c)| (s * w).min(*c)).collect();
    let used: f64 = out.iter().sum();
    if used > budget {
        let shrink = budget / used;
        out.iter_mut().for_each(|v| *v *= shrink);
    }
    Ok(out)
}

/// Largest fidelity `Σ √(P S)` reachable with `S(x,y) <= λ P(y)` under the
/// given normalization, and the maximizing `S` (row-major).
pub fn max_fidelity(p: &JointDistribution, lambda: f64, mode: SmoothingMode) -> Result<(f64, Vec<f64>)> {
    let (nx, ny) = (p.nx(), p.ny());
    let mut s_table = vec![0.0; nx * ny];
    let groups: Vec<(Vec<usize>, f64)> = match mode {
        SmoothingMode::Partial => (0..ny)
            .map(|y| ((0..nx).map(|x| x * ny + y).collect(), p.py(y)))
            .collect(),
        SmoothingMode::Global => vec![((0..nx * ny).collect(), 1.0)],
    };
    for (cells, budget) in groups {
        let cells: Vec<usize> = cells.into_iter().filter(|&c| p.table()[c] > 0.0).collect();
        if cells.is_empty() || budget <= 0.0 {
            continue;
        }
        let weights: Vec<f64> = cells.iter().map(|&c| p.table()[c]).collect();
        let caps: Vec<f64> = cells.iter().map(|&c| lambda * p.py(c % ny)).collect();
        for (&c, s) in cells.iter().zip(water_fill(&weights, &caps, budget)?) {
            s_table[c] = s;
        }
    }
    let fidelity = p.table().iter().zip(&s_table).map(|(a, b)| (a * b).sqrt()).sum();
    Ok((fidelity, s_table))
}

/// Purified-distance smoothed `λ` for classical `S`: the least `λ` whose
/// best achievable fidelity reaches `√(1-ε²)`.
pub fn hmin_purified_classical(
    p: &JointDistribution,
    eps: f64,
    mode: SmoothingMode,
) -> Result<(f64, SmoothingWitness)> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(domain(format!("smoothing parameter must lie in (0, 1), got {eps}")));
    }
    let target = (1.0 - eps * eps).sqrt();
    // λ = 1 admits S = P, which has fidelity 1.
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if max_fidelity(p, mid, mode)?.0 >= target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let (_, s_table) = max_fidelity(p, hi, mode)?;
    let program = match mode {
        SmoothingMode::Partial => SmoothingProgram::PartialPurified,
        SmoothingMode::Global => SmoothingProgram::GlobalPurified,
    };
    Ok((hi, SmoothingWitness { program, lambda: hi, s_table, w_table: vec![], r_marginal: vec![] }))
}

#[cfg(test)]
mod tests {
    use super::super::witness_violation;
    use super::*;

    #[test]
    fn single_cell_closed_form() {
        // One atom: √S >= √(1-ε²) and S <= λ, so λ = 1 - ε².
        let p = JointDistribution::new(vec![vec![1.0]]).unwrap();
        for mode in [SmoothingMode::Partial, SmoothingMode::Global] {
            let (l, w) = hmin_purified_classical(&p, 0.3, mode).unwrap();
            assert!((l - 0.91).abs() < 1e-14);
            assert!(witness_violation(&p, 0.3, &w) <= 1e-12);
        }
    }

    #[test]
    fn water_fill_respects_caps_and_budget() {
        let s = water_fill(&[0.5, 0.3, 0.2], &[0.1, 1.0, 1.0], 0.6).unwrap();
        assert!((s[0] - 0.1).abs() < 1e-15);
        assert!((s.iter().sum::<f64>() - 0.6).abs() < 1e-14);
        // Uncapped cells stay proportional to their weights.
        assert!((s[1] / s[2] - 1.5).abs() < 1e-12);
    }

    #[test]
    fn partial_is_at_least_global() {
        let p = JointDistribution::new(vec![vec![0.25, 0.25], vec![0.0, 0.5]]).unwrap();
        let (lp, _) = hmin_purified_classical(&p, 0.1, SmoothingMode::Partial).unwrap();
        let (lg, _) = hmin_purified_classical(&p, 0.1, SmoothingMode::Global).unwrap();
        assert!(lp >= lg);
    }

    #[test]
    fn eps_range() {
        let p = JointDistribution::new(vec![vec![1.0]]).unwrap();
        assert!(hmin_purified_classical(&p, 0.0, SmoothingMode::Global).is_err());
        assert!(hmin_purified_classical(&p, 1.0, SmoothingMode::Global).is_err());
    }
}
