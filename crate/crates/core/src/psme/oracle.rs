use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{domain, Error, Result};
use crate::Distribution;

/// Largest alphabet the vector oracle is used on.
pub const ORACLE_MAX_DIM: usize = 4;

const STEP: f64 = 0.25;
const MAX_ITER: usize = 10_000;
const STARTS: usize = 8;

#[derive(Clone, Debug, PartialEq)]
pub struct OracleSolution {
    pub value: f64,
    pub g: Vec<f64>,
}

/// Euclidean projection onto `{g ∈ [0,1]^d : p·g ≥ c}`.
///
/// The minimizer is `clip(z + ν p)` for the smallest `ν ≥ 0` that meets the
/// overlap constraint; `ν` is found by bisection.
fn project(z: &[f64], p: &[f64], c: f64) -> Vec<f64> {
    let clip = |nu: f64| -> Vec<f64> { z.iter().zip(p).map(|(zi, pi)| (zi + nu * pi).clamp(0.0, 1.0)).collect() };
    let overlap = |g: &[f64]| -> f64 { g.iter().zip(p).map(|(a, b)| a * b).sum() };
    let g0 = clip(0.0);
    if overlap(&g0) >= c {
        return g0;
    }
    let mut lo = 0.0;
    let mut hi = z.iter().zip(p).map(|(zi, pi)| (1.0 - zi) / pi).fold(0.0f64, f64::max).max(1.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if overlap(&clip(mid)) >= c {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    clip(hi)
}

/// Solves the vector program by projected gradient descent from several
/// starting points. Test oracle for [`super::solve_qp`].
pub fn qp_oracle(p: &Distribution, eps: f64) -> Result<OracleSolution> {
    if !(0.0..1.0).contains(&eps) {
        return Err(domain(format!("smoothing parameter must lie in [0, 1), got {eps}")));
    }
    let d = p.len();
    if d > ORACLE_MAX_DIM {
        return Err(Error::Capacity(format!("oracle supports at most {ORACLE_MAX_DIM} outcomes, got {d}")));
    }
    let probs = p.probs();
    let c = (1.0 - eps * eps).sqrt();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut best: Option<OracleSolution> = None;
    for start in 0..STARTS {
        let init: Vec<f64> = if start == 0 { vec![1.0; d] } else { (0..d).map(|_| rng.gen::<f64>()).collect() };
        let mut g = project(&init, probs, c);
        let mut converged = false;
        for _ in 0..MAX_ITER {
            // gradient of Σ g² is 2g
            let step: Vec<f64> = g.iter().map(|x| x - STEP * 2.0 * x).collect();
            let next = project(&step, probs, c);
            let change = next.iter().zip(&g).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            g = next;
            if change <= 1e-15 {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::Oracle(format!("projected gradient did not converge from start {start}")));
        }
        let value = g.iter().map(|x| x * x).sum();
        if best.as_ref().is_none_or(|b| value < b.value) {
            best = Some(OracleSolution { value, g });
        }
    }
    Ok(best.expect("at least one start"))
}
