use crate::error::{domain, Error, Result};
use crate::numerics::{solve_lp, LpProblem, Relation};

use super::{JointDistribution, SmoothingProgram, SmoothingWitness};

fn check_eps(eps: f64) -> Result<()> {
    if !(eps >= 0.0 && eps.is_finite()) {
        return Err(domain(format!("smoothing parameter must be nonnegative, got {eps}")));
    }
    Ok(())
}

/// Relaxed trace-distance program: the least `λ` whose excess
/// `g(λ) = Σ max(0, P(x,y) - λ P(y))` fits in the budget `eps`.
///
/// `g` is piecewise linear with breakpoints at the ratios `P(x,y)/P(y)`, so
/// the optimum is read off a descending scan. The returned witness
/// `S = min(P, λ P_Y)`, `W = P - S` is feasible for the partially smoothed
/// program.
pub fn hmin_trace_relaxed(p: &JointDistribution, eps: f64) -> Result<(f64, SmoothingWitness)> {
    check_eps(eps)?;
    let (nx, ny) = (p.nx(), p.ny());
    let mut items: Vec<(f64, f64, f64)> = (0..nx)
        .flat_map(|x| (0..ny).map(move |y| (x, y)))
        .filter(|&(x, y)| p.get(x, y) > 0.0)
        .map(|(x, y)| (p.get(x, y) / p.py(y), p.get(x, y), p.py(y)))
        .collect();
    items.sort_by(|a, b| b.0.total_cmp(&a.0));

    // Active set = items with ratio above the current λ; g(λ) = A - λ B.
    let (mut a, mut b) = (0.0f64, 0.0f64);
    let mut lambda = None;
    for &(ratio, pxy, py) in &items {
        if a - ratio * b > eps {
            lambda = Some((a - eps) / b);
            break;
        }
        a += pxy;
        b += py;
    }
    let lambda = match lambda {
        Some(l) => l,
        None if a <= eps => 0.0,
        None => (a - eps) / b,
    };

    let mut s_table = vec![0.0; nx * ny];
    let mut w_table = vec![0.0; nx * ny];
    for x in 0..nx {
        for y in 0..ny {
            let s = p.get(x, y).min(lambda * p.py(y));
            s_table[x * ny + y] = s;
            w_table[x * ny + y] = p.get(x, y) - s;
        }
    }
    Ok((lambda, SmoothingWitness { program: SmoothingProgram::PartialTrace, lambda, s_table, w_table, r_marginal: vec![] }))
}

fn trace_lp(p: &JointDistribution, eps: f64, partial: bool) -> Result<(f64, SmoothingWitness)> {
    check_eps(eps)?;
    let (nx, ny) = (p.nx(), p.ny());
    let k = nx * ny;
    let s_var = |x: usize, y: usize| 1 + x * ny + y;
    let w_var = |x: usize, y: usize| 1 + k + x * ny + y;
    let mut objective = vec![0.0; 1 + 2 * k];
    objective[0] = 1.0;
    let mut lp = LpProblem::minimize(objective);
    for x in 0..nx {
        for y in 0..ny {
            // λ P(y) - S(x,y) >= 0
            lp.add_sparse(&[(0, p.py(y)), (s_var(x, y), -1.0)], Relation::Ge, 0.0);
            // W + S >= P
            lp.add_sparse(&[(s_var(x, y), 1.0), (w_var(x, y), 1.0)], Relation::Ge, p.get(x, y));
        }
    }
    let w_all: Vec<(usize, f64)> = (0..k).map(|c| (1 + k + c, 1.0)).collect();
    lp.add_sparse(&w_all, Relation::Le, eps);
    if partial {
        for y in 0..ny {
            let terms: Vec<(usize, f64)> = (0..nx).map(|x| (s_var(x, y), 1.0)).collect();
            lp.add_sparse(&terms, Relation::Le, p.py(y));
        }
    } else {
        let terms: Vec<(usize, f64)> = (0..k).map(|c| (1 + c, 1.0)).collect();
        lp.add_sparse(&terms, Relation::Le, 1.0);
    }
    let sol = solve_lp(&lp).map_err(|e| match e {
        Error::Infeasible | Error::Unbounded => Error::Internal(format!("trace-distance LP: {e}")),
        other => other,
    })?;
    let program = if partial { SmoothingProgram::PartialTrace } else { SmoothingProgram::GlobalTrace };
    Ok((
        sol.value,
        SmoothingWitness {
            program,
            lambda: sol.x[0],
            s_table: sol.x[1..1 + k].to_vec(),
            w_table: sol.x[1 + k..].to_vec(),
            r_marginal: vec![],
        },
    ))
}

/// Partially smoothed trace-distance program solved as an explicit LP over
/// `(λ, S, W)` with the marginal constraint `Σ_x S(x,y) <= P(y)`.
pub fn hmin_trace_partial_lp(p: &JointDistribution, eps: f64) -> Result<(f64, SmoothingWitness)> {
    trace_lp(p, eps, true)
}

/// Globally smoothed trace-distance program (`Σ S <= 1`) as an LP.
pub fn hmin_trace_global_lp(p: &JointDistribution, eps: f64) -> Result<(f64, SmoothingWitness)> {
    trace_lp(p, eps, false)
}
