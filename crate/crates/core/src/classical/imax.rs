use crate::error::{domain, Error, Result};
use crate::numerics::{solve_lp, LpProblem, Relation};

use super::{witness_violation, JointDistribution, SmoothingProgram, SmoothingWitness};

const CONSTRUCTION_TOL: f64 = 1e-8;

fn imax_lp(p: &JointDistribution, eps: f64, partial: bool) -> Result<(f64, SmoothingWitness)> {
    if !(eps >= 0.0 && eps.is_finite()) {
        return Err(domain(format!("smoothing parameter must be nonnegative, got {eps}")));
    }
    let (nx, ny) = (p.nx(), p.ny());
    let k = nx * ny;
    let q_var = |x: usize, y: usize| x * ny + y;
    let t_var = |x: usize, y: usize| k + x * ny + y;
    let r_var = |y: usize| 2 * k + y;
    let mut objective = vec![0.0; 2 * k + ny];
    for y in 0..ny {
        objective[r_var(y)] = 1.0;
    }
    let mut lp = LpProblem::minimize(objective);
    for x in 0..nx {
        for y in 0..ny {
            // P(x) R(y) >= Q(x,y)
            lp.add_sparse(&[(r_var(y), p.px(x)), (q_var(x, y), -1.0)], Relation::Ge, 0.0);
            // T + Q >= P
            lp.add_sparse(&[(q_var(x, y), 1.0), (t_var(x, y), 1.0)], Relation::Ge, p.get(x, y));
        }
    }
    let t_all: Vec<(usize, f64)> = (0..k).map(|c| (k + c, 1.0)).collect();
    lp.add_sparse(&t_all, Relation::Le, eps);
    if partial {
        for x in 0..nx {
            let row: Vec<(usize, f64)> = (0..ny).map(|y| (q_var(x, y), 1.0)).collect();
            lp.add_sparse(&row, Relation::Eq, p.px(x));
        }
    } else {
        let all: Vec<(usize, f64)> = (0..k).map(|c| (c, 1.0)).collect();
        lp.add_sparse(&all, Relation::Eq, 1.0);
    }
    let sol = solve_lp(&lp).map_err(|e| match e {
        Error::Infeasible | Error::Unbounded => Error::Internal(format!("max-information LP: {e}")),
        other => other,
    })?;
    let program = if partial { SmoothingProgram::ImaxPartial } else { SmoothingProgram::ImaxGlobal };
    Ok((
        sol.value,
        SmoothingWitness {
            program,
            lambda: sol.value,
            s_table: sol.x[..k].to_vec(),
            w_table: sol.x[k..2 * k].to_vec(),
            r_marginal: sol.x[2 * k..].to_vec(),
        },
    ))
}

/// Globally smoothed max-information program (`Tr Q = 1`) as an LP over
/// `(Q, T, R)`; the value is `Tr R`.
pub fn imax_global_lp(p: &JointDistribution, eps: f64) -> Result<(f64, SmoothingWitness)> {
    imax_lp(p, eps, false)
}

/// Partially smoothed max-information program (`Q_X = P_X`) as an LP.
pub fn imax_partial_lp(p: &JointDistribution, eps: f64) -> Result<(f64, SmoothingWitness)> {
    imax_lp(p, eps, true)
}

/// Turns an optimizer `(Q*, T*, R*)` of the global program into a feasible
/// point of the partial program with the same objective `Tr R*`.
///
/// `T*` is clipped to `P`; for every `x` with `P(x) > 0` the conditional
/// `Q̃(·|x)` interpolates affinely between `L = P(·|x) - T*(·|x)` (mass at
/// most 1) and `U = R*` (mass at least 1) so that it is normalized. Rows
/// with `P(x) = 0` are left empty.
pub fn imax_partial_from_global(
    p: &JointDistribution,
    eps: f64,
    global: &SmoothingWitness,
) -> Result<(SmoothingWitness, f64)> {
    if global.program != SmoothingProgram::ImaxGlobal {
        return Err(domain("witness is not for the global max-information program"));
    }
    let (nx, ny) = (p.nx(), p.ny());
    let r = &global.r_marginal;
    let mut t_table = vec![0.0; nx * ny];
    let mut q_table = vec![0.0; nx * ny];
    for x in 0..nx {
        let px = p.px(x);
        if px <= 0.0 {
            continue;
        }
        let mut lower = vec![0.0; ny];
        for y in 0..ny {
            let c = x * ny + y;
            let t = global.w_table[c].clamp(0.0, p.get(x, y));
            t_table[c] = t;
            // L ≤ U holds up to solver round-off.
            lower[y] = ((p.get(x, y) - t) / px).min(r[y]).max(0.0);
        }
        let sum_l: f64 = lower.iter().sum();
        let sum_u: f64 = r.iter().sum();
        if sum_l > 1.0 + CONSTRUCTION_TOL || sum_u < 1.0 - CONSTRUCTION_TOL {
            return Err(Error::Construction(format!(
                "row {x}: lower mass {sum_l} and upper mass {sum_u} do not bracket 1"
            )));
        }
        let theta = if sum_u - sum_l > 0.0 { ((1.0 - sum_l) / (sum_u - sum_l)).clamp(0.0, 1.0) } else { 0.0 };
        for y in 0..ny {
            q_table[x * ny + y] = px * (lower[y] + theta * (r[y] - lower[y]));
        }
    }
    let value: f64 = r.iter().sum();
    let witness = SmoothingWitness {
        program: SmoothingProgram::ImaxPartial,
        lambda: value,
        s_table: q_table,
        w_table: t_table,
        r_marginal: r.clone(),
    };
    let violation = witness_violation(p, eps, &witness);
    if violation > CONSTRUCTION_TOL {
        return Err(Error::Construction(format!("constructed point violates the partial program by {violation:e}")));
    }
    Ok((witness, value))
}
