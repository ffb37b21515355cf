//! Classical smoothed entropies of joint distributions `P_XY`.
//!
//! Trace-distance smoothing is linear, so the partially and globally smoothed
//! programs are solved exactly (breakpoint scan or simplex) and compared.
//! Purified-distance smoothing is restricted to classical `S_XY` and solved by
//! bisection on `λ` around an exact water-filling fidelity maximization.
//! The max-mutual-information programs come with a constructive map from a
//! global optimizer to a partial feasible point.

mod imax;
mod purified;
mod trace;

pub use imax::{imax_global_lp, imax_partial_from_global, imax_partial_lp};
pub use purified::{hmin_purified_classical, max_fidelity, SmoothingMode};
pub use trace::{hmin_trace_global_lp, hmin_trace_partial_lp, hmin_trace_relaxed};

use crate::error::{domain, Result};
use crate::numerics::neumaier_sum;

const NORMALIZATION_TOL: f64 = 1e-12;

/// Joint distribution `P(x, y)` stored row-major (`x` indexes rows).
#[derive(Clone, Debug, PartialEq)]
pub struct JointDistribution {
    nx: usize,
    ny: usize,
    table: Vec<f64>,
    px: Vec<f64>,
    py: Vec<f64>,
}

impl JointDistribution {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let nx = rows.len();
        let ny = rows.first().map_or(0, Vec::len);
        if nx == 0 || ny == 0 {
            return Err(domain("joint distribution needs at least one row and column"));
        }
        if rows.iter().any(|r| r.len() != ny) {
            return Err(domain("joint distribution rows have different lengths"));
        }
        let table: Vec<f64> = rows.into_iter().flatten().collect();
        if table.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(domain("joint probabilities must be finite and nonnegative"));
        }
        let total = neumaier_sum(table.iter().copied());
        if (total - 1.0).abs() > NORMALIZATION_TOL {
            return Err(domain(format!("joint probabilities sum to {total}, not 1")));
        }
        Ok(Self::from_table(nx, ny, table))
    }

    /// Normalizes a nonnegative weight table.
    pub fn from_weights(rows: Vec<Vec<f64>>) -> Result<Self> {
        let nx = rows.len();
        let ny = rows.first().map_or(0, Vec::len);
        if nx == 0 || ny == 0 || rows.iter().any(|r| r.len() != ny) {
            return Err(domain("weight table must be a nonempty rectangle"));
        }
        if rows.iter().flatten().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(domain("weights must be finite and nonnegative"));
        }
        let total = neumaier_sum(rows.iter().flatten().copied());
        if !(total > 0.0) || !total.is_finite() {
            return Err(domain("weights must have a positive finite sum"));
        }
        let table = rows.into_iter().flatten().map(|v| v / total).collect();
        Ok(Self::from_table(nx, ny, table))
    }

    fn from_table(nx: usize, ny: usize, table: Vec<f64>) -> Self {
        let px = (0..nx).map(|x| neumaier_sum((0..ny).map(|y| table[x * ny + y]))).collect();
        let py = (0..ny).map(|y| neumaier_sum((0..nx).map(|x| table[x * ny + y]))).collect();
        JointDistribution { nx, ny, table, px, py }
    }

    /// `P(x, y) = u(x) q(y)`.
    pub fn product(u: &[f64], q: &[f64]) -> Result<Self> {
        Self::from_weights(u.iter().map(|&a| q.iter().map(|&b| a * b).collect()).collect())
    }

    /// `P(x, x) = p_x`, zero elsewhere.
    pub fn correlated(p: &[f64]) -> Result<Self> {
        let d = p.len();
        Self::from_weights((0..d).map(|x| (0..d).map(|y| if x == y { p[x] } else { 0.0 }).collect()).collect())
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.table[x * self.ny + y]
    }

    pub fn px(&self, x: usize) -> f64 {
        self.px[x]
    }

    pub fn py(&self, y: usize) -> f64 {
        self.py[y]
    }

    pub fn table(&self) -> &[f64] {
        &self.table
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.table.chunks(self.ny).map(<[f64]>::to_vec).collect()
    }
}

/// Which optimization a [`SmoothingWitness`] claims feasibility for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SmoothingProgram {
    PartialTrace,
    GlobalTrace,
    PartialPurified,
    GlobalPurified,
    ImaxPartial,
    ImaxGlobal,
}

/// A feasible point of one of the classical programs.
///
/// Trace programs: `s_table = S`, `w_table = W`. Purified programs:
/// `s_table = S`, `w_table` empty. Max-information programs:
/// `s_table = Q`, `w_table = T`, `r_marginal = R` and `lambda = Tr R`.
#[derive(Clone, Debug, PartialEq)]
pub struct SmoothingWitness {
    pub program: SmoothingProgram,
    pub lambda: f64,
    pub s_table: Vec<f64>,
    pub w_table: Vec<f64>,
    pub r_marginal: Vec<f64>,
}

/// Largest constraint violation of `witness` for `p` at smoothing `eps`,
/// checked directly from the program definitions.
pub fn witness_violation(p: &JointDistribution, eps: f64, w: &SmoothingWitness) -> f64 {
    let (nx, ny) = (p.nx(), p.ny());
    let idx = |x: usize, y: usize| x * ny + y;
    let mut worst = 0.0f64;
    let mut viol = |v: f64| worst = worst.max(v);
    let cells = || (0..nx).flat_map(move |x| (0..ny).map(move |y| (x, y)));
    match w.program {
        SmoothingProgram::PartialTrace | SmoothingProgram::GlobalTrace => {
            viol(-w.lambda);
            for (x, y) in cells() {
                let (s, t) = (w.s_table[idx(x, y)], w.w_table[idx(x, y)]);
                viol(-s);
                viol(-t);
                viol(s - w.lambda * p.py(y));
                viol(p.get(x, y) - s - t);
            }
            viol(w.w_table.iter().sum::<f64>() - eps);
            if w.program == SmoothingProgram::PartialTrace {
                for y in 0..ny {
                    viol((0..nx).map(|x| w.s_table[idx(x, y)]).sum::<f64>() - p.py(y));
                }
            } else {
                viol(w.s_table.iter().sum::<f64>() - 1.0);
            }
        }
        SmoothingProgram::PartialPurified | SmoothingProgram::GlobalPurified => {
            viol(-w.lambda);
            let mut fid = 0.0;
            for (x, y) in cells() {
                let s = w.s_table[idx(x, y)];
                viol(-s);
                viol(s - w.lambda * p.py(y));
                fid += (p.get(x, y) * s.max(0.0)).sqrt();
            }
            viol((1.0 - eps * eps).sqrt() - fid);
            if w.program == SmoothingProgram::PartialPurified {
                for y in 0..ny {
                    viol((0..nx).map(|x| w.s_table[idx(x, y)]).sum::<f64>() - p.py(y));
                }
            } else {
                viol(w.s_table.iter().sum::<f64>() - 1.0);
            }
        }
        SmoothingProgram::ImaxPartial | SmoothingProgram::ImaxGlobal => {
            for v in w.r_marginal.iter().chain(&w.s_table).chain(&w.w_table) {
                viol(-v);
            }
            viol((w.lambda - w.r_marginal.iter().sum::<f64>()).abs());
            for (x, y) in cells() {
                let (q, t) = (w.s_table[idx(x, y)], w.w_table[idx(x, y)]);
                viol(q - p.px(x) * w.r_marginal[y]);
                viol(p.get(x, y) - t - q);
            }
            viol(w.w_table.iter().sum::<f64>() - eps);
            if w.program == SmoothingProgram::ImaxPartial {
                for x in 0..nx {
                    viol(((0..ny).map(|y| w.s_table[idx(x, y)]).sum::<f64>() - p.px(x)).abs());
                }
            } else {
                viol((w.s_table.iter().sum::<f64>() - 1.0).abs());
            }
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn marginals() {
        let p = JointDistribution::new(vec![vec![0.25, 0.25], vec![0.0, 0.5]]).unwrap();
        assert_eq!((p.px(0), p.px(1)), (0.5, 0.5));
        assert_eq!((p.py(0), p.py(1)), (0.25, 0.75));
    }

    #[test]
    fn invalid_tables() {
        assert!(JointDistribution::new(vec![]).is_err());
        assert!(JointDistribution::new(vec![vec![0.5], vec![0.25, 0.25]]).is_err());
        assert!(JointDistribution::new(vec![vec![0.5, 0.6]]).is_err());
        assert!(JointDistribution::new(vec![vec![-0.5, 1.5]]).is_err());
    }

    #[test]
    fn constructors() {
        let p = JointDistribution::product(&[0.5, 0.5], &[0.2, 0.8]).unwrap();
        assert!((p.get(1, 1) - 0.4).abs() < 1e-15);
        let c = JointDistribution::correlated(&[0.7, 0.3]).unwrap();
        assert_eq!(c.get(0, 1), 0.0);
        assert!((c.get(1, 1) - 0.3).abs() < 1e-15);
    }
}
