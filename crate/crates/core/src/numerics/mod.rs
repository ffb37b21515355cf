//! Numeric kernels shared by the rest of the crate.

mod eigen;
mod logweight;
mod lp;
mod quantile;
mod roots;

pub use eigen::{max_eigenvalue_symmetric, symmetric_eigenvalues, SmallMatrix, MAX_EIGEN_DIM};
pub use logweight::{log_sum_exp, LogWeight};
pub use lp::{solve_lp, LpProblem, LpSolution, Relation, MAX_LP_SIZE};
pub use quantile::{normal_cdf, normal_quantile};
pub use roots::{bisect_monotone, BISECT_MAX_ITER};

/// Compensated (Neumaier) summation.
pub fn neumaier_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}
