//! Partially smoothed conditional min-entropy of pure states.
//!
//! For a pure `ρ_AR` with Schmidt coefficients `P`, the smoothing program
//! collapses to
//!
//! ```text
//! f(P, ε) = min Σ g_x²   s.t.  Σ g_x p_x ≥ √(1-ε²),  0 ≤ g_x ≤ 1
//! ```
//!
//! whose KKT point is `g_x = min(1, a p_x / 2)` for a single multiplier `a`.
//! [`solve_qp`] finds that multiplier, [`qp_oracle`] solves the vector
//! program directly, and [`build_certificate`] turns a solution into primal
//! and dual feasible points of the underlying semidefinite program.
//! `H_min = -log2 f`.

mod certificate;
mod oracle;
mod qp;

pub use certificate::{build_certificate, build_certificate_with_tol, Certificate, Residual, CERT_TOL};
pub use oracle::{qp_oracle, OracleSolution, ORACLE_MAX_DIM};
pub use qp::{eta_diagnostic, eta_from_solution, solve_qp, solve_qp_distribution, QpSolution, OVERLAP_TOL};
