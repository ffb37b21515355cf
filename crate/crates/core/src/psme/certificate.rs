use crate::error::{domain, Error, Result};
use crate::numerics::{symmetric_eigenvalues, SmallMatrix, MAX_EIGEN_DIM};
use crate::Distribution;

use super::QpSolution;

/// Default feasibility tolerance for certificate constraints.
pub const CERT_TOL: f64 = 1e-9;

/// Slack of one constraint: nonnegative when satisfied.
#[derive(Clone, Debug, PartialEq)]
pub struct Residual {
    pub constraint: &'static str,
    pub slack: f64,
}

/// Primal point `(λ, θ = |g⟩⟨g|)` and dual point `(μ, K, T = |g⟩⟨g|/⟨g|g⟩)`
/// of the single-system semidefinite program, with their checks.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub lambda: f64,
    pub g: Vec<f64>,
    pub mu: f64,
    pub k_diag: Vec<f64>,
    /// `T = t_scale · |g⟩⟨g|`.
    pub t_scale: f64,
    pub primal_value: f64,
    pub dual_value: f64,
    pub residuals: Vec<Residual>,
    /// Largest eigenvalue of `μψ - P(K) - T`.
    pub dual_max_eigenvalue: f64,
}

impl Certificate {
    pub fn gap(&self) -> f64 {
        (self.primal_value - self.dual_value).abs()
    }

    pub fn relative_gap(&self) -> f64 {
        self.gap() / self.primal_value.abs().max(1.0)
    }

    /// Largest violation over all constraints (0 when all hold exactly).
    pub fn worst_violation(&self) -> f64 {
        self.residuals.iter().map(|r| (-r.slack).max(0.0)).fold(0.0, f64::max)
    }

    /// Largest violation among the primal constraints.
    pub fn worst_primal_violation(&self) -> f64 {
        self.residuals
            .iter()
            .filter(|r| r.constraint.starts_with("primal"))
            .map(|r| (-r.slack).max(0.0))
            .fold(0.0, f64::max)
    }
}

/// [`build_certificate_with_tol`] with the default tolerance.
pub fn build_certificate(p: &Distribution, eps: f64, sol: &QpSolution) -> Result<Certificate> {
    build_certificate_with_tol(p, eps, sol, CERT_TOL)
}

/// Assembles and checks both certificates for an explicit distribution.
///
/// Fails with [`Error::Certificate`] naming the first constraint whose
/// violation exceeds `tol`, or whose relative duality gap exceeds `tol`.
pub fn build_certificate_with_tol(p: &Distribution, eps: f64, sol: &QpSolution, tol: f64) -> Result<Certificate> {
    let d = p.len();
    if d > MAX_EIGEN_DIM {
        return Err(Error::Capacity(format!("dense certificate supports d <= {MAX_EIGEN_DIM}, got {d}")));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(domain(format!("certificates need 0 < eps < 1, got {eps}")));
    }
    let probs = p.probs();
    let target_sq = 1.0 - eps * eps;
    let half_a = sol.log2_half_a.exp2();
    let a = 2.0 * half_a;

    let g: Vec<f64> = probs.iter().map(|&q| (half_a * q).min(1.0)).collect();
    let norm_sq: f64 = g.iter().map(|x| x * x).sum();
    let overlap: f64 = g.iter().zip(probs).map(|(x, q)| x * q).sum();

    // Primal: λ = ⟨g|g⟩, θ = |g⟩⟨g|.
    let lambda = norm_sq;
    let primal_gap_matrix = SmallMatrix::from_fn(d, |i, j| g[i] * g[j] - if i == j { lambda } else { 0.0 })?;
    let theta = SmallMatrix::from_fn(d, |i, j| g[i] * g[j])?;
    let theta_eigs = symmetric_eigenvalues(&theta);

    // Dual: μ = a / (2√(1-ε²)), K = diag(1{ap/2 ≥ 1}(ap/2 - 1)), T = |g⟩⟨g|/⟨g|g⟩.
    let mu = a / (2.0 * target_sq.sqrt());
    let k_diag: Vec<f64> = probs.iter().map(|&q| if half_a * q >= 1.0 { half_a * q - 1.0 } else { 0.0 }).collect();
    let t_scale = 1.0 / norm_sq;
    let dual_matrix = SmallMatrix::from_fn(d, |i, j| {
        mu * probs[i] * probs[j] - if i == j { k_diag[i] } else { 0.0 } - t_scale * g[i] * g[j]
    })?;
    let dual_max_eigenvalue = symmetric_eigenvalues(&dual_matrix)[0];
    let t_trace: f64 = t_scale * norm_sq;

    let residuals = vec![
        Residual { constraint: "primal: lambda >= 0", slack: lambda },
        Residual { constraint: "primal: lambda*1 - theta >= 0", slack: -symmetric_eigenvalues(&primal_gap_matrix)[0] },
        Residual { constraint: "primal: pinched theta <= 1", slack: g.iter().map(|x| 1.0 - x * x).fold(f64::INFINITY, f64::min) },
        Residual { constraint: "primal: Tr[psi theta] >= 1 - eps^2", slack: overlap * overlap - target_sq },
        Residual { constraint: "primal: theta >= 0", slack: *theta_eigs.last().unwrap() },
        Residual { constraint: "dual: mu >= 0", slack: mu },
        Residual { constraint: "dual: K >= 0", slack: k_diag.iter().copied().fold(f64::INFINITY, f64::min) },
        Residual { constraint: "dual: Tr T <= 1", slack: 1.0 - t_trace },
        Residual { constraint: "dual: mu*psi - P(K) - T <= 0", slack: -dual_max_eigenvalue },
    ];

    let primal_value = lambda;
    let dual_value = mu * target_sq - k_diag.iter().sum::<f64>();
    let cert = Certificate {
        lambda,
        g,
        mu,
        k_diag,
        t_scale,
        primal_value,
        dual_value,
        residuals,
        dual_max_eigenvalue,
    };
    if let Some(r) = cert.residuals.iter().find(|r| r.slack < -tol) {
        return Err(Error::Certificate { constraint: r.constraint.to_string(), violation: -r.slack });
    }
    if cert.relative_gap() > tol.max(1e-8) {
        return Err(Error::Certificate { constraint: "duality gap".to_string(), violation: cert.relative_gap() });
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::psme::solve_qp_distribution;

    fn cert(p: &[f64], eps: f64) -> Certificate {
        let p = Distribution::new(p.to_vec()).unwrap();
        let sol = solve_qp_distribution(&p, eps).unwrap();
        build_certificate(&p, eps, &sol).unwrap()
    }

    #[test]
    fn uniform_three() {
        let c = cert(&[1.0 / 3.0; 3], 0.3);
        assert!(c.gap() <= 1e-10);
        assert!(c.dual_max_eigenvalue <= 1e-12);
    }

    #[test]
    fn scalar_problem() {
        let c = cert(&[1.0], 0.1);
        assert_eq!(c.g.len(), 1);
        assert!(c.gap() <= 1e-15, "{c:?}");
    }

    #[test]
    fn biased_coin() {
        let c = cert(&[0.9, 0.1], 0.1);
        assert!(c.relative_gap() <= 1e-8);
        let g1 = 10.0 * 0.99f64.sqrt() - 9.0;
        assert!((c.dual_value - (1.0 + g1 * g1)).abs() < 1e-10);
        assert!((c.dual_value - 1.9022).abs() < 1e-4);
    }

    #[test]
    fn wrong_multiplier_is_caught() {
        let p = Distribution::new(vec![0.6, 0.3, 0.1]).unwrap();
        let mut sol = solve_qp_distribution(&p, 0.2).unwrap();
        sol.log2_half_a -= 0.05;
        let err = build_certificate(&p, 0.2, &sol).unwrap_err();
        assert!(matches!(err, Error::Certificate { .. }), "{err:?}");
    }
}
