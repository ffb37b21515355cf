//! Second-order expansions and the qubit compression bound curves.

use rayon::prelude::*;

use crate::dist::{binary_entropy, binary_variance, iid_product, Distribution};
use crate::error::{domain, Result};
use crate::io::format_sig;
use crate::numerics::{log_sum_exp, normal_quantile, LogWeight};
use crate::psme::solve_qp;
use crate::spectrum::{h_spectrum_upper, SortedSpectrum};

/// Which expansion [`expand`] evaluates. All are in entropy form (`σ = 1`,
/// `h = H(P)`), in bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// `log2 β_ε(P^n, 1) ≈ nh + √(nv) Φ⁻¹(ε)`.
    Beta,
    /// Upper spectrum entropy `-D_lower^ε ≈ nh - √(nv) Φ⁻¹(ε)`.
    SpectrumUpper,
    /// Lower spectrum entropy `-D_upper^ε ≈ nh + √(nv) Φ⁻¹(ε)`.
    SpectrumLower,
    /// `-H_min^{ε,P}(A|Ṙ) ≈ nh + √(nv) Φ⁻¹(√(1-ε²))`.
    PartialPure,
    /// [`Variant::PartialPure`] with the `-½ log2 n` third-order term.
    PartialPureThirdOrder,
    /// Optimal compression length `nh + √(nv) Φ⁻¹(√(1-ε))`.
    Compression,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExpansionSpec {
    pub h: f64,
    pub v: f64,
    pub eps: f64,
    pub n: usize,
    pub variant: Variant,
}

/// Truncated expansion for the given variant (total, not per copy).
pub fn expand(spec: &ExpansionSpec) -> Result<f64> {
    let ExpansionSpec { h, v, eps, n, variant } = *spec;
    if !(v >= 0.0) || !h.is_finite() || !v.is_finite() {
        return Err(domain(format!("expansion needs finite h and v >= 0, got h = {h}, v = {v}")));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(domain(format!("expansion needs 0 < eps < 1, got {eps}")));
    }
    if n == 0 {
        return Err(domain("expansion needs n >= 1"));
    }
    let n_f = n as f64;
    let first = n_f * h;
    if v == 0.0 {
        return Ok(first);
    }
    let spread = (n_f * v).sqrt();
    Ok(match variant {
        Variant::Beta | Variant::SpectrumLower => first + spread * normal_quantile(eps)?,
        Variant::SpectrumUpper => first - spread * normal_quantile(eps)?,
        Variant::PartialPure => first + spread * normal_quantile((1.0 - eps * eps).sqrt())?,
        Variant::PartialPureThirdOrder => {
            first + spread * normal_quantile((1.0 - eps * eps).sqrt())? - 0.5 * n_f.log2()
        }
        Variant::Compression => first + spread * normal_quantile((1.0 - eps).sqrt())?,
    })
}

/// Smoothing parameter of the spectrum-entropy achievability bound.
fn achievability_eps(eps: f64) -> f64 {
    1.0 - (1.0 - eps).sqrt()
}

/// `log2 M` for the eigenspace cut-off code: keep every element with
/// probability at least `2^{-γ}`, `γ = H̄_s^{1-√(1-ε)}`.
pub fn direct_achievability(spec: &SortedSpectrum, eps: f64) -> Result<f64> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(domain(format!("compression needs 0 < eps < 1, got {eps}")));
    }
    let gamma = h_spectrum_upper(spec, achievability_eps(eps))?;
    let threshold = -gamma;
    let slack = 1e-12 * threshold.abs().max(1.0);
    let kept: Vec<LogWeight> = spec
        .levels()
        .iter()
        .filter(|l| l.log2_prob.log2() >= threshold - slack)
        .map(|l| l.log2_mult)
        .collect();
    if kept.is_empty() {
        return Ok(0.0);
    }
    Ok(log_sum_exp(&kept).log2())
}

/// Information-spectrum converse `H̄_s^{ε+η} + log2 η`, maximized over the
/// grid. Returns the best value and its `η`.
pub fn dl_converse(spec: &SortedSpectrum, eps: f64, eta_grid: &[f64]) -> Result<(f64, f64)> {
    if eta_grid.is_empty() {
        return Err(domain("empty eta grid"));
    }
    let mut best: Option<(f64, f64)> = None;
    for &eta in eta_grid {
        if !(eta > 0.0 && eta < 1.0 - eps) {
            return Err(domain(format!("eta = {eta} outside (0, 1 - eps)")));
        }
        let value = h_spectrum_upper(spec, eps + eta)? + eta.log2();
        if best.is_none_or(|(b, _)| value > b) {
            best = Some((value, eta));
        }
    }
    Ok(best.unwrap())
}

/// `count` log-spaced points in `(1e-6, 1 - eps - 1e-6)`.
pub fn default_eta_grid(eps: f64, count: usize) -> Vec<f64> {
    let lo = 1e-6f64.ln();
    let hi = (1.0 - eps - 1e-6).ln();
    if count == 1 {
        return vec![lo.exp()];
    }
    (0..count).map(|i| (lo + (hi - lo) * i as f64 / (count - 1) as f64).exp()).collect()
}

pub const DEFAULT_ETA_POINTS: usize = 200;

/// How the information-spectrum converse picks `η`.
#[derive(Clone, Debug, PartialEq)]
pub enum EtaChoice {
    /// Maximize over the default 200-point log grid.
    Optimize,
    Fixed(f64),
}

/// One `n` of the compression curves; rates are per copy.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveRow {
    pub n: usize,
    pub qp_converse: f64,
    pub dl_converse: f64,
    pub dl_eta: f64,
    pub is_achiev: f64,
    pub direct_achiev: f64,
    pub second_order: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CompressionCurves {
    pub delta: f64,
    pub eps: f64,
    pub rows: Vec<CurveRow>,
}

pub const CSV_HEADER: &str = "n,qp_converse,dl_converse,is_achiev,direct_achiev,second_order";

impl CompressionCurves {
    /// Comma-separated with header, LF line endings.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let cols = [r.qp_converse, r.dl_converse, r.is_achiev, r.direct_achiev, r.second_order];
            out.push_str(&r.n.to_string());
            for c in cols {
                out.push(',');
                out.push_str(&format_sig(c, 12));
            }
            out.push('\n');
        }
        out
    }

    /// Whitespace-separated, no header. Column layout: n, qp converse,
    /// second order, spectrum converse, spectrum achievability, direct
    /// achievability.
    pub fn to_dat(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            let cols = [r.qp_converse, r.second_order, r.dl_converse, r.is_achiev, r.direct_achiev];
            out.push_str(&r.n.to_string());
            for c in cols {
                out.push(' ');
                out.push_str(&format_sig(c, 12));
            }
            out.push('\n');
        }
        out
    }
}

fn curve_row(p: &Distribution, eps: f64, n: usize, eta: &EtaChoice) -> Result<CurveRow> {
    let spec = SortedSpectrum::from_ensemble(&iid_product(p, n)?)?;
    let n_f = n as f64;
    let qp = solve_qp(&spec, eps.sqrt())?;
    let (dl, dl_eta) = match eta {
        EtaChoice::Optimize => dl_converse(&spec, eps, &default_eta_grid(eps, DEFAULT_ETA_POINTS))?,
        EtaChoice::Fixed(e) => dl_converse(&spec, eps, &[*e])?,
    };
    let is_achiev = h_spectrum_upper(&spec, achievability_eps(eps))?;
    let direct = direct_achievability(&spec, eps)?;
    let delta = p.probs()[0];
    let second = expand(&ExpansionSpec {
        h: binary_entropy(delta),
        v: binary_variance(delta),
        eps,
        n,
        variant: Variant::Compression,
    })?;
    Ok(CurveRow {
        n,
        qp_converse: qp.log2_f.log2() / n_f,
        dl_converse: dl / n_f,
        dl_eta,
        is_achiev: is_achiev / n_f,
        direct_achiev: direct / n_f,
        second_order: second / n_f,
    })
}

/// All bound curves for the qubit spectrum `(delta, 1 - delta)`.
///
/// Rows are computed in parallel and returned in grid order.
pub fn compression_curves(delta: f64, eps: f64, n_grid: &[usize], eta: &EtaChoice) -> Result<CompressionCurves> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(domain(format!("delta must lie in (0, 1), got {delta}")));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(domain(format!("eps must lie in (0, 1), got {eps}")));
    }
    if n_grid.contains(&0) {
        return Err(domain("n grid entries must be at least 1"));
    }
    if let EtaChoice::Fixed(e) = eta {
        if !(*e > 0.0 && *e < 1.0 - eps) {
            return Err(domain(format!("eta = {e} outside (0, 1 - eps)")));
        }
    }
    let p = Distribution::qubit(delta)?;
    let rows = n_grid.par_iter().map(|&n| curve_row(&p, eps, n, eta)).collect::<Result<Vec<_>>>()?;
    Ok(CompressionCurves { delta, eps, rows })
}

/// `min, min + step, ..., <= max`.
pub fn n_grid(min: usize, max: usize, step: usize) -> Result<Vec<usize>> {
    if min == 0 || step == 0 || max < min {
        return Err(domain(format!("invalid grid {min}..={max} step {step}")));
    }
    Ok((min..=max).step_by(step).collect())
}
