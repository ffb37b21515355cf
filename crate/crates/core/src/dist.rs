//! Finite distributions and i.i.d. type-class ensembles.

use crate::error::{domain, Error, Result};
use crate::numerics::{neumaier_sum, LogWeight};

/// Largest number of compositions `iid_product` will enumerate.
pub const MAX_COMPOSITIONS: u64 = 1_000_000;

const NORMALIZATION_TOL: f64 = 1e-12;

/// Explicit probability vector with zero outcomes removed.
#[derive(Clone, Debug, PartialEq)]
pub struct Distribution {
    probs: Vec<f64>,
}

impl Distribution {
    /// Validates nonnegativity and normalization (within `1e-12`); zero
    /// entries are dropped.
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(domain("probabilities must be finite and nonnegative"));
        }
        let total = neumaier_sum(probs.iter().copied());
        if (total - 1.0).abs() > NORMALIZATION_TOL {
            return Err(domain(format!("probabilities sum to {total}, not 1")));
        }
        let probs: Vec<f64> = probs.into_iter().filter(|&p| p > 0.0).collect();
        Ok(Distribution { probs })
    }

    /// Normalizes nonnegative weights into a distribution.
    pub fn from_weights(weights: &[f64]) -> Result<Self> {
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(domain("weights must be finite and nonnegative"));
        }
        let total = neumaier_sum(weights.iter().copied());
        if total <= 0.0 {
            return Err(domain("weights sum to zero"));
        }
        let probs = weights.iter().map(|w| w / total).filter(|&p| p > 0.0).collect();
        Ok(Distribution { probs })
    }

    pub fn uniform(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(domain("uniform distribution needs at least one outcome"));
        }
        Ok(Distribution { probs: vec![1.0 / d as f64; d] })
    }

    /// Qubit spectrum `(delta, 1 - delta)`.
    pub fn qubit(delta: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&delta) {
            return Err(domain(format!("delta must lie in [0, 1], got {delta}")));
        }
        Self::new(vec![delta, 1.0 - delta])
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    /// Shannon entropy in bits.
    pub fn entropy(&self) -> f64 {
        -neumaier_sum(self.probs.iter().map(|&p| p * p.log2()))
    }

    /// Variance of `-log2 P` (the entropy variance), in bits squared.
    pub fn variance(&self) -> f64 {
        let h = self.entropy();
        neumaier_sum(self.probs.iter().map(|&p| {
            let d = p.log2() + h;
            p * d * d
        }))
    }

    /// The `n`-fold product as an explicit vector (tiny `n` only).
    pub fn flat_power(&self, n: usize) -> Result<Distribution> {
        let size = (self.len() as f64).powi(n as i32);
        if size > MAX_COMPOSITIONS as f64 {
            return Err(Error::Capacity(format!("{size} outcomes in the explicit product")));
        }
        let mut probs = vec![1.0];
        for _ in 0..n {
            probs = probs.iter().flat_map(|&a| self.probs.iter().map(move |&b| a * b)).collect();
        }
        Ok(Distribution { probs })
    }
}

/// Binary entropy `h2(delta)` in bits.
pub fn binary_entropy(delta: f64) -> f64 {
    let term = |p: f64| if p > 0.0 { -p * p.log2() } else { 0.0 };
    term(delta) + term(1.0 - delta)
}

/// Binary entropy variance `delta (1 - delta) log2((1 - delta)/delta)^2`.
pub fn binary_variance(delta: f64) -> f64 {
    if delta <= 0.0 || delta >= 1.0 {
        return 0.0;
    }
    let l = ((1.0 - delta) / delta).log2();
    delta * (1.0 - delta) * l * l
}

/// One type class: every sequence in it has probability `2^log2_prob`, and
/// there are `2^log2_mult` of them.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TypeClass {
    pub log2_prob: LogWeight,
    pub log2_mult: LogWeight,
}

impl TypeClass {
    /// Total probability mass of the class.
    pub fn mass(&self) -> LogWeight {
        self.log2_prob * self.log2_mult
    }
}

/// The i.i.d. product `P^{⊗n}` grouped by composition.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassEnsemble {
    classes: Vec<TypeClass>,
    n: usize,
}

impl ClassEnsemble {
    /// Builds an ensemble from explicit classes, sorted by decreasing
    /// probability. Classes are not merged.
    pub fn from_classes(mut classes: Vec<TypeClass>, n: usize) -> Self {
        classes.retain(|c| !c.log2_mult.is_zero() && !c.log2_prob.is_zero());
        classes.sort_by(|a, b| b.log2_prob.total_cmp(&a.log2_prob));
        ClassEnsemble { classes, n }
    }

    pub fn classes(&self) -> &[TypeClass] {
        &self.classes
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Total mass, which is 1 for a normalized source.
    pub fn total_mass(&self) -> LogWeight {
        self.classes.iter().map(TypeClass::mass).sum()
    }
}

fn ln_factorial(k: usize) -> f64 {
    libm::lgamma(k as f64 + 1.0)
}

/// `C(n + d - 1, d - 1)` as a float, saturating to infinity.
fn composition_count(n: usize, d: usize) -> f64 {
    let mut c = 1.0f64;
    for i in 1..d {
        c = c * (n + i) as f64 / i as f64;
    }
    c
}

/// Type-class decomposition of `p^{⊗n}`.
///
/// One class per composition `(k_1, ..., k_d)` of `n`, with probability
/// `prod p_i^{k_i}` and multinomial multiplicity (via log-gamma).
pub fn iid_product(p: &Distribution, n: usize) -> Result<ClassEnsemble> {
    if n == 0 {
        return Err(domain("blocklength n must be at least 1"));
    }
    let d = p.len();
    let count = composition_count(n, d);
    if count > MAX_COMPOSITIONS as f64 {
        return Err(Error::Capacity(format!(
            "{count:.0} compositions for d = {d}, n = {n} exceed {MAX_COMPOSITIONS}"
        )));
    }
    let log_p: Vec<f64> = p.probs().iter().map(|q| q.log2()).collect();
    let ln_n_fact = ln_factorial(n);
    let mut classes = Vec::with_capacity(count as usize);
    let mut comp = vec![0usize; d];
    enumerate(&mut comp, 0, n, &mut |k: &[usize]| {
        let log2_prob: f64 = k.iter().zip(&log_p).map(|(&ki, &lp)| ki as f64 * lp).sum();
        let ln_mult = ln_n_fact - k.iter().map(|&ki| ln_factorial(ki)).sum::<f64>();
        classes.push(TypeClass {
            log2_prob: LogWeight::from_log2(log2_prob),
            // Multiplicities are integers >= 1; clamp rounding below zero.
            log2_mult: LogWeight::from_log2((ln_mult / std::f64::consts::LN_2).max(0.0)),
        });
    });
    Ok(ClassEnsemble::from_classes(classes, n))
}

fn enumerate(comp: &mut [usize], idx: usize, remaining: usize, visit: &mut impl FnMut(&[usize])) {
    let d = comp.len();
    if idx == d - 1 {
        comp[idx] = remaining;
        visit(comp);
        return;
    }
    for k in (0..=remaining).rev() {
        comp[idx] = k;
        enumerate(comp, idx + 1, remaining - k, visit);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn approx(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn deterministic_source() {
        let e = iid_product(&Distribution::new(vec![1.0]).unwrap(), 5).unwrap();
        assert_eq!(e.classes().len(), 1);
        assert_eq!(e.classes()[0].log2_prob.log2(), 0.0);
        assert_eq!(e.classes()[0].log2_mult.log2(), 0.0);
    }

    #[test]
    fn fair_coin_two_copies() {
        let e = iid_product(&Distribution::uniform(2).unwrap(), 2).unwrap();
        let mut mults: Vec<f64> = e.classes().iter().map(|c| c.log2_mult.value()).collect();
        mults.sort_by(f64::total_cmp);
        assert_eq!(e.classes().len(), 3);
        for c in e.classes() {
            assert!(approx(c.log2_prob.value(), 0.25, 1e-15));
        }
        assert!(approx(mults[0], 1.0, 1e-12) && approx(mults[1], 1.0, 1e-12) && approx(mults[2], 2.0, 1e-12));
    }

    #[test]
    fn biased_coin_two_copies() {
        // Direct expansion: 00 -> .81, 01/10 -> .09 each, 11 -> .01
        let e = iid_product(&Distribution::new(vec![0.9, 0.1]).unwrap(), 2).unwrap();
        let got: Vec<(f64, f64)> = e.classes().iter().map(|c| (c.log2_prob.value(), c.log2_mult.value())).collect();
        let want = [(0.81, 1.0), (0.09, 2.0), (0.01, 1.0)];
        for ((p, m), (wp, wm)) in got.iter().zip(want) {
            assert!(approx(*p, wp, 1e-15) && approx(*m, wm, 1e-12), "{got:?}");
        }
        assert!(e.total_mass().log2().abs() < 1e-14);
    }

    #[test]
    fn zero_outcomes_are_dropped() {
        let p = Distribution::new(vec![0.5, 0.0, 0.5]).unwrap();
        assert_eq!(p.len(), 2);
        let e = iid_product(&p, 3).unwrap();
        assert_eq!(e.classes().len(), 4);
    }

    #[test]
    fn entropy_and_variance() {
        let u = Distribution::uniform(4).unwrap();
        assert!(approx(u.entropy(), 2.0, 1e-15) && approx(u.variance(), 0.0, 1e-15));
        let point = Distribution::new(vec![1.0]).unwrap();
        assert_eq!(point.entropy(), 0.0);
        assert_eq!(point.variance(), 0.0);
        // h2(0.9) and v2(0.9) = 0.09 log2(9)^2, values from a 50-digit evaluation.
        let b = Distribution::new(vec![0.9, 0.1]).unwrap();
        assert!(approx(b.entropy(), 0.468_995_593_589_281_2, 1e-15));
        assert!(approx(b.variance(), 0.904_358_206_329_214, 1e-14));
        assert!(approx(binary_entropy(0.9), b.entropy(), 1e-15));
        assert!(approx(binary_variance(0.9), b.variance(), 1e-14));
    }

    #[test]
    fn capacity_limit() {
        let p = Distribution::uniform(10).unwrap();
        assert!(matches!(iid_product(&p, 100), Err(Error::Capacity(_))));
        assert!(iid_product(&Distribution::qubit(0.3).unwrap(), 100_000).is_ok());
    }

    #[test]
    fn invalid_distributions() {
        assert!(Distribution::new(vec![0.5, 0.6]).is_err());
        assert!(Distribution::new(vec![-0.1, 1.1]).is_err());
        assert!(Distribution::new(vec![f64::NAN]).is_err());
        assert!(Distribution::from_weights(&[0.0, 0.0]).is_err());
    }
}
