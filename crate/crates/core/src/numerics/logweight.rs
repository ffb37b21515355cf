use std::cmp::Ordering;
use std::fmt;
use std::ops::{Div, Mul};

use super::neumaier_sum;

/// A nonnegative real stored as its base-2 logarithm.
///
/// `-inf` encodes an exact zero. Products are additions of logarithms, and
/// sums go through [`log_sum_exp`], so quantities of size `2^{±1000}` stay
/// representable.
#[derive(Clone, Copy, PartialEq, PartialOrd)]
pub struct LogWeight(f64);

impl LogWeight {
    pub const ZERO: LogWeight = LogWeight(f64::NEG_INFINITY);
    pub const ONE: LogWeight = LogWeight(0.0);

    /// Wraps a base-2 logarithm. NaN is not a valid weight.
    pub fn from_log2(log2_value: f64) -> Self {
        debug_assert!(!log2_value.is_nan(), "LogWeight from NaN");
        LogWeight(log2_value)
    }

    /// Wraps a nonnegative linear-domain value.
    pub fn from_value(value: f64) -> Self {
        debug_assert!(value >= 0.0, "LogWeight from negative value {value}");
        LogWeight(value.log2())
    }

    pub fn log2(self) -> f64 {
        self.0
    }

    /// Linear-domain value; overflows to `inf` above `2^1024`.
    pub fn value(self) -> f64 {
        self.0.exp2()
    }

    pub fn is_zero(self) -> bool {
        self.0 == f64::NEG_INFINITY
    }

    pub fn powi(self, k: i32) -> Self {
        if self.is_zero() {
            return if k == 0 { LogWeight::ONE } else { LogWeight::ZERO };
        }
        LogWeight(self.0 * k as f64)
    }

    /// Total order on weights (NaN cannot occur by construction).
    pub fn total_cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl Default for LogWeight {
    fn default() -> Self {
        LogWeight::ZERO
    }
}

impl fmt::Debug for LogWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LogWeight(2^{})", self.0)
    }
}

impl Mul for LogWeight {
    type Output = LogWeight;
    fn mul(self, rhs: LogWeight) -> LogWeight {
        if self.is_zero() || rhs.is_zero() {
            LogWeight::ZERO
        } else {
            LogWeight(self.0 + rhs.0)
        }
    }
}

impl Div for LogWeight {
    type Output = LogWeight;
    fn div(self, rhs: LogWeight) -> LogWeight {
        assert!(!rhs.is_zero(), "LogWeight division by zero");
        if self.is_zero() {
            LogWeight::ZERO
        } else {
            LogWeight(self.0 - rhs.0)
        }
    }
}

impl std::iter::Sum for LogWeight {
    fn sum<I: Iterator<Item = LogWeight>>(iter: I) -> LogWeight {
        let terms: Vec<LogWeight> = iter.collect();
        log_sum_exp(&terms)
    }
}

/// `log2(sum 2^t)` over the given terms; the empty sum is [`LogWeight::ZERO`].
///
/// Terms are sorted before accumulation, so the result does not depend on
/// the order they are supplied in.
pub fn log_sum_exp(terms: &[LogWeight]) -> LogWeight {
    let mut logs: Vec<f64> = terms
        .iter()
        .map(|t| t.0)
        .filter(|&t| t != f64::NEG_INFINITY)
        .collect();
    if logs.is_empty() {
        return LogWeight::ZERO;
    }
    logs.sort_by(|a, b| a.total_cmp(b));
    let max = *logs.last().unwrap();
    if max == f64::INFINITY {
        return LogWeight(f64::INFINITY);
    }
    let sum = neumaier_sum(logs.iter().map(|&t| (t - max).exp2()));
    LogWeight(max + sum.log2())
}
