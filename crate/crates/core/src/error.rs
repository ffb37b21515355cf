use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("target {target} is not bracketed by f(lo) = {f_lo}, f(hi) = {f_hi}")]
    Bracket { target: f64, f_lo: f64, f_hi: f64 },

    #[error("function is not monotone on the bracket (probe at x = {x})")]
    NonMonotone { x: f64 },

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("linear program is infeasible")]
    Infeasible,

    #[error("linear program is unbounded")]
    Unbounded,

    #[error("certificate constraint `{constraint}` violated by {violation:e}")]
    Certificate { constraint: String, violation: f64 },

    #[error("oracle failed: {0}")]
    Oracle(String),

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
