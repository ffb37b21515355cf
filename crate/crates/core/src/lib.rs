//! Partially smoothed conditional min-entropy of pure bipartite states.
//!
//! The central quantity is computed through a single-variable reduction of a
//! quadratic program over the Schmidt coefficients of the state, and every
//! value can be backed by an explicit primal/dual certificate for the
//! semidefinite program it came from. Around that core the crate provides
//! the classical one-shot quantities it is compared against:
//!
//! - hypothesis testing (`beta`) and information-spectrum entropies over
//!   explicit distributions and i.i.d. type-class ensembles,
//! - classical trace-distance and purified-distance smoothing, plus the
//!   max-mutual-information equivalence construction,
//! - second-order expansions and the quantum compression bound curves.
//!
//! All entropies are in bits. Large-blocklength quantities are carried as
//! base-2 logarithms ([`LogWeight`]) so that `n = 1000` and beyond never
//! overflows.

#![forbid(unsafe_code)]
// `!(x > 0.0)` style guards are used on purpose: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asympt;
pub mod classical;
pub mod dist;
mod error;
pub mod io;
pub mod numerics;
pub mod psme;
pub mod spectrum;
pub mod verify;

pub use dist::{ClassEnsemble, Distribution, TypeClass};
pub use error::{Error, Result};
pub use numerics::LogWeight;
pub use psme::{Certificate, QpSolution};
pub use spectrum::SortedSpectrum;
