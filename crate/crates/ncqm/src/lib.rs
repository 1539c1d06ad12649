//! Symbolic-numeric toolkit for quantum mechanics on rotationally
//! invariant noncommutative space: the second-order Kontsevich star
//! product and its trace-compatible gauge correction, coordinate and
//! momentum operator realizations, and the resulting hydrogen-atom
//! spectrum corrections and nonlocality bounds.
//!
//! All core identities are verified in exact rational arithmetic; every
//! closed-form integral is cross-checked by an independent quadrature
//! oracle.

pub mod cli;
pub mod error;
pub mod exact;
pub mod hydrogen;
pub mod operators;
pub mod par;
pub mod poisson;
pub mod quad;
pub mod report;
pub mod starprod;
pub mod symfield;

pub use error::{Error, Result};
