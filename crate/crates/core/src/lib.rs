//! Continued fractions of Hurwitzian numbers and inhomogeneous
//! approximation constants for targets `(r*theta + m)/n`.

pub mod approx;
pub mod cf_engine;
pub mod error;
pub mod mod_arith;
pub mod oracle;
pub mod rational;

pub use error::{Error, Result};
