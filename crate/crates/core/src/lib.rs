//! Computational toolkit for Markoff triples modulo a prime.

pub mod certify;
pub mod cli;
pub mod divisors;
pub mod error;
pub mod field;
pub mod graph;
pub mod markoff;
pub mod orbits;
pub mod poly;
pub mod store;
pub mod zeros;

pub use error::{Error, Result};
