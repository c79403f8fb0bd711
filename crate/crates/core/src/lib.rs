//! Prime-constrained continued fractions at desk scale.
//!
//! The crate computes almost-prime zeta tails with rigorous truncation
//! bounds, exact measures of unions of fundamental intervals, roots of
//! finite-alphabet pressure equations, Monte Carlo zero-one experiments, and
//! two nested Cantor constructions together with their mass distributions.

pub mod cantor;
pub mod cli;
pub mod contfrac;
pub mod error;
pub mod growth;
pub mod measure;
pub mod precision;
pub mod pressure;
pub mod primes;
pub mod zeta;

pub use error::{Error, Result};
