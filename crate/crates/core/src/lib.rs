//! Certified derivation and verification of level-1 Ramanujan-type series
//! for `1/pi`.
//!
//! The pipeline runs from Weber modular polynomials ([`polyring`]) and
//! closed-form solution points ([`prover`]) through the implicit
//! differentiation chain to exact series parameters `(z, a, b)`, and then
//! checks each series against an independent value of pi ([`series`]).
//! All inexact quantities are carried as balls ([`numcore`]).

pub mod data;
pub mod error;
pub mod modeq;
pub mod numcore;
pub mod polyring;
pub mod prover;
pub mod series;

pub use error::{Error, Result};
pub use numcore::{ComplexBall, Precision, Rational, RealBall};
