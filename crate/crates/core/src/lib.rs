//! Exact computation with complex reflection groups: group construction,
//! character tables, Coxeter-number invariants, and reflection-factorization
//! counting formulas checked against brute-force oracles.

pub mod cache;
pub mod config;
pub mod cyclotomic;
pub mod error;
pub mod matrix;
pub mod numtheory;
pub mod poly;
pub mod rational;
pub mod verify;

pub use cyclotomic::Cyclotomic;
pub use error::{Error, Result};
pub use matrix::CycMatrix;
pub use poly::{CycPoly, MultiPoly};
pub use rational::Rational;
pub mod characters;
pub mod coxeter;
pub mod factor;
pub mod group;
