//! Exact rational arithmetic and dense linear algebra over the rationals.

mod matrix;
mod rational;

pub use matrix::{QMatrix, Rref};
pub use rational::Rational;
