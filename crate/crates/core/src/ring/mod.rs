//! Exact scalars: rationals and rational functions in the quantum parameter
//! `q`.

mod poly;
mod qcoeff;
mod rational;

pub use qcoeff::QCoeff;
pub use rational::{ParseRationalError, Rational};
