//! Exact q-symmetrization, star products and quantized differential
//! operators for quadratic algebras.

pub mod algebra;
pub mod catalog;
pub mod cli;
pub mod diffop;
pub mod dual;
pub mod error;
pub mod linalg;
pub mod qsym;
pub mod ring;
mod syntax;
pub mod tensor;
pub mod verify;

pub use error::{Error, Result};
pub use algebra::{Algebra, AlgebraSpec};
pub use ring::{QCoeff, Rational};
pub use tensor::{TensorElement, Word};
