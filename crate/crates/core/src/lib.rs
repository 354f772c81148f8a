pub mod algebraic;
pub mod cad;
pub mod cli;
pub mod error;
pub mod polyring;
pub mod projection;
pub mod valuation;

pub use error::{Error, Result};
pub use polyring::{Polynomial, Rational};
