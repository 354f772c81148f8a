//! Exact sparse multivariate polynomials over the rationals.
//!
//! Variables are indexed `0..nvars` in increasing order; the last variable of
//! a ring is its main variable. Besides ring arithmetic the module provides
//! the gcd, resultant, discriminant and squarefree-basis computations used by
//! projection and lifting.

mod basis;
mod gcd;
mod monomial;
mod polynomial;
mod resultant;
mod text;

pub use basis::{squarefree_basis, BasisSet};
pub use gcd::{content_and_primitive, content_in, gcd, primitive_in, squarefree_part};
pub use monomial::Monomial;
pub use polynomial::Polynomial;
pub use resultant::{discriminant, resultant};
pub use text::{default_names, format_polynomial, parse_polynomial};

pub(crate) use resultant::resultant_unchecked;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Exact rational number in lowest terms.
pub type Rational = BigRational;

pub(crate) fn binomial(n: u32, k: u32) -> Rational {
    let mut acc = BigInt::from(1u32);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Rational::from_integer(acc)
}

/// Shorthand for the rational `n/d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Shorthand for the integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}
