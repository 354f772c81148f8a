//! Real root isolation and exact sign determination at real algebraic points.
//!
//! Univariate polynomials over the rationals are isolated with Descartes'
//! rule of signs on a dense representation ([`UPoly`]). Points whose
//! coordinates are algebraic over earlier coordinates are kept as triangular
//! towers ([`Tower`]): each algebraic coordinate carries a defining polynomial
//! in itself and the earlier algebraic coordinates plus an isolating interval.
//! Zero tests in a tower reduce to gcd computations over the lower levels, so
//! no primitive element or norm is ever needed for deciding signs.

mod interval;
mod ran;
mod tower;
mod upoly;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Mul, Neg};

use serde::{Deserialize, Serialize};

pub use interval::{simplest_rational_between, Interval};
pub use ran::RealAlgebraicNumber;
pub use tower::{AlgebraicCoordinate, Coordinate, Root, Tower};
pub use upoly::{isolate_real_roots, sturm_count, UPoly};

/// Sign of an exact quantity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of<T: num_traits::Signed>(x: &T) -> Sign {
        if x.is_positive() {
            Sign::Positive
        } else if x.is_negative() {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn is_zero(self) -> bool {
        self == Sign::Zero
    }

    pub fn to_ordering(self) -> Ordering {
        match self {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        match (self, rhs) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Positive,
            _ => Sign::Negative,
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_i8())
    }
}
