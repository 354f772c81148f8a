use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::Sign;
use crate::error::{Error, Result};
use crate::polyring::{Polynomial, Rational};

/// Closed rational interval `[lo, hi]`. Isolating intervals of irrational
/// roots are read as open; `lo == hi` encodes an exact rational point.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "[String; 2]", try_from = "[String; 2]")]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidInterval(format!("[{lo}, {hi}] is empty")));
        }
        Ok(Interval { lo, hi })
    }

    pub fn point(x: Rational) -> Self {
        Interval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// The sign shared by every point of the interval, if any.
    pub fn sign(&self) -> Option<Sign> {
        if self.lo.is_positive() {
            Some(Sign::Positive)
        } else if self.hi.is_negative() {
            Some(Sign::Negative)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Sign::Zero)
        } else {
            None
        }
    }

    pub fn abs_upper(&self) -> Rational {
        self.lo.abs().max(self.hi.abs())
    }

    /// Lower bound of `|x|` over the interval (0 if it straddles zero).
    pub fn abs_lower(&self) -> Rational {
        if self.contains_zero() {
            Rational::zero()
        } else {
            self.lo.abs().min(self.hi.abs())
        }
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        if self.is_point() && other.is_point() {
            return Interval::point(&self.lo * &other.lo);
        }
        let c = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval { lo, hi }
    }

    pub fn scale(&self, c: &Rational) -> Interval {
        let a = &self.lo * c;
        let b = &self.hi * c;
        if a <= b {
            Interval { lo: a, hi: b }
        } else {
            Interval { lo: b, hi: a }
        }
    }

    pub fn pow(&self, e: u32) -> Interval {
        if e == 0 {
            return Interval::point(Rational::one());
        }
        let a = num_traits::pow(self.lo.clone(), e as usize);
        let b = num_traits::pow(self.hi.clone(), e as usize);
        if e % 2 == 1 {
            Interval { lo: a, hi: b }
        } else if self.contains_zero() {
            Interval {
                lo: Rational::zero(),
                hi: a.max(b),
            }
        } else {
            Interval {
                lo: a.clone().min(b.clone()),
                hi: a.max(b),
            }
        }
    }

    /// Range enclosure of `f` over the box given by `boxes` (one interval per variable).
    pub fn eval_polynomial(f: &Polynomial, boxes: &[Option<Interval>]) -> Interval {
        let mut acc = Interval::point(Rational::zero());
        for (m, c) in f.terms() {
            let mut t = Interval::point(c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    let b = boxes[i].as_ref().expect("interval for every occurring variable");
                    t = t.mul(&b.pow(e));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl From<Interval> for [String; 2] {
    fn from(i: Interval) -> Self {
        [i.lo.to_string(), i.hi.to_string()]
    }
}

impl TryFrom<[String; 2]> for Interval {
    type Error = Error;
    fn try_from(v: [String; 2]) -> Result<Self> {
        let parse = |s: &str| {
            s.parse::<Rational>()
                .map_err(|_| Error::InvalidInterval(format!("bad rational '{s}'")))
        };
        Interval::new(parse(&v[0])?, parse(&v[1])?)
    }
}

/// Simplest rational (smallest denominator, then smallest magnitude) in the
/// open interval `(lo, hi)`; `lo` itself when the interval is a point.
pub fn simplest_rational_between(lo: &Rational, hi: &Rational) -> Rational {
    assert!(lo <= hi);
    if lo == hi {
        return lo.clone();
    }
    if lo.is_negative() && hi.is_positive() {
        return Rational::zero();
    }
    if !hi.is_positive() {
        return -simplest_rational_between(&-hi, &-lo);
    }
    // 0 <= lo < hi
    let fl = lo.floor();
    let candidate = &fl + Rational::one();
    if &candidate < hi {
        return candidate;
    }
    // lo and hi share the integer part fl (hi may equal fl + 1)
    let lo_frac = lo - &fl;
    let hi_frac = hi - &fl;
    if lo_frac.is_zero() {
        // (fl, fl + hi_frac): simplest is fl + 1/k with 1/k < hi_frac
        let k = (hi_frac.recip()).floor() + Rational::one();
        return fl + k.recip();
    }
    // invert: 1/x lies in (1/hi_frac, 1/lo_frac)
    let inner = simplest_rational_between(&hi_frac.recip(), &lo_frac.recip());
    fl + inner.recip()
}
