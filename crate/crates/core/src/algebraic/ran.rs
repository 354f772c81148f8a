use std::cmp::Ordering;
use std::fmt;
use std::sync::Mutex;

use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::interval::Interval;
use super::upoly::{bisect, isolate_squarefree, root_in, sturm_count, UPoly};
use super::Sign;
use crate::error::{Error, Result};
use crate::polyring::Rational;

/// A real root of a squarefree primitive integer polynomial, identified by
/// an isolating interval. The interval only ever shrinks; refinement is
/// serialized per value so shared references may refine concurrently.
pub struct RealAlgebraicNumber {
    poly: UPoly,
    interval: Mutex<Interval>,
}

impl RealAlgebraicNumber {
    /// Checks that `poly` is nonzero with exactly one root in `interval`
    /// (counting a root at a point interval), and normalizes `poly` to its
    /// primitive squarefree part.
    pub fn new(poly: UPoly, interval: Interval) -> Result<Self> {
        if poly.is_zero() {
            return Err(Error::ZeroPolynomial("real algebraic number"));
        }
        let poly = poly.squarefree_part();
        if interval.is_point() {
            if !poly.sign_at(interval.lo()).is_zero() {
                return Err(Error::InvalidInterval(format!(
                    "{interval:?} is not a root of {poly:?}"
                )));
            }
            return Ok(Self::from_parts(poly, interval));
        }
        let at_lo = poly.sign_at(interval.lo()).is_zero();
        let at_hi = poly.sign_at(interval.hi()).is_zero();
        let inner = sturm_count(&poly, Some(interval.lo()), Some(interval.hi()))
            - usize::from(at_hi);
        if at_lo || at_hi || inner != 1 {
            return Err(Error::InvalidInterval(format!(
                "{interval:?} does not isolate exactly one root of {poly:?} in its interior"
            )));
        }
        Ok(Self::from_parts(poly, interval))
    }

    pub(crate) fn from_parts(poly: UPoly, interval: Interval) -> Self {
        RealAlgebraicNumber {
            poly,
            interval: Mutex::new(interval),
        }
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::from_parts(UPoly::linear_root(&r).primitive(), Interval::point(r))
    }

    /// The distinct real roots of `f` in increasing order.
    pub fn roots_of(f: &UPoly) -> Result<Vec<RealAlgebraicNumber>> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial("roots_of"));
        }
        let p = f.squarefree_part();
        Ok(isolate_squarefree(&p)
            .into_iter()
            .map(|iv| {
                if iv.is_point() {
                    Self::from_rational(iv.lo().clone())
                } else {
                    Self::from_parts(p.clone(), iv)
                }
            })
            .collect())
    }

    pub fn poly(&self) -> &UPoly {
        &self.poly
    }

    pub fn interval(&self) -> Interval {
        self.interval.lock().expect("interval lock").clone()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        let iv = self.interval();
        iv.is_point().then(|| iv.lo().clone())
    }

    fn bisect_once(&self) {
        let iv = self.interval();
        if iv.is_point() {
            return;
        }
        let next = bisect(&self.poly, &iv);
        let mut guard = self.interval.lock().expect("interval lock");
        if next.width() < guard.width() {
            *guard = next;
        }
    }

    /// Shrinks the cached interval to width at most `width`.
    pub fn refine_to(&self, width: &Rational) {
        while self.interval().width() > *width {
            self.bisect_once();
        }
    }

    /// A copy whose isolating interval has width at most `width`.
    pub fn refine(&self, width: &Rational) -> RealAlgebraicNumber {
        self.refine_to(width);
        self.clone()
    }

    /// Sign of the univariate polynomial `f` at this number.
    pub fn sign_of(&self, f: &UPoly) -> Sign {
        if f.degree() == 0 {
            return Sign::of(&f.lc());
        }
        if let Some(r) = self.as_rational() {
            return f.sign_at(&r);
        }
        let g = f.gcd(&self.poly);
        if g.degree() > 0 && root_in(&g, &self.interval()) {
            return Sign::Zero;
        }
        loop {
            let iv = self.interval();
            if iv.is_point() {
                return f.sign_at(iv.lo());
            }
            // f has no root in the closure of a small enough interval
            let inner = sturm_count(f, Some(iv.lo()), Some(iv.hi()));
            if inner == 0 && !f.sign_at(iv.lo()).is_zero() {
                return f.sign_at(iv.hi());
            }
            self.bisect_once();
        }
    }

    /// Exact comparison. Equality is decided through the gcd of the defining
    /// polynomials on the overlap of the isolating intervals.
    pub fn compare(&self, other: &RealAlgebraicNumber) -> Ordering {
        if let (Some(a), Some(b)) = (self.as_rational(), other.as_rational()) {
            return a.cmp(&b);
        }
        if let Some(a) = self.as_rational() {
            return other.compare_rational(&a).reverse();
        }
        if let Some(b) = other.as_rational() {
            return self.compare_rational(&b);
        }
        let (i, j) = (self.interval(), other.interval());
        let lo = i.lo().max(j.lo()).clone();
        let hi = i.hi().min(j.hi()).clone();
        if lo < hi {
            let g = self.poly.gcd(&other.poly);
            if g.degree() > 0 && g.sign_at(&lo) != g.sign_at(&hi) {
                return Ordering::Equal;
            }
        }
        loop {
            let (i, j) = (self.interval(), other.interval());
            if i.hi() <= j.lo() && !(i.is_point() && j.is_point()) {
                return Ordering::Less;
            }
            if j.hi() <= i.lo() {
                return Ordering::Greater;
            }
            if let (Some(a), Some(b)) = (self.as_rational(), other.as_rational()) {
                return a.cmp(&b);
            }
            if i.width() >= j.width() {
                self.bisect_once();
            } else {
                other.bisect_once();
            }
        }
    }

    fn compare_rational(&self, r: &Rational) -> Ordering {
        loop {
            let iv = self.interval();
            if iv.is_point() {
                return iv.lo().cmp(r);
            }
            if iv.hi() <= r {
                return Ordering::Less;
            }
            if iv.lo() >= r {
                return Ordering::Greater;
            }
            // r lies strictly inside; it is either the root or not
            if self.poly.sign_at(r).is_zero() {
                return Ordering::Equal;
            }
            self.bisect_once();
        }
    }

    /// Midpoint of the current isolating interval as a float.
    pub fn to_f64(&self) -> f64 {
        self.interval().midpoint().to_f64().unwrap_or(f64::NAN)
    }
}

impl Clone for RealAlgebraicNumber {
    fn clone(&self) -> Self {
        Self::from_parts(self.poly.clone(), self.interval())
    }
}

impl PartialEq for RealAlgebraicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.compare(other) == Ordering::Equal
    }
}

impl Eq for RealAlgebraicNumber {}

impl PartialOrd for RealAlgebraicNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RealAlgebraicNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        self.compare(other)
    }
}

impl fmt::Debug for RealAlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(r) => write!(f, "{r}"),
            None => write!(f, "root of {:?} in {:?}", self.poly, self.interval()),
        }
    }
}

impl fmt::Display for RealAlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    poly: Vec<String>,
    interval: Interval,
}

impl Serialize for RealAlgebraicNumber {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Wire {
            poly: self.poly.coeffs().iter().map(|c| c.to_string()).collect(),
            interval: self.interval(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RealAlgebraicNumber {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = Wire::deserialize(d)?;
        let coeffs = w
            .poly
            .iter()
            .map(|s| s.parse::<Rational>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        RealAlgebraicNumber::new(UPoly::new(coeffs), w.interval).map_err(serde::de::Error::custom)
    }
}

impl From<Rational> for RealAlgebraicNumber {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl Default for RealAlgebraicNumber {
    fn default() -> Self {
        Self::from_rational(Rational::zero())
    }
}

#[cfg(test)]
pub(crate) fn sqrt_of(n: i64) -> RealAlgebraicNumber {
    let p = UPoly::from_ints(&[-n, 0, 1]);
    let roots = RealAlgebraicNumber::roots_of(&p).expect("nonzero");
    roots.into_iter().last().expect("n > 0")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::rat;

    #[test]
    fn sqrt2_against_rationals() {
        let a = sqrt_of(2);
        assert_eq!(a.compare(&RealAlgebraicNumber::from_rational(rat(3, 2))), Ordering::Less);
        assert_eq!(a.compare(&RealAlgebraicNumber::from_rational(rat(7, 5))), Ordering::Greater);
        assert_eq!(a.compare(&a.clone()), Ordering::Equal);
    }

    #[test]
    fn equality_across_defining_polynomials() {
        // sqrt 2 as a root of x^4 - 4 (= (x^2 - 2)(x^2 + 2))
        let p = UPoly::from_ints(&[-4, 0, 0, 0, 1]);
        let roots = RealAlgebraicNumber::roots_of(&p).unwrap();
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[1].compare(&sqrt_of(2)), Ordering::Equal);
        assert_eq!(roots[0].compare(&sqrt_of(2)), Ordering::Less);
    }

    #[test]
    fn refine_keeps_the_root() {
        let a = sqrt_of(2);
        let w = rat(1, 100);
        let b = a.refine(&w);
        let iv = b.interval();
        assert!(iv.width() <= w);
        assert!(iv.contains(&rat(14142, 10000)));
        let r = RealAlgebraicNumber::from_rational(rat(1, 3));
        assert_eq!(r.refine(&w).interval(), Interval::point(rat(1, 3)));
    }

    #[test]
    fn sign_of_polynomials() {
        let a = sqrt_of(2);
        assert_eq!(a.sign_of(&UPoly::from_ints(&[-2, 0, 1])), Sign::Zero);
        assert_eq!(a.sign_of(&UPoly::from_ints(&[-1, 0, 1])), Sign::Positive);
        assert_eq!(a.sign_of(&UPoly::from_ints(&[-3, 0, 1])), Sign::Negative);
        assert_eq!(a.sign_of(&UPoly::from_ints(&[-4, 0, 0, 0, 1])), Sign::Zero);
    }

    #[test]
    fn validation() {
        let p = UPoly::from_ints(&[-2, 0, 1]);
        assert!(RealAlgebraicNumber::new(p.clone(), Interval::new(rat(-2, 1), rat(2, 1)).unwrap()).is_err());
        assert!(RealAlgebraicNumber::new(p.clone(), Interval::new(rat(1, 1), rat(2, 1)).unwrap()).is_ok());
        assert!(RealAlgebraicNumber::new(p, Interval::point(rat(1, 1))).is_err());
    }

    #[test]
    fn serde_round_trip() {
        let a = sqrt_of(2);
        let s = serde_json::to_string(&a).unwrap();
        assert!(s.starts_with(r#"{"poly":["-2","0","1"],"interval":["#));
        let b: RealAlgebraicNumber = serde_json::from_str(&s).unwrap();
        assert_eq!(a, b);
        assert_eq!(b.interval(), a.interval());
    }
}
