use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use super::interval::{simplest_rational_between, Interval};
use super::ran::RealAlgebraicNumber;
use super::upoly::{isolate_real_roots, root_in, sturm_count, UPoly};
use super::Sign;
use crate::error::{Error, Result};
use crate::polyring::{default_names, format_polynomial, primitive_in, resultant_unchecked, Monomial, Polynomial, Rational};

/// An algebraic coordinate at position `level` of a tower: the unique root in
/// `interval` of `defining(alpha_0, ..., alpha_{level-1}, x_level)`.
///
/// The defining polynomial mentions only `x_level` and earlier algebraic
/// coordinates, its leading coefficient in `x_level` does not vanish at the
/// earlier coordinates, and it is squarefree there. `lower_sign` is its sign
/// at the lower endpoint. When bisection hits the root exactly the interval
/// collapses to a point and the coordinate is treated as rational from then on.
pub struct AlgebraicCoordinate {
    level: usize,
    defining: Polynomial,
    lower_sign: Sign,
    interval: Mutex<Interval>,
}

impl AlgebraicCoordinate {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn defining(&self) -> &Polynomial {
        &self.defining
    }

    pub fn interval(&self) -> Interval {
        self.interval.lock().expect("interval lock").clone()
    }

    fn defining_in(&self, nvars: usize) -> Polynomial {
        if self.defining.nvars() == nvars {
            self.defining.clone()
        } else {
            self.defining.remap_vars(nvars, |i| i)
        }
    }

    fn narrow(&self, next: Interval) {
        let mut guard = self.interval.lock().expect("interval lock");
        let lo = guard.lo().max(next.lo()).clone();
        let hi = guard.hi().min(next.hi()).clone();
        *guard = Interval::new(lo, hi).expect("nested isolating intervals");
    }
}

/// One coordinate of a sample point.
#[derive(Clone)]
pub enum Coordinate {
    Rational(Rational),
    Algebraic(Arc<AlgebraicCoordinate>),
}

impl Coordinate {
    /// The exact rational value, if known to be rational.
    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            Coordinate::Rational(r) => Some(r.clone()),
            Coordinate::Algebraic(a) => {
                let iv = a.interval();
                iv.is_point().then(|| iv.lo().clone())
            }
        }
    }

    /// Current enclosure (a point for rationals).
    pub fn interval(&self) -> Interval {
        match self {
            Coordinate::Rational(r) => Interval::point(r.clone()),
            Coordinate::Algebraic(a) => a.interval(),
        }
    }
}

impl From<Rational> for Coordinate {
    fn from(r: Rational) -> Self {
        Coordinate::Rational(r)
    }
}

/// A real root found over a tower, with its multiplicity.
#[derive(Clone)]
pub struct Root {
    pub coordinate: Coordinate,
    pub multiplicity: u32,
}

/// A sample point `(alpha_0, ..., alpha_{k-1})` as a triangular tower.
#[derive(Clone, Default)]
pub struct Tower {
    coords: Vec<Coordinate>,
}

impl Tower {
    pub fn new() -> Self {
        Tower::default()
    }

    pub fn from_rationals(values: &[Rational]) -> Self {
        Tower {
            coords: values.iter().cloned().map(Coordinate::Rational).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coordinates(&self) -> &[Coordinate] {
        &self.coords
    }

    pub fn coordinate(&self, i: usize) -> &Coordinate {
        &self.coords[i]
    }

    /// All coordinates as rationals, if every one is rational.
    pub fn as_rationals(&self) -> Option<Vec<Rational>> {
        self.coords.iter().map(Coordinate::as_rational).collect()
    }

    pub fn prefix(&self, k: usize) -> Tower {
        Tower {
            coords: self.coords[..k].to_vec(),
        }
    }

    pub fn extended(&self, c: Coordinate) -> Tower {
        let mut coords = self.coords.clone();
        coords.push(c);
        Tower { coords }
    }

    pub fn push_rational(&mut self, r: Rational) {
        self.coords.push(Coordinate::Rational(r));
    }

    /// Appends the root of `defining(alpha, x_k)` isolated by `interval`
    /// (`k` = current length). The caller guarantees the isolation.
    pub fn push_algebraic(&mut self, defining: Polynomial, interval: Interval) -> Result<()> {
        let k = self.len();
        let c = self.make_coordinate(defining, interval, k)?;
        self.coords.push(c);
        Ok(())
    }

    fn make_coordinate(&self, defining: Polynomial, interval: Interval, k: usize) -> Result<Coordinate> {
        if interval.is_point() {
            return Ok(Coordinate::Rational(interval.lo().clone()));
        }
        let defining = self.reduce(&defining);
        let lower_sign = self.sign_reduced(&defining.substitute(k, interval.lo()))?;
        if lower_sign.is_zero() {
            return Err(Error::InvalidInterval(format!(
                "isolating interval {interval:?} has a root at its lower endpoint"
            )));
        }
        Ok(Coordinate::Algebraic(Arc::new(AlgebraicCoordinate {
            level: k,
            defining,
            lower_sign,
            interval: Mutex::new(interval),
        })))
    }

    fn algebraic(&self, j: usize) -> Option<&Arc<AlgebraicCoordinate>> {
        match self.coords.get(j) {
            Some(Coordinate::Algebraic(a)) if !a.interval().is_point() => Some(a),
            _ => None,
        }
    }

    fn check_covers(&self, f: &Polynomial) -> Result<()> {
        match f.max_var() {
            Some(v) if v >= self.len() => Err(Error::DimensionMismatch {
                expected: self.len(),
                found: v + 1,
            }),
            _ => Ok(()),
        }
    }

    /// Substitutes every coordinate currently known to be rational.
    pub(crate) fn reduce(&self, f: &Polynomial) -> Polynomial {
        let mut f = f.clone();
        for (i, c) in self.coords.iter().enumerate() {
            if i < f.nvars() && f.uses_var(i) {
                if let Some(r) = c.as_rational() {
                    f = f.substitute(i, &r);
                }
            }
        }
        f
    }

    /// Substitutes rational coordinates and reduces by the defining
    /// polynomials whose leading coefficient is a constant, which preserves
    /// the value at the tower exactly. Variables past the tower stay free.
    pub fn substitute(&self, f: &Polynomial) -> Polynomial {
        let mut f = self.reduce(f);
        for j in (0..self.len().min(f.nvars())).rev() {
            let Some(a) = self.algebraic(j) else { continue };
            let t = a.defining_in(f.nvars());
            let dt = t.degree_in(j);
            let Some(lc) = t.leading_coefficient_in(j).constant_value() else {
                continue;
            };
            let df = f.degree_in(j);
            if df >= dt {
                let r = f.pseudo_remainder(&t, j);
                f = r.scale(&num_traits::pow(lc, (df - dt + 1) as usize).recip());
            }
        }
        f
    }

    fn boxes(&self, nvars: usize) -> Vec<Option<Interval>> {
        (0..nvars)
            .map(|i| self.coords.get(i).map(Coordinate::interval))
            .collect()
    }

    fn interval_eval(&self, e: &Polynomial) -> Interval {
        Interval::eval_polynomial(e, &self.boxes(e.nvars()))
    }

    fn refine_level(&self, j: usize) -> Result<()> {
        let Some(a) = self.algebraic(j) else { return Ok(()) };
        let iv = a.interval();
        let m = iv.midpoint();
        let t = a.defining.substitute(j, &m);
        let s = self.sign_reduced(&t)?;
        let next = if s.is_zero() {
            Interval::point(m)
        } else if s == a.lower_sign {
            Interval::new(m, iv.hi().clone())?
        } else {
            Interval::new(iv.lo().clone(), m)?
        };
        a.narrow(next);
        Ok(())
    }

    fn refine_used(&self, e: &Polynomial) -> Result<()> {
        for j in 0..self.len().min(e.nvars()) {
            if e.uses_var(j) {
                self.refine_level(j)?;
            }
        }
        Ok(())
    }

    /// Refines every algebraic coordinate until its interval has width at most `width`.
    pub fn refine_to(&self, width: &Rational) -> Result<()> {
        for j in 0..self.len() {
            while self.algebraic(j).is_some_and(|a| a.interval().width() > *width) {
                self.refine_level(j)?;
            }
        }
        Ok(())
    }

    /// Exact sign of `f` at the tower; `f` may only use the tower's variables.
    pub fn sign_at(&self, f: &Polynomial) -> Result<Sign> {
        self.check_covers(f)?;
        self.sign_reduced(f)
    }

    pub(crate) fn sign_reduced(&self, e: &Polynomial) -> Result<Sign> {
        let mut e = self.reduce(e);
        for round in 0.. {
            if let Some(c) = e.constant_value() {
                return Ok(Sign::of(&c));
            }
            if let Some(s) = self.interval_eval(&e).sign() {
                return Ok(s);
            }
            if round == 2 && self.is_zero_reduced(&e)? {
                return Ok(Sign::Zero);
            }
            self.refine_used(&e)?;
            e = self.reduce(&e);
        }
        unreachable!()
    }

    /// Whether `f` vanishes at the tower. Variables past the tower are free:
    /// then `f` is zero iff every coefficient with respect to them vanishes.
    pub fn is_zero_at(&self, f: &Polynomial) -> Result<bool> {
        let k = self.len();
        if f.max_var().is_none_or(|v| v < k) {
            return self.is_zero_reduced(f);
        }
        for c in split_free(f, k).values() {
            if !self.is_zero_reduced(c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub(crate) fn is_zero_reduced(&self, e: &Polynomial) -> Result<bool> {
        let e = self.reduce(e);
        if e.is_zero() {
            return Ok(true);
        }
        if e.is_constant() {
            return Ok(false);
        }
        if !self.interval_eval(&e).contains_zero() {
            return Ok(false);
        }
        let j = e.max_var().expect("non-constant");
        let Some(a) = self.algebraic(j) else {
            return Err(Error::Invariant(format!("variable {j} is not an algebraic tower level")));
        };
        let t = a.defining_in(e.nvars());
        let g = self.gcd_at(&t, &e, j)?;
        if g.degree_in(j) == 0 {
            return Ok(false);
        }
        let iv = a.interval();
        if iv.is_point() {
            return self.is_zero_reduced(&e);
        }
        let slo = self.sign_reduced(&g.substitute(j, iv.lo()))?;
        let shi = self.sign_reduced(&g.substitute(j, iv.hi()))?;
        Ok(slo != shi)
    }

    /// Drops leading terms in `x_var` whose coefficients vanish at the tower.
    pub(crate) fn trim(&self, f: &Polynomial, var: usize) -> Result<Polynomial> {
        let mut f = self.reduce(f);
        while !f.is_zero() {
            let d = f.degree_in(var);
            let lc = f.coefficient_in(var, d);
            if !self.is_zero_reduced(&lc)? {
                break;
            }
            f = &f - &lc.mul_monomial(&Monomial::var_power(f.nvars(), var, d));
        }
        Ok(f)
    }

    /// Reduces lower algebraic variables by their defining polynomials (up to
    /// a factor nonzero at the tower), trims and takes the primitive part in `x_var`.
    fn simplify(&self, r: &Polynomial, var: usize) -> Result<Polynomial> {
        let mut r = self.reduce(r);
        for i in (0..var.min(self.len())).rev() {
            let Some(a) = self.algebraic(i) else { continue };
            let t = a.defining_in(r.nvars());
            if r.degree_in(i) >= t.degree_in(i) {
                r = r.pseudo_remainder(&t, i);
            }
        }
        let r = self.trim(&r, var)?;
        if r.is_zero() {
            return Ok(r);
        }
        Ok(primitive_in(&r, var))
    }

    /// A polynomial whose specialization at the tower is a nonzero multiple of
    /// `gcd(a(alpha, x_var), b(alpha, x_var))`; zero only if both vanish.
    pub(crate) fn gcd_at(&self, a: &Polynomial, b: &Polynomial, var: usize) -> Result<Polynomial> {
        let mut a = self.simplify(a, var)?;
        let mut b = self.simplify(b, var)?;
        if a.is_zero() {
            return Ok(b);
        }
        if b.is_zero() {
            return Ok(a);
        }
        if a.degree_in(var) < b.degree_in(var) {
            std::mem::swap(&mut a, &mut b);
        }
        loop {
            if b.degree_in(var) == 0 {
                return Ok(b);
            }
            let r = self.simplify(&a.pseudo_remainder(&b, var), var)?;
            if r.is_zero() {
                return Ok(b);
            }
            a = b;
            b = r;
        }
    }

    /// Sign of `h(alpha, x)` at a rational `x`; `h` uses the tower's variables and `x_var`.
    fn sign_at_value(&self, h: &Polynomial, var: usize, x: &Rational) -> Result<Sign> {
        self.sign_reduced(&h.substitute(var, x))
    }

    fn bisect_root(&self, h: &Polynomial, var: usize, iv: &Interval, lower: Sign) -> Result<Interval> {
        let m = iv.midpoint();
        let s = self.sign_at_value(h, var, &m)?;
        Ok(if s.is_zero() {
            Interval::point(m)
        } else if s == lower {
            Interval::new(m, iv.hi().clone())?
        } else {
            Interval::new(iv.lo().clone(), m)?
        })
    }

    /// Real roots of `f(alpha, x_k)` with `k` the tower length, increasing,
    /// with multiplicities. Fails if `f` vanishes identically at the tower.
    pub fn real_roots(&self, f: &Polynomial) -> Result<Vec<Root>> {
        let k = self.len();
        if k >= f.nvars() || f.max_var().is_some_and(|v| v > k) {
            return Err(Error::DimensionMismatch {
                expected: k + 1,
                found: f.max_var().map_or(0, |v| v + 1),
            });
        }
        let f = self.trim(f, k)?;
        if f.is_zero() {
            return Err(Error::ZeroPolynomial("real_roots (vanishes at the tower)"));
        }
        if f.degree_in(k) == 0 {
            return Ok(Vec::new());
        }
        if let Some(u) = UPoly::from_polynomial(&f, k) {
            return self.rational_roots(&u, f.nvars());
        }
        self.tower_roots(&f)
    }

    fn rational_roots(&self, u: &UPoly, nvars: usize) -> Result<Vec<Root>> {
        let k = self.len();
        let factors = u.squarefree_decomposition();
        let mut out = Vec::new();
        for (iv, multiplicity) in isolate_real_roots(u)? {
            let coordinate = if iv.is_point() {
                Coordinate::Rational(iv.lo().clone())
            } else {
                let (a, _) = factors
                    .iter()
                    .find(|(a, _)| root_in(a, &iv))
                    .ok_or_else(|| Error::Invariant("root without a squarefree factor".into()))?;
                let defining = a.primitive().to_polynomial(nvars, k);
                self.make_coordinate(defining, iv, k)?
            };
            out.push(Root {
                coordinate,
                multiplicity,
            });
        }
        Ok(out)
    }

    /// Shrinks an interval with one interior root of `h` until no endpoint is a root.
    fn clear_endpoints(&self, h: &Polynomial, coeffs: &[Polynomial], mut lo: Rational, mut hi: Rational) -> Result<Interval> {
        let k = self.len();
        loop {
            if !self.sign_at_value(h, k, &lo)?.is_zero() && !self.sign_at_value(h, k, &hi)?.is_zero() {
                return Interval::new(lo, hi);
            }
            let m = (&lo + &hi) / Rational::from_integer(2.into());
            if self.sign_at_value(h, k, &m)?.is_zero() {
                return Ok(Interval::point(m));
            }
            // the Descartes bound has the parity of the exact count
            if self.descartes(coeffs, &lo, &m)? % 2 == 1 {
                hi = m;
            } else {
                lo = m;
            }
        }
    }

    fn tower_roots(&self, f: &Polynomial) -> Result<Vec<Root>> {
        let k = self.len();
        let df = f.derivative(k)?;
        let g = self.gcd_at(f, &df, k)?;
        let h = if g.degree_in(k) == 0 {
            primitive_in(f, k)
        } else {
            let (q, _) = f.pseudo_division(&g, k);
            self.simplify(&q, k)?
        };
        let d = h.degree_in(k) as usize;
        let coeffs = h.coefficients_in(k);

        // root bound from enclosures of the coefficients
        let lc = &coeffs[d];
        let lc_lower = loop {
            let iv = self.interval_eval(lc);
            if !iv.contains_zero() {
                break iv.abs_lower();
            }
            self.refine_used(lc)?;
        };
        let mut m = Rational::zero();
        for c in &coeffs[..d] {
            let q = self.interval_eval(c).abs_upper() / &lc_lower;
            if q > m {
                m = q;
            }
        }
        let bound = m + Rational::one();
        let mut b = Rational::one();
        while b <= bound {
            b *= Rational::from_integer(2.into());
        }

        let mut found: Vec<Interval> = Vec::new();
        let mut work = vec![(-b.clone(), b)];
        while let Some((lo, hi)) = work.pop() {
            match self.descartes(&coeffs, &lo, &hi)? {
                0 => {}
                1 => found.push(self.clear_endpoints(&h, &coeffs, lo, hi)?),
                _ => {
                    let mid = (&lo + &hi) / Rational::from_integer(2.into());
                    if self.sign_at_value(&h, k, &mid)?.is_zero() {
                        found.push(Interval::point(mid.clone()));
                    }
                    work.push((lo, mid.clone()));
                    work.push((mid, hi));
                }
            }
        }
        found.sort_by(|a, b| a.lo().cmp(b.lo()).then(a.hi().cmp(b.hi())));
        for i in 1..found.len() {
            while found[i - 1].hi() >= found[i].lo() {
                let (j, iv) = if found[i - 1].is_point() {
                    (i, found[i].clone())
                } else {
                    (i - 1, found[i - 1].clone())
                };
                let lower = self.sign_at_value(&h, k, iv.lo())?;
                found[j] = self.bisect_root(&h, k, &iv, lower)?;
            }
        }

        let mut out = Vec::new();
        for mut iv in found {
            if !iv.is_point() {
                let r = simplest_rational_between(iv.lo(), iv.hi());
                if self.sign_at_value(&h, k, &r)?.is_zero() {
                    iv = Interval::point(r);
                }
            }
            let coordinate = self.make_coordinate(h.clone(), iv, k)?;
            let ext = self.extended(coordinate.clone());
            let mut multiplicity = 1;
            let mut der = df.clone();
            while ext.is_zero_reduced(&der)? {
                multiplicity += 1;
                der = der.derivative(k)?;
            }
            out.push(Root {
                coordinate,
                multiplicity,
            });
        }
        Ok(out)
    }

    /// Sign variations of `(1 + y)^d h((lo + hi*y) / (1 + y))` at the tower.
    fn descartes(&self, coeffs: &[Polynomial], lo: &Rational, hi: &Rational) -> Result<usize> {
        let d = coeffs.len() - 1;
        let nvars = coeffs[0].nvars();
        let lin = UPoly::new(vec![lo.clone(), hi.clone()]);
        let one_plus = UPoly::new(vec![Rational::one(), Rational::one()]);
        let mut transformed = vec![Polynomial::zero(nvars); d + 1];
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut p = UPoly::constant(Rational::one());
            for _ in 0..i {
                p = &p * &lin;
            }
            for _ in i..d {
                p = &p * &one_plus;
            }
            for (m, pc) in p.coeffs().iter().enumerate() {
                if !pc.is_zero() {
                    transformed[m] = &transformed[m] + &c.scale(pc);
                }
            }
        }
        let mut last = Sign::Zero;
        let mut count = 0;
        for t in &transformed {
            let s = self.sign_reduced(t)?;
            if s.is_zero() {
                continue;
            }
            if !last.is_zero() && s != last {
                count += 1;
            }
            last = s;
        }
        Ok(count)
    }

    /// Coordinate `k` as a real algebraic number over the rationals. For a
    /// coordinate defined over earlier algebraic levels the defining
    /// polynomial is a norm obtained by successive resultants; `None` if that
    /// norm vanishes identically.
    pub fn coordinate_as_ran(&self, k: usize) -> Result<Option<RealAlgebraicNumber>> {
        let c = &self.coords[k];
        if let Some(r) = c.as_rational() {
            return Ok(Some(RealAlgebraicNumber::from_rational(r)));
        }
        let Coordinate::Algebraic(a) = c else { unreachable!() };
        let nvars = a.defining.nvars();
        let mut p = self.prefix(k).reduce(&a.defining);
        for i in (0..k).rev() {
            if !p.uses_var(i) {
                continue;
            }
            let Some(b) = self.algebraic(i) else { continue };
            p = resultant_unchecked(&p, &b.defining_in(nvars), i);
            if p.is_zero() {
                return Ok(None);
            }
        }
        let u = UPoly::from_polynomial(&p, k)
            .ok_or_else(|| Error::Invariant("norm is not univariate".into()))?
            .squarefree_part();
        loop {
            let iv = a.interval();
            if iv.is_point() {
                return Ok(Some(RealAlgebraicNumber::from_rational(iv.lo().clone())));
            }
            let clean = !u.sign_at(iv.lo()).is_zero() && !u.sign_at(iv.hi()).is_zero();
            if clean && sturm_count(&u, Some(iv.lo()), Some(iv.hi())) == 1 {
                return Ok(Some(RealAlgebraicNumber::from_parts(u, iv)));
            }
            self.refine_level(k)?;
        }
    }

    /// Rational approximation of every coordinate (interval midpoints).
    pub fn approximate(&self) -> Vec<Rational> {
        self.coords.iter().map(|c| c.interval().midpoint()).collect()
    }
}

/// Groups the terms of `f` by their exponents in the variables `>= k`; the
/// values are the coefficients, polynomials in the variables `< k`.
pub(crate) fn split_free(f: &Polynomial, k: usize) -> BTreeMap<Vec<u32>, Polynomial> {
    let mut out: BTreeMap<Vec<u32>, Polynomial> = BTreeMap::new();
    for (m, c) in f.terms() {
        let free = m.exponents()[k..].to_vec();
        let mut low = m.exponents().to_vec();
        for e in &mut low[k..] {
            *e = 0;
        }
        let entry = out.entry(free).or_insert_with(|| Polynomial::zero(f.nvars()));
        *entry = &*entry + &Polynomial::term(c.clone(), Monomial::new(low));
    }
    out
}

impl fmt::Debug for Coordinate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(r) => write!(f, "{r}"),
            None => {
                let Coordinate::Algebraic(a) = self else { unreachable!() };
                let names = default_names(a.defining.nvars());
                write!(
                    f,
                    "root of {} in {:?}",
                    format_polynomial(&a.defining, &names),
                    a.interval()
                )
            }
        }
    }
}

impl fmt::Debug for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coords.iter()).finish()
    }
}

impl fmt::Display for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            match c.as_rational() {
                Some(r) => write!(f, "{r}")?,
                None => {
                    let mid = c.interval().midpoint();
                    write!(f, "~{:.6}", num_traits::ToPrimitive::to_f64(&mid).unwrap_or(f64::NAN))?
                }
            }
        }
        write!(f, ")")
    }
}

impl Serialize for Coordinate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.as_rational() {
            Some(r) => s.serialize_str(&r.to_string()),
            None => {
                let Coordinate::Algebraic(a) = self else { unreachable!() };
                let names = default_names(a.defining.nvars());
                let mut m = s.serialize_map(Some(3))?;
                m.serialize_entry("level", &(a.level + 1))?;
                m.serialize_entry("defining", &format_polynomial(&a.defining, &names))?;
                m.serialize_entry("interval", &a.interval())?;
                m.end()
            }
        }
    }
}

impl Serialize for Tower {
    /// Rational coordinates as `"p/q"` strings, algebraic ones as
    /// `{poly, interval}` over the rationals when a norm is available.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.len()))?;
        for k in 0..self.len() {
            match &self.coords[k] {
                c if c.as_rational().is_some() => seq.serialize_element(c)?,
                c => match self.coordinate_as_ran(k) {
                    Ok(Some(ran)) => seq.serialize_element(&ran)?,
                    _ => seq.serialize_element(c)?,
                },
            }
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_polynomial, rat};

    const V: [&str; 3] = ["x", "y", "z"];

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s, &V).unwrap()
    }

    fn sqrt2() -> Tower {
        let mut t = Tower::new();
        t.push_algebraic(p("x^2 - 2"), Interval::new(rat(1, 1), rat(2, 1)).unwrap())
            .unwrap();
        t
    }

    #[test]
    fn rational_signs() {
        let t = Tower::from_rationals(&[rat(0, 1), rat(0, 1)]);
        assert_eq!(t.sign_at(&p("x^2 + y^2 - 1")).unwrap(), Sign::Negative);
        let t = Tower::from_rationals(&[rat(0, 1), rat(1, 1)]);
        assert_eq!(t.sign_at(&p("x^2 + y^2 - 1")).unwrap(), Sign::Zero);
    }

    #[test]
    fn defining_relation_is_zero() {
        let t = sqrt2();
        assert_eq!(t.sign_at(&p("x^2 - 2")).unwrap(), Sign::Zero);
        assert_eq!(t.sign_at(&p("x - 1")).unwrap(), Sign::Positive);
        assert_eq!(t.sign_at(&p("2*x - 3")).unwrap(), Sign::Negative);
        assert_eq!(t.sign_at(&p("x^4 - 4")).unwrap(), Sign::Zero);
    }

    #[test]
    fn two_level_tower() {
        // alpha = sqrt 2, beta = sqrt(alpha) = 2^(1/4)
        let mut t = sqrt2();
        let roots = t.real_roots(&p("y^2 - x")).unwrap();
        assert_eq!(roots.len(), 2);
        t.coords.push(roots[1].coordinate.clone());
        assert_eq!(t.sign_at(&p("y^4 - 2")).unwrap(), Sign::Zero);
        assert_eq!(t.sign_at(&p("y^2 - x")).unwrap(), Sign::Zero);
        assert_eq!(t.sign_at(&p("y - x")).unwrap(), Sign::Negative);
        assert_eq!(t.sign_at(&p("(x + y)*y")).unwrap(), Sign::Positive);
        let ran = t.coordinate_as_ran(1).unwrap().unwrap();
        assert_eq!(ran.poly(), &UPoly::from_ints(&[-2, 0, 0, 0, 1]));
    }

    #[test]
    fn conjugate_cancellation_does_not_fool_the_zero_test() {
        // (x1 + x2) at (sqrt 2, sqrt 2) is nonzero although the norm of x1 + x2
        // over the conjugates vanishes
        let mut t = sqrt2();
        let roots = t.real_roots(&p("y^2 - 2")).unwrap();
        assert_eq!(roots.len(), 2);
        t.coords.push(roots[1].coordinate.clone());
        assert_eq!(t.sign_at(&p("x + y")).unwrap(), Sign::Positive);
        assert_eq!(t.sign_at(&p("x - y")).unwrap(), Sign::Zero);
        let mut u = sqrt2();
        u.coords.push(roots[0].coordinate.clone());
        assert_eq!(u.sign_at(&p("x + y")).unwrap(), Sign::Zero);
    }

    #[test]
    fn root_on_a_bisection_point_over_a_tower() {
        let t = sqrt2();
        let f = &(&p("y + 1") * &p("3*y + 2")) * &p("y - x");
        let roots = t.real_roots(&f).unwrap();
        assert_eq!(roots.len(), 3);
        assert_eq!(roots[0].coordinate.as_rational(), Some(rat(-1, 1)));
        assert_eq!(roots[1].coordinate.as_rational(), Some(rat(-2, 3)));
        for w in roots.windows(2) {
            assert!(w[0].coordinate.interval().hi() < w[1].coordinate.interval().lo());
        }
    }

    #[test]
    fn roots_with_multiplicity_over_a_tower() {
        let t = sqrt2();
        // (y - x)^2 (y + 1)
        let f = &(&p("y - x") * &p("y - x")) * &p("y + 1");
        let roots = t.real_roots(&f).unwrap();
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[0].coordinate.as_rational(), Some(rat(-1, 1)));
        assert_eq!(roots[0].multiplicity, 1);
        assert_eq!(roots[1].multiplicity, 2);
        let ext = t.extended(roots[1].coordinate.clone());
        assert_eq!(ext.sign_at(&p("y - x")).unwrap(), Sign::Zero);
    }

    #[test]
    fn leading_coefficient_vanishing_at_the_tower() {
        let t = sqrt2();
        // (x^2 - 2) y^2 + y - 1 has the single root 1 at x = sqrt 2
        let roots = t.real_roots(&p("(x^2 - 2)*y^2 + y - 1")).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].coordinate.as_rational(), Some(rat(1, 1)));
        assert!(t.real_roots(&p("(x^2 - 2)*y")).is_err());
    }

    #[test]
    fn substitute_keeps_free_variables() {
        let t = Tower::from_rationals(&[rat(0, 1), rat(0, 1)]);
        assert_eq!(t.substitute(&p("z^2 + y^2 + x^2 - 1")), p("z^2 - 1"));
        assert!(t.substitute(&p("y*z - x")).is_zero());
        let s = sqrt2();
        assert!(s.substitute(&p("x^2 - 2")).is_zero());
        assert_eq!(s.substitute(&p("x^3*y")), p("2*x*y"));
        assert!(s.is_zero_at(&p("(x^2 - 2)*y + x^4 - 4")).unwrap());
        assert!(!s.is_zero_at(&p("(x^2 - 2)*y + x")).unwrap());
    }

    #[test]
    fn serializes_coordinates() {
        let t = sqrt2().extended(Coordinate::Rational(rat(1, 2)));
        let s = serde_json::to_string(&t).unwrap();
        assert!(s.starts_with(r#"[{"poly":["-2","0","1"],"interval":["#), "{s}");
        assert!(s.ends_with(r#","1/2"]"#), "{s}");
    }
}
