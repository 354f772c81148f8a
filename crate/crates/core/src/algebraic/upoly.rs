use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::interval::{simplest_rational_between, Interval};
use super::Sign;
use crate::error::{Error, Result};
use crate::polyring::{Polynomial, Rational};

/// Dense univariate polynomial over the rationals, coefficients from the
/// constant term up. The leading coefficient is never zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    coeffs: Vec<Rational>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        UPoly::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        UPoly::new(vec![c])
    }

    /// `x - r`.
    pub fn linear_root(r: &Rational) -> Self {
        UPoly::new(vec![-r.clone(), Rational::one()])
    }

    /// The polynomial `f` read as univariate in `x_var`; `None` if other variables occur.
    pub fn from_polynomial(f: &Polynomial, var: usize) -> Option<Self> {
        f.univariate_coefficients(var).map(UPoly::new)
    }

    pub fn to_polynomial(&self, nvars: usize, var: usize) -> Polynomial {
        Polynomial::univariate(nvars, var, &self.coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial has degree 0 here, check [`UPoly::is_zero`] first.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lc(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn sign_at(&self, x: &Rational) -> Sign {
        Sign::of(&self.eval(x))
    }

    /// Sign as `x -> +inf` (`+1` side) or `-inf`.
    fn sign_at_infinity(&self, positive: bool) -> Sign {
        let s = Sign::of(&self.lc());
        if positive || self.degree() % 2 == 0 {
            s
        } else {
            -s
        }
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.coeffs.len() < d.coeffs.len() {
            return (UPoly::zero(), self.clone());
        }
        let mut r = self.coeffs.clone();
        let dl = d.coeffs.len();
        let inv = d.lc().recip();
        let mut q = vec![Rational::zero(); r.len() - dl + 1];
        for k in (0..q.len()).rev() {
            let c = &r[k + dl - 1] * &inv;
            if !c.is_zero() {
                for (i, dc) in d.coeffs.iter().enumerate() {
                    r[k + i] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dl - 1);
        (UPoly::new(q), UPoly::new(r))
    }

    pub fn rem(&self, d: &UPoly) -> UPoly {
        self.div_rem(d).1
    }

    /// Exact quotient; panics if `d` does not divide `self`.
    pub fn div_exact(&self, d: &UPoly) -> UPoly {
        let (q, r) = self.div_rem(d);
        assert!(r.is_zero(), "inexact univariate division");
        q
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lc().recip())
    }

    /// Coprime integer coefficients with positive leading coefficient.
    pub fn primitive(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
            num = num.gcd(c.numer());
        }
        let mut content = Rational::new(num, den);
        if self.lc().is_negative() {
            content = -content;
        }
        self.scale(&content.recip())
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.primitive();
        }
        a.monic()
    }

    /// Yun's squarefree decomposition: `(a_i, i)` with `self = c * prod a_i^i`,
    /// each `a_i` monic, squarefree and pairwise coprime. Trivial factors are omitted.
    pub fn squarefree_decomposition(&self) -> Vec<(UPoly, u32)> {
        let mut out = Vec::new();
        if self.degree() == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a = f.gcd(&df);
        let mut b = f.div_exact(&a);
        let mut c = df.div_exact(&a);
        let mut d = &c - &b.derivative();
        let mut i = 1;
        loop {
            let g = b.gcd(&d);
            if g.degree() > 0 {
                out.push((g.clone(), i));
            }
            b = b.div_exact(&g);
            if b.degree() == 0 {
                break;
            }
            c = d.div_exact(&g);
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    /// Primitive squarefree part.
    pub fn squarefree_part(&self) -> UPoly {
        if self.degree() == 0 {
            return UPoly::constant(Rational::one());
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).primitive()
    }

    /// A power of two strictly larger than the absolute value of every real root.
    pub fn root_bound(&self) -> Rational {
        let lc = self.lc().abs();
        let mut m = Rational::zero();
        for c in &self.coeffs[..self.coeffs.len().saturating_sub(1)] {
            let q = c.abs() / &lc;
            if q > m {
                m = q;
            }
        }
        let bound = m + Rational::one();
        let mut p = Rational::one();
        while p <= bound {
            p *= Rational::from_integer(2.into());
        }
        p
    }

    /// `p(x + a)`.
    pub fn taylor_shift(&self, a: &Rational) -> UPoly {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = &c[j + 1] * a;
                c[j] += t;
            }
        }
        UPoly::new(c)
    }

    /// `p(s * x)`.
    pub fn scale_var(&self, s: &Rational) -> UPoly {
        let mut pow = Rational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &pow);
            pow *= s;
        }
        UPoly::new(out)
    }

    /// Upper bound on the number of roots in the open interval `(a, b)` from
    /// Descartes' rule applied after mapping `(a, b)` onto `(0, inf)`.
    pub fn descartes_bound(&self, a: &Rational, b: &Rational) -> usize {
        let q = self.taylor_shift(a).scale_var(&(b - a));
        let mut rev = q.coeffs.clone();
        rev.reverse();
        let t = UPoly::new(rev).taylor_shift(&Rational::one());
        sign_variations(t.coeffs.iter().map(Sign::of))
    }

    /// Sturm sequence `p, p', -rem(p, p'), ...`.
    pub fn sturm_sequence(&self) -> Vec<UPoly> {
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let r = -seq[n - 2].rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            seq.push(r);
        }
        seq
    }

    fn add_vec(&self, other: &UPoly, negate: bool) -> UPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![Rational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            if negate {
                out[i] -= c;
            } else {
                out[i] += c;
            }
        }
        UPoly::new(out)
    }
}

fn sign_variations(signs: impl Iterator<Item = Sign>) -> usize {
    let mut last = Sign::Zero;
    let mut count = 0;
    for s in signs {
        if s.is_zero() {
            continue;
        }
        if !last.is_zero() && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn sturm_variations(seq: &[UPoly], x: Option<(&Rational, bool)>, at: &Rational) -> usize {
    match x {
        Some((_, positive)) => sign_variations(seq.iter().map(|p| p.sign_at_infinity(positive))),
        None => sign_variations(seq.iter().map(|p| p.sign_at(at))),
    }
}

/// Number of distinct real roots of `f` in the half-open interval `(a, b]`
/// (use `None` for an infinite endpoint), by Sturm's theorem.
pub fn sturm_count(f: &UPoly, a: Option<&Rational>, b: Option<&Rational>) -> usize {
    if f.degree() == 0 {
        return 0;
    }
    let seq = f.squarefree_part().sturm_sequence();
    let zero = Rational::zero();
    let va = match a {
        Some(a) => sturm_variations(&seq, None, a),
        None => sturm_variations(&seq, Some((&zero, false)), &zero),
    };
    let vb = match b {
        Some(b) => sturm_variations(&seq, None, b),
        None => sturm_variations(&seq, Some((&zero, true)), &zero),
    };
    va.saturating_sub(vb)
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, rhs: &UPoly) -> UPoly {
        self.add_vec(rhs, false)
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &UPoly) -> UPoly {
        self.add_vec(rhs, true)
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }
}

impl Neg for UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_polynomial(1, 0))
    }
}

/// Bisects the isolating interval of the unique root of squarefree `p` in
/// `iv`; a midpoint that is a root collapses the interval to a point.
pub(crate) fn bisect(p: &UPoly, iv: &Interval) -> Interval {
    if iv.is_point() {
        return iv.clone();
    }
    let m = iv.midpoint();
    let sm = p.sign_at(&m);
    if sm.is_zero() {
        return Interval::point(m);
    }
    if sm == p.sign_at(iv.lo()) {
        Interval::new(m, iv.hi().clone()).expect("ordered")
    } else {
        Interval::new(iv.lo().clone(), m).expect("ordered")
    }
}

/// Isolating intervals of the real roots of a squarefree `p`, increasing.
///
/// Every interval is either a point (an exact rational root) or an open
/// interval with non-root endpoints containing exactly one root; consecutive
/// intervals do not touch. Rational roots are always returned as points.
/// Shrinks an interval holding exactly one root in its interior until
/// neither endpoint is a root (an earlier midpoint may be one).
fn clear_endpoints(p: &UPoly, mut lo: Rational, mut hi: Rational) -> Interval {
    loop {
        let lo_root = p.sign_at(&lo).is_zero();
        if !lo_root && !p.sign_at(&hi).is_zero() {
            return Interval::new(lo, hi).expect("ordered");
        }
        let m = (&lo + &hi) / Rational::from_integer(2.into());
        if p.sign_at(&m).is_zero() {
            return Interval::point(m);
        }
        // Descartes' bound has the parity of the exact count
        if p.descartes_bound(&lo, &m) % 2 == 1 {
            hi = m;
        } else {
            lo = m;
        }
    }
}

pub(crate) fn isolate_squarefree(p: &UPoly) -> Vec<Interval> {
    if p.degree() == 0 {
        return Vec::new();
    }
    let b = p.root_bound();
    let mut found: Vec<Interval> = Vec::new();
    let mut work = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = work.pop() {
        match p.descartes_bound(&lo, &hi) {
            0 => {}
            1 => found.push(clear_endpoints(p, lo, hi)),
            _ => {
                let m = (&lo + &hi) / Rational::from_integer(2.into());
                if p.sign_at(&m).is_zero() {
                    found.push(Interval::point(m.clone()));
                }
                work.push((lo, m.clone()));
                work.push((m, hi));
            }
        }
    }
    found.sort_by(|a, b| a.lo().cmp(b.lo()).then(a.hi().cmp(b.hi())));
    // separate touching neighbours
    for i in 1..found.len() {
        while found[i - 1].hi() >= found[i].lo() {
            if !found[i - 1].is_point() {
                found[i - 1] = bisect(p, &found[i - 1]);
            } else {
                found[i] = bisect(p, &found[i]);
            }
        }
    }
    // rational roots have denominators dividing the leading coefficient of the
    // integer primitive form; below width 1/lc^2 the simplest rational is the
    // only candidate
    let pp = p.primitive();
    let lc = pp.lc();
    let target = (&lc * &lc).recip();
    for iv in found.iter_mut() {
        if iv.is_point() {
            continue;
        }
        let r = simplest_rational_between(iv.lo(), iv.hi());
        if pp.sign_at(&r).is_zero() {
            *iv = Interval::point(r);
            continue;
        }
        while !iv.is_point() && iv.width() >= target {
            *iv = bisect(&pp, iv);
        }
        if !iv.is_point() {
            let r = simplest_rational_between(iv.lo(), iv.hi());
            if pp.sign_at(&r).is_zero() {
                *iv = Interval::point(r);
            }
        }
    }
    found
}

/// Isolating intervals of the real roots of `f` in increasing order, with
/// multiplicities from the squarefree decomposition.
pub fn isolate_real_roots(f: &UPoly) -> Result<Vec<(Interval, u32)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("isolate_real_roots"));
    }
    let factors = f.squarefree_decomposition();
    let sqf = f.squarefree_part();
    let mut out = Vec::new();
    for iv in isolate_squarefree(&sqf) {
        let mult = factors
            .iter()
            .find(|(a, _)| root_in(a, &iv))
            .map(|(_, m)| *m)
            .ok_or_else(|| Error::Invariant("root without a squarefree factor".into()))?;
        out.push((iv, mult));
    }
    Ok(out)
}

/// Whether the squarefree `a` has a root in `iv`, which isolates a root of a
/// multiple of `a` and has non-root endpoints unless it is a point.
pub(crate) fn root_in(a: &UPoly, iv: &Interval) -> bool {
    if iv.is_point() {
        a.sign_at(iv.lo()).is_zero()
    } else {
        a.sign_at(iv.lo()) != a.sign_at(iv.hi())
    }
}
