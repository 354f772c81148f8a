//! Lazard valuations and evaluations, plus evaluator vectors and monomial
//! test curves.
//!
//! The valuation of `f` at `alpha` is the lexicographically least exponent
//! tuple `u` such that `(x - alpha)^u` has a nonzero coefficient in the
//! expansion of `f` about `alpha`. It is found one variable at a time: the
//! first entry is the order of `f` in `x_0 - alpha_0`, the matching Taylor
//! coefficient (a polynomial in the remaining variables) is then handed to the
//! next variable, and so on. Lazard evaluation stops one variable short and
//! returns the surviving coefficient as a univariate polynomial.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::algebraic::Tower;
use crate::error::{Error, Result};
use crate::polyring::{binomial, Monomial, Polynomial, Rational};

/// An exponent tuple compared lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Valuation(Vec<u32>);

impl Valuation {
    pub fn new(entries: Vec<u32>) -> Self {
        Valuation(entries)
    }

    pub fn zeros(n: usize) -> Self {
        Valuation(vec![0; n])
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn lex_compare(&self, other: &Valuation) -> Result<Ordering> {
        lex_compare(self, other)
    }

    pub fn checked_add(&self, other: &Valuation) -> Result<Valuation> {
        check_len(self, other)?;
        Ok(Valuation(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    /// `<c, v>`.
    pub fn dot(&self, c: &Evaluator) -> Result<u64> {
        if c.0.len() != self.0.len() {
            return Err(Error::DimensionMismatch {
                expected: c.0.len(),
                found: self.0.len(),
            });
        }
        let mut acc: u64 = 0;
        for (v, ci) in self.0.iter().zip(&c.0) {
            acc = ci
                .checked_mul(u64::from(*v))
                .and_then(|t| acc.checked_add(t))
                .ok_or(Error::Overflow(self.0.len()))?;
        }
        Ok(acc)
    }
}

impl From<Vec<u32>> for Valuation {
    fn from(v: Vec<u32>) -> Self {
        Valuation(v)
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

fn check_len(u: &Valuation, v: &Valuation) -> Result<()> {
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch {
            expected: u.len(),
            found: v.len(),
        });
    }
    Ok(())
}

/// Lexicographic comparison of equal-length tuples.
pub fn lex_compare(u: &Valuation, v: &Valuation) -> Result<Ordering> {
    check_len(u, v)?;
    Ok(u.0.cmp(&v.0))
}

/// Result of Lazard evaluation: the surviving univariate polynomial (to be
/// read at `point`; it may still mention algebraic coordinates of the
/// point) and the exponents divided out along the way.
#[derive(Clone, Debug)]
pub struct LazardEvalResult {
    pub residual: Polynomial,
    pub valuation: Valuation,
    pub point: Tower,
}

impl LazardEvalResult {
    /// The residual with coefficients reduced at the point.
    pub fn reduced_residual(&self) -> Polynomial {
        self.point.substitute(&self.residual)
    }
}

/// Runs the Lazard loop over the first `levels` coordinates of `point`.
fn lazard_loop(f: &Polynomial, point: &Tower, levels: usize) -> Result<(Polynomial, Vec<u32>)> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("Lazard evaluation"));
    }
    let mut g = f.clone();
    let mut vs = Vec::with_capacity(levels);
    for i in 0..levels {
        let prefix = point.prefix(i + 1);
        let deg = g.degree_in(i);
        match point.coordinate(i).as_rational() {
            Some(r) => {
                let coeffs = g.shift(i, &r).coefficients_in(i);
                let mut found = None;
                for (v, c) in coeffs.iter().enumerate() {
                    if !c.is_zero() && !prefix.is_zero_at(c)? {
                        found = Some((v, c.clone()));
                        break;
                    }
                }
                let (v, c) = found.ok_or_else(|| {
                    Error::Invariant(format!("polynomial vanished at level {}", i + 1))
                })?;
                vs.push(v as u32);
                g = c;
            }
            None => {
                let mut cur = g.clone();
                let mut v = 0u32;
                while prefix.is_zero_at(&cur)? {
                    if v >= deg {
                        return Err(Error::Invariant(format!(
                            "polynomial vanished at level {}",
                            i + 1
                        )));
                    }
                    v += 1;
                    cur = cur
                        .derivative(i)?
                        .scale(&Rational::from_integer(v.into()).recip());
                }
                vs.push(v);
                g = prefix.substitute(&cur);
            }
        }
    }
    Ok((g, vs))
}

fn check_point(f: &Polynomial, point: &Tower, expected: usize) -> Result<()> {
    if point.len() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            found: point.len(),
        });
    }
    if f.nvars() == 0 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: 0,
        });
    }
    Ok(())
}

/// Lazard evaluation of `f` (in `n` variables) at a point with `n - 1` coordinates.
pub fn lazard_evaluate(f: &Polynomial, point: &Tower) -> Result<LazardEvalResult> {
    check_point(f, point, f.nvars().saturating_sub(1))?;
    let (residual, vs) = lazard_loop(f, point, point.len())?;
    Ok(LazardEvalResult {
        residual,
        valuation: Valuation(vs),
        point: point.clone(),
    })
}

/// The Lazard valuation of `f` (in `n` variables) at a point with `n` coordinates.
pub fn valuation_at(f: &Polynomial, point: &Tower) -> Result<Valuation> {
    check_point(f, point, f.nvars())?;
    lazard_loop(f, point, point.len()).map(|(_, vs)| Valuation(vs))
}

/// Convenience form of [`valuation_at`] for rational points.
pub fn valuation_at_rational(f: &Polynomial, point: &[Rational]) -> Result<Valuation> {
    valuation_at(f, &Tower::from_rationals(point))
}

/// Least total degree of a term of `f` expanded about the rational `point`.
pub fn order_at(f: &Polynomial, point: &[Rational]) -> Result<u32> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("order_at"));
    }
    if point.len() != f.nvars() {
        return Err(Error::DimensionMismatch {
            expected: f.nvars(),
            found: point.len(),
        });
    }
    let g = f.expand_about(point)?;
    Ok(g.terms().map(|(m, _)| m.degree()).min().unwrap_or(0))
}

/// The coefficient `f^u(x_n)` of `prod (x_i - alpha_i)^{u_i}` in the expansion
/// of `f` about the point `alpha` (with `n - 1` coordinates).
///
/// At rational points the full expansion is computed; otherwise the
/// coefficient is the scaled partial derivative `d^u f / u!`, read at the point.
pub fn expansion_coefficient(f: &Polynomial, point: &Tower, u: &[u32]) -> Result<Polynomial> {
    let k = point.len();
    if u.len() != k || k >= f.nvars().max(1) {
        return Err(Error::DimensionMismatch {
            expected: f.nvars().saturating_sub(1),
            found: u.len().max(k),
        });
    }
    if let Some(alpha) = point.as_rationals() {
        let g = f.expand_about(&alpha)?;
        let mut out = Polynomial::zero(f.nvars());
        for (m, c) in g.terms() {
            if m.exponents()[..k] == *u {
                let mut e = m.exponents().to_vec();
                e[..k].iter_mut().for_each(|x| *x = 0);
                out = &out + &Polynomial::term(c.clone(), Monomial::new(e));
            }
        }
        return Ok(out);
    }
    let mut g = f.clone();
    for (i, &ui) in u.iter().enumerate() {
        for _ in 0..ui {
            g = g.derivative(i)?;
        }
        // divide by u_i!
        let mut fact = Rational::from_integer(1.into());
        for j in 1..=ui {
            fact *= Rational::from_integer(j.into());
        }
        g = g.scale(&fact.recip());
    }
    Ok(point.substitute(&g))
}

/// A positive integer vector `c` used to order exponent tuples by `<c, v>`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Evaluator(Vec<u64>);

impl Evaluator {
    pub fn new(c: Vec<u64>) -> Result<Self> {
        if c.iter().any(|&x| x == 0) {
            return Err(Error::InvalidArgument("evaluator entries must be positive".into()));
        }
        Ok(Evaluator(c))
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `c_i >= 1 + max_{v in V} sum_{j > i} c_j v_j` for every `i < n - 1`.
    pub fn is_valid_for(&self, set: &[Valuation]) -> bool {
        let n = self.0.len();
        if self.0.iter().any(|&x| x == 0) || set.iter().any(|v| v.len() != n) {
            return false;
        }
        for i in 0..n.saturating_sub(1) {
            for v in set {
                let tail: Option<u64> = (i + 1..n).try_fold(0u64, |acc, j| {
                    self.0[j]
                        .checked_mul(u64::from(v.0[j]))
                        .and_then(|t| acc.checked_add(t))
                });
                match tail.and_then(|t| t.checked_add(1)) {
                    Some(need) if self.0[i] >= need => {}
                    _ => return false,
                }
            }
        }
        true
    }

    /// The evaluator with its last entry dropped.
    pub fn truncated(&self) -> Evaluator {
        Evaluator(self.0[..self.0.len().saturating_sub(1)].to_vec())
    }
}

impl fmt::Display for Evaluator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The least evaluator for `set` with last entry `c_last`, built from the
/// last entry backwards.
pub fn evaluator_for(set: &[Valuation], c_last: u64) -> Result<Evaluator> {
    let Some(first) = set.first() else {
        return Err(Error::Empty("evaluator_for (valuation set)"));
    };
    let n = first.len();
    if let Some(v) = set.iter().find(|v| v.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: v.len(),
        });
    }
    if n == 0 {
        return Ok(Evaluator(Vec::new()));
    }
    if c_last == 0 {
        return Err(Error::InvalidArgument("c_last must be positive".into()));
    }
    let mut c = vec![0u64; n];
    c[n - 1] = c_last;
    for i in (0..n - 1).rev() {
        let mut best = 0u64;
        for v in set {
            let mut s = 0u64;
            for j in i + 1..n {
                s = c[j]
                    .checked_mul(u64::from(v.0[j]))
                    .and_then(|t| s.checked_add(t))
                    .ok_or(Error::Overflow(n))?;
            }
            best = best.max(s);
        }
        c[i] = best.checked_add(1).ok_or(Error::Overflow(n))?;
    }
    Ok(Evaluator(c))
}

/// The curve `s -> base + (s^c_1, ..., s^c_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialCurve {
    base: Vec<Rational>,
    exponents: Evaluator,
}

impl MonomialCurve {
    pub fn new(base: Vec<Rational>, exponents: Evaluator) -> Result<Self> {
        if base.len() != exponents.len() {
            return Err(Error::DimensionMismatch {
                expected: exponents.len(),
                found: base.len(),
            });
        }
        Ok(MonomialCurve { base, exponents })
    }

    pub fn base(&self) -> &[Rational] {
        &self.base
    }

    pub fn exponents(&self) -> &Evaluator {
        &self.exponents
    }
}

fn mul_sparse(a: &BTreeMap<u64, Rational>, b: &BTreeMap<u64, Rational>) -> Result<BTreeMap<u64, Rational>> {
    let mut out: BTreeMap<u64, Rational> = BTreeMap::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e = ea.checked_add(*eb).ok_or(Error::Overflow(0))?;
            let slot = out.entry(e).or_insert_with(Rational::zero);
            *slot += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// Order at `s = 0` of `g(base + (s^c_1, ..., s^c_n))`.
pub fn curve_order(g: &Polynomial, curve: &MonomialCurve) -> Result<u64> {
    if g.is_zero() {
        return Err(Error::ZeroPolynomial("curve_order"));
    }
    let n = g.nvars();
    if curve.base.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: curve.base.len(),
        });
    }
    // (p_i + s^c_i)^e expanded, cached per variable and exponent
    let mut cache: BTreeMap<(usize, u32), BTreeMap<u64, Rational>> = BTreeMap::new();
    let mut total: BTreeMap<u64, Rational> = BTreeMap::new();
    for (m, c) in g.terms() {
        let mut acc: BTreeMap<u64, Rational> = BTreeMap::from([(0, c.clone())]);
        for (i, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !cache.contains_key(&(i, e)) {
                let p = &curve.base[i];
                let ci = curve.exponents.0[i];
                let mut factor = BTreeMap::new();
                for k in 0..=e {
                    let coeff = binomial(e, k) * num_traits::pow(p.clone(), (e - k) as usize);
                    if !coeff.is_zero() {
                        let exp = ci.checked_mul(u64::from(k)).ok_or(Error::Overflow(n))?;
                        factor.insert(exp, coeff);
                    }
                }
                cache.insert((i, e), factor);
            }
            acc = mul_sparse(&acc, &cache[&(i, e)])?;
        }
        for (e, c) in acc {
            let slot = total.entry(e).or_insert_with(Rational::zero);
            *slot += c;
        }
    }
    total
        .into_iter()
        .find(|(_, c)| !c.is_zero())
        .map(|(e, _)| e)
        .ok_or(Error::CurveDegenerate)
}

/// Outcome of [`valuation_invariant_on`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvarianceReport {
    pub invariant: bool,
    /// The common valuation when invariant (absent for an empty point list).
    pub valuation: Option<Valuation>,
    /// Indices and valuations of two points that disagree.
    pub witness: Option<((usize, Valuation), (usize, Valuation))>,
}

/// Whether `f` has the same valuation at every point.
pub fn valuation_invariant_on(f: &Polynomial, points: &[Tower]) -> Result<InvarianceReport> {
    let mut first: Option<Valuation> = None;
    for (i, p) in points.iter().enumerate() {
        let v = valuation_at(f, p)?;
        match &first {
            None => first = Some(v),
            Some(v0) if *v0 != v => {
                return Ok(InvarianceReport {
                    invariant: false,
                    valuation: None,
                    witness: Some(((0, v0.clone()), (i, v))),
                })
            }
            _ => {}
        }
    }
    Ok(InvarianceReport {
        invariant: true,
        valuation: first,
        witness: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::Interval;
    use crate::polyring::{parse_polynomial, rat};

    fn p(s: &str, vars: &[&str]) -> Polynomial {
        parse_polynomial(s, vars).unwrap()
    }

    fn at(f: &Polynomial, pt: &[i64]) -> Vec<u32> {
        let r: Vec<_> = pt.iter().map(|&x| rat(x, 1)).collect();
        valuation_at_rational(f, &r).unwrap().entries().to_vec()
    }

    #[test]
    fn valuations_in_the_plane() {
        let f = p("x1*x2^2 + x1^2*x2", &["x1", "x2"]);
        assert_eq!(at(&f, &[0, 0]), vec![1, 2]);
        assert_eq!(at(&f, &[1, 0]), vec![0, 1]);
        assert_eq!(at(&f, &[0, 1]), vec![1, 0]);
        let g = p("x^2 - x^3", &["x"]);
        assert_eq!(at(&g, &[0]), vec![2]);
        assert_eq!(at(&g, &[1]), vec![1]);
    }

    #[test]
    fn cone_along_the_axis() {
        let f = p("z^2 - x*y", &["x", "y", "z"]);
        for a in [-2, 1, 3] {
            assert_eq!(at(&f, &[a, 0, 0]), vec![0, 0, 2]);
            assert_eq!(order_at(&f, &[rat(a, 1), rat(0, 1), rat(0, 1)]).unwrap(), 1);
        }
        assert_eq!(order_at(&f, &[rat(0, 1), rat(0, 1), rat(0, 1)]).unwrap(), 2);
    }

    #[test]
    fn lazard_evaluation_examples() {
        let vars = ["x", "y", "z"];
        let origin = Tower::from_rationals(&[rat(0, 1), rat(0, 1)]);
        let r = lazard_evaluate(&p("z^2 + y^2 + x^2 - 1", &vars), &origin).unwrap();
        assert_eq!(r.residual, p("z^2 - 1", &vars));
        assert_eq!(r.valuation.entries(), &[0, 0]);
        let r = lazard_evaluate(&p("y*z - x", &vars), &origin).unwrap();
        assert_eq!(r.residual, p("z", &vars));
        assert_eq!(r.valuation.entries(), &[0, 1]);
        let w = ["x", "y", "z", "w"];
        let pt = Tower::from_rationals(&[rat(0, 1), rat(0, 1), rat(1, 1)]);
        let r = lazard_evaluate(&p("y*w^2 + x*w - y*z^2", &w), &pt).unwrap();
        assert_eq!(r.residual, p("w^2 - 1", &w));
        assert_eq!(r.valuation.entries(), &[0, 1, 0]);
    }

    #[test]
    fn evaluation_at_an_algebraic_point() {
        // x^2 - 2 vanishes at x = sqrt 2 to first order; the residual is the
        // derivative 2x read there
        let vars = ["x", "y"];
        let mut t = Tower::new();
        t.push_algebraic(p("x^2 - 2", &vars), Interval::new(rat(1, 1), rat(2, 1)).unwrap())
            .unwrap();
        let f = p("(x^2 - 2)*y + (x^2 - 2)^2", &vars);
        let r = lazard_evaluate(&f, &t).unwrap();
        assert_eq!(r.valuation.entries(), &[1]);
        assert!(t.is_zero_at(&(&r.residual - &p("2*x*y", &vars))).unwrap());
        let e = expansion_coefficient(&f, &t, &[1]).unwrap();
        assert!(t.is_zero_at(&(&r.residual - &e)).unwrap());
    }

    #[test]
    fn expansion_coefficients() {
        let vars = ["x", "y", "z"];
        let origin = Tower::from_rationals(&[rat(0, 1), rat(0, 1)]);
        assert_eq!(expansion_coefficient(&p("y*z - x", &vars), &origin, &[0, 1]).unwrap(), p("z", &vars));
        assert_eq!(
            expansion_coefficient(&p("z^2 + y^2 + x^2 - 1", &vars), &origin, &[0, 0]).unwrap(),
            p("z^2 - 1", &vars)
        );
    }

    #[test]
    fn lex_order() {
        let a = Valuation::new(vec![0, 0, 2]);
        let b = Valuation::new(vec![0, 1, 0]);
        assert_eq!(lex_compare(&a, &b).unwrap(), Ordering::Less);
        assert_eq!(lex_compare(&Valuation::new(vec![0, 1]), &Valuation::new(vec![1, 0])).unwrap(), Ordering::Less);
        assert!(lex_compare(&a, &Valuation::new(vec![1])).is_err());
    }

    #[test]
    fn evaluators() {
        let v = |e: Vec<u32>| Valuation::new(e);
        assert_eq!(evaluator_for(&[v(vec![0, 0, 0])], 1).unwrap().entries(), &[1, 1, 1]);
        assert_eq!(evaluator_for(&[v(vec![1, 2]), v(vec![0, 1])], 1).unwrap().entries(), &[3, 1]);
        assert!(evaluator_for(&[], 1).is_err());
        let c = Evaluator::new(vec![18, 9, 3, 1]).unwrap();
        assert!(c.is_valid_for(&[v(vec![0, 1, 0, 0]), v(vec![0, 1, 0, 1]), v(vec![0, 1, 0, 2])]));
        assert!(!Evaluator::new(vec![3, 1]).unwrap().is_valid_for(&[v(vec![0, 3])]));
    }

    #[test]
    fn curve_orders() {
        let g = p("x1*x2^2 + x1^2*x2", &["x1", "x2"]);
        let curve = MonomialCurve::new(vec![rat(0, 1), rat(0, 1)], Evaluator::new(vec![3, 1]).unwrap()).unwrap();
        assert_eq!(curve_order(&g, &curve).unwrap(), 5);
        let h = p("z^2 - x*y", &["x", "y", "z"]);
        let c = evaluator_for(&[Valuation::new(vec![0, 0, 2])], 1).unwrap();
        let curve = MonomialCurve::new(vec![rat(0, 1); 3], c).unwrap();
        assert_eq!(curve_order(&h, &curve).unwrap(), 2);
        let one = p("x1 + 1", &["x1", "x2"]);
        let curve = MonomialCurve::new(vec![rat(0, 1); 2], Evaluator::new(vec![1, 1]).unwrap()).unwrap();
        assert_eq!(curve_order(&one, &curve).unwrap(), 0);
    }

    #[test]
    fn invariance() {
        let f = p("z^2 - x*y", &["x", "y", "z"]);
        let pts: Vec<_> = [1, 2, -1]
            .iter()
            .map(|&a| Tower::from_rationals(&[rat(a, 1), rat(0, 1), rat(0, 1)]))
            .collect();
        let r = valuation_invariant_on(&f, &pts).unwrap();
        assert!(r.invariant);
        assert_eq!(r.valuation, Some(Valuation::new(vec![0, 0, 2])));
        let c = p("x^2 + y^2 - 1", &["x", "y"]);
        let pts = [
            Tower::from_rationals(&[rat(0, 1), rat(1, 1)]),
            Tower::from_rationals(&[rat(1, 1), rat(0, 1)]),
        ];
        let r = valuation_invariant_on(&c, &pts).unwrap();
        assert!(!r.invariant);
        let ((_, a), (_, b)) = r.witness.unwrap();
        assert_eq!((a.entries(), b.entries()), (&[0, 1][..], &[0, 2][..]));
    }
}
