use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::{binomial, Rational};
use crate::error::{Error, Result};

/// Sparse multivariate polynomial with rational coefficients over a fixed
/// ordered set of variables `x_0 < x_1 < ... < x_{n-1}`.
///
/// Terms are kept in a `BTreeMap` ordered by the graded monomial order, so the
/// last entry is the leading term and iteration is deterministic. Zero
/// coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, Rational::from_integer(c.into()))
    }

    /// The variable `x_var`.
    pub fn var(nvars: usize, var: usize) -> Self {
        Self::term(Rational::one(), Monomial::var_power(nvars, var, 1))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut p = Self::zero(m.nvars());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds a polynomial from `(coefficient, exponents)` pairs, merging duplicates.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Rational, Vec<u32>)>,
    {
        let mut p = Self::zero(nvars);
        for (c, e) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(Monomial::new(e), c);
        }
        p
    }

    /// `sum_i coeffs[i] * x_var^i`.
    pub fn from_coefficients(nvars: usize, var: usize, coeffs: &[Polynomial]) -> Self {
        let mut p = Self::zero(nvars);
        for (i, c) in coeffs.iter().enumerate() {
            for (m, a) in &c.terms {
                debug_assert_eq!(m.exponent(var), 0);
                p.add_term(m.with_exponent(var, i as u32), a.clone());
            }
        }
        p
    }

    /// Univariate polynomial in `x_var` with the given coefficients, lowest degree first.
    pub fn univariate(nvars: usize, var: usize, coeffs: &[Rational]) -> Self {
        let mut p = Self::zero(nvars);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var_power(nvars, var, i as u32), c.clone());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant_value().is_some_and(|c| c.is_one())
    }

    /// The value of a constant polynomial.
    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_zero() {
            Some(Rational::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> Rational {
        self.leading_term()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exponent(var)).max().unwrap_or(0)
    }

    /// Largest variable index occurring with positive exponent.
    pub fn max_var(&self) -> Option<usize> {
        (0..self.nvars)
            .rev()
            .find(|&v| self.terms.keys().any(|m| m.exponent(v) > 0))
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.exponent(var) > 0)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_same_ring(&self, other: &Polynomial) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VarCountMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    fn check_var(&self, var: usize) -> Result<()> {
        if var >= self.nvars {
            return Err(Error::VariableOutOfRange {
                index: var,
                nvars: self.nvars,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_ring(other)?;
        let mut out = Polynomial::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut result = Polynomial::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Partial derivative with respect to `x_var`.
    pub fn derivative(&self, var: usize) -> Result<Polynomial> {
        self.check_var(var)?;
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e > 0 {
                out.add_term(m.with_exponent(var, e - 1), c * Rational::from_integer(e.into()));
            }
        }
        Ok(out)
    }

    /// Coefficients with respect to `x_var`, lowest power first.
    pub fn coefficients_in(&self, var: usize) -> Vec<Polynomial> {
        let d = self.degree_in(var) as usize;
        let mut out = vec![Polynomial::zero(self.nvars); if self.is_zero() { 0 } else { d + 1 }];
        for (m, c) in &self.terms {
            let e = m.exponent(var) as usize;
            out[e].add_term(m.with_exponent(var, 0), c.clone());
        }
        out
    }

    /// Coefficient of `x_var^k`, as a polynomial free of `x_var`.
    pub fn coefficient_in(&self, var: usize, k: u32) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            if m.exponent(var) == k {
                out.add_term(m.with_exponent(var, 0), c.clone());
            }
        }
        out
    }

    pub fn leading_coefficient_in(&self, var: usize) -> Polynomial {
        self.coefficient_in(var, self.degree_in(var))
    }

    pub fn trailing_coefficient_in(&self, var: usize) -> Polynomial {
        self.coefficient_in(var, 0)
    }

    /// Substitutes the rational value `value` for `x_var`.
    pub fn substitute(&self, var: usize, value: &Rational) -> Polynomial {
        let mut powers: Vec<Rational> = vec![Rational::one()];
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponent(var) as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            out.add_term(m.with_exponent(var, 0), c * &powers[e]);
        }
        out
    }

    /// Substitutes rational values for the first `values.len()` variables.
    pub fn substitute_prefix(&self, values: &[Rational]) -> Polynomial {
        values
            .iter()
            .enumerate()
            .fold(self.clone(), |p, (i, v)| p.substitute(i, v))
    }

    /// Replaces `x_var` by the polynomial `value`.
    pub fn compose(&self, var: usize, value: &Polynomial) -> Polynomial {
        let mut powers = vec![Polynomial::one(self.nvars)];
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponent(var) as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let rest = Polynomial::term(c.clone(), m.with_exponent(var, 0));
            out = &out + &(&rest * &powers[e]);
        }
        out
    }

    /// Evaluates at a point covering every variable that occurs.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut sum = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow(point[i].clone(), e as usize);
                }
            }
            sum += t;
        }
        sum
    }

    /// Taylor shift `x_var -> x_var + a`.
    pub fn shift(&self, var: usize, a: &Rational) -> Polynomial {
        if a.is_zero() {
            return self.clone();
        }
        let mut out = Polynomial::zero(self.nvars);
        let mut powers: Vec<Rational> = vec![Rational::one()];
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            while powers.len() <= e as usize {
                let next = powers.last().unwrap() * a;
                powers.push(next);
            }
            for k in 0..=e {
                let coeff = c * &powers[(e - k) as usize] * binomial(e, k);
                out.add_term(m.with_exponent(var, k), coeff);
            }
        }
        out
    }

    /// Expansion about `point` in the first `point.len()` variables: the
    /// returned polynomial `g` satisfies `g(X) = f(X + point)`, so the
    /// coefficient of `X^u` is the coefficient of `(x - point)^u` in `f`.
    pub fn expand_about(&self, point: &[Rational]) -> Result<Polynomial> {
        if point.len() > self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: point.len(),
            });
        }
        Ok(point
            .iter()
            .enumerate()
            .fold(self.clone(), |p, (i, a)| p.shift(i, a)))
    }

    /// Splits off the rational content: `self = c * p` where `p` has coprime
    /// integer coefficients and a positive leading coefficient.
    pub fn integer_primitive(&self) -> (Rational, Polynomial) {
        if self.is_zero() {
            return (Rational::zero(), self.clone());
        }
        let mut den_lcm = BigInt::one();
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
            num_gcd = num_gcd.gcd(c.numer());
        }
        let mut content = Rational::new(num_gcd, den_lcm);
        if self.leading_coefficient().is_negative() {
            content = -content;
        }
        let inv = content.recip();
        (content, self.scale(&inv))
    }

    /// Integer-primitive representative with positive leading coefficient.
    pub fn normalized(&self) -> Polynomial {
        self.integer_primitive().1
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        if let Some(c) = divisor.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let (lm, lc) = {
            let (m, c) = divisor.leading_term().unwrap();
            (m.clone(), c.clone())
        };
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(self.nvars);
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.div(&lm)?;
            let qc = c / &lc;
            let step = divisor.mul_monomial(&qm).scale(&qc);
            rem = &rem - &step;
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Pseudo-remainder of `self` by `divisor` as polynomials in `x_var`:
    /// `lc(divisor)^(deg self - deg divisor + 1) * self mod divisor`.
    pub fn pseudo_remainder(&self, divisor: &Polynomial, var: usize) -> Polynomial {
        self.pseudo_division(divisor, var).1
    }

    /// Pseudo-division in `x_var`: returns `(q, r)` with
    /// `lc(divisor)^(da - db + 1) * self = q * divisor + r` and `deg r < db`.
    pub fn pseudo_division(&self, divisor: &Polynomial, var: usize) -> (Polynomial, Polynomial) {
        assert!(!divisor.is_zero(), "pseudo-division by zero polynomial");
        let da = self.degree_in(var);
        let db = divisor.degree_in(var);
        if self.is_zero() || da < db {
            return (Polynomial::zero(self.nvars), self.clone());
        }
        let lc_b = divisor.leading_coefficient_in(var);
        let mut r = self.clone();
        let mut q = Polynomial::zero(self.nvars);
        let mut e = da - db + 1;
        while !r.is_zero() && r.degree_in(var) >= db {
            let dr = r.degree_in(var);
            let lr = r.leading_coefficient_in(var);
            let shift = Monomial::var_power(self.nvars, var, dr - db);
            q = &(&q * &lc_b) + &lr.mul_monomial(&shift);
            r = &(&r * &lc_b) - &(&lr * divisor).mul_monomial(&shift);
            e -= 1;
        }
        let factor = lc_b.pow(e);
        (&q * &factor, &r * &factor)
    }

    /// Embeds into a ring with more variables, keeping indices.
    pub fn extend_vars(&self, nvars: usize) -> Polynomial {
        assert!(nvars >= self.nvars);
        Polynomial {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.exponents().to_vec();
                    e.resize(nvars, 0);
                    (Monomial::new(e), c.clone())
                })
                .collect(),
        }
    }

    /// Renames variables through `map` (old index -> new index) into a ring of `nvars` variables.
    pub fn remap_vars(&self, nvars: usize, map: impl Fn(usize) -> usize) -> Polynomial {
        let mut out = Polynomial::zero(nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0; nvars];
            for (i, &k) in m.exponents().iter().enumerate() {
                if k > 0 {
                    e[map(i)] += k;
                }
            }
            out.add_term(Monomial::new(e), c.clone());
        }
        out
    }

    /// Dense coefficient list of a polynomial in the single variable `x_var`.
    pub fn univariate_coefficients(&self, var: usize) -> Option<Vec<Rational>> {
        if (0..self.nvars).any(|v| v != var && self.uses_var(v)) {
            return None;
        }
        let d = self.degree_in(var) as usize;
        let mut out = vec![Rational::zero(); if self.is_zero() { 0 } else { d + 1 }];
        for (m, c) in &self.terms {
            out[m.exponent(var) as usize] = c.clone();
        }
        Some(out)
    }
}

impl Ord for Polynomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.nvars.cmp(&other.nvars).then_with(|| {
            self.terms
                .iter()
                .rev()
                .cmp(other.terms.iter().rev())
        })
    }
}

impl PartialOrd for Polynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("polynomials from different rings")
            }
        }
        impl $trait<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
        impl $trait<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}
