//! Multivariate gcd over the rationals by recursive primitive remainder sequences.

use super::Polynomial;
use crate::error::{Error, Result};

/// Primitive gcd of `f` and `g`: integer coefficients with gcd 1 and positive
/// leading coefficient. `gcd(f, 0)` is the normalized `f`.
pub fn gcd(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::ZeroPolynomial("gcd (both arguments zero)"));
    }
    if f.nvars() != g.nvars() {
        return Err(Error::VarCountMismatch {
            left: f.nvars(),
            right: g.nvars(),
        });
    }
    Ok(gcd_normalized(f, g))
}

pub(crate) fn gcd_normalized(f: &Polynomial, g: &Polynomial) -> Polynomial {
    if f.is_zero() {
        return g.normalized();
    }
    if g.is_zero() {
        return f.normalized();
    }
    let n = f.nvars();
    if f.is_constant() || g.is_constant() {
        return Polynomial::one(n);
    }
    let v = f.max_var().max(g.max_var()).expect("non-constant");
    if !f.uses_var(v) {
        return gcd_normalized(f, &content_in(g, v));
    }
    if !g.uses_var(v) {
        return gcd_normalized(&content_in(f, v), g);
    }
    let cf = content_in(f, v);
    let cg = content_in(g, v);
    let c = gcd_normalized(&cf, &cg);
    let mut a = f.div_exact(&cf).expect("content divides");
    let mut b = g.div_exact(&cg).expect("content divides");
    if a.degree_in(v) < b.degree_in(v) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        let r = a.pseudo_remainder(&b, v);
        if r.is_zero() {
            break;
        }
        if r.degree_in(v) == 0 {
            b = Polynomial::one(n);
            break;
        }
        a = b;
        b = primitive_in(&r, v);
    }
    (&c * &primitive_in(&b, v)).normalized()
}

/// Content with respect to `x_var`: the normalized gcd of the coefficients.
pub fn content_in(f: &Polynomial, var: usize) -> Polynomial {
    let mut acc = Polynomial::zero(f.nvars());
    for c in f.coefficients_in(var).iter().rev() {
        if c.is_zero() {
            continue;
        }
        acc = gcd_normalized(&acc, c);
        if acc.is_one() {
            break;
        }
    }
    acc
}

/// `f / content_in(f, var)`, normalized.
pub fn primitive_in(f: &Polynomial, var: usize) -> Polynomial {
    if f.is_zero() {
        return f.clone();
    }
    let c = content_in(f, var);
    f.div_exact(&c).expect("content divides").normalized()
}

/// Splits `f = content * primitive` with respect to the main variable `x_var`.
///
/// `content` is free of `x_var` and carries the rational scalar; `primitive`
/// has content 1 with respect to `x_var`, integer coefficients and positive
/// leading coefficient.
pub fn content_and_primitive(f: &Polynomial, var: usize) -> Result<(Polynomial, Polynomial)> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("content_and_primitive"));
    }
    if var >= f.nvars() {
        return Err(Error::VariableOutOfRange {
            index: var,
            nvars: f.nvars(),
        });
    }
    let primitive = primitive_in(f, var);
    let content = f
        .div_exact(&primitive)
        .ok_or(Error::InexactDivision("content_and_primitive"))?;
    Ok((content, primitive))
}

/// Squarefree part in all variables, normalized.
pub fn squarefree_part(f: &Polynomial) -> Polynomial {
    if f.is_zero() || f.is_constant() {
        return f.normalized();
    }
    let mut g = f.clone();
    for v in 0..f.nvars() {
        if f.uses_var(v) {
            g = gcd_normalized(&g, &f.derivative(v).expect("var in range"));
            if g.is_one() {
                break;
            }
        }
    }
    f.div_exact(&g).expect("gcd divides").normalized()
}
