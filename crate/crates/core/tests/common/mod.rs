//! Independent oracles and random generators shared by the integration tests
//! and the acceptance harness. Nothing here calls the library's own
//! resultant, root isolation or Taylor expansion code.

#![allow(dead_code)]

use lazard_cad::polyring::{int, Polynomial, Rational};
use num_traits::{One, Signed, Zero};
use rand::Rng;

/// Determinant by Gaussian elimination over the rationals.
pub fn determinant(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &p;
            for c in col..n {
                let sub = &factor * &m[col][c];
                m[r][c] -= sub;
            }
        }
    }
    det
}

/// Sylvester resultant of two univariate polynomials given by coefficients,
/// lowest degree first, both with nonzero leading coefficient.
pub fn sylvester_resultant(f: &[Rational], g: &[Rational]) -> Rational {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    if size == 0 {
        return Rational::one();
    }
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![Rational::zero(); size];
        for (j, c) in f.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![Rational::zero(); size];
        for (j, c) in g.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    determinant(rows)
}

pub fn trim(mut v: Vec<Rational>) -> Vec<Rational> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db && !r.is_empty() {
        let q = r.last().unwrap() / b.last().unwrap();
        let shift = r.len() - 1 - db;
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &q * c;
        }
        r = trim(r);
    }
    r
}

fn horner(f: &[Rational], x: &Rational) -> Rational {
    f.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

fn sign_at_infinity(f: &[Rational], positive: bool) -> i32 {
    let lc = f.last().unwrap();
    let s = if lc.is_positive() { 1 } else { -1 };
    if positive || (f.len() - 1) % 2 == 0 {
        s
    } else {
        -s
    }
}

/// Number of distinct real roots of `f` (coefficients lowest first), by a
/// textbook Sturm sequence evaluated at plus and minus infinity.
pub fn sturm_real_root_count(f: &[Rational]) -> usize {
    let f = trim(f.to_vec());
    if f.len() <= 1 {
        return 0;
    }
    let df: Vec<Rational> = f.iter().enumerate().skip(1).map(|(i, c)| c * int(i as i64)).collect();
    let mut seq = vec![f, df];
    loop {
        let r = rem(&seq[seq.len() - 2], &seq[seq.len() - 1]);
        if r.is_empty() {
            break;
        }
        seq.push(r.into_iter().map(|c| -c).collect());
    }
    let changes = |pos: bool| {
        let signs: Vec<i32> = seq.iter().map(|p| sign_at_infinity(p, pos)).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };
    changes(false) - changes(true)
}

/// Number of distinct roots of `f` in `(a, b]`, with the Sturm sequence.
pub fn sturm_count_between(f: &[Rational], a: &Rational, b: &Rational) -> usize {
    let f = trim(f.to_vec());
    let df: Vec<Rational> = f.iter().enumerate().skip(1).map(|(i, c)| c * int(i as i64)).collect();
    let mut seq = vec![f, trim(df)];
    loop {
        if seq.last().unwrap().is_empty() {
            seq.pop();
            break;
        }
        let r = rem(&seq[seq.len() - 2], &seq[seq.len() - 1]);
        if r.is_empty() {
            break;
        }
        seq.push(r.into_iter().map(|c| -c).collect());
    }
    let changes = |x: &Rational| {
        let signs: Vec<i32> = seq
            .iter()
            .map(|p| {
                let v = horner(p, x);
                if v.is_positive() {
                    1
                } else if v.is_negative() {
                    -1
                } else {
                    0
                }
            })
            .filter(|&s| s != 0)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };
    changes(a) - changes(b)
}

fn falling(e: u32, k: u32) -> Rational {
    (0..k).fold(Rational::one(), |acc, i| acc * int(i64::from(e - i)))
}

fn factorial(k: u32) -> Rational {
    falling(k, k)
}

/// Coefficient of `prod_{i<k} (x_i - alpha_i)^{u_i}` in `f`, with `k =
/// alpha.len()`, as a polynomial in the remaining variables: computed as
/// `d^u f / u!` term by term, evaluated at `alpha`.
pub fn taylor_coefficient(f: &Polynomial, alpha: &[Rational], u: &[u32]) -> Polynomial {
    let n = f.nvars();
    let k = alpha.len();
    let mut terms = Vec::new();
    for (m, c) in f.terms() {
        let e = m.exponents();
        if (0..k).any(|i| e[i] < u[i]) {
            continue;
        }
        let mut coeff = c.clone();
        for i in 0..k {
            coeff *= falling(e[i], u[i]) / factorial(u[i]);
            coeff *= num_traits::pow(alpha[i].clone(), (e[i] - u[i]) as usize);
        }
        let mut rest = e.to_vec();
        rest[..k].iter_mut().for_each(|x| *x = 0);
        terms.push((coeff, rest));
    }
    Polynomial::from_terms(n, terms)
}

/// Every exponent tuple with `u_i <= bounds[i]`, in lexicographic order.
pub fn lex_tuples(bounds: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &b in bounds {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..=b).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

/// The Lazard valuation by exhaustive lexicographic search for the first
/// nonzero Taylor coefficient.
pub fn valuation_by_search(f: &Polynomial, alpha: &[Rational]) -> Vec<u32> {
    let bounds: Vec<u32> = (0..f.nvars()).map(|i| f.degree_in(i)).collect();
    lex_tuples(&bounds)
        .into_iter()
        .find(|u| !taylor_coefficient(f, alpha, u).is_zero())
        .expect("nonzero polynomial has a nonzero Taylor coefficient")
}

pub fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    let den = [1, 1, 1, 2, 3][rng.gen_range(0..5)];
    Rational::new(rng.gen_range(-3..=3i64).into(), i64::from(den).into())
}

pub fn random_point<R: Rng>(rng: &mut R, n: usize) -> Vec<Rational> {
    (0..n).map(|_| small_rational(rng)).collect()
}

/// A random polynomial with small integer coefficients, built in powers of
/// `x_i - alpha_i` so that vanishing to higher order at `alpha` is common.
pub fn random_poly_at<R: Rng>(rng: &mut R, alpha: &[Rational], max_deg: u32, max_terms: usize) -> Polynomial {
    let n = alpha.len();
    let shifted: Vec<Polynomial> = (0..n)
        .map(|i| &Polynomial::var(n, i) - &Polynomial::constant(n, alpha[i].clone()))
        .collect();
    loop {
        let mut f = Polynomial::zero(n);
        for _ in 0..rng.gen_range(1..=max_terms) {
            let mut t = Polynomial::from_int(n, rng.gen_range(-4..=4));
            let mut budget = max_deg;
            for s in &shifted {
                let e = rng.gen_range(0..=budget);
                budget -= e;
                t = &t * &s.pow(e);
            }
            f = &f + &t;
        }
        if !f.is_zero() {
            return f;
        }
    }
}

/// A random polynomial with small integer coefficients in `n` variables.
pub fn random_poly<R: Rng>(rng: &mut R, n: usize, max_deg: u32, max_terms: usize) -> Polynomial {
    random_poly_at(rng, &vec![Rational::zero(); n], max_deg, max_terms)
}

/// Random univariate coefficients (lowest first) with nonzero leading term,
/// of degree between 1 and `max_deg`.
pub fn random_univariate<R: Rng>(rng: &mut R, max_deg: usize) -> Vec<Rational> {
    let d = rng.gen_range(1..=max_deg);
    let mut c: Vec<Rational> = (0..=d).map(|_| int(rng.gen_range(-5..=5))).collect();
    while c[d].is_zero() {
        c[d] = int(rng.gen_range(-5..=5));
    }
    c
}

/// A random univariate with repeated and rational roots mixed in.
pub fn random_univariate_with_roots<R: Rng>(rng: &mut R, max_deg: usize) -> Vec<Rational> {
    let mut f = random_univariate(rng, (max_deg / 2).max(1));
    while f.len() - 1 < max_deg && rng.gen_bool(0.7) {
        let r = small_rational(rng);
        let mut next = vec![Rational::zero(); f.len() + 1];
        for (i, c) in f.iter().enumerate() {
            next[i + 1] += c.clone();
            next[i] -= c * &r;
        }
        f = next;
    }
    f
}

/// Twenty projection inputs, each as (polynomial, variables).
pub const PROJECTION_CORPUS: [(&str, &[&str]); 20] = [
    ("y*w^2 + x*w - y*z^2", &["x", "y", "z", "w"]),
    ("x*w^2 + y*z*w - x", &["x", "y", "z", "w"]),
    ("x^2 + y^2 - 1", &["x", "y"]),
    ("x^2 + y^2 + z^2 - 1", &["x", "y", "z"]),
    ("z^2 - x*y", &["x", "y", "z"]),
    ("y*z - x", &["x", "y", "z"]),
    ("x*y^2 + x^2*y", &["x", "y"]),
    ("y^3 - x^2", &["x", "y"]),
    ("x*y^3 + y^2 - x", &["x", "y"]),
    ("(y - x)*(y + x) - 1", &["x", "y"]),
    ("x*z^3 - y*z + 1", &["x", "y", "z"]),
    ("x*y*z^2 + (x - y)*z + y^2", &["x", "y", "z"]),
    ("z^3 + x*z^2 + y*z + x*y", &["x", "y", "z"]),
    ("x^2*z^2 - y^2*z + x - y", &["x", "y", "z"]),
    ("w^3 - x*y*z", &["x", "y", "z", "w"]),
    ("x*w^2 + y*w + z", &["x", "y", "z", "w"]),
    ("y^4 - x*y^2 + x^3", &["x", "y"]),
    ("(x^2 + 1)*y^2 + x*y - 2", &["x", "y"]),
    ("x*y^2 + 2*y - x^3", &["x", "y"]),
    ("z^4 + x*z^2 + y*z - x", &["x", "y", "z"]),
];
