//! Canonical text form of polynomials: `y*w^2 + x*w - y*z^2`.
//!
//! The printer emits terms in decreasing monomial order, writes `*` between
//! factors and `^` for powers, and the parser accepts that form plus
//! parentheses, implicit multiplication (`2x`, `3 x y`) and division by
//! nonzero constants.

use std::fmt;

use num_traits::{One, Signed, Zero};

use super::{Monomial, Polynomial, Rational};
use crate::error::{Error, Result};

/// Default variable names `x1, ..., xn`.
pub fn default_names(nvars: usize) -> Vec<String> {
    (1..=nvars).map(|i| format!("x{i}")).collect()
}

fn write_monomial(out: &mut String, m: &Monomial, names: &[impl AsRef<str>]) {
    let mut first = true;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            out.push('*');
        }
        first = false;
        out.push_str(names[i].as_ref());
        if e > 1 {
            out.push('^');
            out.push_str(&e.to_string());
        }
    }
}

/// Formats `f` using the given variable names.
pub fn format_polynomial(f: &Polynomial, names: &[impl AsRef<str>]) -> String {
    assert!(names.len() >= f.nvars(), "not enough variable names");
    if f.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in f.terms().rev().enumerate() {
        let negative = c.is_negative();
        let abs = c.abs();
        if k == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if m.is_one() {
            out.push_str(&abs.to_string());
        } else {
            if !abs.is_one() {
                out.push_str(&abs.to_string());
                out.push('*');
            }
            write_monomial(&mut out, m, names);
        }
    }
    out
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_polynomial(self, &default_names(self.nvars())))
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(num_bigint::BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(Token, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Token::Num(s.parse().expect("digits")), col));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Token::Ident(chars[start..i].iter().collect()), col));
            continue;
        }
        let tok = match c {
            '+' => Token::Plus,
            '-' => Token::Minus,
            '*' => Token::Star,
            '/' => Token::Slash,
            '^' => Token::Caret,
            '(' => Token::LParen,
            ')' => Token::RParen,
            _ => {
                return Err(Error::Parse {
                    line: 1,
                    column: col,
                    message: format!("unexpected character '{c}'"),
                })
            }
        };
        out.push((tok, col));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a, S: AsRef<str>> {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    names: &'a [S],
    end_col: usize,
}

impl<S: AsRef<str>> Parser<'_, S> {
    fn nvars(&self) -> usize {
        self.names.len()
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.tokens.get(self.pos).map(|(_, c)| *c).unwrap_or(self.end_col)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            line: 1,
            column: self.col(),
            message: message.into(),
        })
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                -self.term()?
            }
            Some(Token::Plus) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(Token::Slash) => {
                    self.pos += 1;
                    let d = self.power()?;
                    match d.constant_value() {
                        Some(c) if !c.is_zero() => acc = acc.scale(&c.recip()),
                        _ => return self.err("division only by nonzero constants"),
                    }
                }
                Some(Token::Num(_)) | Some(Token::Ident(_)) | Some(Token::LParen) => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some(&Token::Caret) {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Token::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = match n.try_into() {
                        Ok(e) => e,
                        Err(_) => return self.err("exponent too large"),
                    };
                    Ok(base.pow(e))
                }
                _ => self.err("expected a nonnegative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek().cloned() {
            Some(Token::Num(n)) => {
                self.pos += 1;
                Ok(Polynomial::constant(self.nvars(), Rational::from_integer(n)))
            }
            Some(Token::Ident(name)) => {
                let Some(i) = self.names.iter().position(|v| v.as_ref() == name) else {
                    return self.err(format!("undeclared variable '{name}'"));
                };
                self.pos += 1;
                Ok(Polynomial::var(self.nvars(), i))
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Token::RParen) {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(Token::Minus) => {
                self.pos += 1;
                Ok(-self.power()?)
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses a polynomial over the variables `names` (index order = variable order).
pub fn parse_polynomial(text: &str, names: &[impl AsRef<str>]) -> Result<Polynomial> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(Error::Parse {
            line: 1,
            column: 1,
            message: "empty polynomial".into(),
        });
    }
    let mut parser = Parser {
        tokens,
        pos: 0,
        names,
        end_col: text.chars().count() + 1,
    };
    let p = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return parser.err("trailing input");
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    const VARS: [&str; 4] = ["x", "y", "z", "w"];

    #[test]
    fn prints_canonically() {
        let f = parse_polynomial("y*w^2 + x*w - y*z^2", &VARS).unwrap();
        assert_eq!(format_polynomial(&f, &VARS), "y*w^2 - y*z^2 + x*w");
        let g = parse_polynomial("-3/2 x^2 + 1/3", &VARS).unwrap();
        assert_eq!(format_polynomial(&g, &VARS), "-3/2*x^2 + 1/3");
        assert_eq!(format_polynomial(&Polynomial::zero(4), &VARS), "0");
    }

    #[test]
    fn implicit_products_and_parens() {
        let a = parse_polynomial("2x y (x + 1)", &VARS).unwrap();
        let b = parse_polynomial("2*x^2*y + 2*x*y", &VARS).unwrap();
        assert_eq!(a, b);
        assert_eq!(
            parse_polynomial("-(x - y)^2", &VARS).unwrap(),
            parse_polynomial("-x^2 + 2*x*y - y^2", &VARS).unwrap()
        );
    }

    #[test]
    fn errors_carry_columns() {
        match parse_polynomial("x + q", &VARS) {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 5),
            other => panic!("{other:?}"),
        }
        assert!(parse_polynomial("x +", &VARS).is_err());
        assert!(parse_polynomial("x / y", &VARS).is_err());
        assert!(parse_polynomial("x $ y", &VARS).is_err());
        assert!(parse_polynomial("", &VARS).is_err());
    }

    #[test]
    fn default_display() {
        let f = parse_polynomial("x*y - 1", &VARS).unwrap();
        assert_eq!(f.to_string(), "x1*x2 - 1");
    }
}
