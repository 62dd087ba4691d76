//! Reader for the canonical polynomial and element strings.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer ('/' integer)? | 'h' | 'x'i | 'y'i | 'r[' ints ']' | '(' expr ')'
//! ```
//!
//! Products are evaluated in the algebra, so `r[1] * x1` is reordered into
//! normal form.

use std::sync::Arc;

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::lattice::TorusDatum;
use crate::poly::{GTPoly, Var};
use crate::Rational;

#[derive(Clone, Debug)]
enum Expr {
    Number(Rational),
    Variable(Var),
    Monopole(Vec<i64>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Self { src: src.as_bytes(), pos: 0 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn digits(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn signed_int(&mut self) -> Result<i64> {
        let neg = self.eat(b'-');
        let d = self.digits()?;
        let v: i64 = match d.parse() {
            Ok(v) => v,
            Err(_) => return self.err("integer out of range"),
        };
        Ok(if neg { -v } else { v })
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(b'-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while self.eat(b'*') {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat(b'-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat(b'^') {
            let d = self.digits()?;
            match d.parse() {
                Ok(e) => Ok(Expr::Pow(Box::new(base), e)),
                Err(_) => self.err("exponent out of range"),
            }
        } else {
            Ok(base)
        }
    }

    fn index(&mut self) -> Result<usize> {
        let d = self.digits()?;
        match d.parse::<usize>() {
            Ok(i) if i >= 1 => Ok(i - 1),
            _ => self.err("variable indices start at 1"),
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let num: num::BigInt = self.digits()?.parse().expect("digits");
                if self.eat(b'/') {
                    let den: num::BigInt = self.digits()?.parse().expect("digits");
                    if den == 0.into() {
                        return self.err("zero denominator");
                    }
                    Ok(Expr::Number(Rational::new(num, den)))
                } else {
                    Ok(Expr::Number(Rational::from_integer(num)))
                }
            }
            Some(b'h') => {
                self.pos += 1;
                Ok(Expr::Variable(Var::H))
            }
            Some(b'x') => {
                self.pos += 1;
                Ok(Expr::Variable(Var::X(self.index()?)))
            }
            Some(b'y') => {
                self.pos += 1;
                Ok(Expr::Variable(Var::Y(self.index()?)))
            }
            Some(b'r') => {
                self.pos += 1;
                self.expect(b'[')?;
                let mut weight = Vec::new();
                if !self.eat(b']') {
                    loop {
                        weight.push(self.signed_int()?);
                        if self.eat(b']') {
                            break;
                        }
                        self.expect(b',')?;
                    }
                }
                Ok(Expr::Monopole(weight))
            }
            Some(c) => self.err(format!("unexpected character '{}'", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

fn parse_expr(src: &str) -> Result<Expr> {
    let mut p = Parser::new(src);
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}

fn check_var(v: Var, n: usize) -> Result<()> {
    match v {
        Var::X(i) | Var::Y(i) if i >= n => Err(Error::IndexOutOfRange { index: i + 1, len: n }),
        _ => Ok(()),
    }
}

fn eval_element(e: &Expr, datum: &Arc<TorusDatum>) -> Result<AlgebraElement> {
    let n = datum.n();
    Ok(match e {
        Expr::Number(c) => AlgebraElement::gt(datum.clone(), GTPoly::constant(n, c.clone()))?,
        Expr::Variable(v) => {
            check_var(*v, n)?;
            if matches!(v, Var::Y(_)) {
                return Err(Error::NotGtElement(v.to_string()));
            }
            AlgebraElement::gt(datum.clone(), GTPoly::var(n, *v))?
        }
        Expr::Monopole(w) => AlgebraElement::monopole(datum.clone(), w)?,
        Expr::Add(a, b) => &eval_element(a, datum)? + &eval_element(b, datum)?,
        Expr::Sub(a, b) => &eval_element(a, datum)? - &eval_element(b, datum)?,
        Expr::Mul(a, b) => eval_element(a, datum)?.multiply(&eval_element(b, datum)?)?,
        Expr::Neg(a) => -&eval_element(a, datum)?,
        Expr::Pow(a, k) => {
            let base = eval_element(a, datum)?;
            let mut out = AlgebraElement::one(datum.clone());
            for _ in 0..*k {
                out = out.multiply(&base)?;
            }
            out
        }
    })
}

fn eval_poly(e: &Expr, n: usize) -> Result<GTPoly> {
    Ok(match e {
        Expr::Number(c) => GTPoly::constant(n, c.clone()),
        Expr::Variable(v) => {
            check_var(*v, n)?;
            GTPoly::var(n, *v)
        }
        Expr::Monopole(_) => {
            return Err(Error::Parse { pos: 0, msg: "monopoles are not allowed in a polynomial".into() })
        }
        Expr::Add(a, b) => eval_poly(a, n)? + eval_poly(b, n)?,
        Expr::Sub(a, b) => eval_poly(a, n)? - eval_poly(b, n)?,
        Expr::Mul(a, b) => eval_poly(a, n)? * eval_poly(b, n)?,
        Expr::Neg(a) => -eval_poly(a, n)?,
        Expr::Pow(a, k) => eval_poly(a, n)?.pow(*k),
    })
}

/// Parses an algebra element over `datum`.
pub fn parse_element(src: &str, datum: &Arc<TorusDatum>) -> Result<AlgebraElement> {
    eval_element(&parse_expr(src)?, datum)
}

/// Parses a polynomial in `h`, `x_i`, `y_i` with `n` hypermultiplets.
pub fn parse_poly(src: &str, n: usize) -> Result<GTPoly> {
    eval_poly(&parse_expr(src)?, n)
}

/// Parses `"a,b,c"` (brackets and spaces optional) into integers.
pub fn parse_int_list(src: &str) -> Result<Vec<i64>> {
    let trimmed = src.trim().trim_start_matches('[').trim_end_matches(']').trim();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    trimmed
        .split(',')
        .map(|t| {
            t.trim().parse::<i64>().map_err(|_| Error::Parse {
                pos: 0,
                msg: format!("not an integer: {t:?}"),
            })
        })
        .collect()
}

/// Parses a comma separated list of rationals such as `"1/2,-3"`.
pub fn parse_rational_list(src: &str) -> Result<Vec<Rational>> {
    let trimmed = src.trim().trim_start_matches('[').trim_end_matches(']').trim();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    trimmed.split(',').map(|t| parse_rational(t.trim())).collect()
}

pub fn parse_rational(t: &str) -> Result<Rational> {
    let bad = || Error::Parse { pos: 0, msg: format!("not a rational: {t:?}") };
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let num: num::BigInt = num.parse().map_err(|_| bad())?;
    let den: num::BigInt = den.parse().map_err(|_| bad())?;
    if den == 0.into() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}
