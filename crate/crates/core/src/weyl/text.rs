//! Text form of differential operators.
//!
//! Derivatives are written as identifiers `dx`, `dyy`, `dxxy` and so on
//! (`d` followed by the letters of the variables differentiated). An operator
//! expression is parsed by composing its factors left to right, so `x*dx` is
//! `x d/dx` while `dx*x` is `x d/dx + 1`. The printer emits each normal-form
//! term as `(coefficient)*dname`, which parses back to the same operator.

use std::fmt;

use super::DiffOp;
use crate::error::{Error, Result};
use crate::exact::{Poly, Rat, Var};

pub(crate) fn deriv_name(i: u32, j: u32) -> String {
    let mut s = String::from("d");
    s.extend(std::iter::repeat('x').take(i as usize));
    s.extend(std::iter::repeat('y').take(j as usize));
    s
}

fn parse_deriv(name: &str) -> Option<(u32, u32)> {
    let rest = name.strip_prefix('d')?;
    if rest.is_empty() {
        return None;
    }
    let i = rest.chars().take_while(|&c| c == 'x').count();
    let j = rest[i..].chars().take_while(|&c| c == 'y').count();
    if i + j != rest.len() {
        return None;
    }
    Some((i as u32, j as u32))
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        // Highest order first reads like the usual way of writing operators.
        let mut terms: Vec<_> = self.terms().collect();
        terms.sort_by_key(|(&(i, j), _)| (std::cmp::Reverse(i + j), std::cmp::Reverse(i)));
        for (n, (&(i, j), c)) in terms.into_iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            if (i, j) == (0, 0) {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})*{}", deriv_name(i, j))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn peek(&mut self) -> Option<char> {
        let rest = &self.src[self.pos..];
        let trimmed = rest.trim_start();
        self.pos += rest.len() - trimmed.len();
        trimmed.chars().next()
    }

    fn eat(&mut self, ch: char) -> bool {
        if self.peek() == Some(ch) {
            self.pos += ch.len_utf8();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<DiffOp> {
        let mut acc = if self.eat('-') {
            -&self.term()?
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<DiffOp> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = acc.compose(&self.power()?);
            } else if self.peek() == Some('/') {
                let at = self.pos;
                self.pos += 1;
                let d = self.power()?;
                let c = (d.order() == Some(0))
                    .then(|| d.coeff(0, 0).as_constant())
                    .flatten()
                    .and_then(|c| c.recip())
                    .ok_or(Error::Syntax {
                        pos: at,
                        msg: "division only by nonzero constants".into(),
                    })?;
                acc = acc.scale(&c);
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<DiffOp> {
        let base = self.atom()?;
        if self.eat('^') {
            self.peek();
            let digits: String = self.src[self.pos..]
                .chars()
                .take_while(|c| c.is_ascii_digit())
                .collect();
            let e: u32 = digits.parse().map_err(|_| self.err("expected exponent"))?;
            self.pos += digits.len();
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<DiffOp> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits: String = self.src[self.pos..]
                    .chars()
                    .take_while(|c| c.is_ascii_digit())
                    .collect();
                self.pos += digits.len();
                let n: Rat = digits.parse()?;
                Ok(DiffOp::mult(Poly::constant(n)))
            }
            Some(c) if c.is_alphabetic() => {
                let start = self.pos;
                let name: String = self.src[self.pos..]
                    .chars()
                    .take_while(|c| c.is_alphanumeric() || *c == '_')
                    .collect();
                self.pos += name.len();
                if let Some(v) = Var::from_name(&name) {
                    return Ok(DiffOp::mult(Poly::var(v)));
                }
                if let Some((i, j)) = parse_deriv(&name) {
                    return Ok(DiffOp::term(i, j, Poly::one()));
                }
                Err(Error::Syntax {
                    pos: start,
                    msg: format!("unknown symbol `{name}`"),
                })
            }
            Some(c) => Err(self.err(format!("unexpected `{c}`"))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Parse an operator expression.
pub fn parse_diffop(src: &str) -> Result<DiffOp> {
    let mut p = Parser { src, pos: 0 };
    let out = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::builtin;

    #[test]
    fn composition_order_matters() {
        let a = parse_diffop("x*dx").unwrap();
        let b = parse_diffop("dx*x").unwrap();
        assert_eq!(&b - &a, DiffOp::identity());
    }

    #[test]
    fn round_trip_builtins() {
        for name in ["L", "L1", "L3", "N1", "N3", "M3", "J1", "s3s", "K3"] {
            let op = builtin(name).unwrap();
            let again = parse_diffop(&op.to_string()).unwrap();
            assert_eq!(op, again, "{name}");
        }
        assert_eq!(parse_diffop("0").unwrap(), DiffOp::zero());
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_diffop("dz").is_err());
        assert!(parse_diffop("x/dx").is_err());
        assert!(parse_diffop("(x").is_err());
    }
}
