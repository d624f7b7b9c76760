//! Text form of polynomials and rational functions.
//!
//! Polynomials print as a sum of terms in descending graded-lex order, each
//! term a rational coefficient followed by `*`-separated powers, for example
//! `x^2 - 3/2*x*y + a + 1`. Parsing accepts any arithmetic expression over
//! integers and indeterminates built with `+ - * / ^` and parentheses, so the
//! printed form round-trips exactly.

use std::fmt;
use std::str::FromStr;

use super::frac::Frac;
use super::poly::Poly;
use super::rat::Rat;
use super::var::Var;
use crate::error::{Error, Result};

fn write_poly(f: &mut fmt::Formatter<'_>, p: &Poly) -> fmt::Result {
    if p.is_zero() {
        return f.write_str("0");
    }
    for (i, (m, c)) in p.terms().iter().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        match (i, neg) {
            (0, true) => f.write_str("-")?,
            (0, false) => {}
            (_, true) => f.write_str(" - ")?,
            (_, false) => f.write_str(" + ")?,
        }
        if m.is_one() {
            write!(f, "{mag}")?;
        } else if mag.is_one() {
            write!(f, "{m}")?;
        } else {
            write!(f, "{mag}*{m}")?;
        }
    }
    Ok(())
}

/// `p` collected by monomials in `vars`, lowest degree first, with each
/// coefficient printed compactly, e.g. `(b+1) - (b+1)*x - (b+c+2)*y`.
pub fn display_grouped(p: &Poly, vars: &[Var]) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut groups: Vec<_> = p.split_by(vars).into_iter().collect();
    groups.sort_by_key(|(m, _)| {
        let exps: Vec<std::cmp::Reverse<u32>> =
            vars.iter().map(|v| std::cmp::Reverse(m.exp(*v))).collect();
        (m.degree(), exps)
    });
    let mut out = String::new();
    for (i, (m, c)) in groups.iter().enumerate() {
        let neg = c.terms()[0].1.is_negative();
        let mag = if neg { -c } else { c.clone() };
        out.push_str(match (i, neg) {
            (0, true) => "-",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        });
        let compact = mag.to_string().replace(" + ", "+").replace(" - ", "-");
        let coef = if mag.len() > 1 {
            format!("({compact})")
        } else {
            compact
        };
        if m.is_one() {
            out.push_str(&coef);
        } else if mag.is_one() {
            out.push_str(&m.to_string());
        } else {
            out.push_str(&format!("{coef}*{m}"));
        }
    }
    out
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self)
    }
}

impl fmt::Display for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            return write_poly(f, self.num());
        }
        write!(f, "({})/(", self.num())?;
        for (i, (g, e)) in self.den_factors().iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "({g})")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        f.write_str(")")
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

    fn skip_ws(&mut self) {
        while let Some(ch) = self.src[self.pos..].chars().next() {
            if ch.is_whitespace() {
                self.pos += ch.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, ch: char) -> bool {
        if self.peek() == Some(ch) {
            self.pos += ch.len_utf8();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Frac> {
        let mut acc = if self.eat('-') {
            -self.term()?
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

    fn term(&mut self) -> Result<Frac> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.power()?;
            } else if self.peek() == Some('/') {
                let at = self.pos;
                self.pos += 1;
                let rhs = self.power()?;
                acc = acc.div(&rhs).map_err(|_| Error::Syntax {
                    pos: at,
                    msg: "division by zero".into(),
                })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<Frac> {
        let base = self.atom()?;
        if self.eat('^') {
            self.skip_ws();
            let e = self.integer()?;
            let e: u32 = e
                .to_string()
                .parse()
                .map_err(|_| self.err("exponent out of range"))?;
            let mut acc = Frac::one();
            for _ in 0..e {
                acc = &acc * &base;
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<num_bigint::BigInt> {
        let start = self.pos;
        let digits: String = self.src[self.pos..]
            .chars()
            .take_while(|c| c.is_ascii_digit())
            .collect();
        if digits.is_empty() {
            return Err(self.err("expected integer"));
        }
        self.pos += digits.len();
        digits.parse().map_err(|_| Error::Syntax {
            pos: start,
            msg: "invalid integer".into(),
        })
    }

    fn atom(&mut self) -> Result<Frac> {
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
                let n = self.integer()?;
                Ok(Frac::constant(Rat::from(n)))
            }
            Some(c) if c.is_alphabetic() => {
                let start = self.pos;
                let name: String = self.src[self.pos..]
                    .chars()
                    .take_while(|c| c.is_alphanumeric() || *c == '_')
                    .collect();
                self.pos += name.len();
                let v = Var::from_name(&name).ok_or_else(|| Error::Syntax {
                    pos: start,
                    msg: format!("unknown indeterminate `{name}`"),
                })?;
                Ok(Frac::from_poly(Poly::var(v)))
            }
            Some(c) => Err(self.err(format!("unexpected `{c}`"))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Parse a rational-function expression.
pub fn parse_frac(src: &str) -> Result<Frac> {
    let mut p = Parser { src, pos: 0 };
    let out = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

/// Parse a polynomial expression; division is allowed only by constants.
pub fn parse_poly(src: &str) -> Result<Poly> {
    let f = parse_frac(src)?;
    match f.as_poly() {
        Some(p) => Ok(p.clone()),
        None => Err(Error::Syntax {
            pos: 0,
            msg: "expression is not a polynomial".into(),
        }),
    }
}

impl FromStr for Poly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Poly> {
        parse_poly(s)
    }
}

impl FromStr for Frac {
    type Err = Error;
    fn from_str(s: &str) -> Result<Frac> {
        parse_frac(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grouped_display() {
        let p = parse_poly("(b+1) - (b+1)*x - (b+c+2)*y").unwrap();
        assert_eq!(display_grouped(&p, &[Var::X, Var::Y]), "(b+1) - (b+1)*x - (b+c+2)*y");
        let q = parse_poly("2*x*y - a*x^2 + 1/2").unwrap();
        assert_eq!(display_grouped(&q, &[Var::X, Var::Y]), "1/2 - a*x^2 + 2*x*y");
        assert_eq!(parse_poly(&display_grouped(&q, &[Var::X, Var::Y])).unwrap(), q);
    }

    #[test]
    fn print_and_parse() {
        let p: Poly = "(a+1)*(a+b+2)".parse().unwrap();
        assert_eq!(p.to_string(), "a^2 + a*b + 3*a + b + 2");
        let q: Poly = "x^2 - 3/2*x*y + a + 1".parse().unwrap();
        assert_eq!(q.to_string(), "x^2 - 3/2*x*y + a + 1");
        assert_eq!("-(x)".parse::<Poly>().unwrap().to_string(), "-x");
        assert_eq!("0".parse::<Poly>().unwrap(), Poly::zero());
    }

    #[test]
    fn frac_round_trip() {
        let f: Frac = "(n+1)/((2*n+2)*(n+a))".parse().unwrap();
        let s = f.to_string();
        let g: Frac = s.parse().unwrap();
        assert!(f.frac_eq(&g));
        assert_eq!(g.to_string(), s);
    }

    #[test]
    fn syntax_errors_carry_position() {
        match "x + * y".parse::<Poly>() {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert!("x/(x-x)".parse::<Frac>().is_err());
        assert!("1/x".parse::<Poly>().is_err());
        assert!("q + 1".parse::<Poly>().is_err());
    }
}
