//! Relation expressions: a small grammar over generator names.
//!
//! ```text
//! relation := expr '=' expr
//! expr     := ['-'] term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := atom ['^' integer]
//! atom     := integer ['/' integer] | identifier | "literal"
//!           | '(' expr ')' | '[' expr ',' expr ']' | '{' expr ',' expr '}'
//! ```
//!
//! The identifiers `a`, `b`, `c` and `l` are parameters; everything else
//! names a generator. Quoted text is a literal differential operator.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{int, var, Poly, Rat, Var};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Gen(String),
    Literal(String),
    Num(Rat),
    Param(Var),
    /// Terms with a leading-minus flag.
    Sum(Vec<(bool, Expr)>),
    Product(Vec<Expr>),
    Pow(Box<Expr>, u32),
    Bracket(Box<Expr>, Box<Expr>),
    Anti(Box<Expr>, Box<Expr>),
}

const PARAMS: [(&str, Var); 4] = [("a", Var::A), ("b", Var::B), ("c", Var::C), ("l", Var::L)];

impl Expr {
    pub fn gen(name: &str) -> Expr {
        Expr::Gen(name.to_string())
    }

    pub fn bracket(a: Expr, b: Expr) -> Expr {
        Expr::Bracket(Box::new(a), Box::new(b))
    }

    /// `self - other`.
    pub fn minus(self, other: Expr) -> Expr {
        Expr::Sum(vec![(false, self), (true, other)])
    }

    /// The value as a scalar polynomial when no generator occurs.
    pub fn as_scalar(&self) -> Option<Poly> {
        Some(match self {
            Expr::Gen(_) | Expr::Literal(_) | Expr::Bracket(..) | Expr::Anti(..) => return None,
            Expr::Num(r) => Poly::constant(r.clone()),
            Expr::Param(v) => var(*v),
            Expr::Sum(ts) => {
                let mut acc = Poly::zero();
                for (neg, t) in ts {
                    let p = t.as_scalar()?;
                    acc = if *neg { &acc - &p } else { &acc + &p };
                }
                acc
            }
            Expr::Product(fs) => {
                let mut acc = int(1);
                for f in fs {
                    acc = &acc * &f.as_scalar()?;
                }
                acc
            }
            Expr::Pow(b, e) => b.as_scalar()?.pow(*e),
        })
    }

    /// Generator names, in order of first appearance.
    pub fn generators(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.walk(&mut |e| {
            if let Expr::Gen(g) = e {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        });
        out
    }

    pub fn has_literal(&self) -> bool {
        let mut found = false;
        self.walk(&mut |e| found |= matches!(e, Expr::Literal(_)));
        found
    }

    fn walk(&self, f: &mut impl FnMut(&Expr)) {
        f(self);
        match self {
            Expr::Sum(ts) => ts.iter().for_each(|(_, t)| t.walk(f)),
            Expr::Product(fs) => fs.iter().for_each(|t| t.walk(f)),
            Expr::Pow(b, _) => b.walk(f),
            Expr::Bracket(x, y) | Expr::Anti(x, y) => {
                x.walk(f);
                y.walk(f);
            }
            _ => {}
        }
    }

    /// Replace generators by expressions and parameters by parameters.
    pub fn substitute(&self, gens: &BTreeMap<String, Expr>, params: &[(Var, Var)]) -> Expr {
        let rec = |e: &Expr| e.substitute(gens, params);
        match self {
            Expr::Gen(g) => gens.get(g).cloned().unwrap_or_else(|| self.clone()),
            Expr::Param(v) => Expr::Param(
                params
                    .iter()
                    .find(|(from, _)| from == v)
                    .map(|(_, to)| *to)
                    .unwrap_or(*v),
            ),
            Expr::Literal(_) | Expr::Num(_) => self.clone(),
            Expr::Sum(ts) => Expr::Sum(ts.iter().map(|(n, t)| (*n, rec(t))).collect()),
            Expr::Product(fs) => Expr::Product(fs.iter().map(rec).collect()),
            Expr::Pow(b, e) => Expr::Pow(Box::new(rec(b)), *e),
            Expr::Bracket(x, y) => Expr::Bracket(Box::new(rec(x)), Box::new(rec(y))),
            Expr::Anti(x, y) => Expr::Anti(Box::new(rec(x)), Box::new(rec(y))),
        }
    }
}

fn needs_parens_in_product(e: &Expr) -> bool {
    matches!(e, Expr::Sum(_) | Expr::Product(_))
}

fn write_pow_base(f: &mut fmt::Formatter<'_>, e: &Expr) -> fmt::Result {
    let atomic = match e {
        Expr::Num(r) => r.is_integer(),
        Expr::Gen(_) | Expr::Param(_) | Expr::Literal(_) | Expr::Bracket(..) | Expr::Anti(..) => {
            true
        }
        _ => false,
    };
    if atomic {
        write!(f, "{e}")
    } else {
        write!(f, "({e})")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Gen(g) => write!(f, "{g}"),
            Expr::Literal(s) => write!(f, "\"{s}\""),
            Expr::Num(r) => write!(f, "{r}"),
            Expr::Param(v) => write!(f, "{}", v.name()),
            Expr::Sum(ts) => {
                for (i, (neg, t)) in ts.iter().enumerate() {
                    match (i, neg) {
                        (0, true) => write!(f, "-")?,
                        (0, false) => {}
                        (_, true) => write!(f, " - ")?,
                        (_, false) => write!(f, " + ")?,
                    }
                    if matches!(t, Expr::Sum(_)) {
                        write!(f, "({t})")?;
                    } else {
                        write!(f, "{t}")?;
                    }
                }
                Ok(())
            }
            Expr::Product(fs) => {
                for (i, t) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, "*")?;
                    }
                    if needs_parens_in_product(t) {
                        write!(f, "({t})")?;
                    } else {
                        write!(f, "{t}")?;
                    }
                }
                Ok(())
            }
            Expr::Pow(b, e) => {
                write_pow_base(f, b)?;
                write!(f, "^{e}")
            }
            Expr::Bracket(x, y) => write!(f, "[{x},{y}]"),
            Expr::Anti(x, y) => write!(f, "{{{x},{y}}}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(u64),
    Str(String),
    Sym(char),
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let bytes: Vec<(usize, char)> = src.char_indices().collect();
    let mut i = 0;
    while i < bytes.len() {
        let (pos, ch) = bytes[i];
        if ch.is_whitespace() {
            i += 1;
        } else if ch.is_ascii_alphabetic() {
            let mut j = i;
            while j < bytes.len() && bytes[j].1.is_ascii_alphanumeric() {
                j += 1;
            }
            out.push((pos, Tok::Ident(bytes[i..j].iter().map(|p| p.1).collect())));
            i = j;
        } else if ch.is_ascii_digit() {
            let mut j = i;
            while j < bytes.len() && bytes[j].1.is_ascii_digit() {
                j += 1;
            }
            let text: String = bytes[i..j].iter().map(|p| p.1).collect();
            let n = text.parse().map_err(|_| Error::Syntax {
                pos,
                msg: "integer too large".into(),
            })?;
            out.push((pos, Tok::Int(n)));
            i = j;
        } else if ch == '"' {
            let mut j = i + 1;
            while j < bytes.len() && bytes[j].1 != '"' {
                j += 1;
            }
            if j == bytes.len() {
                return Err(Error::Syntax {
                    pos,
                    msg: "unterminated literal".into(),
                });
            }
            out.push((pos, Tok::Str(bytes[i + 1..j].iter().map(|p| p.1).collect())));
            i = j + 1;
        } else if "()[]{},*+-^/=".contains(ch) {
            out.push((pos, Tok::Sym(ch)));
            i += 1;
        } else {
            return Err(Error::Syntax {
                pos,
                msg: format!("unexpected character `{ch}`"),
            });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|t| t.0).unwrap_or(self.end)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect_close(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else if self.peek().is_none() {
            self.err(format!("unbalanced bracket: expected `{c}`"))
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut terms = Vec::new();
        let mut neg = self.eat('-');
        loop {
            terms.push((neg, self.term()?));
            if self.eat('+') {
                neg = false;
            } else if self.eat('-') {
                neg = true;
            } else {
                break;
            }
        }
        if terms.len() == 1 && !terms[0].0 {
            return Ok(terms.pop().expect("one term").1);
        }
        Ok(Expr::Sum(terms))
    }

    fn term(&mut self) -> Result<Expr> {
        let mut factors = Vec::new();
        loop {
            match self.factor()? {
                Expr::Product(inner) => factors.extend(inner),
                f => factors.push(f),
            }
            if !self.eat('*') {
                break;
            }
        }
        if factors.len() == 1 {
            return Ok(factors.pop().expect("one factor"));
        }
        Ok(Expr::Product(factors))
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek() {
                Some(Tok::Int(e)) => {
                    let e = u32::try_from(*e).or_else(|_| self.err("exponent too large"))?;
                    self.at += 1;
                    return Ok(Expr::Pow(Box::new(base), e));
                }
                _ => return self.err("expected an integer exponent"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let Some(tok) = self.peek().cloned() else {
            return self.err("unexpected end of input");
        };
        self.at += 1;
        match tok {
            Tok::Int(n) => {
                let num = Rat::from_int(n as i64);
                if self.eat('/') {
                    match self.peek() {
                        Some(Tok::Int(d)) if *d != 0 => {
                            let d = Rat::from_int(*d as i64);
                            self.at += 1;
                            return Ok(Expr::Num(num.checked_div(&d)?));
                        }
                        _ => return self.err("expected a nonzero integer denominator"),
                    }
                }
                Ok(Expr::Num(num))
            }
            Tok::Ident(name) => Ok(match PARAMS.iter().find(|(p, _)| *p == name) {
                Some((_, v)) => Expr::Param(*v),
                None => Expr::Gen(name),
            }),
            Tok::Str(s) => Ok(Expr::Literal(s)),
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect_close(')')?;
                Ok(e)
            }
            Tok::Sym(open @ ('[' | '{')) => {
                let x = self.expr()?;
                if !self.eat(',') {
                    return self.err("expected `,`");
                }
                let y = self.expr()?;
                let (x, y) = (Box::new(x), Box::new(y));
                if open == '[' {
                    self.expect_close(']')?;
                    Ok(Expr::Bracket(x, y))
                } else {
                    self.expect_close('}')?;
                    Ok(Expr::Anti(x, y))
                }
            }
            Tok::Sym(c) => {
                self.at -= 1;
                self.err(format!("unexpected `{c}`"))
            }
        }
    }
}

fn parser(src: &str) -> Result<Parser> {
    Ok(Parser {
        toks: lex(src)?,
        at: 0,
        end: src.len(),
    })
}

/// Parse a single expression.
pub fn parse_expr(src: &str) -> Result<Expr> {
    let mut p = parser(src)?;
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// Parse `lhs = rhs`.
pub fn parse_equation(src: &str) -> Result<(Expr, Expr)> {
    let mut p = parser(src)?;
    let lhs = p.expr()?;
    if !p.eat('=') {
        return if p.peek().is_none() {
            p.err("expected `=`")
        } else {
            p.err("expected `=` or an operator")
        };
    }
    let rhs = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn round_trip(src: &str) {
        let e = parse_expr(src).unwrap();
        let printed = e.to_string();
        assert_eq!(parse_expr(&printed).unwrap(), e, "{src} -> {printed}");
    }

    #[test]
    fn shapes() {
        let (l, r) = parse_equation("[L,X1] = N1").unwrap();
        assert_eq!(l, Expr::bracket(Expr::gen("L"), Expr::gen("X1")));
        assert_eq!(r, Expr::gen("N1"));
        let e = parse_expr("(-2)*X1*X1 + (2)*X1").unwrap();
        let Expr::Sum(ts) = &e else { panic!() };
        assert_eq!(ts.len(), 2);
        assert_eq!(e.to_string(), "(-2)*X1*X1 + 2*X1");
        assert_eq!(parse_expr("1/2*{A,B}").unwrap().to_string(), "1/2*{A,B}");
    }

    #[test]
    fn parameters_and_scalars() {
        let e = parse_expr("(a+b+c+1)*(b-c)").unwrap();
        assert_eq!(
            e.as_scalar().unwrap(),
            crate::exact::parse_poly("(a+b+c+1)*(b-c)").unwrap()
        );
        assert!(parse_expr("a*X1").unwrap().as_scalar().is_none());
        assert_eq!(parse_expr("l").unwrap(), Expr::Param(Var::L));
    }

    #[test]
    fn round_trips() {
        for src in [
            "-{X1,L+L3} - {X3-I,L-L1} + (a+b+c+1)*((a+1)*(X1+X3-I) + (b+1)*X1)",
            "-2*X3^2 + 2*(I-X1)*X3",
            "(A*B)*C - (x)",
            "(1/2)^2*L + [L,[L,X1]]^3",
            "\"x*dx + a\" - N1",
            "((a+b)+c)",
        ] {
            round_trip(src);
        }
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_equation("[L,[L,X1] = N1").unwrap_err();
        assert!(matches!(e, Error::Syntax { pos: 10, .. }), "{e}");
        let e = parse_expr("[L,[L,X1]").unwrap_err();
        assert!(matches!(e, Error::Syntax { pos: 9, ref msg } if msg.contains("unbalanced")));
        assert!(parse_expr("X1 +").is_err());
        assert!(parse_expr("X1 ^ a").is_err());
        assert!(parse_expr("1/0").is_err());
        assert!(parse_expr("X1 # 2").is_err());
        assert!(parse_equation("X1").is_err());
    }
}
