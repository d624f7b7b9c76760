use std::ops::{Add, Mul, Neg, Sub};

use super::poly::{Assignment, Poly};
use super::rat::Rat;
use super::var::Var;
use crate::error::{Error, Result};

/// A rational function kept as a numerator over a product of denominator
/// factors.
///
/// Each stored factor is a non-constant primitive polynomial with integer
/// coefficients and positive leading coefficient, so equal factors are
/// structurally equal and common denominators are formed factor by factor.
/// No polynomial GCD is ever taken: equality is decided by cross
/// multiplication.
#[derive(Clone, Debug, Default)]
pub struct Frac {
    num: Poly,
    den: Vec<(Poly, u32)>,
}

fn insert_factor(den: &mut Vec<(Poly, u32)>, f: Poly, e: u32) {
    if e == 0 {
        return;
    }
    match den.binary_search_by(|(g, _)| g.cmp(&f)) {
        Ok(i) => den[i].1 += e,
        Err(i) => den.insert(i, (f, e)),
    }
}

impl Frac {
    pub fn zero() -> Frac {
        Frac::default()
    }

    pub fn one() -> Frac {
        Frac::from_poly(Poly::one())
    }

    pub fn from_poly(p: Poly) -> Frac {
        Frac {
            num: p,
            den: Vec::new(),
        }
    }

    pub fn constant(c: impl Into<Rat>) -> Frac {
        Frac::from_poly(Poly::constant(c))
    }

    /// `num / den`, rejecting the zero denominator.
    pub fn new(num: Poly, den: Poly) -> Result<Frac> {
        Frac::with_factors(num, vec![(den, 1)])
    }

    /// `num / prod(f^e)`, rejecting zero factors.
    pub fn with_factors(num: Poly, factors: Vec<(Poly, u32)>) -> Result<Frac> {
        let mut out = Frac::from_poly(num);
        for (f, e) in factors {
            if e == 0 {
                continue;
            }
            if f.is_zero() {
                return Err(Error::ZeroDenominator);
            }
            out.push_factor(f, e);
        }
        if out.num.is_zero() {
            out.den.clear();
        }
        Ok(out)
    }

    fn push_factor(&mut self, f: Poly, e: u32) {
        let (content, prim) = f.primitive_part();
        let inv = content.recip().expect("nonzero factor").pow(e);
        self.num = self.num.scale(&inv);
        if !prim.is_constant() {
            insert_factor(&mut self.den, prim, e);
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den_factors(&self) -> &[(Poly, u32)] {
        &self.den
    }

    /// The denominator expanded into a single polynomial.
    pub fn den_poly(&self) -> Poly {
        self.den
            .iter()
            .fold(Poly::one(), |acc, (f, e)| &acc * &f.pow(*e))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    /// The polynomial value when the denominator is trivial.
    pub fn as_poly(&self) -> Option<&Poly> {
        if self.den.is_empty() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn as_constant(&self) -> Option<Rat> {
        if self.den.is_empty() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn uses(&self, v: Var) -> bool {
        self.num.uses(v) || self.den.iter().any(|(f, _)| f.uses(v))
    }

    pub fn scale(&self, c: &Rat) -> Frac {
        let mut out = self.clone();
        out.num = out.num.scale(c);
        if out.num.is_zero() {
            out.den.clear();
        }
        out
    }

    pub fn mul_poly(&self, p: &Poly) -> Frac {
        let mut out = self.clone();
        out.num = &out.num * p;
        if out.num.is_zero() {
            out.den.clear();
        }
        out
    }

    /// Multiplicative inverse; the numerator becomes a single new factor.
    pub fn inv(&self) -> Result<Frac> {
        if self.num.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let mut out = Frac::from_poly(self.den_poly());
        out.push_factor(self.num.clone(), 1);
        Ok(out)
    }

    pub fn div(&self, other: &Frac) -> Result<Frac> {
        Ok(self * &other.inv()?)
    }

    /// The common multiple of both factor lists and each side's cofactor.
    fn common_den(&self, other: &Frac) -> (Vec<(Poly, u32)>, Poly, Poly) {
        let mut lcm = self.den.clone();
        for (f, e) in &other.den {
            match lcm.iter_mut().find(|(g, _)| g == f) {
                Some((_, le)) => *le = (*le).max(*e),
                None => insert_factor(&mut lcm, f.clone(), *e),
            }
        }
        let cofactor = |den: &[(Poly, u32)]| {
            lcm.iter().fold(Poly::one(), |acc, (f, e)| {
                let have = den.iter().find(|(g, _)| g == f).map_or(0, |(_, k)| *k);
                &acc * &f.pow(e - have)
            })
        };
        let ca = cofactor(&self.den);
        let cb = cofactor(&other.den);
        (lcm, ca, cb)
    }

    fn combine(&self, other: &Frac, negate: bool) -> Frac {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { -other } else { other.clone() };
        }
        if self.den == other.den {
            let num = if negate {
                &self.num - &other.num
            } else {
                &self.num + &other.num
            };
            let den = if num.is_zero() { Vec::new() } else { self.den.clone() };
            return Frac { num, den };
        }
        let (lcm, ca, cb) = self.common_den(other);
        let lhs = &self.num * &ca;
        let rhs = &other.num * &cb;
        let num = if negate { &lhs - &rhs } else { &lhs + &rhs };
        let den = if num.is_zero() { Vec::new() } else { lcm };
        Frac { num, den }
    }

    /// Equality by cross multiplication over the common denominator.
    pub fn frac_eq(&self, other: &Frac) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        let (_, ca, cb) = self.common_den(other);
        &self.num * &ca == &other.num * &cb
    }

    /// Cancel denominator factors that divide the numerator exactly.
    pub fn reduce(&self) -> Frac {
        let mut num = self.num.clone();
        let mut den = Vec::new();
        for (f, e) in &self.den {
            let mut left = *e;
            while left > 0 {
                match num.div_exact(f) {
                    Some(q) => {
                        num = q;
                        left -= 1;
                    }
                    None => break,
                }
            }
            if left > 0 {
                den.push((f.clone(), left));
            }
        }
        if num.is_zero() {
            den.clear();
        }
        Frac { num, den }
    }

    /// Simultaneous substitution; fails if a denominator factor becomes zero.
    pub fn subst(&self, map: &[(Var, Poly)]) -> Result<Frac> {
        let mut out = Frac::from_poly(self.num.subst(map));
        for (f, e) in &self.den {
            let g = f.subst(map);
            if g.is_zero() {
                return Err(Error::DenominatorVanishes);
            }
            out.push_factor(g, *e);
        }
        if out.num.is_zero() {
            out.den.clear();
        }
        Ok(out)
    }

    pub fn shift(&self, v: Var, by: &Rat) -> Result<Frac> {
        if by.is_zero() || !self.uses(v) {
            return Ok(self.clone());
        }
        let rep = &Poly::var(v) + &Poly::constant(by.clone());
        self.subst(&[(v, rep)])
    }

    /// Substitute exact values for the assigned variables only.
    pub fn eval_partial(&self, at: &Assignment) -> Result<Frac> {
        let mut out = Frac::from_poly(self.num.eval_partial(at));
        for (f, e) in &self.den {
            let g = f.eval_partial(at);
            if g.is_zero() {
                return Err(Error::DenominatorVanishes);
            }
            out.push_factor(g, *e);
        }
        if out.num.is_zero() {
            out.den.clear();
        }
        Ok(out)
    }

    pub fn eval(&self, at: &Assignment) -> Result<Rat> {
        let mut den = Rat::one();
        for (f, e) in &self.den {
            let v = f.eval(at)?;
            if v.is_zero() {
                return Err(Error::DenominatorVanishes);
            }
            den = &den * &v.pow(*e);
        }
        let num = self.num.eval(at)?;
        Ok(&num / &den)
    }

    /// Total degree of the numerator and of the expanded denominator.
    pub fn degrees(&self) -> (u32, u32) {
        let dn = self.num.degree().unwrap_or(0);
        let dd = self
            .den
            .iter()
            .map(|(f, e)| f.degree().unwrap_or(0) * e)
            .sum();
        (dn, dd)
    }

    pub fn map_num(&self, f: impl FnOnce(&Poly) -> Poly) -> Frac {
        let num = f(&self.num);
        let den = if num.is_zero() { Vec::new() } else { self.den.clone() };
        Frac { num, den }
    }
}

impl PartialEq for Frac {
    fn eq(&self, other: &Frac) -> bool {
        self.frac_eq(other)
    }
}

impl<'a> Add<&'a Frac> for &'a Frac {
    type Output = Frac;
    fn add(self, rhs: &'a Frac) -> Frac {
        self.combine(rhs, false)
    }
}

impl<'a> Sub<&'a Frac> for &'a Frac {
    type Output = Frac;
    fn sub(self, rhs: &'a Frac) -> Frac {
        self.combine(rhs, true)
    }
}

impl<'a> Mul<&'a Frac> for &'a Frac {
    type Output = Frac;
    fn mul(self, rhs: &'a Frac) -> Frac {
        let num = &self.num * &rhs.num;
        if num.is_zero() {
            return Frac::zero();
        }
        let mut den = self.den.clone();
        for (f, e) in &rhs.den {
            insert_factor(&mut den, f.clone(), *e);
        }
        Frac { num, den }
    }
}

impl Neg for &Frac {
    type Output = Frac;
    fn neg(self) -> Frac {
        Frac {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for Frac {
    type Output = Frac;
    fn neg(self) -> Frac {
        -&self
    }
}

macro_rules! owned_ops {
    ($tr:ident, $method:ident) => {
        impl $tr<Frac> for Frac {
            type Output = Frac;
            fn $method(self, rhs: Frac) -> Frac {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Frac> for Frac {
            type Output = Frac;
            fn $method(self, rhs: &'a Frac) -> Frac {
                (&self).$method(rhs)
            }
        }
    };
}

owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl From<Poly> for Frac {
    fn from(p: Poly) -> Frac {
        Frac::from_poly(p)
    }
}

impl From<Rat> for Frac {
    fn from(c: Rat) -> Frac {
        Frac::constant(c)
    }
}
