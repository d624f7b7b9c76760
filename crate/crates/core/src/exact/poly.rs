use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::mono::Mono;
use super::rat::Rat;
use super::var::{Var, NVARS};
use crate::error::{Error, Result};

/// A sparse polynomial over the global indeterminates with exact rational
/// coefficients. Terms are kept in strictly descending monomial order and no
/// zero coefficient is ever stored, so structural equality is polynomial
/// equality.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Poly {
    terms: Vec<(Mono, Rat)>,
}

/// A partial assignment of exact values to indeterminates.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assignment {
    vals: [Option<Rat>; NVARS],
}

impl Assignment {
    pub fn new() -> Assignment {
        Assignment::default()
    }

    pub fn with(mut self, v: Var, val: impl Into<Rat>) -> Assignment {
        self.set(v, val.into());
        self
    }

    pub fn set(&mut self, v: Var, val: Rat) {
        self.vals[v.index()] = Some(val);
    }

    pub fn get(&self, v: Var) -> Option<&Rat> {
        self.vals[v.index()].as_ref()
    }
}

fn normalize(mut terms: Vec<(Mono, Rat)>) -> Vec<(Mono, Rat)> {
    terms.sort_by(|x, y| y.0.cmp(&x.0));
    let mut out: Vec<(Mono, Rat)> = Vec::with_capacity(terms.len());
    for (m, c) in terms {
        match out.last_mut() {
            Some((lm, lc)) if *lm == m => *lc += &c,
            _ => {
                if let Some((_, lc)) = out.last() {
                    if lc.is_zero() {
                        out.pop();
                    }
                }
                out.push((m, c));
            }
        }
    }
    if let Some((_, lc)) = out.last() {
        if lc.is_zero() {
            out.pop();
        }
    }
    out
}

fn from_map(acc: HashMap<Mono, Rat>) -> Poly {
    let mut terms: Vec<(Mono, Rat)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    terms.sort_by(|x, y| y.0.cmp(&x.0));
    Poly { terms }
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: impl Into<Rat>) -> Poly {
        let c = c.into();
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly {
                terms: vec![(Mono::ONE, c)],
            }
        }
    }

    pub fn int(n: i64) -> Poly {
        Poly::constant(Rat::from_int(n))
    }

    pub fn var(v: Var) -> Poly {
        Poly::monomial(Mono::var(v), Rat::one())
    }

    pub fn monomial(m: Mono, c: Rat) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    pub fn from_terms(terms: Vec<(Mono, Rat)>) -> Poly {
        Poly {
            terms: normalize(terms),
        }
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> &[(Mono, Rat)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// The constant value, if the polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.as_slice() {
            [] => Some(Rat::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<&(Mono, Rat)> {
        self.terms.first()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    pub fn degree_in(&self, vars: &[Var]) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree_in(vars)).max()
    }

    pub fn uses(&self, v: Var) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(v) > 0)
    }

    pub fn vars(&self) -> Vec<Var> {
        Var::ALL.into_iter().filter(|&v| self.uses(v)).collect()
    }

    pub fn only_uses(&self, allowed: &[Var]) -> bool {
        self.vars().iter().all(|v| allowed.contains(v))
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    pub fn mul_mono(&self, m: Mono, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(t, x)| (*t * m, x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative.
    pub fn derive(&self, v: Var) -> Poly {
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| m.derive(v).map(|(e, d)| (d, c * &Rat::from_int(e as i64))))
            .collect::<Vec<_>>();
        // Dividing out one power of v keeps the order strict, no merge needed.
        Poly { terms }
    }

    /// Evaluate completely; every variable in use must be assigned.
    pub fn eval(&self, at: &Assignment) -> Result<Rat> {
        let mut powers: [Vec<Rat>; NVARS] = Default::default();
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.factors() {
                let base = at.get(v).ok_or(Error::UnassignedIndeterminate(v.name()))?;
                let pw = &mut powers[v.index()];
                if pw.is_empty() {
                    pw.push(Rat::one());
                }
                while pw.len() <= e as usize {
                    let next = pw.last().unwrap() * base;
                    pw.push(next);
                }
                t *= &pw[e as usize];
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// Substitute values for the assigned variables, leaving the rest symbolic.
    pub fn eval_partial(&self, at: &Assignment) -> Poly {
        let mut acc: HashMap<Mono, Rat> = HashMap::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut t = c.clone();
            let mut rest = *m;
            for v in Var::ALL {
                if let Some(val) = at.get(v) {
                    let (e, r) = rest.split_off(v);
                    if e > 0 {
                        t *= &val.pow(e);
                        rest = r;
                    }
                }
            }
            if !t.is_zero() {
                *acc.entry(rest).or_insert_with(Rat::zero) += &t;
            }
        }
        from_map(acc)
    }

    /// Simultaneous substitution of polynomials for variables.
    pub fn subst(&self, map: &[(Var, Poly)]) -> Poly {
        if map.is_empty() {
            return self.clone();
        }
        let mut cache: HashMap<(Var, u32), Poly> = HashMap::new();
        let mut acc: HashMap<Mono, Rat> = HashMap::new();
        for (m, c) in &self.terms {
            let mut rest = *m;
            let mut factor = Poly::constant(c.clone());
            for (v, rep) in map {
                let (e, r) = rest.split_off(*v);
                if e == 0 {
                    continue;
                }
                rest = r;
                let pw = cache.entry((*v, e)).or_insert_with(|| rep.pow(e));
                factor = &factor * &*pw;
            }
            for (fm, fc) in factor.terms {
                let t = acc.entry(fm * rest).or_insert_with(Rat::zero);
                *t += &fc;
            }
        }
        from_map(acc)
    }

    /// `v -> v + by`.
    pub fn shift(&self, v: Var, by: &Rat) -> Poly {
        if by.is_zero() || !self.uses(v) {
            return self.clone();
        }
        let rep = &Poly::var(v) + &Poly::constant(by.clone());
        self.subst(&[(v, rep)])
    }

    /// View as a polynomial in `vars`: map from monomials in `vars` to
    /// coefficient polynomials in the remaining indeterminates.
    pub fn split_by(&self, vars: &[Var]) -> BTreeMap<Mono, Poly> {
        let mut parts: BTreeMap<Mono, Vec<(Mono, Rat)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut outer = Mono::ONE;
            let mut inner = *m;
            for &v in vars {
                let (e, r) = inner.split_off(v);
                if e > 0 {
                    outer = outer * Mono::pow_var(v, e);
                    inner = r;
                }
            }
            parts.entry(outer).or_default().push((inner, c.clone()));
        }
        parts
            .into_iter()
            .map(|(k, ts)| (k, Poly::from_terms(ts)))
            .collect()
    }

    /// Coefficients as a polynomial in a single variable, indexed by exponent.
    pub fn coefficients_in(&self, v: Var) -> BTreeMap<u32, Poly> {
        self.split_by(&[v])
            .into_iter()
            .map(|(m, p)| (m.exp(v), p))
            .collect()
    }

    /// Content and primitive part: `self = content * prim` where `prim` has
    /// coprime integer coefficients and a positive leading coefficient.
    pub fn primitive_part(&self) -> (Rat, Poly) {
        if self.is_zero() {
            return (Rat::zero(), Poly::zero());
        }
        let mut den_lcm = BigInt::one();
        let mut num_gcd = BigInt::zero();
        for (_, c) in &self.terms {
            den_lcm = den_lcm.lcm(&c.denom());
            num_gcd = num_gcd.gcd(&c.numer());
        }
        let mut content = Rat::from_bigints(num_gcd, den_lcm).expect("nonzero lcm");
        if self.terms[0].1.is_negative() {
            content = -content;
        }
        let inv = content.recip().expect("nonzero content");
        (content, self.scale(&inv))
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (lm, lc) = d.leading()?.clone();
        if d.len() == 1 {
            let inv = lc.recip()?;
            let mut terms = Vec::with_capacity(self.len());
            for (m, c) in &self.terms {
                terms.push((m.checked_div(lm)?, c * &inv));
            }
            return Some(Poly { terms });
        }
        let inv = lc.recip()?;
        let mut rem = self.clone();
        let mut quot: Vec<(Mono, Rat)> = Vec::new();
        while let Some((m, c)) = rem.leading().cloned() {
            let qm = m.checked_div(lm)?;
            let qc = &c * &inv;
            rem = &rem - &d.mul_mono(qm, &qc);
            quot.push((qm, qc));
        }
        Some(Poly::from_terms(quot))
    }

    /// Sum of absolute values of coefficients; a crude size measure.
    pub fn height(&self) -> Rat {
        self.terms.iter().map(|(_, c)| c.abs()).sum()
    }

    pub fn map_coeffs(&self, f: impl Fn(&Rat) -> Rat) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (*m, f(c))).collect())
    }
}

fn merge(a: &[(Mono, Rat)], b: &[(Mono, Rat)], negate_b: bool) -> Poly {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Less => {
                let c = if negate_b { -&b[j].1 } else { b[j].1.clone() };
                out.push((b[j].0, c));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let c = if negate_b {
                    &a[i].1 - &b[j].1
                } else {
                    &a[i].1 + &b[j].1
                };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    for t in &b[j..] {
        let c = if negate_b { -&t.1 } else { t.1.clone() };
        out.push((t.0, c));
    }
    Poly { terms: out }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        merge(&self.terms, &rhs.terms, false)
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        merge(&self.terms, &rhs.terms, true)
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        if self.len() == 1 {
            return rhs.mul_mono(self.terms[0].0, &self.terms[0].1);
        }
        if rhs.len() == 1 {
            return self.mul_mono(rhs.terms[0].0, &rhs.terms[0].1);
        }
        let mut acc: HashMap<Mono, Rat> = HashMap::with_capacity(self.len() * rhs.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let p = ca * cb;
                match acc.entry(*ma * *mb) {
                    std::collections::hash_map::Entry::Occupied(mut e) => *e.get_mut() += &p,
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(p);
                    }
                }
            }
        }
        from_map(acc)
    }
}

macro_rules! owned_ops {
    ($tr:ident, $method:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &'a Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<Poly> for &'a Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                self.$method(&rhs)
            }
        }
    };
}

owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        *self = &*self - rhs;
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl From<Rat> for Poly {
    fn from(c: Rat) -> Poly {
        Poly::constant(c)
    }
}

impl From<Var> for Poly {
    fn from(v: Var) -> Poly {
        Poly::var(v)
    }
}

impl From<i64> for Poly {
    fn from(n: i64) -> Poly {
        Poly::int(n)
    }
}

impl std::iter::Sum for Poly {
    fn sum<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        iter.fold(Poly::zero(), |acc, p| &acc + &p)
    }
}

impl std::iter::Product for Poly {
    fn product<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        iter.fold(Poly::one(), |acc, p| &acc * &p)
    }
}

/// Rising factorial `(p)_m = p (p+1) ... (p+m-1)`.
pub fn pochhammer(p: &Poly, m: u32) -> Poly {
    (0..m)
        .map(|i| p + &Poly::int(i as i64))
        .fold(Poly::one(), |acc, f| &acc * &f)
}

/// `m!` as an exact rational.
pub fn factorial(m: u32) -> Rat {
    (1..=m as i64).map(Rat::from_int).product()
}

/// Binomial coefficient as an exact rational.
pub fn binomial(n: u32, k: u32) -> Rat {
    if k > n {
        return Rat::zero();
    }
    let mut acc = Rat::one();
    for i in 0..k {
        acc = &acc * &Rat::ratio((n - i) as i64, (i + 1) as i64);
    }
    acc
}
