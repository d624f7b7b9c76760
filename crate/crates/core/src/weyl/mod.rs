//! Differential operators in `x, y` with polynomial coefficients, kept in
//! normal form (coefficients to the left of `dx^i dy^j`).

mod builtins;
mod conjugate;
mod text;

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::exact::{binomial, Poly, Rat, Var};

pub use builtins::{builtin, BUILTIN_NAMES};
pub use conjugate::conjugate_check;
pub use text::parse_diffop;

/// A differential operator `sum c_ij(x, y, params) dx^i dy^j`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct DiffOp {
    terms: BTreeMap<(u32, u32), Poly>,
}

/// `d^i/dx^i d^j/dy^j p`.
pub fn derive_multi(p: &Poly, i: u32, j: u32) -> Poly {
    let mut out = p.clone();
    for _ in 0..i {
        if out.is_zero() {
            break;
        }
        out = out.derive(Var::X);
    }
    for _ in 0..j {
        if out.is_zero() {
            break;
        }
        out = out.derive(Var::Y);
    }
    out
}

impl DiffOp {
    pub fn zero() -> DiffOp {
        DiffOp::default()
    }

    pub fn identity() -> DiffOp {
        DiffOp::mult(Poly::one())
    }

    /// Multiplication by a polynomial.
    pub fn mult(p: Poly) -> DiffOp {
        DiffOp::term(0, 0, p)
    }

    /// The single term `c dx^i dy^j`.
    pub fn term(i: u32, j: u32, c: Poly) -> DiffOp {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        DiffOp { terms }
    }

    pub fn dx() -> DiffOp {
        DiffOp::term(1, 0, Poly::one())
    }

    pub fn dy() -> DiffOp {
        DiffOp::term(0, 1, Poly::one())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), Poly)>) -> DiffOp {
        let mut out = DiffOp::zero();
        for (k, c) in terms {
            out.add_term(k, &c);
        }
        out
    }

    fn add_term(&mut self, k: (u32, u32), c: &Poly) {
        if c.is_zero() {
            return;
        }
        let merged = match self.terms.get(&k) {
            Some(old) => old + c,
            None => c.clone(),
        };
        if merged.is_zero() {
            self.terms.remove(&k);
        } else {
            self.terms.insert(k, merged);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Poly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Poly {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest total derivative order, `None` for the zero operator.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    pub fn scale(&self, c: &Rat) -> DiffOp {
        if c.is_zero() {
            return DiffOp::zero();
        }
        DiffOp {
            terms: self.terms.iter().map(|(k, p)| (*k, p.scale(c))).collect(),
        }
    }

    /// Left multiplication by a polynomial.
    pub fn mul_poly(&self, p: &Poly) -> DiffOp {
        DiffOp::from_terms(self.terms.iter().map(|(k, c)| (*k, p * c)))
    }

    /// Normal form of `self o other` by the Leibniz rule.
    pub fn compose(&self, other: &DiffOp) -> DiffOp {
        let mut out = DiffOp::zero();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &other.terms {
                for p in 0..=i {
                    let bx = derive_multi(b, p, 0);
                    if bx.is_zero() {
                        break;
                    }
                    for q in 0..=j {
                        let d = derive_multi(&bx, 0, q);
                        if d.is_zero() {
                            break;
                        }
                        let w = &binomial(i, p) * &binomial(j, q);
                        let c = (a * &d).scale(&w);
                        out.add_term((i - p + k, j - q + l), &c);
                    }
                }
            }
        }
        out
    }

    pub fn bracket(&self, other: &DiffOp) -> DiffOp {
        &self.compose(other) - &other.compose(self)
    }

    pub fn antibracket(&self, other: &DiffOp) -> DiffOp {
        &self.compose(other) + &other.compose(self)
    }

    pub fn pow(&self, e: u32) -> DiffOp {
        (0..e).fold(DiffOp::identity(), |acc, _| acc.compose(self))
    }

    /// Apply to a polynomial.
    pub fn apply(&self, p: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (&(i, j), c) in &self.terms {
            let d = derive_multi(p, i, j);
            if !d.is_zero() {
                out += &(c * &d);
            }
        }
        out
    }

    /// Map every coefficient, dropping those that become zero.
    pub fn map_coeffs(&self, f: impl Fn(&Poly) -> Poly) -> DiffOp {
        DiffOp::from_terms(self.terms.iter().map(|(k, c)| (*k, f(c))))
    }

    /// Substitute polynomials for parameters in every coefficient.
    pub fn subst(&self, map: &[(Var, Poly)]) -> DiffOp {
        self.map_coeffs(|c| c.subst(map))
    }

    /// First non-zero term, as a human-readable witness.
    pub fn first_term(&self) -> Option<String> {
        self.terms
            .iter()
            .next()
            .map(|(&(i, j), c)| format!("({c})*{}", text::deriv_name(i, j)))
    }
}

impl<'a> Add<&'a DiffOp> for &'a DiffOp {
    type Output = DiffOp;
    fn add(self, rhs: &'a DiffOp) -> DiffOp {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c);
        }
        out
    }
}

impl<'a> Sub<&'a DiffOp> for &'a DiffOp {
    type Output = DiffOp;
    fn sub(self, rhs: &'a DiffOp) -> DiffOp {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, &-c);
        }
        out
    }
}

impl<'a> Mul<&'a DiffOp> for &'a DiffOp {
    type Output = DiffOp;
    fn mul(self, rhs: &'a DiffOp) -> DiffOp {
        self.compose(rhs)
    }
}

impl Neg for &DiffOp {
    type Output = DiffOp;
    fn neg(self) -> DiffOp {
        DiffOp {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $method:ident) => {
        impl $tr<DiffOp> for DiffOp {
            type Output = DiffOp;
            fn $method(self, rhs: DiffOp) -> DiffOp {
                (&self).$method(&rhs)
            }
        }
    };
}

owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, var};

    fn x() -> Poly {
        var(Var::X)
    }

    #[test]
    fn weyl_relation() {
        let lhs = DiffOp::dx().compose(&DiffOp::mult(x()));
        let rhs = &DiffOp::term(1, 0, x()) + &DiffOp::identity();
        assert_eq!(lhs, rhs);
        let b = DiffOp::term(2, 1, &x() * &var(Var::A));
        assert_eq!(DiffOp::identity().compose(&b), b);
    }

    #[test]
    fn leibniz_second_power() {
        let x2 = &x() * &x();
        let lhs = DiffOp::dx().compose(&DiffOp::mult(x2.clone()));
        let rhs = &DiffOp::term(1, 0, x2) + &DiffOp::mult(x().scale(&Rat::from_int(2)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn apply_respects_composition() {
        let a = &DiffOp::term(2, 0, &x() * &var(Var::Y)) + &DiffOp::dy();
        let b = &DiffOp::term(0, 1, &x() + &int(1)) + &DiffOp::mult(var(Var::B));
        let p = &(&x() * &x()) * &(&var(Var::Y) * &var(Var::Y)) + &x();
        assert_eq!(a.compose(&b).apply(&p), a.apply(&b.apply(&p)));
    }

    #[test]
    fn bracket_is_antisymmetric() {
        let a = DiffOp::term(1, 1, x());
        let b = DiffOp::term(2, 0, var(Var::Y));
        assert_eq!(a.bracket(&b), -&b.bracket(&a));
        assert!(a.bracket(&a).is_zero());
    }
}
