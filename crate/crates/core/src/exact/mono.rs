use std::fmt;

use super::var::{Var, NVARS};

const FIELD: u32 = 12;
const MASK: u128 = (1 << FIELD) - 1;
const DEG_SHIFT: u32 = 112;
const MAX_DEG: u32 = 1 << FIELD;

/// A monomial over the global indeterminates, packed into one integer.
///
/// The top bits hold the total degree and each variable owns a 12-bit
/// exponent field, `x` most significant. Comparing the packed integers
/// therefore gives graded-lexicographic order with `x > y > a > ... > tau`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Mono(u128);

fn shift_of(v: Var) -> u32 {
    FIELD * (NVARS as u32 - 1 - v.index() as u32)
}

impl Mono {
    pub const ONE: Mono = Mono(0);

    pub fn var(v: Var) -> Mono {
        Mono::pow_var(v, 1)
    }

    pub fn pow_var(v: Var, e: u32) -> Mono {
        assert!(e < MAX_DEG, "exponent overflow in monomial arithmetic");
        Mono(((e as u128) << shift_of(v)) | ((e as u128) << DEG_SHIFT))
    }

    pub fn from_exponents(exps: &[(Var, u32)]) -> Mono {
        exps.iter().fold(Mono::ONE, |m, &(v, e)| m * Mono::pow_var(v, e))
    }

    pub fn exp(self, v: Var) -> u32 {
        ((self.0 >> shift_of(v)) & MASK) as u32
    }

    pub fn degree(self) -> u32 {
        (self.0 >> DEG_SHIFT) as u32
    }

    pub fn is_one(self) -> bool {
        self.0 == 0
    }

    /// Degree counting only the given variables.
    pub fn degree_in(self, vars: &[Var]) -> u32 {
        vars.iter().map(|&v| self.exp(v)).sum()
    }

    pub fn checked_mul(self, other: Mono) -> Option<Mono> {
        if self.degree() + other.degree() >= MAX_DEG {
            return None;
        }
        Some(Mono(self.0 + other.0))
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(self, other: Mono) -> Option<Mono> {
        if self.divides_by(other) {
            Some(Mono(self.0 - other.0))
        } else {
            None
        }
    }

    pub fn divides_by(self, other: Mono) -> bool {
        Var::ALL.iter().all(|&v| self.exp(v) >= other.exp(v))
    }

    /// Formal derivative: `(e, m / v)` where `e` is the exponent of `v`.
    pub fn derive(self, v: Var) -> Option<(u32, Mono)> {
        let e = self.exp(v);
        if e == 0 {
            None
        } else {
            Some((e, Mono(self.0 - (Mono::var(v).0))))
        }
    }

    /// Drop the given variable, returning its exponent and the remainder.
    pub fn split_off(self, v: Var) -> (u32, Mono) {
        let e = self.exp(v);
        (e, Mono(self.0 - (Mono::pow_var(v, e).0)))
    }

    /// Non-zero exponents in global variable order.
    pub fn factors(self) -> impl Iterator<Item = (Var, u32)> {
        Var::ALL
            .into_iter()
            .map(move |v| (v, self.exp(v)))
            .filter(|&(_, e)| e > 0)
    }
}

impl std::ops::Mul for Mono {
    type Output = Mono;
    fn mul(self, other: Mono) -> Mono {
        self.checked_mul(other)
            .expect("exponent overflow in monomial arithmetic")
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (v, e) in self.factors() {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let x = Mono::var(Var::X);
        let y = Mono::var(Var::Y);
        let a = Mono::var(Var::A);
        assert!(x > y);
        assert!(y > a);
        assert!(y * y > x);
        assert!(x * a > y * y);
        assert!(Mono::ONE < a);
    }

    #[test]
    fn mul_div_derive() {
        let m = Mono::from_exponents(&[(Var::X, 2), (Var::Y, 1)]);
        assert_eq!(m.degree(), 3);
        assert_eq!(m.exp(Var::X), 2);
        let (e, d) = m.derive(Var::X).unwrap();
        assert_eq!(e, 2);
        assert_eq!(d, Mono::from_exponents(&[(Var::X, 1), (Var::Y, 1)]));
        assert_eq!(m.checked_div(Mono::var(Var::Y)), Some(Mono::pow_var(Var::X, 2)));
        assert_eq!(m.checked_div(Mono::var(Var::A)), None);
        assert!(m.derive(Var::C).is_none());
        assert_eq!(m.to_string(), "x^2*y");
    }

    #[test]
    fn overflow_detected() {
        let m = Mono::pow_var(Var::X, 4000);
        assert!(m.checked_mul(Mono::pow_var(Var::Y, 200)).is_none());
    }
}
