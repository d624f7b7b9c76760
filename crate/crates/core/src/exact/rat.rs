//! Exact rationals with a machine-word fast path.
//!
//! Values that fit into `i64 / i64` stay in a small representation; anything
//! larger is promoted to `BigRational`. Results are demoted again whenever they
//! fit, so the representation is canonical and the derived comparisons are sound.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An exact rational number, always stored in lowest terms with a positive
/// denominator.
#[derive(Clone)]
pub struct Rat(Repr);

#[derive(Clone)]
enum Repr {
    Small(Ratio<i64>),
    Big(BigRational),
}

fn fits(r: &Ratio<i64>) -> bool {
    *r.numer() != i64::MIN && *r.denom() != i64::MIN
}

impl Rat {
    pub fn zero() -> Rat {
        Rat(Repr::Small(Ratio::from_integer(0)))
    }

    pub fn one() -> Rat {
        Rat(Repr::Small(Ratio::from_integer(1)))
    }

    pub fn from_int(n: i64) -> Rat {
        Rat::from_big(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num / den`; panics on a zero denominator.
    pub fn ratio(num: i64, den: i64) -> Rat {
        assert!(den != 0, "zero denominator");
        Rat::from_big(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_bigints(num: BigInt, den: BigInt) -> Result<Rat> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rat::from_big(BigRational::new(num, den)))
    }

    pub fn from_big(r: BigRational) -> Rat {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) if n != i64::MIN && d != i64::MIN => {
                Rat(Repr::Small(Ratio::new_raw(n, d)))
            }
            _ => Rat(Repr::Big(r)),
        }
    }

    fn from_small(r: Ratio<i64>) -> Rat {
        if fits(&r) {
            Rat(Repr::Small(r))
        } else {
            Rat::from_big(to_big(&r))
        }
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(r) => to_big(r),
            Repr::Big(r) => r.clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(r) => BigInt::from(*r.numer()),
            Repr::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(r) => BigInt::from(*r.denom()),
            Repr::Big(r) => r.denom().clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Small(r) => r.is_zero(),
            Repr::Big(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Small(r) => r.is_one(),
            Repr::Big(_) => false,
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(r) => r.is_negative(),
            Repr::Big(r) => r.is_negative(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(r) => r.is_integer(),
            Repr::Big(r) => r.is_integer(),
        }
    }

    /// The value as an `i64`, if it is an integer that fits.
    pub fn to_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small(r) if r.is_integer() => Some(*r.numer()),
            _ => None,
        }
    }

    pub fn abs(&self) -> Rat {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn recip(&self) -> Option<Rat> {
        if self.is_zero() {
            return None;
        }
        Some(match &self.0 {
            Repr::Small(r) => Rat::from_small(r.recip()),
            Repr::Big(r) => Rat::from_big(r.recip()),
        })
    }

    pub fn pow(&self, e: u32) -> Rat {
        let mut acc = Rat::one();
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

    pub fn checked_div(&self, other: &Rat) -> Result<Rat> {
        if other.is_zero() {
            return Err(Error::DenominatorVanishes);
        }
        Ok(self / other)
    }
}

fn to_big(r: &Ratio<i64>) -> BigRational {
    BigRational::new_raw(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'a> $tr<&'a Rat> for &'a Rat {
            type Output = Rat;
            fn $method(self, rhs: &'a Rat) -> Rat {
                if let (Repr::Small(x), Repr::Small(y)) = (&self.0, &rhs.0) {
                    if let Some(r) = x.$checked(y) {
                        return Rat::from_small(r);
                    }
                }
                Rat::from_big(self.to_big().$method(rhs.to_big()))
            }
        }
        impl $tr<Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &'a Rat) -> Rat {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);
binop!(Div, div, checked_div);

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Rat> for Rat {
    fn mul_assign(&mut self, rhs: &Rat) {
        *self = &*self * rhs;
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        match &self.0 {
            Repr::Small(r) => Rat::from_small(-*r),
            Repr::Big(r) => Rat::from_big(-r.clone()),
        }
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        -&self
    }
}

impl Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

impl Product for Rat {
    fn product<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::one(), |acc, x| acc * x)
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Rat {
        Rat::from_int(n)
    }
}

impl From<i32> for Rat {
    fn from(n: i32) -> Rat {
        Rat::from_int(n as i64)
    }
}

impl From<BigInt> for Rat {
    fn from(n: BigInt) -> Rat {
        Rat::from_big(BigRational::from_integer(n))
    }
}

impl PartialEq for Rat {
    fn eq(&self, other: &Rat) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small(x), Repr::Small(y)) => x.numer() == y.numer() && x.denom() == y.denom(),
            (Repr::Big(x), Repr::Big(y)) => x == y,
            _ => false,
        }
    }
}

impl Eq for Rat {}

impl Hash for Rat {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small(r) => {
                0u8.hash(state);
                r.numer().hash(state);
                r.denom().hash(state);
            }
            Repr::Big(r) => {
                1u8.hash(state);
                r.numer().hash(state);
                r.denom().hash(state);
            }
        }
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Rat) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(x), Repr::Small(y)) => {
                let lhs = *x.numer() as i128 * *y.denom() as i128;
                let rhs = *y.numer() as i128 * *x.denom() as i128;
                lhs.cmp(&rhs)
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Rat) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Default for Rat {
    fn default() -> Rat {
        Rat::zero()
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Repr::Small(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Repr::Big(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Repr::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Rat> {
        let bad = |msg: &str| Error::Syntax {
            pos: 0,
            msg: format!("{msg}: `{s}`"),
        };
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad("invalid numerator"))?;
        let den: BigInt = den.parse().map_err(|_| bad("invalid denominator"))?;
        Rat::from_bigints(num, den)
    }
}
