//! Difference operators on the `(n, k)` lattice with rational-function
//! coefficients in `n, k, a, b, c`.
//!
//! `c E^d` acts on a basis vector by `J_{n,k} -> c(n,k) J_{(n,k)+d}`, and
//! products are composition of these actions: in `A B` the operator `B` acts
//! first, so the coefficient of `E^(d+e)` in `(c_d E^d)(d_e E^e)` is
//! `d_e(n,k) c_d((n,k)+e)`. With this rule the map from differential
//! operators to their degree counterparts preserves products.

mod builtins;
mod sample;
mod text;

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::exact::{int, var, Assignment, Frac, Poly, Rat, Var};

pub use builtins::{dbuiltin, DEGREE_BUILTIN_NAMES};
pub use text::shift_name;
pub use sample::{
    sample_points, Audit, DegreeBound, LineSampler, PointOp, SamplePoint, MAX_AUDIT_DEGREE,
};

/// A lattice shift `(dn, dk)`.
pub type Shift = (i32, i32);

/// A finite sum `sum_d c_d(n, k) E^d`.
#[derive(Clone, Default)]
pub struct DegreeOp {
    terms: BTreeMap<Shift, Frac>,
}

/// Source of the bivariate family a degree operator acts on.
pub trait Jacobi2Provider {
    /// `J_{n,k}`, zero outside `0 <= k <= n`.
    fn poly(&self, n: i64, k: i64) -> Poly;
}

/// Whether `(n, k)` lies in the index cone `0 <= k <= n`.
pub fn in_cone(n: i64, k: i64) -> bool {
    0 <= k && k <= n
}

fn shift_args(s: Shift) -> [(Var, Poly); 2] {
    [
        (Var::N, &var(Var::N) + &int(s.0 as i64)),
        (Var::K, &var(Var::K) + &int(s.1 as i64)),
    ]
}

impl DegreeOp {
    pub fn zero() -> DegreeOp {
        DegreeOp::default()
    }

    pub fn identity() -> DegreeOp {
        DegreeOp::diagonal(Frac::one())
    }

    /// Multiplication by `c(n, k)`.
    pub fn diagonal(c: Frac) -> DegreeOp {
        DegreeOp::term((0, 0), c)
    }

    /// The pure shift `E^s`.
    pub fn shift(s: Shift) -> DegreeOp {
        DegreeOp::term(s, Frac::one())
    }

    pub fn term(s: Shift, c: Frac) -> DegreeOp {
        let mut out = DegreeOp::zero();
        out.add_term(s, c);
        out
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Shift, Frac)>) -> DegreeOp {
        let mut out = DegreeOp::zero();
        for (s, c) in terms {
            out.add_term(s, c);
        }
        out
    }

    fn add_term(&mut self, s: Shift, c: Frac) {
        if c.is_zero() {
            return;
        }
        let merged = match self.terms.remove(&s) {
            Some(old) => &old + &c,
            None => c,
        };
        if !merged.is_zero() {
            self.terms.insert(s, merged);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Shift, &Frac)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, s: Shift) -> Frac {
        self.terms.get(&s).cloned().unwrap_or_default()
    }

    /// True when every coefficient is identically zero.
    pub fn is_zero(&self) -> bool {
        self.terms.values().all(Frac::is_zero)
    }

    pub fn scale(&self, c: &Frac) -> DegreeOp {
        DegreeOp::from_terms(self.terms.iter().map(|(s, f)| (*s, f * c)))
    }

    /// `self o other`, with `other` acting first.
    pub fn compose(&self, other: &DegreeOp) -> DegreeOp {
        let mut out = DegreeOp::zero();
        let mut shifted: BTreeMap<Shift, DegreeOp> = BTreeMap::new();
        for (&e, d) in &other.terms {
            let a = shifted.entry(e).or_insert_with(|| self.at_offset(e));
            for (&dl, c) in &a.terms {
                out.add_term((dl.0 + e.0, dl.1 + e.1), c * d);
            }
        }
        out
    }

    /// Coefficients with `(n, k)` replaced by `(n, k) + e`.
    fn at_offset(&self, e: Shift) -> DegreeOp {
        if e == (0, 0) {
            return self.clone();
        }
        let map = shift_args(e);
        DegreeOp {
            terms: self
                .terms
                .iter()
                .map(|(s, c)| {
                    let moved = c.subst(&map).expect("a shift of n, k cannot zero a factor");
                    (*s, moved)
                })
                .collect(),
        }
    }

    pub fn bracket(&self, other: &DegreeOp) -> DegreeOp {
        &self.compose(other) - &other.compose(self)
    }

    pub fn antibracket(&self, other: &DegreeOp) -> DegreeOp {
        &self.compose(other) + &other.compose(self)
    }

    /// Coefficientwise equality under cross multiplication.
    pub fn frac_eq(&self, other: &DegreeOp) -> bool {
        let keys: std::collections::BTreeSet<&Shift> =
            self.terms.keys().chain(other.terms.keys()).collect();
        keys.into_iter()
            .all(|s| self.coeff(*s).frac_eq(&other.coeff(*s)))
    }

    /// Substitute values or polynomials for parameters in every coefficient.
    pub fn subst(&self, map: &[(Var, Poly)]) -> Result<DegreeOp> {
        let mut out = DegreeOp::zero();
        for (s, c) in &self.terms {
            out.add_term(*s, c.subst(map)?);
        }
        Ok(out)
    }

    /// Coefficients at one exact point of `(a, b, c, n, k)`.
    pub fn eval_at(&self, at: &Assignment) -> Result<PointOp> {
        let mut out = PointOp::zero();
        for (s, c) in &self.terms {
            out.add(*s, c.eval(at)?);
        }
        Ok(out)
    }

    /// Largest numerator and denominator degrees among the coefficients.
    pub fn degree_bound(&self) -> DegreeBound {
        self.terms
            .values()
            .map(|c| {
                let (num, den) = c.degrees();
                DegreeBound { num, den }
            })
            .fold(DegreeBound::default(), DegreeBound::max)
    }

    /// `sum_d c_d(n, k) J_{(n,k)+d}` with symbolic `a, b, c`.
    ///
    /// Targets outside the cone are dropped before their coefficient is
    /// evaluated, so a coefficient is only specialized where it is used.
    pub fn dapply(&self, n: i64, k: i64, family: &dyn Jacobi2Provider) -> Result<Frac> {
        if !in_cone(n, k) {
            return Err(Error::InvalidDegree(if n < 0 { n } else { k }));
        }
        let at = [(Var::N, int(n)), (Var::K, int(k))];
        let mut out = Frac::zero();
        for (&(dn, dk), c) in &self.terms {
            let (tn, tk) = (n + dn as i64, k + dk as i64);
            if !in_cone(tn, tk) {
                continue;
            }
            let j = family.poly(tn, tk);
            if j.is_zero() {
                continue;
            }
            out = &out + &c.subst(&at)?.mul_poly(&j);
        }
        Ok(out)
    }

    /// The first non-zero coefficient, for failure reports.
    pub fn first_term(&self) -> Option<String> {
        self.terms
            .iter()
            .find(|(_, c)| !c.is_zero())
            .map(|(s, c)| format!("{}: {}", text::shift_name(*s), c.reduce()))
    }
}

impl<'a> Add<&'a DegreeOp> for &'a DegreeOp {
    type Output = DegreeOp;
    fn add(self, rhs: &'a DegreeOp) -> DegreeOp {
        let mut out = self.clone();
        for (s, c) in &rhs.terms {
            out.add_term(*s, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a DegreeOp> for &'a DegreeOp {
    type Output = DegreeOp;
    fn sub(self, rhs: &'a DegreeOp) -> DegreeOp {
        let mut out = self.clone();
        for (s, c) in &rhs.terms {
            out.add_term(*s, -c);
        }
        out
    }
}

impl<'a> Mul<&'a DegreeOp> for &'a DegreeOp {
    type Output = DegreeOp;
    fn mul(self, rhs: &'a DegreeOp) -> DegreeOp {
        self.compose(rhs)
    }
}

impl Neg for &DegreeOp {
    type Output = DegreeOp;
    fn neg(self) -> DegreeOp {
        DegreeOp {
            terms: self.terms.iter().map(|(s, c)| (*s, -c)).collect(),
        }
    }
}

impl PartialEq for DegreeOp {
    fn eq(&self, other: &DegreeOp) -> bool {
        self.frac_eq(other)
    }
}

/// A rational constant as a diagonal operator.
pub fn dconst(c: Rat) -> DegreeOp {
    DegreeOp::diagonal(Frac::constant(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_frac;

    fn b(name: &str) -> DegreeOp {
        dbuiltin(name).unwrap()
    }

    #[test]
    fn shifts_cancel() {
        assert_eq!(b("Sp").compose(&b("Sm")), DegreeOp::identity());
        assert_eq!(b("Tm").compose(&b("Tp")), DegreeOp::identity());
    }

    #[test]
    fn composition_shifts_the_left_factor() {
        let c = b("Lh").compose(&b("Sp"));
        let want = parse_frac("-(n+1)*(n+a+b+c+3)").unwrap();
        assert!(c.coeff((1, 0)).frac_eq(&want));
        assert_eq!(c.len(), 1);
    }

    #[test]
    fn diagonal_operators_commute() {
        assert!(b("Lh").bracket(&b("L1h")).is_zero());
        assert!(b("L1h").bracket(&b("X1h")).is_zero());
    }

    #[test]
    fn primary_brackets_match_the_tables() {
        assert_eq!(b("Lh").bracket(&b("X1h")), b("N1h"));
        assert_eq!(b("Lh").bracket(&b("X3h")), b("N3h"));
        assert_eq!(b("L1h").bracket(&b("X3h")), b("M3h"));
        assert!(b("M1h").is_zero());
    }

    #[test]
    fn associativity_on_builtins() {
        let (x, y, z) = (b("X1h"), b("L3h"), b("Tp"));
        let left = x.compose(&y).compose(&z);
        let right = x.compose(&y.compose(&z));
        assert_eq!(left, right);
    }

    #[test]
    fn coefficients_from_the_tables() {
        let want = parse_frac("-(n-k+1)*(n+k+a+b+c+2)/((2*n+a+b+c+2)*(2*n+a+b+c+3))").unwrap();
        assert!(b("X1h").coeff((1, 0)).frac_eq(&want));
        let want = parse_frac(
            "(k+1)*(k+b+c+1)*(n-k+a)*(n+k+a+b+c+2)/((2*k+b+c+1)*(2*k+b+c+2))",
        )
        .unwrap();
        assert!(b("L3h").coeff((0, 1)).frac_eq(&want));
        let lh = b("Lh");
        assert_eq!(lh.len(), 1);
        assert!(lh.coeff((0, 0)).frac_eq(&parse_frac("-n*(n+a+b+c+2)").unwrap()));
    }
}
