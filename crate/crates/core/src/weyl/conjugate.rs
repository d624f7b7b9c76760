//! Conjugation of the first-order operators by the triangle weight factors.
//!
//! The factors `x^p y^q (1-x-y)^r` have symbolic exponents, so they are
//! handled as generalized monomials whose exponents are affine polynomials
//! in the parameters. Differentiation acts on those exponents formally, and
//! a sum of generalized monomials is tested for zero by grouping terms with
//! the same symbolic exponent part, clearing the integer offsets and
//! expanding `1-x-y` into an ordinary polynomial.

use std::collections::BTreeMap;

use super::{builtin, DiffOp};
use crate::error::{Error, Result};
use crate::exact::{int, var, Mono, Poly, Rat, Var};

#[derive(Clone, Debug)]
struct GenTerm {
    coef: Poly,
    exps: [Poly; 3],
}

#[derive(Clone, Debug, Default)]
struct GenSum(Vec<GenTerm>);

fn split_const(p: &Poly) -> (Poly, i64) {
    let c = p
        .terms()
        .iter()
        .find(|(m, _)| m.is_one())
        .map(|(_, c)| c.clone())
        .unwrap_or_else(Rat::zero);
    let k = c.to_i64().expect("integer exponent offset");
    (p - &Poly::int(k), k)
}

impl GenSum {
    fn from_poly(p: &Poly) -> GenSum {
        let parts = p.split_by(&[Var::X, Var::Y]);
        GenSum(
            parts
                .into_iter()
                .map(|(m, coef)| GenTerm {
                    coef,
                    exps: [
                        Poly::int(m.exp(Var::X) as i64),
                        Poly::int(m.exp(Var::Y) as i64),
                        Poly::zero(),
                    ],
                })
                .collect(),
        )
    }

    fn mul_weight(&self, w: &[Poly; 3]) -> GenSum {
        GenSum(
            self.0
                .iter()
                .map(|t| GenTerm {
                    coef: t.coef.clone(),
                    exps: [&t.exps[0] + &w[0], &t.exps[1] + &w[1], &t.exps[2] + &w[2]],
                })
                .collect(),
        )
    }

    fn mul_poly(&self, p: &Poly) -> GenSum {
        let mut out = Vec::new();
        for (m, coef) in p.split_by(&[Var::X, Var::Y]) {
            let shift = [
                Poly::int(m.exp(Var::X) as i64),
                Poly::int(m.exp(Var::Y) as i64),
                Poly::zero(),
            ];
            for t in &self.0 {
                out.push(GenTerm {
                    coef: &t.coef * &coef,
                    exps: [&t.exps[0] + &shift[0], &t.exps[1] + &shift[1], t.exps[2].clone()],
                });
            }
        }
        GenSum(out)
    }

    /// Partial derivative in `x` (`axis = 0`) or `y` (`axis = 1`); the third
    /// factor `z = 1-x-y` contributes `-r z^(r-1)` in either case.
    fn derive(&self, axis: usize) -> GenSum {
        let mut out = Vec::new();
        for t in &self.0 {
            let e = &t.exps[axis];
            if !e.is_zero() {
                let mut exps = t.exps.clone();
                exps[axis] = e - &Poly::one();
                out.push(GenTerm {
                    coef: &t.coef * e,
                    exps,
                });
            }
            let r = &t.exps[2];
            if !r.is_zero() {
                let mut exps = t.exps.clone();
                exps[2] = r - &Poly::one();
                out.push(GenTerm {
                    coef: -(&t.coef * r),
                    exps,
                });
            }
        }
        GenSum(out)
    }

    fn apply(&self, op: &DiffOp) -> GenSum {
        let mut out = Vec::new();
        for (&(i, j), c) in op.terms() {
            let mut d = self.clone();
            for _ in 0..i {
                d = d.derive(0);
            }
            for _ in 0..j {
                d = d.derive(1);
            }
            out.extend(d.mul_poly(c).0);
        }
        GenSum(out)
    }

    fn sub(&self, other: &GenSum) -> GenSum {
        let mut out = self.0.clone();
        out.extend(other.0.iter().map(|t| GenTerm {
            coef: -&t.coef,
            exps: t.exps.clone(),
        }));
        GenSum(out)
    }

    fn is_zero(&self) -> bool {
        let mut groups: BTreeMap<[Poly; 3], Vec<(Poly, [i64; 3])>> = BTreeMap::new();
        for t in &self.0 {
            if t.coef.is_zero() {
                continue;
            }
            let (sx, kx) = split_const(&t.exps[0]);
            let (sy, ky) = split_const(&t.exps[1]);
            let (sz, kz) = split_const(&t.exps[2]);
            groups
                .entry([sx, sy, sz])
                .or_default()
                .push((t.coef.clone(), [kx, ky, kz]));
        }
        let z = &(&int(1) - &var(Var::X)) - &var(Var::Y);
        groups.values().all(|terms| {
            let lo = [0, 1, 2].map(|a| terms.iter().map(|(_, k)| k[a]).min().unwrap_or(0));
            let total: Poly = terms
                .iter()
                .map(|(c, k)| {
                    let m = Mono::from_exponents(&[
                        (Var::X, (k[0] - lo[0]) as u32),
                        (Var::Y, (k[1] - lo[1]) as u32),
                    ]);
                    &c.mul_mono(m, &Rat::one()) * &z.pow((k[2] - lo[2]) as u32)
                })
                .sum();
            total.is_zero()
        })
    }
}

/// Weight factor exponents for `g_i^(p,q)` as `[x, y, 1-x-y]`.
fn weight(i: u8, p: &Poly, q: &Poly) -> [Poly; 3] {
    match i {
        1 => [Poly::zero(), p.clone(), -q],
        2 => [-p, Poly::zero(), q.clone()],
        _ => [p.clone(), -q, Poly::zero()],
    }
}

/// Check `s_i^* = g_i^(1-p,1-q) o s_i o g_i^(p,q)` on every monomial of total
/// degree at most `max_degree`.
pub fn conjugate_check(i: u8, max_degree: u32) -> Result<bool> {
    let (p, q) = match i {
        1 => (var(Var::B), var(Var::C)),
        2 => (var(Var::A), var(Var::C)),
        3 => (var(Var::A), var(Var::B)),
        _ => return Err(Error::UnknownGenerator(format!("s{i}"))),
    };
    let one = Poly::one();
    let inner = weight(i, &p, &q);
    let outer = weight(i, &(&one - &p), &(&one - &q));
    let s = builtin(&format!("s{i}"))?;
    let s_star = builtin(&format!("s{i}s"))?;
    for d in 0..=max_degree {
        for ex in 0..=d {
            let m = Mono::from_exponents(&[(Var::X, ex), (Var::Y, d - ex)]);
            let poly = Poly::monomial(m, Rat::one());
            let lhs = GenSum::from_poly(&s_star.apply(&poly));
            let rhs = GenSum::from_poly(&poly)
                .mul_weight(&inner)
                .apply(&s)
                .mul_weight(&outer);
            if !lhs.sub(&rhs).is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_three_pairs_are_conjugate() {
        for i in 1..=3 {
            assert!(conjugate_check(i, 6).unwrap(), "s{i}");
        }
        assert!(conjugate_check(4, 1).is_err());
    }

    #[test]
    fn wrong_weight_is_detected() {
        let s = builtin("s1").unwrap();
        let s_star = builtin("s1s").unwrap();
        let poly = var(Var::Y);
        let inner = weight(1, &var(Var::C), &var(Var::B));
        let one = Poly::one();
        let outer = weight(1, &(&one - &var(Var::C)), &(&one - &var(Var::B)));
        let lhs = GenSum::from_poly(&s_star.apply(&poly));
        let rhs = GenSum::from_poly(&poly).mul_weight(&inner).apply(&s).mul_weight(&outer);
        assert!(!lhs.sub(&rhs).is_zero());
    }
}
