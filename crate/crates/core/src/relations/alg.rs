//! Realizations of relation expressions.

use std::collections::BTreeMap;

use super::expr::Expr;
use crate::error::{Error, Result};
use crate::exact::{Frac, Poly, Rat, Var};
use crate::shiftalg::{Audit, DegreeOp, Shift};
use crate::weyl::{parse_diffop, DiffOp};

/// An associative algebra in which expressions can be evaluated.
pub trait OpAlgebra {
    type Op: Clone;

    fn generator(&self, name: &str) -> Result<Self::Op>;

    fn literal(&self, src: &str) -> Result<Self::Op> {
        Err(Error::UnsupportedRepresentation(
            format!("\"{src}\""),
            "non-differential",
        ))
    }

    fn scalar(&self, c: &Poly) -> Self::Op;
    fn add(&self, a: &Self::Op, b: &Self::Op) -> Self::Op;
    fn neg(&self, a: &Self::Op) -> Self::Op;
    fn mul(&self, a: &Self::Op, b: &Self::Op) -> Self::Op;
}

/// Evaluate `e`, folding generator-free subexpressions into scalars.
pub fn eval<A: OpAlgebra>(alg: &A, e: &Expr) -> Result<A::Op> {
    if let Some(p) = e.as_scalar() {
        return Ok(alg.scalar(&p));
    }
    Ok(match e {
        Expr::Gen(g) => alg.generator(g)?,
        Expr::Literal(s) => alg.literal(s)?,
        Expr::Num(_) | Expr::Param(_) => unreachable!("scalars are folded above"),
        Expr::Sum(ts) => {
            let mut acc: Option<A::Op> = None;
            for (neg, t) in ts {
                let mut v = eval(alg, t)?;
                if *neg {
                    v = alg.neg(&v);
                }
                acc = Some(match acc {
                    Some(a) => alg.add(&a, &v),
                    None => v,
                });
            }
            acc.expect("sums have at least one term")
        }
        Expr::Product(fs) => {
            let mut scalar = Poly::one();
            let mut ops: Vec<A::Op> = Vec::new();
            for f in fs {
                match f.as_scalar() {
                    Some(p) => scalar = &scalar * &p,
                    None => ops.push(eval(alg, f)?),
                }
            }
            let mut acc = alg.scalar(&scalar);
            for op in &ops {
                acc = alg.mul(&acc, op);
            }
            acc
        }
        Expr::Pow(b, n) => {
            let base = eval(alg, b)?;
            let mut acc = alg.scalar(&Poly::one());
            for _ in 0..*n {
                acc = alg.mul(&acc, &base);
            }
            acc
        }
        Expr::Bracket(x, y) | Expr::Anti(x, y) => {
            let (x, y) = (eval(alg, x)?, eval(alg, y)?);
            let (xy, yx) = (alg.mul(&x, &y), alg.mul(&y, &x));
            if matches!(e, Expr::Bracket(..)) {
                alg.add(&xy, &alg.neg(&yx))
            } else {
                alg.add(&xy, &yx)
            }
        }
    })
}

fn unknown(name: &str) -> Error {
    Error::UnknownGenerator(name.to_string())
}

/// Differential operators, optionally with the parameters specialized.
pub struct VarAlg<'a> {
    pub gens: &'a BTreeMap<String, DiffOp>,
    pub params: Vec<(Var, Poly)>,
}

impl OpAlgebra for VarAlg<'_> {
    type Op = DiffOp;

    fn generator(&self, name: &str) -> Result<DiffOp> {
        let op = self.gens.get(name).ok_or_else(|| unknown(name))?;
        Ok(if self.params.is_empty() {
            op.clone()
        } else {
            op.subst(&self.params)
        })
    }

    fn literal(&self, src: &str) -> Result<DiffOp> {
        Ok(parse_diffop(src)?.subst(&self.params))
    }

    fn scalar(&self, c: &Poly) -> DiffOp {
        DiffOp::mult(c.subst(&self.params))
    }

    fn add(&self, a: &DiffOp, b: &DiffOp) -> DiffOp {
        a + b
    }

    fn neg(&self, a: &DiffOp) -> DiffOp {
        -a
    }

    fn mul(&self, a: &DiffOp, b: &DiffOp) -> DiffOp {
        a.compose(b)
    }
}

/// Difference operators on the index lattice.
pub struct DegAlg<'a> {
    pub gens: &'a BTreeMap<String, DegreeOp>,
    /// Applied to scalars before they become diagonal operators.
    pub scalar_map: Vec<(Var, Poly)>,
}

impl OpAlgebra for DegAlg<'_> {
    type Op = DegreeOp;

    fn generator(&self, name: &str) -> Result<DegreeOp> {
        self.gens.get(name).cloned().ok_or_else(|| unknown(name))
    }

    fn scalar(&self, c: &Poly) -> DegreeOp {
        DegreeOp::diagonal(Frac::from_poly(c.subst(&self.scalar_map)))
    }

    fn add(&self, a: &DegreeOp, b: &DegreeOp) -> DegreeOp {
        a + b
    }

    fn neg(&self, a: &DegreeOp) -> DegreeOp {
        -a
    }

    fn mul(&self, a: &DegreeOp, b: &DegreeOp) -> DegreeOp {
        a.compose(b)
    }
}

/// Bounds on the degree in `a, b, c` of every coefficient.
pub struct ParamDegree<'a> {
    pub gens: &'a BTreeMap<String, DiffOp>,
}

const ABC: [Var; 3] = [Var::A, Var::B, Var::C];

fn diffop_param_degree(op: &DiffOp) -> u32 {
    op.terms()
        .map(|(_, c)| c.degree_in(&ABC).unwrap_or(0))
        .max()
        .unwrap_or(0)
}

impl OpAlgebra for ParamDegree<'_> {
    type Op = u32;

    fn generator(&self, name: &str) -> Result<u32> {
        self.gens
            .get(name)
            .map(diffop_param_degree)
            .ok_or_else(|| unknown(name))
    }

    fn literal(&self, src: &str) -> Result<u32> {
        Ok(diffop_param_degree(&parse_diffop(src)?))
    }

    fn scalar(&self, c: &Poly) -> u32 {
        c.degree_in(&ABC).unwrap_or(0)
    }

    fn add(&self, a: &u32, b: &u32) -> u32 {
        *a.max(b)
    }

    fn neg(&self, a: &u32) -> u32 {
        *a
    }

    fn mul(&self, a: &u32, b: &u32) -> u32 {
        a + b
    }
}

/// Degree audits of difference-operator expressions, with their supports.
pub struct AuditAlg<'a> {
    pub gens: &'a BTreeMap<String, DegreeOp>,
}

#[derive(Clone, Debug)]
pub struct Audited {
    pub audit: Audit,
    pub support: Vec<Shift>,
}

impl OpAlgebra for AuditAlg<'_> {
    type Op = Audited;

    fn generator(&self, name: &str) -> Result<Audited> {
        let op = self.gens.get(name).ok_or_else(|| unknown(name))?;
        Ok(Audited {
            audit: Audit::of(op),
            support: op.terms().map(|(s, _)| *s).collect(),
        })
    }

    fn scalar(&self, c: &Poly) -> Audited {
        Audited {
            audit: Audit::scalar(c),
            support: vec![(0, 0)],
        }
    }

    fn add(&self, a: &Audited, b: &Audited) -> Audited {
        let mut support = a.support.clone();
        for s in &b.support {
            if !support.contains(s) {
                support.push(*s);
            }
        }
        Audited {
            audit: a.audit.sum(&b.audit),
            support,
        }
    }

    fn neg(&self, a: &Audited) -> Audited {
        a.clone()
    }

    fn mul(&self, a: &Audited, b: &Audited) -> Audited {
        let mut support = Vec::new();
        for d in &a.support {
            for e in &b.support {
                let s = (d.0 + e.0, d.1 + e.1);
                if !support.contains(&s) {
                    support.push(s);
                }
            }
        }
        Audited {
            audit: a.audit.compose(&b.audit, &b.support),
            support,
        }
    }
}

/// A word in the free algebra.
pub type Word = Vec<String>;

/// Free associative algebra over generator names with polynomial
/// coefficients. `fixed` generators evaluate to scalars and `expand`
/// generators to expressions.
pub struct FreeAlg {
    pub fixed: BTreeMap<String, Poly>,
    pub expand: BTreeMap<String, Expr>,
}

pub type FreeOp = BTreeMap<Word, Poly>;

fn free_add_term(out: &mut FreeOp, w: Word, c: Poly) {
    let merged = match out.remove(&w) {
        Some(old) => &old + &c,
        None => c,
    };
    if !merged.is_zero() {
        out.insert(w, merged);
    }
}

impl OpAlgebra for FreeAlg {
    type Op = FreeOp;

    fn generator(&self, name: &str) -> Result<FreeOp> {
        if let Some(p) = self.fixed.get(name) {
            return Ok(self.scalar(p));
        }
        if let Some(e) = self.expand.get(name) {
            return eval(self, e);
        }
        if name == "I" {
            return Ok(self.scalar(&Poly::one()));
        }
        Ok(BTreeMap::from([(vec![name.to_string()], Poly::one())]))
    }

    fn scalar(&self, c: &Poly) -> FreeOp {
        let mut out = BTreeMap::new();
        free_add_term(&mut out, Vec::new(), c.clone());
        out
    }

    fn add(&self, a: &FreeOp, b: &FreeOp) -> FreeOp {
        let mut out = a.clone();
        for (w, c) in b {
            free_add_term(&mut out, w.clone(), c.clone());
        }
        out
    }

    fn neg(&self, a: &FreeOp) -> FreeOp {
        a.iter().map(|(w, c)| (w.clone(), -c)).collect()
    }

    fn mul(&self, a: &FreeOp, b: &FreeOp) -> FreeOp {
        let mut out = BTreeMap::new();
        for (wa, ca) in a {
            for (wb, cb) in b {
                let mut w = wa.clone();
                w.extend(wb.iter().cloned());
                free_add_term(&mut out, w, ca * cb);
            }
        }
        out
    }
}

/// Differential operators extended by one central inverse `U`, stored as
/// polynomials in `U` with operator coefficients.
pub struct LocAlg<'a> {
    pub gens: &'a BTreeMap<String, DiffOp>,
}

impl OpAlgebra for LocAlg<'_> {
    type Op = Vec<DiffOp>;

    fn generator(&self, name: &str) -> Result<Vec<DiffOp>> {
        if name == "U" {
            return Ok(vec![DiffOp::zero(), DiffOp::identity()]);
        }
        Ok(vec![self.gens.get(name).cloned().ok_or_else(|| unknown(name))?])
    }

    fn scalar(&self, c: &Poly) -> Vec<DiffOp> {
        vec![DiffOp::mult(c.clone())]
    }

    fn add(&self, a: &Vec<DiffOp>, b: &Vec<DiffOp>) -> Vec<DiffOp> {
        let n = a.len().max(b.len());
        (0..n)
            .map(|i| match (a.get(i), b.get(i)) {
                (Some(x), Some(y)) => x + y,
                (Some(x), None) | (None, Some(x)) => x.clone(),
                (None, None) => unreachable!(),
            })
            .collect()
    }

    fn neg(&self, a: &Vec<DiffOp>) -> Vec<DiffOp> {
        a.iter().map(|x| -x).collect()
    }

    fn mul(&self, a: &Vec<DiffOp>, b: &Vec<DiffOp>) -> Vec<DiffOp> {
        let mut out = vec![DiffOp::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = &out[i + j] + &x.compose(y);
            }
        }
        out
    }
}

/// `sum_j R_j U^j` times `(C - I)^m`, `m` the top power, with `U` the
/// inverse of `C - I`.
pub fn clear_inverse(r: &[DiffOp], c: &DiffOp) -> DiffOp {
    let m = r.len().saturating_sub(1);
    let base = c - &DiffOp::identity();
    let mut out = DiffOp::zero();
    for (j, rj) in r.iter().enumerate() {
        out = &out + &rj.compose(&base.pow((m - j) as u32));
    }
    out
}

/// Reduce an operator polynomial in `l` modulo `l^2 = p l - C`, returning
/// the constant and linear parts. `C` must commute with every coefficient.
pub fn reduce_quadratic(r: &DiffOp, p: &Poly, c: &DiffOp) -> (DiffOp, DiffOp) {
    let mut parts: BTreeMap<u32, DiffOp> = BTreeMap::new();
    for (&(i, j), coef) in r.terms() {
        for (e, q) in coef.coefficients_in(Var::L) {
            let t = DiffOp::term(i, j, q);
            let slot = parts.entry(e).or_insert_with(DiffOp::zero);
            *slot = &*slot + &t;
        }
    }
    while let Some((&e, _)) = parts.iter().next_back().filter(|(e, _)| **e >= 2) {
        let top = parts.remove(&e).expect("present");
        let lower = top.mul_poly(p);
        let lower2 = -&top.compose(c);
        for (k, v) in [(e - 1, lower), (e - 2, lower2)] {
            let slot = parts.entry(k).or_insert_with(DiffOp::zero);
            *slot = &*slot + &v;
        }
    }
    (
        parts.remove(&0).unwrap_or_default(),
        parts.remove(&1).unwrap_or_default(),
    )
}

/// Coefficient of a word after moving nothing: words are compared as is.
pub fn free_coeff(op: &FreeOp, word: &[&str]) -> Poly {
    let w: Word = word.iter().map(|s| s.to_string()).collect();
    op.get(&w).cloned().unwrap_or_default()
}

/// `op` scaled by a rational.
pub fn free_scale(op: &FreeOp, r: &Rat) -> FreeOp {
    op.iter()
        .map(|(w, c)| (w.clone(), c.scale(r)))
        .filter(|(_, c)| !c.is_zero())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relations::expr::parse_expr;
    use crate::weyl::builtin;

    fn var_gens() -> BTreeMap<String, DiffOp> {
        ["L", "L1", "X1", "X3", "I"]
            .iter()
            .map(|n| (n.to_string(), builtin(n).unwrap()))
            .collect()
    }

    #[test]
    fn variable_evaluation() {
        let gens = var_gens();
        let alg = VarAlg {
            gens: &gens,
            params: vec![],
        };
        let v = eval(&alg, &parse_expr("[L,X1] - (a+1)*I").unwrap()).unwrap();
        let want = &builtin("N1").unwrap() - &DiffOp::mult(crate::exact::parse_poly("a+1").unwrap());
        assert_eq!(v, want);
        assert!(eval(&alg, &parse_expr("Q").unwrap()).is_err());
    }

    #[test]
    fn free_words() {
        let alg = FreeAlg {
            fixed: BTreeMap::from([("C".to_string(), Poly::int(1))]),
            expand: BTreeMap::from([("D".to_string(), parse_expr("[A,B]").unwrap())]),
        };
        let v = eval(&alg, &parse_expr("D*C - A*B").unwrap()).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(free_coeff(&v, &["B", "A"]), Poly::int(-1));
    }

    #[test]
    fn localized_inverse() {
        let gens = var_gens();
        let alg = LocAlg { gens: &gens };
        // (X1 - I) U - I clears to zero.
        let v = eval(&alg, &parse_expr("(X1 - I)*U - I").unwrap()).unwrap();
        assert!(clear_inverse(&v, &builtin("X1").unwrap()).is_zero());
    }

    #[test]
    fn quadratic_reduction() {
        // l^2 - p l + C vanishes modulo the relation.
        let c = builtin("L1").unwrap();
        let p = crate::exact::parse_poly("b+c+1").unwrap();
        let r = &DiffOp::mult(crate::exact::parse_poly("l^2 - (b+c+1)*l").unwrap()) + &c;
        let (r0, r1) = reduce_quadratic(&r, &p, &c);
        assert!(r0.is_zero() && r1.is_zero());
    }
}
