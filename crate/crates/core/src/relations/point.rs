//! Exact evaluation of degree-operator expressions at a single point.

use std::collections::{BTreeMap, HashMap};

use super::expr::Expr;
use crate::error::{Error, Result};
use crate::shiftalg::{DegreeOp, PointOp, SamplePoint, Shift};

/// Pointwise evaluator. The value of a node at offset `o` is the operator
/// whose coefficients are taken at `(n, k) + o`; products evaluate the left
/// factor at the offsets reached by the right one.
pub struct PointEval<'a> {
    gens: &'a BTreeMap<String, DegreeOp>,
    point: &'a SamplePoint,
    memo: HashMap<(usize, Shift), PointOp>,
}

fn add_shift(a: Shift, b: Shift) -> Shift {
    (a.0 + b.0, a.1 + b.1)
}

impl<'a> PointEval<'a> {
    pub fn new(gens: &'a BTreeMap<String, DegreeOp>, point: &'a SamplePoint) -> PointEval<'a> {
        PointEval {
            gens,
            point,
            memo: HashMap::new(),
        }
    }

    pub fn at(&mut self, e: &Expr, o: Shift) -> Result<PointOp> {
        let key = (e as *const Expr as usize, o);
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let v = self.compute(e, o)?;
        self.memo.insert(key, v.clone());
        Ok(v)
    }

    /// `f` composed after the already evaluated `right`.
    fn after(&mut self, f: &Expr, right: &PointOp, o: Shift) -> Result<PointOp> {
        let mut out = PointOp::zero();
        for (eps, beta) in right.terms() {
            let alpha = self.at(f, add_shift(o, *eps))?;
            for (delta, a) in alpha.terms() {
                out.add(add_shift(*delta, *eps), a * beta);
            }
        }
        Ok(out)
    }

    fn compute(&mut self, e: &Expr, o: Shift) -> Result<PointOp> {
        if let Some(p) = e.as_scalar() {
            return Ok(PointOp::scalar(p.eval(&self.point.offset(o).assignment())?));
        }
        match e {
            Expr::Gen(g) => self
                .gens
                .get(g)
                .ok_or_else(|| Error::UnknownGenerator(g.clone()))?
                .eval_at(&self.point.offset(o).assignment()),
            Expr::Literal(s) => Err(Error::UnsupportedRepresentation(
                format!("\"{s}\""),
                "degree",
            )),
            Expr::Num(_) | Expr::Param(_) => unreachable!("scalars are handled above"),
            Expr::Sum(ts) => {
                let mut out = PointOp::zero();
                for (neg, t) in ts {
                    let v = self.at(t, o)?;
                    out = out.plus(&v, if *neg { -1 } else { 1 });
                }
                Ok(out)
            }
            Expr::Product(fs) => {
                let (last, rest) = fs.split_last().expect("products are non-empty");
                let mut acc = self.at(last, o)?;
                for f in rest.iter().rev() {
                    acc = self.after(f, &acc, o)?;
                }
                Ok(acc)
            }
            Expr::Pow(b, n) => {
                let mut acc = PointOp::scalar(1.into());
                for _ in 0..*n {
                    acc = self.after(b, &acc, o)?;
                }
                Ok(acc)
            }
            Expr::Bracket(x, y) | Expr::Anti(x, y) => {
                let yv = self.at(y, o)?;
                let xv = self.at(x, o)?;
                let xy = self.after(x, &yv, o)?;
                let yx = self.after(y, &xv, o)?;
                let sign = if matches!(e, Expr::Bracket(..)) { -1 } else { 1 };
                Ok(xy.plus(&yx, sign))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Rat;
    use crate::relations::expr::parse_expr;
    use crate::shiftalg::dbuiltin;

    #[test]
    fn matches_symbolic_composition() {
        let gens: BTreeMap<String, DegreeOp> = [("X1", "X1h"), ("L", "Lh")]
            .iter()
            .map(|(n, b)| (n.to_string(), dbuiltin(b).unwrap()))
            .collect();
        let sym = gens["L"].bracket(&gens["X1"]);
        let point = SamplePoint {
            vals: [(1, 3), (2, 7), (5, 2), (7, 3), (2, 5)].map(|(p, q)| Rat::ratio(p, q)),
        };
        let want = sym.eval_at(&point.assignment()).unwrap();
        let e = parse_expr("[L,X1]").unwrap();
        let got = PointEval::new(&gens, &point).at(&e, (0, 0)).unwrap();
        assert_eq!(got, want);
    }
}
