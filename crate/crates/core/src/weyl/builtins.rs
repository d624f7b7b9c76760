use super::{parse_diffop, DiffOp};
use crate::error::{Error, Result};

/// Names accepted by [`builtin`].
pub const BUILTIN_NAMES: &[&str] = &[
    "L", "L1", "L2", "L3", "X1", "X2", "X3", "N1", "N3", "M1", "M3", "J1", "J3", "G13", "s1", "s2",
    "s3", "s1s", "s2s", "s3s", "H", "K1", "K2", "K3", "I",
];

fn source(name: &str) -> Option<&'static str> {
    Some(match name {
        "L" => {
            "x*(1-x)*dxx + y*(1-y)*dyy - 2*x*y*dxy \
             + (a+1-(a+b+c+3)*x)*dx + (b+1-(a+b+c+3)*y)*dy"
        }
        "L1" => "((b+1)*(1-x)-(b+c+2)*y)*dy + y*(1-x-y)*dyy",
        "L2" => "((a+1)*(1-y)-(a+c+2)*x)*dx + x*(1-x-y)*dxx",
        "L3" => "((a+1)*y-(b+1)*x)*(dx-dy) + x*y*(dxx+dyy-2*dxy)",
        "X1" => "x",
        "X2" => "y",
        "X3" => "1-x-y",
        "N1" => "2*x*(1-x)*dx - 2*x*y*dy + a+1 - (a+b+c+3)*x",
        "N3" => "2*(x+y-1)*(x*dx+y*dy) + c+1 + (a+b+c+3)*(x+y-1)",
        "M1" | "J3" => "0",
        "M3" => "2*y*(x+y-1)*dy + (b+1)*(x+y-1) + (c+1)*y",
        "J1" => "2*x*y*(dx-dy) + (a+1)*y - (b+1)*x",
        "s1" => "(x+y-1)*dy + c",
        "s2" => "x*dx + a",
        "s3" => "-y*(dx-dy) + b",
        "s1s" => "-y*dy - b",
        "s2s" => "(1-x-y)*dx - c",
        "s3s" => "x*(dy-dx) - a",
        "H" | "K1" => "x*(1-x)*dxx + (a+1-(a+b+2)*x)*dx",
        "K2" => "x",
        "K3" => "2*x*(1-x)*dx + a+1 - (a+b+2)*x",
        "I" => "1",
        _ => return None,
    })
}

/// The named operator of the variable representation.
pub fn builtin(name: &str) -> Result<DiffOp> {
    if name == "G13" {
        return Ok(builtin("L1")?.bracket(&builtin("L3")?));
    }
    let src = source(name).ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
    Ok(parse_diffop(src).expect("builtin operator source is well formed"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{parse_poly, Rat};

    fn op(name: &str) -> DiffOp {
        builtin(name).unwrap()
    }

    fn p(s: &str) -> crate::exact::Poly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn every_name_resolves() {
        for name in BUILTIN_NAMES {
            builtin(name).unwrap();
        }
        assert_eq!(builtin("Q"), Err(Error::UnknownGenerator("Q".into())));
        assert!(op("M1").is_zero());
        assert!(op("J3").is_zero());
    }

    #[test]
    fn primary_commutators() {
        assert!(op("L").bracket(&op("L1")).is_zero());
        assert!(op("X1").bracket(&op("X3")).is_zero());
        assert_eq!(op("L").bracket(&op("X1")), op("N1"));
        assert_eq!(op("L").bracket(&op("X3")), op("N3"));
        assert_eq!(op("L1").bracket(&op("X3")), op("M3"));
        assert!(op("L1").bracket(&op("X1")).is_zero());
        assert_eq!(op("L3").bracket(&op("X1")), op("J1"));
        assert!(op("L3").bracket(&op("X3")).is_zero());
    }

    #[test]
    fn sum_of_three_commuting_parts() {
        let sum = &(&op("L1") + &op("L2")) + &op("L3");
        assert_eq!(sum, op("L"));
        for part in ["L1", "L2", "L3"] {
            assert!(op("L").bracket(&op(part)).is_zero(), "{part}");
        }
    }

    #[test]
    fn j1_is_linear_in_other_primaries() {
        let rhs = &(&op("N1") + &op("N3")) - &op("M3");
        assert_eq!(op("J1"), rhs);
    }

    #[test]
    fn factorizations() {
        let one = DiffOp::identity();
        let cases = [
            ("L1", "s1", "s1s", "c*(b+1)", "b*(c+1)"),
            ("L2", "s2", "s2s", "a*(c+1)", "c*(a+1)"),
            ("L3", "s3", "s3s", "b*(a+1)", "a*(b+1)"),
        ];
        for (l, s, t, k1, k2) in cases {
            let first = &(&op(t) - &one).compose(&op(s)) + &DiffOp::mult(p(k1));
            let second = &(&op(s) + &one).compose(&op(t)) + &DiffOp::mult(p(k2));
            assert_eq!(first, op(l), "{l} first form");
            assert_eq!(second, op(l), "{l} second form");
        }
    }

    #[test]
    fn apply_examples() {
        assert!(op("L").apply(&p("1")).is_zero());
        let j11 = p("(b+1)*(1-x) - (b+c+2)*y");
        assert_eq!(op("L1").apply(&j11), (&j11 * &p("-(b+c+2)")));
        assert_eq!(op("s2").apply(&p("x")), p("(a+1)*x"));
        assert_eq!(op("K3"), op("K1").bracket(&op("K2")));
        let half = op("I").scale(&Rat::ratio(1, 2));
        assert_eq!(half.apply(&p("2*x")), p("x"));
    }
}
