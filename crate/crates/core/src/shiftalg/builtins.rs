use super::{DegreeOp, Shift};
use crate::error::{Error, Result};
use crate::exact::{parse_frac, Frac, Rat};

/// Names accepted by [`dbuiltin`].
pub const DEGREE_BUILTIN_NAMES: &[&str] = &[
    "Lh", "L1h", "L3h", "X1h", "X3h", "N1h", "N3h", "M1h", "M3h", "Sp", "Sm", "Tp", "Tm", "I",
];

const SP: Shift = (1, 0);
const SM: Shift = (-1, 0);
const TP: Shift = (0, 1);
const TM: Shift = (0, -1);
const ID: Shift = (0, 0);

// Denominators are written as chains of single divisions so that every
// linear factor is stored on its own.
const X1: &[(Shift, &str)] = &[
    (SP, "-(n-k+1)*(n+k+a+b+c+2)/(2*n+a+b+c+2)/(2*n+a+b+c+3)"),
    (
        ID,
        "1/2 - 1/2*(2*k+a+b+c+1)*(2*k-a+b+c+1)/(2*n+a+b+c+1)/(2*n+a+b+c+3)",
    ),
    (SM, "-(n-k+a)*(n+k+b+c+1)/(2*n+a+b+c+1)/(2*n+a+b+c+2)"),
];

const X3_EXTRA: &[(Shift, &str)] = &[
    (
        (1, 1),
        "(k+1)*(k+b+c+1)*(n+k+a+b+c+2)*(n+k+a+b+c+3)\
         /(2*k+b+c+1)/(2*k+b+c+2)/(2*n+a+b+c+2)/(2*n+a+b+c+3)",
    ),
    (
        TP,
        "2*(k+1)*(k+b+c+1)*(n-k+a)*(n+k+a+b+c+2)\
         /(2*k+b+c+1)/(2*k+b+c+2)/(2*n+a+b+c+1)/(2*n+a+b+c+3)",
    ),
    (
        (-1, 1),
        "(k+1)*(k+b+c+1)*(n-k+a-1)*(n-k+a)\
         /(2*k+b+c+1)/(2*k+b+c+2)/(2*n+a+b+c+1)/(2*n+a+b+c+2)",
    ),
    (
        SP,
        "(c^2-b^2)*(n-k+1)*(n+k+a+b+c+2)\
         /2/(2*k+b+c)/(2*k+b+c+2)/(2*n+a+b+c+2)/(2*n+a+b+c+3)",
    ),
    (
        ID,
        "(c^2-b^2)/4*(1/(2*k+b+c)/(2*k+b+c+2) + 1/(2*n+a+b+c+1)/(2*n+a+b+c+3) \
         + (1-a^2)/(2*k+b+c)/(2*k+b+c+2)/(2*n+a+b+c+1)/(2*n+a+b+c+3))",
    ),
    (
        SM,
        "(c^2-b^2)*(n-k+a)*(n+k+b+c+1)\
         /2/(2*k+b+c)/(2*k+b+c+2)/(2*n+a+b+c+1)/(2*n+a+b+c+2)",
    ),
    (
        (1, -1),
        "(k+b)*(k+c)*(n-k+1)*(n-k+2)\
         /(2*k+b+c)/(2*k+b+c+1)/(2*n+a+b+c+2)/(2*n+a+b+c+3)",
    ),
    (
        TM,
        "2*(k+b)*(k+c)*(n-k+1)*(n+k+b+c+1)\
         /(2*k+b+c)/(2*k+b+c+1)/(2*n+a+b+c+1)/(2*n+a+b+c+3)",
    ),
    (
        (-1, -1),
        "(k+b)*(k+c)*(n+k+b+c)*(n+k+b+c+1)\
         /(2*k+b+c)/(2*k+b+c+1)/(2*n+a+b+c+1)/(2*n+a+b+c+2)",
    ),
];

const L3: &[(Shift, &str)] = &[
    (
        TM,
        "(k+b)*(k+c)*(n-k+1)*(n+k+b+c+1)/(2*k+b+c)/(2*k+b+c+1)",
    ),
    (
        TP,
        "(k+1)*(k+b+c+1)*(n-k+a)*(n+k+a+b+c+2)/(2*k+b+c+1)/(2*k+b+c+2)",
    ),
    (
        ID,
        "(k-n)*(n-k+a+b+1) - k*(k+c)*(n-k+1)*(n-k+a+1)/(2*k+b+c) \
         + (k+1)*(k+c+1)*(n-k)*(n-k+a)/(2*k+b+c+2)",
    ),
];

const N1: &[(Shift, &str)] = &[
    (SP, "(n-k+1)*(n+k+a+b+c+2)/(2*n+a+b+c+2)"),
    (SM, "-(n-k+a)*(n+k+b+c+1)/(2*n+a+b+c+2)"),
];

const N3_EXTRA: &[(Shift, &str)] = &[
    (
        (1, 1),
        "-(k+1)*(k+b+c+1)*(n+k+a+b+c+2)*(n+k+a+b+c+3)\
         /(2*k+b+c+1)/(2*k+b+c+2)/(2*n+a+b+c+2)",
    ),
    (
        SP,
        "(b-c)*(b+c)*(n-k+1)*(n+k+a+b+c+2)/2/(2*k+b+c)/(2*k+b+c+2)/(2*n+a+b+c+2)",
    ),
    (
        (1, -1),
        "-(k+b)*(k+c)*(n-k+1)*(n-k+2)/(2*k+b+c)/(2*k+b+c+1)/(2*n+a+b+c+2)",
    ),
    (
        (-1, 1),
        "(k+1)*(k+b+c+1)*(n-k+a-1)*(n-k+a)/(2*k+b+c+1)/(2*k+b+c+2)/(2*n+a+b+c+2)",
    ),
    (
        SM,
        "-(b-c)*(b+c)*(n-k+a)*(n+k+b+c+1)/2/(2*k+b+c)/(2*k+b+c+2)/(2*n+a+b+c+2)",
    ),
    (
        (-1, -1),
        "(k+b)*(k+c)*(n+k+b+c)*(n+k+b+c+1)/(2*k+b+c)/(2*k+b+c+1)/(2*n+a+b+c+2)",
    ),
];

const M3: &[(Shift, &str)] = &[
    (
        (1, 1),
        "-(k+1)*(k+b+c+1)*(n+k+a+b+c+2)*(n+k+a+b+c+3)\
         /(2*k+b+c+1)/(2*n+a+b+c+2)/(2*n+a+b+c+3)",
    ),
    (
        (1, -1),
        "(k+b)*(k+c)*(n-k+1)*(n-k+2)/(2*k+b+c+1)/(2*n+a+b+c+2)/(2*n+a+b+c+3)",
    ),
    (
        TP,
        "-2*(k+1)*(k+b+c+1)*(n-k+a)*(n+k+a+b+c+2)\
         /(2*k+b+c+1)/(2*n+a+b+c+1)/(2*n+a+b+c+3)",
    ),
    (
        TM,
        "2*(k+b)*(k+c)*(n-k+1)*(n+k+b+c+1)/(2*k+b+c+1)/(2*n+a+b+c+1)/(2*n+a+b+c+3)",
    ),
    (
        (-1, 1),
        "-(k+1)*(k+b+c+1)*(n-k+a-1)*(n-k+a)/(2*k+b+c+1)/(2*n+a+b+c+1)/(2*n+a+b+c+2)",
    ),
    (
        (-1, -1),
        "(k+b)*(k+c)*(n+k+b+c)*(n+k+b+c+1)/(2*k+b+c+1)/(2*n+a+b+c+1)/(2*n+a+b+c+2)",
    ),
];

fn table(rows: &[(Shift, &str)]) -> DegreeOp {
    DegreeOp::from_terms(rows.iter().map(|(s, src)| {
        (
            *s,
            parse_frac(src).expect("builtin coefficient source is well formed"),
        )
    }))
}

fn half() -> Frac {
    Frac::constant(Rat::ratio(1, 2))
}

/// The named operator of the degree representation.
pub fn dbuiltin(name: &str) -> Result<DegreeOp> {
    let diag = |src: &str| DegreeOp::diagonal(parse_frac(src).expect("well formed"));
    Ok(match name {
        "Lh" => diag("-n*(n+a+b+c+2)"),
        "L1h" => diag("-k*(k+b+c+1)"),
        "L3h" => table(L3),
        "X1h" => table(X1),
        "X3h" => {
            let base = &DegreeOp::diagonal(half()) - &table(X1).scale(&half());
            &base + &table(X3_EXTRA)
        }
        "N1h" => table(N1),
        "N3h" => &table(N1).scale(&-half()) + &table(N3_EXTRA),
        "M1h" => DegreeOp::zero(),
        "M3h" => table(M3),
        "Sp" => DegreeOp::shift(SP),
        "Sm" => DegreeOp::shift(SM),
        "Tp" => DegreeOp::shift(TP),
        "Tm" => DegreeOp::shift(TM),
        "I" => DegreeOp::identity(),
        _ => return Err(Error::UnknownGenerator(name.to_string())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_name_resolves() {
        for name in DEGREE_BUILTIN_NAMES {
            dbuiltin(name).unwrap();
        }
        assert!(matches!(dbuiltin("Zh"), Err(Error::UnknownGenerator(_))));
    }

    #[test]
    fn term_counts() {
        assert_eq!(dbuiltin("X1h").unwrap().len(), 3);
        assert_eq!(dbuiltin("X3h").unwrap().len(), 9);
        assert_eq!(dbuiltin("L3h").unwrap().len(), 3);
        assert_eq!(dbuiltin("N3h").unwrap().len(), 6);
        assert_eq!(dbuiltin("M3h").unwrap().len(), 6);
    }
}
