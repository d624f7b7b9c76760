//! Univariate Jacobi polynomials on `[0, 1]` and their classical identities.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::exact::{factorial, int, parse_frac, pochhammer, var, Frac, Mono, Poly, Rat, Var};
use crate::report::{Mode, Representation, VerificationReport};
use crate::weyl::{builtin, parse_diffop, DiffOp};

/// `J_n^(alpha, beta)(x)` with parameters given as polynomials.
#[derive(Clone, Debug, PartialEq)]
pub struct UniJacobi {
    pub n: i64,
    pub alpha: Poly,
    pub beta: Poly,
    pub poly: Poly,
}

/// Expand `(alpha+1)_n / n! * 2F1(-n, n+alpha+beta+1; alpha+1; x)`.
///
/// The `j`-th coefficient is written as
/// `(-n)_j (n+alpha+beta+1)_j (alpha+j+1)_(n-j) / (j! n!)` so that it stays
/// polynomial in the parameters.
pub fn uni_jacobi(n: i64, alpha: &Poly, beta: &Poly) -> Result<UniJacobi> {
    if n < -1 {
        return Err(Error::InvalidDegree(n));
    }
    Ok(UniJacobi {
        n,
        alpha: alpha.clone(),
        beta: beta.clone(),
        poly: jacobi_poly(n, alpha, beta),
    })
}

/// The polynomial alone, zero for every negative degree.
pub fn jacobi_poly(n: i64, alpha: &Poly, beta: &Poly) -> Poly {
    if n < 0 {
        return Poly::zero();
    }
    let n = n as u32;
    let top = &(alpha + beta) + &int(n as i64 + 1);
    let nfact = factorial(n);
    let mut out = Poly::zero();
    for j in 0..=n {
        let neg = pochhammer(&int(-(n as i64)), j);
        let c = &(&neg * &pochhammer(&top, j))
            * &pochhammer(&(alpha + &int(j as i64 + 1)), n - j);
        let scale = (&factorial(j) * &nfact).recip().expect("factorials are nonzero");
        out += &c.scale(&scale).mul_mono(Mono::pow_var(Var::X, j), &Rat::one());
    }
    out
}

/// `J_n^(a+da, b+db)` in the symbolic parameters `a`, `b`.
fn shifted(n: i64, da: i64, db: i64) -> Poly {
    jacobi_poly(n, &(&var(Var::A) + &int(da)), &(&var(Var::B) + &int(db)))
}

/// One summand `coef * op(J_{n+dn}^(a+da, b+db))`. An empty `op` is the identity.
struct Term {
    coef: &'static str,
    op: &'static str,
    shift: (i64, i64, i64),
}

const fn t(coef: &'static str, dn: i64, da: i64, db: i64) -> Term {
    Term {
        coef,
        op: "",
        shift: (dn, da, db),
    }
}

const fn d(op: &'static str, coef: &'static str) -> Term {
    Term {
        coef,
        op,
        shift: (0, 0, 0),
    }
}

struct Identity {
    id: &'static str,
    lhs: &'static [Term],
    rhs: &'static [Term],
}

const IDENTITIES: &[Identity] = &[
    Identity {
        id: "de",
        lhs: &[d("x*(1-x)*dxx + (a+1-(a+b+2)*x)*dx", "1")],
        rhs: &[t("-n*(n+a+b+1)", 0, 0, 0)],
    },
    Identity {
        id: "recurrence",
        lhs: &[t("1-2*x", 0, 0, 0)],
        rhs: &[
            t("2*(n+1)*(n+a+b+1)/((2*n+a+b+1)*(2*n+a+b+2))", 1, 0, 0),
            t("-(a-b)*(a+b)/((2*n+a+b)*(2*n+a+b+2))", 0, 0, 0),
            t("2*(n+a)*(n+b)/((2*n+a+b)*(2*n+a+b+1))", -1, 0, 0),
        ],
    },
    Identity {
        id: "shift1",
        lhs: &[d("dx", "1")],
        rhs: &[t("-(n+a+b+1)", -1, 1, 1)],
    },
    Identity {
        id: "shift2",
        lhs: &[d("x*(1-x)*dx + a - (a+b)*x", "1")],
        rhs: &[t("n+1", 1, -1, -1)],
    },
    Identity {
        id: "structure",
        lhs: &[d("2*x*(1-x)*dx + a+1 - (a+b+2)*x", "1")],
        rhs: &[
            t("(n+1)*(n+a+b+1)/(2*n+a+b+1)", 1, 0, 0),
            t("-(n+a)*(n+b)/(2*n+a+b+1)", -1, 0, 0),
        ],
    },
    Identity {
        id: "cta",
        lhs: &[t("x", 0, 0, 0)],
        rhs: &[
            t("(n+a)/(2*n+a+b+1)", 0, -1, 0),
            t("-(n+1)/(2*n+a+b+1)", 1, -1, 0),
        ],
    },
    Identity {
        id: "gta",
        lhs: &[t("1", 0, 0, 0)],
        rhs: &[
            t("(n+a+b+1)/(2*n+a+b+1)", 0, 1, 0),
            t("-(n+b)/(2*n+a+b+1)", -1, 1, 0),
        ],
    },
    Identity {
        id: "ctb",
        lhs: &[t("1-x", 0, 0, 0)],
        rhs: &[
            t("(n+1)/(2*n+a+b+1)", 1, 0, -1),
            t("(n+b)/(2*n+a+b+1)", 0, 0, -1),
        ],
    },
    Identity {
        id: "gtb",
        lhs: &[t("1", 0, 0, 0)],
        rhs: &[
            t("(n+a+b+1)/(2*n+a+b+1)", 0, 0, 1),
            t("(n+a)/(2*n+a+b+1)", -1, 0, 1),
        ],
    },
    Identity {
        id: "xm1-diff",
        lhs: &[d("(x-1)*dx", "1")],
        rhs: &[t("n+a+b+1", 0, 1, 0), t("-(n+a+b+1)", 0, 0, 0)],
    },
    Identity {
        id: "x-diff",
        lhs: &[d("x*dx", "1")],
        rhs: &[t("n+a+b+1", 0, 0, 1), t("-(n+a+b+1)", 0, 0, 0)],
    },
    Identity {
        id: "mixed-1",
        lhs: &[t("n", 0, 0, -1)],
        rhs: &[
            t("(n+a+b+1)*(1-x)", -1, 1, 1),
            t("-(n*(1-x)+b)", -1, 1, 0),
        ],
    },
    Identity {
        id: "mixed-2",
        lhs: &[t("n+a+1", 0, 0, 1)],
        rhs: &[t("n+a+b+2", 0, 1, 1), t("-(n+b+1)", 0, 1, 0)],
    },
];

/// Identifiers accepted by [`uni_verify`].
pub const IDENTITY_IDS: &[&str] = &[
    "de",
    "recurrence",
    "shift1",
    "shift2",
    "structure",
    "cta",
    "gta",
    "ctb",
    "gtb",
    "xm1-diff",
    "x-diff",
    "mixed-1",
    "mixed-2",
    "orthogonality",
];

fn side_value(terms: &[Term], n: i64) -> Result<Frac> {
    let at_n = [(Var::N, int(n))];
    let mut acc = Frac::zero();
    for term in terms {
        let (dn, da, db) = term.shift;
        let mut j = shifted(n + dn, da, db);
        if !term.op.is_empty() {
            j = parse_diffop(term.op)?.apply(&j);
        }
        if j.is_zero() {
            continue;
        }
        let coef = parse_frac(term.coef)?.subst(&at_n)?;
        acc = &acc + &coef.mul_poly(&j);
    }
    Ok(acc)
}

fn identity_residual(id: &Identity, n: i64) -> Result<Frac> {
    Ok(&side_value(id.lhs, n)? - &side_value(id.rhs, n)?)
}

/// Normalized Beta moment functional `<p, q>` for the weight `x^a (1-x)^b`.
///
/// Every moment `(a+1)_m / (a+b+2)_m` is brought over the common
/// denominator `(a+b+2)_N` with `N = deg p + deg q`.
pub fn uni_inner(p: &Poly, q: &Poly) -> Frac {
    let pc = p.coefficients_in(Var::X);
    let qc = q.coefficients_in(Var::X);
    let deg = pc.keys().last().copied().unwrap_or(0) + qc.keys().last().copied().unwrap_or(0);
    let base = &(&var(Var::A) + &var(Var::B)) + &int(2);
    let mut conv: Vec<Poly> = vec![Poly::zero(); deg as usize + 1];
    for (i, pi) in &pc {
        for (j, qj) in &qc {
            conv[(i + j) as usize] += &(pi * qj);
        }
    }
    let a1 = &var(Var::A) + &int(1);
    let mut num = Poly::zero();
    for (m, s) in conv.iter().enumerate() {
        if s.is_zero() {
            continue;
        }
        let m = m as u32;
        let w = &pochhammer(&a1, m) * &pochhammer(&(&base + &int(m as i64)), deg - m);
        num += &(s * &w);
    }
    let factors = (0..deg).map(|i| (&base + &int(i as i64), 1)).collect();
    Frac::with_factors(num, factors).expect("denominator factors are nonzero")
}

/// `<J_n, J_n>` in the normalization of [`uni_inner`].
pub fn uni_norm(n: u32) -> Frac {
    let a = var(Var::A);
    let b = var(Var::B);
    let ab1 = &(&a + &b) + &int(1);
    let num = &(&(&pochhammer(&(&a + &int(1)), n) * &pochhammer(&(&b + &int(1)), n)) * &ab1)
        .scale(&factorial(n).recip().expect("nonzero"));
    let mut factors = vec![(&(&ab1 + &int(n as i64)) + &int(n as i64), 1)];
    factors.extend((0..n).map(|i| (&ab1 + &int(i as i64), 1)));
    Frac::with_factors(num.clone(), factors).expect("denominator factors are nonzero")
}

fn orthogonality_witness(n_max: i64) -> Option<String> {
    let polys: Vec<Poly> = (0..=n_max).map(|n| shifted(n, 0, 0)).collect();
    for n in 0..polys.len() {
        for m in 0..=n {
            let g = uni_inner(&polys[n], &polys[m]);
            let ok = if n == m {
                g.frac_eq(&uni_norm(n as u32))
            } else {
                g.is_zero()
            };
            if !ok {
                return Some(format!("n={n}, m={m}: <J_n, J_m> = {}", g.reduce()));
            }
        }
    }
    None
}

/// Check one identity for every degree `0..=n_max` with symbolic `a`, `b`.
pub fn uni_verify(identity_id: &str, n_max: i64) -> Result<VerificationReport> {
    if n_max < 0 {
        return Err(Error::InvalidDegree(n_max));
    }
    let name = format!("jacobi1/{identity_id}");
    if identity_id == "orthogonality" {
        return Ok(VerificationReport::new(
            name,
            Representation::Variable,
            Mode::Symbolic,
            orthogonality_witness(n_max),
        ));
    }
    let id = IDENTITIES
        .iter()
        .find(|i| i.id == identity_id)
        .ok_or_else(|| Error::UnknownIdentity(identity_id.to_string()))?;
    let mut witness = None;
    for n in 0..=n_max {
        let r = identity_residual(id, n)?;
        if !r.is_zero() {
            witness = Some(format!("n={n}: residual {}", r.reduce()));
            break;
        }
    }
    Ok(VerificationReport::new(
        name,
        Representation::Variable,
        Mode::Symbolic,
        witness,
    ))
}

/// The first rank-one relation with `alpha = a`, `beta = b`, as `lhs - rhs`.
fn rank1_first(k1: &DiffOp, k2: &DiffOp) -> DiffOp {
    let a = var(Var::A);
    let s = &a + &var(Var::B);
    let lhs = k1.bracket(&k1.bracket(k2));
    let rhs = &(&(&k1.antibracket(k2).scale(&Rat::from_int(-2)) + &k1.scale(&Rat::from_int(2)))
        + &k2.mul_poly(&(&s * &(&s + &int(2)))))
        - &DiffOp::mult(&s * &(&a + &int(1)));
    &lhs - &rhs
}

fn rank1_second(k1: &DiffOp, k2: &DiffOp) -> DiffOp {
    let lhs = k2.bracket(&k2.bracket(k1));
    let rhs = &k2.compose(k2).scale(&Rat::from_int(-2)) + &k2.scale(&Rat::from_int(2));
    &lhs - &rhs
}

fn builtin_op(name: &str) -> &'static DiffOp {
    static CACHE: OnceLock<[DiffOp; 3]> = OnceLock::new();
    let ops = CACHE.get_or_init(|| {
        ["K1", "K2", "K3"].map(|n| builtin(n).expect("rank-one operators are builtin"))
    });
    match name {
        "K1" => &ops[0],
        "K2" => &ops[1],
        _ => &ops[2],
    }
}

/// The rank-one Jacobi algebra realized by the hypergeometric operator and
/// multiplication by `x`.
pub fn rank1_verify() -> VerificationReport {
    let (k1, k2, k3) = (builtin_op("K1"), builtin_op("K2"), builtin_op("K3"));
    let checks: [(&str, DiffOp); 3] = [
        ("[K1,[K1,K2]]", rank1_first(k1, k2)),
        ("[K2,[K2,K1]]", rank1_second(k1, k2)),
        ("[K1,K2] - K3", &k1.bracket(k2) - k3),
    ];
    let mut witness = checks
        .iter()
        .find(|(_, r)| !r.is_zero())
        .map(|(label, r)| format!("{label}: residual {}", r.first_term().unwrap_or_default()));
    if witness.is_none() {
        let structure = IDENTITIES.iter().find(|i| i.id == "structure").expect("present");
        for n in 0..=8 {
            match identity_residual(structure, n) {
                Ok(r) if r.is_zero() => {}
                Ok(r) => {
                    witness = Some(format!("K3 structure at n={n}: residual {}", r.reduce()));
                    break;
                }
                Err(e) => {
                    witness = Some(format!("K3 structure at n={n}: {e}"));
                    break;
                }
            }
        }
    }
    VerificationReport::new(
        "jacobi1/rank1",
        Representation::Variable,
        Mode::Symbolic,
        witness,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{parse_poly, Assignment};

    fn ab() -> (Poly, Poly) {
        (var(Var::A), var(Var::B))
    }

    #[test]
    fn low_degrees() {
        let (a, b) = ab();
        assert_eq!(uni_jacobi(0, &a, &b).unwrap().poly, Poly::one());
        assert_eq!(
            uni_jacobi(1, &a, &b).unwrap().poly,
            parse_poly("(a+1) - (a+b+2)*x").unwrap()
        );
        let z = Poly::zero();
        assert_eq!(
            uni_jacobi(2, &z, &z).unwrap().poly,
            parse_poly("1 - 6*x + 6*x^2").unwrap()
        );
        assert!(uni_jacobi(-1, &a, &b).unwrap().poly.is_zero());
        assert_eq!(uni_jacobi(-2, &a, &b), Err(Error::InvalidDegree(-2)));
    }

    #[test]
    fn degree_and_value_at_zero() {
        let (a, b) = ab();
        let at0 = Assignment::new().with(Var::X, 0);
        for n in 0..=12u32 {
            let p = jacobi_poly(n as i64, &a, &b);
            assert_eq!(p.degree_in(&[Var::X]), Some(n));
            let want = pochhammer(&(&a + &int(1)), n).scale(&factorial(n).recip().unwrap());
            assert_eq!(p.eval_partial(&at0), want, "n={n}");
        }
    }

    #[test]
    fn every_identity_holds() {
        for id in IDENTITY_IDS {
            let r = uni_verify(id, 6).unwrap();
            assert!(r.passed(), "{r}");
        }
        assert!(uni_verify("de", 10).unwrap().passed());
    }

    #[test]
    fn recurrence_at_zero_uses_the_boundary() {
        let rec = IDENTITIES.iter().find(|i| i.id == "recurrence").unwrap();
        assert!(identity_residual(rec, 0).unwrap().is_zero());
    }

    #[test]
    fn unknown_identity_is_rejected() {
        assert_eq!(
            uni_verify("nope", 3),
            Err(Error::UnknownIdentity("nope".into()))
        );
    }

    #[test]
    fn rank_one_relations() {
        let r = rank1_verify();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn perturbed_relation_is_caught() {
        let k1 = builtin_op("K1");
        let k2 = builtin_op("K2");
        let bent = &k1.clone() + &DiffOp::mult(var(Var::X));
        assert!(rank1_first(k1, k2).is_zero());
        assert!(!rank1_first(&bent, k2).is_zero());
    }

    #[test]
    fn inner_product_basics() {
        let one = Poly::one();
        assert_eq!(uni_inner(&one, &one), Frac::one());
        let x = var(Var::X);
        assert_eq!(uni_inner(&x, &one), parse_frac("(a+1)/(a+b+2)").unwrap());
        assert_eq!(uni_norm(0), Frac::one());
    }
}
