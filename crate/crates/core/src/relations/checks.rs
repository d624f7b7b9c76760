//! Checks that go beyond single catalogue entries: rank-one subalgebras,
//! index symmetry, Jacobi-identity consequences and the degree form of L3.

use std::collections::BTreeMap;

use super::alg::{
    clear_inverse, eval, free_coeff, reduce_quadratic, DegAlg, FreeAlg, FreeOp, LocAlg, VarAlg,
};
use super::expr::{parse_expr, Expr};
use super::{Catalogue, Engine};
use crate::error::{Error, Result};
use crate::exact::{parse_poly, Poly, Var};
use crate::report::{Mode, Representation, VerificationReport};

/// Pairs of generators commuting with each listed generator.
pub const CENTRALIZERS: &[(&str, [&str; 2])] = &[
    ("L1", ["L", "X1"]),
    ("X1", ["L1", "X3"]),
    ("X3", ["X1", "L3"]),
    ("L3", ["X3", "L"]),
    ("L", ["L3", "L1"]),
];

/// Generators that abbreviate brackets of the basic ones.
pub const DERIVED: &[(&str, &str)] = &[
    ("N1", "[L,X1]"),
    ("N3", "[L,X3]"),
    ("M1", "[L1,X1]"),
    ("M3", "[L1,X3]"),
    ("J1", "[L3,X1]"),
    ("J3", "[L3,X3]"),
    ("G13", "[L1,L3]"),
];

/// Assignments of the intermediate Casimir elements of a rank-four
/// algebra in terms of generators, up to constant shifts. Stored as data;
/// no check depends on them.
pub const CASIMIR_ASSIGNMENTS: &[(&str, &str)] = &[
    ("C12", "X3"),
    ("C23", "-L1 + 1/4*(b+c)*(b+c+2)*I"),
    ("C34", "-L3 + 1/4*(a+b)*(a+b+2)*I"),
    ("C123", "I - X1"),
    ("C234", "-L + 1/4*(a+b+c+3)*(a+b+c+1)*I"),
];

/// Values of the remaining Casimir elements under [`CASIMIR_ASSIGNMENTS`].
pub const CASIMIR_CONSTANTS: &[(&str, &str)] = &[
    ("C1", "0"),
    ("C2", "1/4*(c^2-1)"),
    ("C3", "1/4*(b^2-1)"),
    ("C4", "1/4*(a^2-1)"),
    ("C1234", "1"),
];

fn derived_map() -> BTreeMap<String, Expr> {
    DERIVED
        .iter()
        .map(|(n, e)| (n.to_string(), parse_expr(e).expect("derived forms parse")))
        .collect()
}

/// The two defining relations of a rank-one Jacobi algebra, as residuals.
/// `k1` and `k2` are expression texts; `alpha` and `beta` polynomial texts.
pub fn rank_one(k1: &str, k2: &str, alpha: &str, beta: &str) -> Result<[Expr; 2]> {
    let s = format!("(({alpha}) + ({beta}))");
    let first = format!(
        "[{k1},[{k1},{k2}]] + 2*{{{k1},{k2}}} - 2*{k1} - {s}*({s}+2)*{k2} + {s}*(({alpha})+1)*I"
    );
    let second = format!("[{k2},[{k2},{k1}]] + 2*{k2}^2 - 2*{k2}");
    Ok([parse_expr(&first)?, parse_expr(&second)?])
}

/// The contracted pair, obtained when the central generator is set to one.
pub fn rank_one_contracted(k1: &str, k2: &str, sum: &str) -> Result<[Expr; 2]> {
    let s = format!("({sum})");
    let first = format!("[{k1},[{k1},{k2}]] + 2*{{{k1},{k2}}} - {s}*({s}+2)*{k2}");
    let second = format!("[{k2},[{k2},{k1}]] + 2*{k2}^2");
    Ok([parse_expr(&first)?, parse_expr(&second)?])
}

/// Racah data `[K1,[K1,K2]] = -2{K1,K2} - 2 K1^2 + alpha K1 + beta K2 + gamma`
/// read off from a relation, with `L` central.
#[derive(Clone, Debug, PartialEq)]
pub struct RacahData {
    pub alpha: Poly,
    pub beta: Poly,
    pub gamma: Poly,
}

fn free_linear_part(op: &FreeOp, k1: &str, k2: &str) -> Option<RacahData> {
    let allowed = [vec![k1.to_string()], vec![k2.to_string()], Vec::new()];
    if op.keys().any(|w| !allowed.contains(w)) {
        return None;
    }
    Some(RacahData {
        alpha: free_coeff(op, &[k1]),
        beta: free_coeff(op, &[k2]),
        gamma: free_coeff(op, &[]),
    })
}

/// Extract Racah data from catalogue entry `id`, whose left side is
/// `[K1,[K1,K2]]`.
pub fn racah_data(cat: &Catalogue, id: &str, k1: &str, k2: &str) -> Result<Option<RacahData>> {
    let spec = cat
        .get(id)
        .ok_or_else(|| Error::UnknownIdentity(id.to_string()))?;
    let alg = FreeAlg {
        fixed: BTreeMap::from([("L".to_string(), Poly::var(Var::Tau))]),
        expand: derived_map(),
    };
    let quad = parse_expr(&format!("-2*{{{k1},{k2}}} - 2*{k1}^2"))?;
    let rest = eval(&alg, &spec.rhs.clone().minus(quad))?;
    Ok(free_linear_part(&rest, k1, k2))
}

fn show(p: &Poly) -> String {
    p.to_string().replace("tau", "L")
}

impl Engine {
    fn var_alg(&self) -> VarAlg<'_> {
        VarAlg {
            gens: self.variable_generators(),
            params: Vec::new(),
        }
    }

    fn deg_alg(&self) -> DegAlg<'_> {
        DegAlg {
            gens: self.degree_generators(),
            scalar_map: Vec::new(),
        }
    }

    /// Rank-one subalgebras: centralizers, their identifications with a
    /// rank-one Jacobi algebra, contractions and the Racah pair.
    pub fn verify_subalgebras(&self, cat: &Catalogue) -> Result<Vec<VerificationReport>> {
        let mut out = Vec::new();
        for (g, pair) in CENTRALIZERS {
            for rep in [Representation::Variable, Representation::Degree] {
                let mut witness = None;
                for p in pair {
                    let e = parse_expr(&format!("[{g},{p}]"))?;
                    let w = match rep {
                        Representation::Variable => eval(&self.var_alg(), &e)?.first_term(),
                        _ => eval(&self.deg_alg(), &e)?.first_term(),
                    };
                    if let Some(w) = w {
                        witness = Some(format!("[{g},{p}] != 0: {w}"));
                        break;
                    }
                }
                out.push(VerificationReport::new(
                    format!("centralizer-{g}"),
                    rep,
                    Mode::Symbolic,
                    witness,
                ));
            }
        }
        out.extend(self.eigenspace_identifications()?);
        out.extend(self.localized_identifications()?);
        out.extend(self.contractions(cat)?);
        out.push(self.racah_check(cat)?);
        Ok(out)
    }

    /// `{L, X1}` on eigenspaces of `L1` and `{L, X3}` on eigenspaces of
    /// `L3`, labelled by a root `l` of the eigenvalue.
    fn eigenspace_identifications(&self) -> Result<Vec<VerificationReport>> {
        let k1 = "(L - l*(a+b+c-l+2)*I)";
        let cases = [
            ("rank-one-L-X1", "X1", "a", "b+c-2*l+1", "b+c+1", "L1"),
            ("rank-one-L-X3", "X3", "c", "a+b-2*l+1", "a+b+1", "L3"),
        ];
        let mut out = Vec::new();
        for (id, x, alpha, beta, p, central) in cases {
            let p = parse_poly(p)?;
            let c = &self.variable_generators()[central];
            let mut witness = None;
            for r in rank_one(k1, x, alpha, beta)? {
                let r = eval(&self.var_alg(), &r)?;
                let (r0, r1) = reduce_quadratic(&r, &p, c);
                if let Some(w) = r0.first_term().or_else(|| r1.first_term()) {
                    witness = Some(w);
                    break;
                }
            }
            out.push(VerificationReport::new(
                id,
                Representation::Variable,
                Mode::Symbolic,
                witness,
            ));
        }
        // On J_{n,k} the eigenvalue of L1 is attained at l = -k.
        let alg = DegAlg {
            gens: self.degree_generators(),
            scalar_map: vec![(Var::L, -&Poly::var(Var::K))],
        };
        let mut witness = None;
        for r in rank_one(k1, "X1", "a", "b+c-2*l+1")? {
            if let Some(w) = eval(&alg, &r)?.first_term() {
                witness = Some(w);
                break;
            }
        }
        out.push(VerificationReport::new(
            "rank-one-L-X1",
            Representation::Degree,
            Mode::Symbolic,
            witness,
        ));
        Ok(out)
    }

    /// `{L1, X3}` with `X1` central and `{L3, X1}` with `X3` central, using
    /// `U` for the inverse of the central element minus one.
    fn localized_identifications(&self) -> Result<Vec<VerificationReport>> {
        let cases = [
            ("rank-one-L1-X3", "L1", "(X3*U + I)", "b", "c", "X1"),
            ("rank-one-L3-X1", "L3", "(X1*U + I)", "b", "a", "X3"),
        ];
        let alg = LocAlg {
            gens: self.variable_generators(),
        };
        let mut out = Vec::new();
        for (id, k1, k2, alpha, beta, central) in cases {
            let c = &self.variable_generators()[central];
            let mut witness = None;
            for r in rank_one(k1, k2, alpha, beta)? {
                let cleared = clear_inverse(&eval(&alg, &r)?, c);
                if let Some(w) = cleared.first_term() {
                    witness = Some(w);
                    break;
                }
            }
            out.push(VerificationReport::new(
                id,
                Representation::Variable,
                Mode::Symbolic,
                witness,
            ));
        }
        Ok(out)
    }

    /// Setting a central `X` to one in two catalogue relations must give the
    /// contracted rank-one relations, up to sign.
    fn contractions(&self, cat: &Catalogue) -> Result<Vec<VerificationReport>> {
        let cases = [
            ("contraction-X1", "X1", ["MyLy", "MyY"], "L1", "X3", "b+c"),
            ("contraction-X3", "X3", ["L3J1", "X1J1"], "L3", "X1", "a+b"),
        ];
        let mut out = Vec::new();
        for (id, fixed, ids, k1, k2, sum) in cases {
            let alg = FreeAlg {
                fixed: BTreeMap::from([(fixed.to_string(), Poly::one())]),
                expand: derived_map(),
            };
            let mut witness = None;
            for (rid, tmpl) in ids.iter().zip(rank_one_contracted(k1, k2, sum)?) {
                let spec = cat
                    .get(rid)
                    .ok_or_else(|| Error::UnknownIdentity(rid.to_string()))?;
                let got = eval(&alg, &spec.residual())?;
                let want = eval(&alg, &tmpl)?;
                let same = got == want || got == neg(&want);
                if !same {
                    witness = Some(format!("{rid} does not contract"));
                    break;
                }
            }
            out.push(VerificationReport::new(
                id,
                Representation::Variable,
                Mode::Symbolic,
                witness,
            ));
        }
        Ok(out)
    }

    fn racah_check(&self, cat: &Catalogue) -> Result<VerificationReport> {
        let first = racah_data(cat, "LyLz1", "L1", "L3")?;
        let second = racah_data(cat, "LyLz2", "L3", "L1")?;
        let (first, second) = match (first, second) {
            (Some(f), Some(s)) => (f, s),
            _ => {
                return Ok(VerificationReport::new(
                    "racah",
                    Representation::Variable,
                    Mode::Symbolic,
                    Some("relation is not of Racah form".into()),
                ))
            }
        };
        let witness = if first.alpha != second.alpha {
            Some(format!(
                "alpha differs: {} vs {}",
                show(&first.alpha),
                show(&second.alpha)
            ))
        } else {
            None
        };
        Ok(VerificationReport::new(
            "racah",
            Representation::Variable,
            Mode::Symbolic,
            witness,
        )
        .with_detail(format!(
            "alpha={} beta={} gamma={} delta={} epsilon={}",
            show(&first.alpha),
            show(&first.beta),
            show(&first.gamma),
            show(&second.beta),
            show(&second.gamma)
        )))
    }

    /// Every variable-representation entry, rewritten under each swap of
    /// two indices, must still hold.
    pub fn verify_symmetry(&self, cat: &Catalogue) -> Result<VerificationReport> {
        let derived = derived_map();
        let params = [Var::A, Var::B, Var::C];
        let mut checked = 0;
        for (i, j) in [(1, 2), (1, 3), (2, 3)] {
            let mut gens = BTreeMap::new();
            for (p, q) in [(i, j), (j, i)] {
                gens.insert(format!("X{p}"), Expr::gen(&format!("X{q}")));
                gens.insert(format!("L{p}"), Expr::gen(&format!("L{q}")));
            }
            let swap = [
                (params[i - 1], params[j - 1]),
                (params[j - 1], params[i - 1]),
            ];
            for spec in &cat.entries {
                if !spec.supports(Representation::Variable) || spec.residual().has_literal() {
                    continue;
                }
                let expanded = spec.residual().substitute(&derived, &[]);
                let permuted = expanded.substitute(&gens, &swap);
                if let Some(w) = eval(&self.var_alg(), &permuted)?.first_term() {
                    return Ok(VerificationReport::new(
                        "index-symmetry",
                        Representation::Variable,
                        Mode::Symbolic,
                        Some(format!("{} under ({i} {j}): {w}", spec.id)),
                    ));
                }
                checked += 1;
            }
        }
        Ok(VerificationReport::new(
            "index-symmetry",
            Representation::Variable,
            Mode::Symbolic,
            None,
        )
        .with_detail(format!("{checked} permuted relations")))
    }

    /// Entries whose id starts with `jacobi-`, in the variable
    /// representation.
    pub fn verify_jacobi_consequences(&self, cat: &Catalogue) -> Result<VerificationReport> {
        let mut checked = 0;
        for spec in cat.entries.iter().filter(|s| s.id.starts_with("jacobi-")) {
            let r = self.verify(spec, Representation::Variable, Mode::Symbolic)?;
            if let Some(w) = r.witness {
                return Ok(VerificationReport::new(
                    "jacobi-consequences",
                    Representation::Variable,
                    Mode::Symbolic,
                    Some(format!("{}: {w}", spec.id)),
                ));
            }
            checked += 1;
        }
        Ok(VerificationReport::new(
            "jacobi-consequences",
            Representation::Variable,
            Mode::Symbolic,
            None,
        )
        .with_detail(format!("{checked} relations")))
    }

    /// `L3` of the degree representation recomputed from `L`, `X3` and
    /// their bracket.
    pub fn verify_l3_consistency(&self) -> Result<VerificationReport> {
        let e = parse_expr(
            "1/2*([[L,X3],L] - 2*{X3,L} + 2*L + (a+b+c+1)*((a+b+c+3)*X3 - (c+1)*I))",
        )?;
        let derived = eval(&self.deg_alg(), &e)?;
        let table = &self.degree_generators()["L3"];
        let witness = if derived.frac_eq(table) {
            None
        } else {
            (&derived - table).first_term()
        };
        Ok(VerificationReport::new(
            "L3-consistency",
            Representation::Degree,
            Mode::Symbolic,
            witness,
        ))
    }
}

fn neg(op: &FreeOp) -> FreeOp {
    op.iter().map(|(w, c)| (w.clone(), -c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::{builtin, DiffOp};

    #[test]
    fn rank_one_template_matches_the_hypergeometric_pair() {
        let gens: BTreeMap<_, _> = ["K1", "K2", "I"]
            .iter()
            .map(|n| (n.to_string(), builtin(n).unwrap()))
            .collect();
        let alg = VarAlg {
            gens: &gens,
            params: Vec::new(),
        };
        for r in rank_one("K1", "K2", "a", "b").unwrap() {
            assert!(eval(&alg, &r).unwrap().is_zero());
        }
    }

    #[test]
    fn racah_parameters() {
        let cat = Catalogue::bundled();
        let d = racah_data(&cat, "LyLz1", "L1", "L3").unwrap().unwrap();
        let tau = Poly::var(Var::Tau);
        let want_alpha =
            &(&tau * &Poly::int(2)) + &parse_poly("(b+c)*(b+1) + (b-c)*(a+1)").unwrap();
        assert_eq!(d.alpha, want_alpha);
        assert_eq!(d.beta, parse_poly("(b+c)*(b+c+2)").unwrap());
        assert_eq!(d.gamma, &tau * &parse_poly("-(b+c)*(b+1)").unwrap());
    }

    #[test]
    fn subalgebra_checks_pass() {
        let eng = Engine::new();
        for r in eng.verify_subalgebras(&Catalogue::bundled()).unwrap() {
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn casimir_data_parses() {
        for (_, e) in CASIMIR_ASSIGNMENTS {
            assert!(parse_expr(e).is_ok());
        }
        for (_, e) in CASIMIR_CONSTANTS {
            assert!(parse_expr(e).unwrap().as_scalar().is_some());
        }
    }

    #[test]
    fn alpha_expressions_agree() {
        let one = parse_poly("(b+c)*(b+1)+(b-c)*(a+1)").unwrap();
        let two = parse_poly("(a+b)*(b+1)+(b-a)*(c+1)").unwrap();
        assert_eq!(one, two);
        assert_eq!(one, parse_poly("b^2+2*b+a*b+b*c-a*c").unwrap());
    }

    #[test]
    fn symmetry_and_jacobi_consequences() {
        let eng = Engine::new();
        let cat = Catalogue::bundled();
        assert!(eng.verify_symmetry(&cat).unwrap().passed());
        assert!(eng.verify_jacobi_consequences(&cat).unwrap().passed());
    }

    #[test]
    fn symmetry_sees_broken_generators() {
        let mut eng = Engine::new();
        let l2 = &builtin("L2").unwrap() + &DiffOp::identity();
        eng.set_variable("L2", l2).unwrap();
        assert!(!eng.verify_symmetry(&Catalogue::bundled()).unwrap().passed());
    }

    #[test]
    fn degree_l3_matches_table() {
        assert!(Engine::new().verify_l3_consistency().unwrap().passed());
    }
}
