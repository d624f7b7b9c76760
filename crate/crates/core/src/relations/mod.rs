//! Relation catalogue and the verification engine.

pub mod alg;
pub mod checks;
pub mod expr;
pub mod point;

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{Frac, Poly, Var};
use crate::jacobi2::Family;
use crate::report::{Mode, Representation, VerificationReport};
use crate::shiftalg::{dbuiltin, sample_points, DegreeOp, Shift, MAX_AUDIT_DEGREE};
use crate::weyl::{builtin, DiffOp};
use alg::{eval, AuditAlg, DegAlg, ParamDegree, VarAlg};
pub use expr::{parse_equation, parse_expr, Expr};
use point::PointEval;

/// The bundled catalogue text.
pub const DEFAULT_CATALOGUE: &str = include_str!("../../data/relations.cat");

/// One catalogue entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationSpec {
    pub id: String,
    pub lhs: Expr,
    pub rhs: Expr,
    pub reps: Vec<Representation>,
}

impl RelationSpec {
    /// `lhs - rhs`.
    pub fn residual(&self) -> Expr {
        self.lhs.clone().minus(self.rhs.clone())
    }

    pub fn supports(&self, rep: Representation) -> bool {
        self.reps.contains(&rep)
    }
}

impl fmt::Display for RelationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let reps: Vec<&str> = self.reps.iter().map(|r| r.as_str()).collect();
        write!(
            f,
            "{} [{}] : {} = {}",
            self.id,
            reps.join(" "),
            self.lhs,
            self.rhs
        )
    }
}

/// Parse a bare equation `lhs = rhs` into an unnamed relation available in
/// the variable and degree representations.
pub fn parse_relation(text: &str) -> Result<RelationSpec> {
    let (lhs, rhs) = parse_equation(text)?;
    Ok(RelationSpec {
        id: String::new(),
        lhs,
        rhs,
        reps: vec![Representation::Variable, Representation::Degree],
    })
}

fn parse_rep(word: &str, pos: usize) -> Result<Representation> {
    match word {
        "variable" => Ok(Representation::Variable),
        "degree" => Ok(Representation::Degree),
        "structure" => Ok(Representation::Structure),
        _ => Err(Error::Syntax {
            pos,
            msg: format!("unknown representation `{word}`"),
        }),
    }
}

fn syntax(pos: usize, msg: &str) -> Error {
    Error::Syntax {
        pos,
        msg: msg.to_string(),
    }
}

/// Parse one catalogue line `<id> [<reps>] : <lhs> = <rhs>`. Positions in
/// errors are offset by `base`.
fn parse_entry(line: &str, base: usize) -> Result<RelationSpec> {
    let open = line
        .find('[')
        .ok_or_else(|| syntax(base + line.len(), "expected `[`"))?;
    let id = line[..open].trim();
    if id.is_empty() || id.contains(char::is_whitespace) {
        return Err(syntax(base, "expected a single relation id"));
    }
    let close = line[open..]
        .find(']')
        .map(|i| i + open)
        .ok_or_else(|| syntax(base + line.len(), "expected `]`"))?;
    let mut reps = Vec::new();
    let mut cursor = open + 1;
    for word in line[open + 1..close].split_whitespace() {
        let at = line[cursor..].find(word).map_or(cursor, |i| i + cursor);
        let rep = parse_rep(word, base + at)?;
        if !reps.contains(&rep) {
            reps.push(rep);
        }
        cursor = at + word.len();
    }
    if reps.is_empty() {
        return Err(syntax(base + close, "expected at least one representation"));
    }
    let rest = &line[close + 1..];
    let colon = rest
        .find(|c: char| !c.is_whitespace())
        .filter(|&i| rest[i..].starts_with(':'))
        .ok_or_else(|| syntax(base + close + 1, "expected `:`"))?;
    let eq_start = close + 1 + colon + 1;
    let (lhs, rhs) = parse_equation(&line[eq_start..]).map_err(|e| match e {
        Error::Syntax { pos, msg } => Error::Syntax {
            pos: pos + base + eq_start,
            msg,
        },
        other => other,
    })?;
    Ok(RelationSpec {
        id: id.to_string(),
        lhs,
        rhs,
        reps,
    })
}

/// An ordered list of relations with unique ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Catalogue {
    pub entries: Vec<RelationSpec>,
}

impl Catalogue {
    pub fn parse(text: &str) -> Result<Catalogue> {
        let mut entries: Vec<RelationSpec> = Vec::new();
        let mut offset = 0;
        for raw in text.split_inclusive('\n') {
            let line = raw.split('#').next().unwrap_or("");
            if !line.trim().is_empty() {
                let spec = parse_entry(line.trim_end(), offset)?;
                if entries.iter().any(|e| e.id == spec.id) {
                    return Err(syntax(offset, &format!("duplicate relation id `{}`", spec.id)));
                }
                entries.push(spec);
            }
            offset += raw.len();
        }
        Ok(Catalogue { entries })
    }

    pub fn bundled() -> Catalogue {
        Catalogue::parse(DEFAULT_CATALOGUE).expect("the bundled catalogue parses")
    }

    pub fn load(path: &Path) -> std::result::Result<Catalogue, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        Catalogue::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
    }

    pub fn get(&self, id: &str) -> Option<&RelationSpec> {
        self.entries.iter().find(|e| e.id == id)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl fmt::Display for Catalogue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}

/// Signed sums of structure entries that are checked as a unit.
pub const STRUCTURE_COMBINATIONS: &[(&str, &[(i64, &str)])] = &[
    ("sr2-sr3", &[(1, "sr2"), (-1, "sr3")]),
    ("sr1+sr2-sr3", &[(1, "sr1"), (1, "sr2"), (-1, "sr3")]),
];

const VAR_GENERATORS: &[&str] = &[
    "L", "L1", "L2", "L3", "X1", "X2", "X3", "N1", "N3", "M1", "M3", "J1", "J3", "I",
];

const DEG_GENERATORS: &[(&str, &str)] = &[
    ("L", "Lh"),
    ("L1", "L1h"),
    ("L3", "L3h"),
    ("X1", "X1h"),
    ("X3", "X3h"),
    ("N1", "N1h"),
    ("N3", "N3h"),
    ("M1", "M1h"),
    ("M3", "M3h"),
    ("Sp", "Sp"),
    ("Sm", "Sm"),
    ("Tp", "Tp"),
    ("Tm", "Tm"),
    ("I", "I"),
];

/// Where a mutation adds one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MutationSite {
    /// The coefficient of `dx^i dy^j`.
    Derivative(u32, u32),
    /// The coefficient of a lattice shift.
    Shift(Shift),
}

/// A deliberate corruption of one generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mutation {
    pub generator: &'static str,
    pub site: MutationSite,
}

impl Mutation {
    pub fn representation(&self) -> Representation {
        match self.site {
            MutationSite::Derivative(..) => Representation::Variable,
            MutationSite::Shift(_) => Representation::Degree,
        }
    }
}

impl fmt::Display for Mutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.site {
            MutationSite::Derivative(i, j) => {
                write!(f, "{} + dx^{i} dy^{j}", self.generator)
            }
            MutationSite::Shift(s) => write!(
                f,
                "{} + {}",
                self.generator,
                crate::shiftalg::shift_name(s)
            ),
        }
    }
}

/// The standard mutation set, five per representation.
pub const MUTATIONS: [Mutation; 10] = [
    Mutation { generator: "N1", site: MutationSite::Derivative(0, 0) },
    Mutation { generator: "N3", site: MutationSite::Derivative(1, 0) },
    Mutation { generator: "M3", site: MutationSite::Derivative(0, 1) },
    Mutation { generator: "L3", site: MutationSite::Derivative(2, 0) },
    Mutation { generator: "L1", site: MutationSite::Derivative(0, 1) },
    Mutation { generator: "X1", site: MutationSite::Shift((1, 0)) },
    Mutation { generator: "X3", site: MutationSite::Shift((0, 0)) },
    Mutation { generator: "L3", site: MutationSite::Shift((0, 1)) },
    Mutation { generator: "N1", site: MutationSite::Shift((-1, 0)) },
    Mutation { generator: "M3", site: MutationSite::Shift((0, -1)) },
];

/// Evaluates relations in both representations.
#[derive(Clone)]
pub struct Engine {
    var_base: BTreeMap<String, DiffOp>,
    deg_base: BTreeMap<String, DegreeOp>,
    var: BTreeMap<String, DiffOp>,
    deg: BTreeMap<String, DegreeOp>,
    pub seed: u64,
    /// Minimum number of accepted points per sampled check.
    pub samples: usize,
    /// Largest total degree used by structure checks.
    pub n_structure: i64,
    /// Record wall-clock time on reports.
    pub timings: bool,
}

impl Default for Engine {
    fn default() -> Engine {
        Engine::new()
    }
}

impl Engine {
    pub fn new() -> Engine {
        let var_base = VAR_GENERATORS
            .iter()
            .map(|n| (n.to_string(), builtin(n).expect("builtin")))
            .collect();
        let deg_base = DEG_GENERATORS
            .iter()
            .map(|(n, b)| (n.to_string(), dbuiltin(b).expect("builtin")))
            .collect();
        let mut e = Engine {
            var_base,
            deg_base,
            var: BTreeMap::new(),
            deg: BTreeMap::new(),
            seed: 1,
            samples: 50,
            n_structure: 6,
            timings: false,
        };
        e.rebuild();
        e
    }

    fn rebuild(&mut self) {
        self.var = self.var_base.clone();
        let g13 = self.var["L1"].bracket(&self.var["L3"]);
        self.var.insert("G13".into(), g13);

        self.deg = self.deg_base.clone();
        let d = &self.deg;
        let j1 = d["L3"].bracket(&d["X1"]);
        let j3 = d["L3"].bracket(&d["X3"]);
        let g13 = d["L1"].bracket(&d["L3"]);
        self.deg.insert("J1".into(), j1);
        self.deg.insert("J3".into(), j3);
        self.deg.insert("G13".into(), g13);
    }

    /// Generators of the variable representation, derived ones included.
    pub fn variable_generators(&self) -> &BTreeMap<String, DiffOp> {
        &self.var
    }

    /// Generators of the degree representation, derived ones included.
    pub fn degree_generators(&self) -> &BTreeMap<String, DegreeOp> {
        &self.deg
    }

    /// Replace a base generator of the variable representation.
    pub fn set_variable(&mut self, name: &str, op: DiffOp) -> Result<()> {
        if !self.var_base.contains_key(name) {
            return Err(Error::UnknownGenerator(name.to_string()));
        }
        self.var_base.insert(name.to_string(), op);
        self.rebuild();
        Ok(())
    }

    /// Replace a base generator of the degree representation.
    pub fn set_degree(&mut self, name: &str, op: DegreeOp) -> Result<()> {
        if !self.deg_base.contains_key(name) {
            return Err(Error::UnknownGenerator(name.to_string()));
        }
        self.deg_base.insert(name.to_string(), op);
        self.rebuild();
        Ok(())
    }

    /// A copy with `m` applied.
    pub fn mutated(&self, m: &Mutation) -> Result<Engine> {
        let mut e = self.clone();
        match m.site {
            MutationSite::Derivative(i, j) => {
                let op = self
                    .var_base
                    .get(m.generator)
                    .ok_or_else(|| Error::UnknownGenerator(m.generator.to_string()))?;
                e.set_variable(m.generator, op + &DiffOp::term(i, j, Poly::one()))?;
            }
            MutationSite::Shift(s) => {
                let op = self
                    .deg_base
                    .get(m.generator)
                    .ok_or_else(|| Error::UnknownGenerator(m.generator.to_string()))?;
                e.set_degree(m.generator, op + &DegreeOp::term(s, Frac::one()))?;
            }
        }
        Ok(e)
    }

    /// Verify one relation.
    pub fn verify(
        &self,
        spec: &RelationSpec,
        rep: Representation,
        mode: Mode,
    ) -> Result<VerificationReport> {
        if !spec.supports(rep) {
            return Err(Error::UnsupportedRepresentation(spec.id.clone(), rep.as_str()));
        }
        let start = Instant::now();
        let mut report = match (rep, mode) {
            (Representation::Structure, _) => {
                self.structure_report(&spec.id, &[(1, spec)], self.n_structure)?
            }
            (Representation::Variable, Mode::Symbolic) => self.variable_symbolic(spec)?,
            (Representation::Variable, Mode::Sampled) => self.variable_sampled(spec)?,
            (Representation::Degree, Mode::Symbolic) => self.degree_symbolic(spec)?,
            (Representation::Degree, Mode::Sampled) => self.degree_sampled(spec)?,
        };
        report.mode = if rep == Representation::Structure {
            Mode::Symbolic
        } else {
            mode
        };
        if self.timings {
            report.elapsed_ms = start.elapsed().as_secs_f64() * 1000.0;
        }
        Ok(report)
    }

    /// Verify every entry available in `rep`, in catalogue order. Errors
    /// become failing reports.
    pub fn verify_all(
        &self,
        cat: &Catalogue,
        rep: Representation,
        mode: Mode,
    ) -> Vec<VerificationReport> {
        cat.entries
            .par_iter()
            .filter(|s| s.supports(rep))
            .map(|s| {
                self.verify(s, rep, mode).unwrap_or_else(|e| {
                    VerificationReport::new(s.id.clone(), rep, mode, Some(format!("error: {e}")))
                })
            })
            .collect()
    }

    fn variable_symbolic(&self, spec: &RelationSpec) -> Result<VerificationReport> {
        let alg = VarAlg {
            gens: &self.var,
            params: Vec::new(),
        };
        let r = eval(&alg, &spec.residual())?;
        Ok(VerificationReport::new(
            spec.id.clone(),
            Representation::Variable,
            Mode::Symbolic,
            r.first_term(),
        ))
    }

    fn variable_sampled(&self, spec: &RelationSpec) -> Result<VerificationReport> {
        let residual = spec.residual();
        let d = eval(&ParamDegree { gens: &self.var }, &residual)? as usize;
        let target = self.samples.max(d + 1);
        let witness = sample_points(self.seed, &spec.id, target, |p| {
            let params = vec![
                (Var::A, Poly::constant(p.vals[0].clone())),
                (Var::B, Poly::constant(p.vals[1].clone())),
                (Var::C, Poly::constant(p.vals[2].clone())),
            ];
            let alg = VarAlg {
                gens: &self.var,
                params,
            };
            Ok(eval(&alg, &residual)?.first_term())
        })?;
        Ok(VerificationReport::new(
            spec.id.clone(),
            Representation::Variable,
            Mode::Sampled,
            witness,
        )
        .with_detail(format!("samples={target} degree-bound={d}")))
    }

    fn degree_symbolic(&self, spec: &RelationSpec) -> Result<VerificationReport> {
        let alg = DegAlg {
            gens: &self.deg,
            scalar_map: Vec::new(),
        };
        let r = eval(&alg, &spec.residual())?;
        Ok(VerificationReport::new(
            spec.id.clone(),
            Representation::Degree,
            Mode::Symbolic,
            r.first_term(),
        ))
    }

    fn degree_sampled(&self, spec: &RelationSpec) -> Result<VerificationReport> {
        let residual = spec.residual();
        let audit = eval(&AuditAlg { gens: &self.deg }, &residual)?;
        let d = audit.audit.bound().num;
        let report = |w| {
            VerificationReport::new(spec.id.clone(), Representation::Degree, Mode::Sampled, w)
        };
        if d > MAX_AUDIT_DEGREE {
            return Ok(report(Some(format!(
                "degree bound {d} exceeds the audit limit {MAX_AUDIT_DEGREE}"
            ))));
        }
        let target = self.samples.max(d as usize + 1);
        let witness = sample_points(self.seed, &spec.id, target, |p| {
            Ok(PointEval::new(&self.deg, p).at(&residual, (0, 0))?.first_term())
        })?;
        Ok(report(witness).with_detail(format!("samples={target} degree-bound={d}")))
    }

    /// Check a structure entry or a signed combination of them on every
    /// `J_{n,k}` with `n <= n_max`.
    pub fn verify_structure(
        &self,
        cat: &Catalogue,
        id: &str,
        n_max: i64,
    ) -> Result<VerificationReport> {
        let parts: Vec<(i64, &str)> = match STRUCTURE_COMBINATIONS.iter().find(|(c, _)| *c == id) {
            Some((_, parts)) => parts.to_vec(),
            None => vec![(1, id)],
        };
        let mut specs = Vec::new();
        for (sign, part) in parts {
            let spec = cat
                .get(part)
                .ok_or_else(|| Error::UnknownIdentity(part.to_string()))?;
            if !spec.supports(Representation::Structure) {
                return Err(Error::UnsupportedRepresentation(
                    part.to_string(),
                    Representation::Structure.as_str(),
                ));
            }
            specs.push((sign, spec));
        }
        let start = Instant::now();
        let mut report = self.structure_report(id, &specs, n_max)?;
        if self.timings {
            report.elapsed_ms = start.elapsed().as_secs_f64() * 1000.0;
        }
        Ok(report)
    }

    fn structure_report(
        &self,
        id: &str,
        parts: &[(i64, &RelationSpec)],
        n_max: i64,
    ) -> Result<VerificationReport> {
        let var_alg = VarAlg {
            gens: &self.var,
            params: Vec::new(),
        };
        let deg_alg = DegAlg {
            gens: &self.deg,
            scalar_map: Vec::new(),
        };
        let mut lhs = DiffOp::zero();
        let mut rhs = DegreeOp::zero();
        for (sign, spec) in parts {
            let s = crate::exact::Rat::from_int(*sign);
            lhs = &lhs + &eval(&var_alg, &spec.lhs)?.scale(&s);
            rhs = &rhs + &eval(&deg_alg, &spec.rhs)?.scale(&Frac::constant(s));
        }
        let family = Family::new(n_max + 1);
        let mut witness = None;
        'outer: for n in 0..=n_max {
            for k in 0..=n {
                let j = crate::jacobi2::bi_jacobi(n, k).poly;
                let left = Frac::from_poly(lhs.apply(&j));
                let right = rhs.dapply(n, k, &family)?;
                if !left.frac_eq(&right) {
                    witness = Some(format!("(n,k)=({n},{k}): sides differ"));
                    break 'outer;
                }
            }
        }
        Ok(VerificationReport::new(
            id,
            Representation::Structure,
            Mode::Symbolic,
            witness,
        )
        .with_detail(format!("n<={n_max}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_catalogue() {
        let cat = Catalogue::bundled();
        assert_eq!(cat.len(), 49);
        let printed = cat.to_string();
        assert_eq!(Catalogue::parse(&printed).unwrap(), cat);
        assert_eq!(Catalogue::parse(&printed).unwrap().to_string(), printed);
    }

    #[test]
    fn entry_errors() {
        let e = Catalogue::parse("Nx [variable] : [L,X1 = N1\n").unwrap_err();
        assert!(matches!(e, Error::Syntax { .. }));
        let e = Catalogue::parse("Nx [bogus] : L = L\n").unwrap_err();
        assert_eq!(
            e,
            Error::Syntax {
                pos: 4,
                msg: "unknown representation `bogus`".into()
            }
        );
        let e = Catalogue::parse("A [degree] : L = L\nA [degree] : L = L\n").unwrap_err();
        assert!(e.to_string().contains("duplicate"));
    }

    #[test]
    fn primary_relation_both_representations() {
        let eng = Engine::new();
        let spec = Catalogue::bundled().get("XXL").unwrap().clone();
        for rep in [Representation::Variable, Representation::Degree] {
            for mode in [Mode::Symbolic, Mode::Sampled] {
                let r = eng.verify(&spec, rep, mode).unwrap();
                assert!(r.passed(), "{r}");
            }
        }
    }

    #[test]
    fn corrupted_relation_fails() {
        let eng = Engine::new();
        let mut spec = parse_relation("[N1,X1] = (-2)*X1*X1 + (3)*X1").unwrap();
        spec.id = "XXL-bad".into();
        for rep in [Representation::Variable, Representation::Degree] {
            for mode in [Mode::Symbolic, Mode::Sampled] {
                let r = eng.verify(&spec, rep, mode).unwrap();
                assert!(!r.passed());
                assert!(r.witness.is_some());
            }
        }
    }

    #[test]
    fn structure_requires_structure_entries() {
        let eng = Engine::new();
        let cat = Catalogue::bundled();
        let e = eng
            .verify(cat.get("Nx").unwrap(), Representation::Structure, Mode::Symbolic)
            .unwrap_err();
        assert!(matches!(e, Error::UnsupportedRepresentation(..)));
        let r = eng.verify_structure(&cat, "sr1", 3).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn spec_examples() {
        let eng = Engine::new();
        let cat = Catalogue::bundled();
        let nyy = cat.get("NyY").unwrap();
        assert!(eng.verify(nyy, Representation::Variable, Mode::Symbolic).unwrap().passed());
        let mut sampled = Engine::new();
        sampled.seed = 42;
        let lylz2 = cat.get("LyLz2").unwrap();
        assert!(sampled.verify(lylz2, Representation::Degree, Mode::Sampled).unwrap().passed());
        assert!(eng.verify_structure(&cat, "sr3", 5).unwrap().passed());
        assert!(eng.verify_structure(&cat, "sr1+sr2-sr3", 4).unwrap().passed());
        assert!(matches!(
            eng.verify_structure(&cat, "sr9", 1),
            Err(Error::UnknownIdentity(_))
        ));
    }

    #[test]
    fn structure_at_the_origin() {
        // N1 applied to 1 against the degree action at (0,0).
        let eng = Engine::new();
        let n1 = &eng.variable_generators()["N1"];
        let want = crate::exact::parse_poly("(a+1) - (a+b+c+3)*x").unwrap();
        assert_eq!(n1.apply(&Poly::one()), want);
        let fam = Family::new(1);
        let got = eng.degree_generators()["N1"].dapply(0, 0, &fam).unwrap();
        assert!(got.frac_eq(&Frac::from_poly(want)));
    }

    #[test]
    fn zeroed_m3_breaks_its_mirrors() {
        let mut eng = Engine::new();
        eng.set_degree("M3", DegreeOp::zero()).unwrap();
        let reports = eng.verify_all(&Catalogue::bundled(), Representation::Degree, Mode::Sampled);
        let failed: Vec<&str> = reports
            .iter()
            .filter(|r| !r.passed())
            .map(|r| r.relation.as_str())
            .collect();
        for id in ["MyY", "MyL", "MyLy"] {
            assert!(failed.contains(&id), "{id}");
        }
    }

    #[test]
    fn reports_are_reproducible() {
        let eng = Engine::new();
        let cat = Catalogue::bundled();
        let one = eng.verify_all(&cat, Representation::Degree, Mode::Sampled);
        let two = eng.verify_all(&cat, Representation::Degree, Mode::Sampled);
        assert_eq!(one, two);
    }

    #[test]
    fn mutation_is_detected() {
        let eng = Engine::new().mutated(&MUTATIONS[0]).unwrap();
        let spec = Catalogue::bundled().get("Nx").unwrap().clone();
        let r = eng
            .verify(&spec, Representation::Variable, Mode::Symbolic)
            .unwrap();
        assert!(!r.passed());
    }
}
