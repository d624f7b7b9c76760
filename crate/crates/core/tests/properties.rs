use proptest::prelude::*;

use tri_jacobi::exact::{parse_frac, parse_poly, Assignment, Frac, Mono, Poly, Rat, Var};
use tri_jacobi::jacobi2::{bi_jacobi, inner, norm_h, Family};
use tri_jacobi::relations::{parse_expr, Catalogue, Engine};
use tri_jacobi::report::{Mode, Representation};
use tri_jacobi::shiftalg::{dbuiltin, SamplePoint};
use tri_jacobi::weyl::builtin;

fn poly_in(vars: &'static [Var]) -> impl Strategy<Value = Poly> {
    let term = (prop::collection::vec(0u32..3, vars.len()), -5i64..=5);
    prop::collection::vec(term, 0..5).prop_map(move |terms| {
        Poly::from_terms(
            terms
                .into_iter()
                .map(|(exps, c)| {
                    let e: Vec<(Var, u32)> = vars.iter().copied().zip(exps).collect();
                    (Mono::from_exponents(&e), Rat::from_int(c))
                })
                .collect(),
        )
    })
}

const XYA: &[Var] = &[Var::X, Var::Y, Var::A];

fn rat() -> impl Strategy<Value = Rat> {
    (-20i64..=20, 1i64..=7).prop_map(|(p, q)| Rat::ratio(p, q))
}

const DIFF_NAMES: &[&str] = &["L", "L1", "L3", "X1", "X3", "N1", "N3", "M3", "J1", "s1", "s2s"];
const DEG_NAMES: &[&str] = &["Lh", "L1h", "L3h", "X1h", "X3h", "N1h", "N3h", "M3h", "Sp", "Tm"];

fn diff_name() -> impl Strategy<Value = &'static str> {
    prop::sample::select(DIFF_NAMES)
}

fn deg_name() -> impl Strategy<Value = &'static str> {
    prop::sample::select(DEG_NAMES)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polynomial_ring_axioms(p in poly_in(XYA), q in poly_in(XYA), r in poly_in(XYA)) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn polynomial_text_round_trips(p in poly_in(XYA)) {
        prop_assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn evaluation_is_a_homomorphism(p in poly_in(XYA), q in poly_in(XYA), x in rat(), y in rat(), a in rat()) {
        let at = Assignment::new().with(Var::X, x).with(Var::Y, y).with(Var::A, a);
        let (pv, qv) = (p.eval(&at).unwrap(), q.eval(&at).unwrap());
        prop_assert_eq!((&p * &q).eval(&at).unwrap(), &pv * &qv);
        prop_assert_eq!((&p + &q).eval(&at).unwrap(), &pv + &qv);
    }

    #[test]
    fn fractions_add_over_a_common_denominator(
        p in poly_in(XYA), q in poly_in(XYA), s in 1i64..6, t in 1i64..6,
    ) {
        let d1 = parse_poly(&format!("a+{s}")).unwrap();
        let d2 = parse_poly(&format!("x-{t}")).unwrap();
        let f = Frac::new(p.clone(), d1.clone()).unwrap();
        let g = Frac::new(q.clone(), d2.clone()).unwrap();
        let want = Frac::new(&(&p * &d2) + &(&q * &d1), &d1 * &d2).unwrap();
        prop_assert!((&f + &g).frac_eq(&want));
        prop_assert!((&(&f * &g) - &Frac::new(&p * &q, &d1 * &d2).unwrap()).is_zero());
    }

    #[test]
    fn bracket_is_antisymmetric_and_satisfies_jacobi(
        a in diff_name(), b in diff_name(), c in diff_name(),
    ) {
        let (a, b, c) = (builtin(a).unwrap(), builtin(b).unwrap(), builtin(c).unwrap());
        prop_assert!((&a.bracket(&b) + &b.bracket(&a)).is_zero());
        let j = &(&a.bracket(&b.bracket(&c)) + &b.bracket(&c.bracket(&a))) + &c.bracket(&a.bracket(&b));
        prop_assert!(j.is_zero());
    }

    #[test]
    fn apply_respects_composition(a in diff_name(), b in diff_name(), p in poly_in(XYA)) {
        let (a, b) = (builtin(a).unwrap(), builtin(b).unwrap());
        prop_assert_eq!(a.compose(&b).apply(&p), a.apply(&b.apply(&p)));
    }

    #[test]
    fn diffop_bracket_is_bilinear(a in diff_name(), b in diff_name(), c in diff_name(), r in rat()) {
        let (a, b, c) = (builtin(a).unwrap(), builtin(b).unwrap(), builtin(c).unwrap());
        let lhs = (&a + &b.scale(&r)).bracket(&c);
        let rhs = &a.bracket(&c) + &b.bracket(&c).scale(&r);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn diffop_text_round_trips(a in diff_name()) {
        let op = builtin(a).unwrap();
        prop_assert_eq!(tri_jacobi::weyl::parse_diffop(&op.to_string()).unwrap(), op);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn degree_composition_is_associative(a in deg_name(), b in deg_name(), c in deg_name()) {
        let (a, b, c) = (dbuiltin(a).unwrap(), dbuiltin(b).unwrap(), dbuiltin(c).unwrap());
        let left = a.compose(&b).compose(&c);
        let right = a.compose(&b.compose(&c));
        prop_assert!(left.frac_eq(&right));
    }

    #[test]
    fn pointwise_evaluation_commutes_with_composition(
        a in deg_name(), b in deg_name(), v in prop::array::uniform5(rat()),
    ) {
        let (a, b) = (dbuiltin(a).unwrap(), dbuiltin(b).unwrap());
        let point = SamplePoint { vals: v };
        let at = point.assignment();
        let expr = parse_expr("A*B").unwrap();
        let gens = [("A".to_string(), a.clone()), ("B".to_string(), b.clone())].into_iter().collect();
        let symbolic = a.compose(&b).eval_at(&at);
        let pointwise = tri_jacobi::relations::point::PointEval::new(&gens, &point).at(&expr, (0, 0));
        match (symbolic, pointwise) {
            (Ok(s), Ok(p)) => prop_assert_eq!(s, p),
            (Err(_), Err(_)) => {}
            (s, p) => prop_assert!(false, "{:?} vs {:?}", s.is_ok(), p.is_ok()),
        }
    }

    #[test]
    fn dapply_respects_composition(a in deg_name(), b in deg_name(), n in 3i64..6, k in 1i64..4) {
        // Keep every intermediate index inside the cone.
        prop_assume!(n - k >= 2);
        let fam = Family::new(8);
        let (a, b) = (dbuiltin(a).unwrap(), dbuiltin(b).unwrap());
        let direct = a.compose(&b).dapply(n, k, &fam).unwrap();
        // B J_{n,k} = sum_e beta_e J_{(n,k)+e}; apply A to each target.
        let mut nested = Frac::zero();
        let at = [(Var::N, Poly::int(n)), (Var::K, Poly::int(k))];
        for (&(dn, dk), beta) in b.terms() {
            let (tn, tk) = (n + dn as i64, k + dk as i64);
            let coef = beta.subst(&at).unwrap();
            nested = &nested + &(&coef * &a.dapply(tn, tk, &fam).unwrap());
        }
        prop_assert!(direct.frac_eq(&nested));
    }

    #[test]
    fn distinct_polynomials_are_orthogonal(n in 0i64..4, k in 0i64..4, m in 0i64..4, j in 0i64..4) {
        prop_assume!(k <= n && j <= m && (n, k) != (m, j));
        let p = bi_jacobi(n, k).poly;
        let q = bi_jacobi(m, j).poly;
        prop_assert!(inner(&p, &q).is_zero());
        prop_assert!(inner(&p, &p).frac_eq(&norm_h(n, k)));
    }

    #[test]
    fn expression_text_round_trips(i in 0usize..49) {
        let cat = Catalogue::bundled();
        let spec = &cat.entries[i];
        for side in [&spec.lhs, &spec.rhs] {
            prop_assert_eq!(&parse_expr(&side.to_string()).unwrap(), side);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn symbolic_pass_implies_sampled_pass(i in 0usize..46, seed in any::<u64>()) {
        let cat = Catalogue::bundled();
        let spec = &cat.entries[i];
        let mut eng = Engine::new();
        eng.seed = seed;
        eng.samples = 8;
        for rep in [Representation::Variable, Representation::Degree] {
            if !spec.supports(rep) {
                continue;
            }
            let sym = eng.verify(spec, rep, Mode::Symbolic).unwrap();
            let sam = eng.verify(spec, rep, Mode::Sampled).unwrap();
            prop_assert!(!sym.passed() || sam.passed(), "{} {}", sym, sam);
        }
    }
}

#[test]
fn frac_parse_matches_construction() {
    let f = parse_frac("(x+1)/(a+2)").unwrap();
    let g = Frac::new(parse_poly("x+1").unwrap(), parse_poly("a+2").unwrap()).unwrap();
    assert!(f.frac_eq(&g));
}
