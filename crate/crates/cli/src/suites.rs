//! Suite dispatch.

use rayon::prelude::*;
use tri_jacobi::jacobi1::{rank1_verify, uni_verify, IDENTITY_IDS};
use tri_jacobi::jacobi2::{
    verify_conjugations, verify_eigen, verify_factorized_laplacian, verify_gram,
    verify_operator_factorizations, verify_recurrence, verify_sactions,
    verify_scalar_combination, verify_separation, Recurrence,
};
use tri_jacobi::relations::{Catalogue, Engine, STRUCTURE_COMBINATIONS};
use tri_jacobi::report::{timed, Mode, Representation, VerificationReport};
use tri_jacobi::Result;

use crate::config::{RepChoice, RunConfig};

fn or_fail(id: &str, rep: Representation, r: Result<VerificationReport>) -> VerificationReport {
    r.unwrap_or_else(|e| {
        VerificationReport::new(id, rep, Mode::Symbolic, Some(format!("error: {e}")))
    })
}

fn var(id: &str, r: Result<VerificationReport>) -> VerificationReport {
    or_fail(id, Representation::Variable, r)
}

fn clock(on: bool, f: impl FnOnce() -> VerificationReport) -> VerificationReport {
    if on {
        timed(f)
    } else {
        f()
    }
}

fn reps(choice: RepChoice) -> Vec<Representation> {
    match choice {
        RepChoice::Variable => vec![Representation::Variable],
        RepChoice::Degree => vec![Representation::Degree],
        RepChoice::Both => vec![Representation::Variable, Representation::Degree],
    }
}

/// Reports of one suite, in a fixed order.
pub fn run_suite(
    name: &str,
    cfg: &RunConfig,
    eng: &Engine,
    cat: &Catalogue,
) -> Vec<VerificationReport> {
    let n = cfg.n_max;
    let t = cfg.timings;
    match name {
        "relations" => reps(cfg.representation)
            .into_iter()
            .flat_map(|rep| eng.verify_all(cat, rep, cfg.mode))
            .collect(),
        "structure" => {
            let mut ids: Vec<String> = cat
                .entries
                .iter()
                .filter(|s| s.supports(Representation::Structure))
                .map(|s| s.id.clone())
                .collect();
            let have = |id: &str| ids.iter().any(|i| i == id);
            let combos: Vec<String> = STRUCTURE_COMBINATIONS
                .iter()
                .filter(|(_, parts)| parts.iter().all(|(_, p)| have(p)))
                .map(|(id, _)| id.to_string())
                .collect();
            ids.extend(combos);
            ids.par_iter()
                .map(|id| {
                    or_fail(
                        id,
                        Representation::Structure,
                        eng.verify_structure(cat, id, n),
                    )
                })
                .collect()
        }
        "subalgebras" => eng.verify_subalgebras(cat).unwrap_or_else(|e| {
            vec![var("subalgebras", Err(e))]
        }),
        "symmetry" => vec![clock(t, || var("index-symmetry", eng.verify_symmetry(cat)))],
        "jacobi" => vec![clock(t, || {
            var("jacobi-consequences", eng.verify_jacobi_consequences(cat))
        })],
        "l3" => vec![clock(t, || {
            or_fail(
                "L3-consistency",
                Representation::Degree,
                eng.verify_l3_consistency(),
            )
        })],
        "bispectral" => vec![
            clock(t, || verify_eigen(n)),
            clock(t, || verify_separation(n)),
        ],
        "recurrence" => [("jacobi2/rr1", Recurrence::Rr1), ("jacobi2/rr2", Recurrence::Rr2)]
            .into_iter()
            .map(|(id, r)| {
                clock(t, || or_fail(id, Representation::Degree, verify_recurrence(r, n)))
            })
            .collect(),
        "gram" => vec![clock(t, || verify_gram(n))],
        "appendixA" => {
            let mut out: Vec<VerificationReport> = IDENTITY_IDS
                .par_iter()
                .map(|id| clock(t, || var(id, uni_verify(id, n))))
                .collect();
            out.push(clock(t, rank1_verify));
            out
        }
        "appendixB" => {
            let jobs: Vec<Box<dyn Fn() -> VerificationReport + Sync>> = vec![
                Box::new(move || var("jacobi2/s-actions", verify_sactions(n))),
                Box::new(move || {
                    var("jacobi2/factorized-laplacian", verify_factorized_laplacian(n))
                }),
                Box::new(move || var("jacobi2/scalar-combination", verify_scalar_combination(n))),
                Box::new(|| var("jacobi2/factorizations", verify_operator_factorizations())),
                Box::new(|| var("jacobi2/conjugations", verify_conjugations(6))),
            ];
            jobs.par_iter().map(|job| clock(t, job)).collect()
        }
        other => vec![var(other, Err(tri_jacobi::Error::UnknownIdentity(other.into())))],
    }
}

/// Every selected suite, run concurrently and concatenated in order.
pub fn run_all(cfg: &RunConfig, cat: &Catalogue) -> Vec<VerificationReport> {
    let mut eng = Engine::new();
    eng.seed = cfg.seed;
    eng.samples = cfg.samples;
    eng.n_structure = cfg.n_max;
    eng.timings = cfg.timings;
    cfg.selected_suites()
        .par_iter()
        .map(|s| run_suite(s, cfg, &eng, cat))
        .collect::<Vec<_>>()
        .concat()
}
