use riesz_core::corpus::{proofs, standard_library, SOURCES};
use riesz_core::decide::decide_valid;
use riesz_core::kernel::{check_proof, Justification, Proof, TheoremLibrary};

mod common;
use common::{expected_steps, mutate_justification};
use riesz_core::semantics::{holds_rl, SampleConfig, ValuationSampler};
use riesz_core::terms::Formula;

#[test]
fn every_entry_is_accepted_with_its_step_count() {
    let lib = standard_library().unwrap();
    for p in proofs() {
        let report = check_proof(&p, &lib);
        assert!(report.accepted(), "{}: {report}", p.name);
        assert_eq!(
            report.to_string(),
            format!("OK ({} lines)", expected_steps(&p.name))
        );
    }
}

fn first_error_label(p: &Proof, lib: &TheoremLibrary) -> Option<usize> {
    check_proof(p, lib).first_error().map(|(l, _)| l)
}

#[test]
fn single_line_mutations_are_rejected_at_that_line() {
    let lib = standard_library().unwrap();
    for p in proofs() {
        for i in 0..p.lines.len() {
            let label = p.lines[i].label;

            let mut m = p.clone();
            let f = m.lines[i].formula.clone();
            m.lines[i].formula = Formula::join(f.clone(), f);
            assert_eq!(
                first_error_label(&m, &lib),
                Some(label),
                "{} formula at {label}",
                p.name
            );

            let mut m = p.clone();
            m.lines[i].justification = mutate_justification(&p.lines[i].justification);
            assert_eq!(
                first_error_label(&m, &lib),
                Some(label),
                "{} justification at {label}",
                p.name
            );
        }
    }
}

#[test]
fn forward_citations_are_rejected() {
    let lib = standard_library().unwrap();
    let mut p = proofs()
        .into_iter()
        .find(|p| p.name == "balb_plus")
        .unwrap();
    let last = p.lines.last().unwrap().label;
    p.lines[2].justification = Justification::Mp(1, last);
    assert_eq!(first_error_label(&p, &lib), Some(p.lines[2].label));
}

#[test]
fn theorems_are_valid_and_derived_rules_are_sound() {
    let lib = standard_library().unwrap();
    // a small bound makes equality premises such as `α -> 0` with `α` hit often
    let mut samplers = [1, 4].map(|bound| {
        ValuationSampler::new(SampleConfig {
            dimension: 2,
            bound,
            seed: 11,
        })
    });
    for p in lib.iter() {
        let conclusion = p.conclusion_formula().unwrap();
        if p.assumptions.is_empty() {
            assert!(decide_valid(conclusion).unwrap().is_valid(), "{}", p.name);
            continue;
        }
        let mut names: Vec<&str> = conclusion.metavariables().into_iter().collect();
        for a in &p.assumptions {
            names.extend(a.metavariables());
        }
        names.sort();
        names.dedup();
        let mut satisfied = 0;
        for k in 0..4000 {
            let v = samplers[k % 2].sample(names.iter().copied());
            if p.assumptions.iter().all(|a| holds_rl(a, &v)) {
                satisfied += 1;
                assert!(holds_rl(conclusion, &v), "{} at {v}", p.name);
            }
        }
        assert!(satisfied > 0, "{}: assumptions never sampled true", p.name);
    }
}

#[test]
fn shipped_files_load_from_disk() {
    let mut lib = TheoremLibrary::new();
    lib.load_dir(&std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus"))
        .unwrap();
    assert_eq!(lib.len(), SOURCES.len());
}
