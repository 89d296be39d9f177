//! Helpers shared by the integration test targets.
#![allow(dead_code)]

use riesz_core::kernel::{AxiomTable, Justification};

/// Numbered steps of each shipped derivation.
pub fn expected_steps(name: &str) -> usize {
    match name {
        "balmp_minus" => 10,
        "balpi_minus" => 23,
        "balg_plus" | "balg_minus" => 8,
        "balb_plus" | "balb_minus" | "balc" => 4,
        "asserting_positivity" => 5,
        "baln_plus" | "baln_minus" | "balp_plus" | "balp_minus" => 1,
        "balmp_plus" | "balpi_plus" => 1,
        "balmi_minus_1" => 6,
        "balmi_minus_2" => 8,
        "balmi_minus_3" => 4,
        other => panic!("unexpected corpus entry {other}"),
    }
}

/// Another justification for the same line that must not check.
pub fn mutate_justification(j: &Justification) -> Justification {
    match j {
        Justification::Assume(k) => Justification::Assume(k + 1),
        Justification::Axiom(name) => {
            let names: Vec<_> = AxiomTable::rl().names().collect();
            let i = names.iter().position(|n| n == name).unwrap();
            Justification::Axiom(names[(i + 1) % names.len()].to_string())
        }
        Justification::Mp(i, j) => Justification::Mp(*j, *i),
        Justification::Ri(i) => Justification::Mp(*i, *i),
        Justification::Lemma(..) => Justification::Axiom("R1a".into()),
        other => panic!("no BAL rules in the corpus: {other}"),
    }
}
