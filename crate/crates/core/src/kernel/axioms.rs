use std::sync::OnceLock;

use crate::terms::{parse_schema, Formula, Logic};

/// Axiom schemas of one system, in their conventional order.
#[derive(Debug)]
pub struct AxiomTable {
    pub system: Logic,
    entries: Vec<(&'static str, Formula)>,
}

const RL_AXIOMS: &[(&str, &str)] = &[
    ("R1a", "(φ -> ψ) -> ((ψ -> χ) -> (φ -> χ))"),
    ("R1b", "((ψ -> χ) -> (φ -> χ)) -> (φ -> ψ)"),
    ("R2", "φ -> φ \\/ ψ"),
    ("R3", "φ \\/ ψ -> ψ \\/ φ"),
    ("R4", "(φ \\/ ψ) \\/ ψ -> φ \\/ ψ"),
    ("R5a", "0 -> (φ -> φ)"),
    ("R5b", "(φ -> φ) -> 0"),
    ("R6a", "((φ -> ψ) \\/ 0 -> (ψ -> φ) \\/ 0) -> (ψ -> φ)"),
    ("R6b", "(ψ -> φ) -> ((φ -> ψ) \\/ 0 -> (ψ -> φ) \\/ 0)"),
];

const BAL_AXIOMS: &[(&str, &str)] = &[
    ("BALB", "(φ -> ψ) -> ((χ -> φ) -> (χ -> ψ))"),
    ("BALC", "(φ -> (ψ -> χ)) -> (ψ -> (φ -> χ))"),
    ("BALN", "((φ -> ψ) -> ψ) -> φ"),
    ("BALP", "φ ^+ ^+ -> φ ^+"),
    ("BALO", "((ψ -> φ) ^+ -> (φ -> ψ) ^+) -> (φ -> ψ)"),
];

fn build(system: Logic, src: &[(&'static str, &str)]) -> AxiomTable {
    let entries = src
        .iter()
        .map(|&(name, text)| {
            (
                name,
                parse_schema(text, system).expect("built-in axiom parses"),
            )
        })
        .collect();
    AxiomTable { system, entries }
}

impl AxiomTable {
    pub fn rl() -> &'static AxiomTable {
        static TABLE: OnceLock<AxiomTable> = OnceLock::new();
        TABLE.get_or_init(|| build(Logic::Rl, RL_AXIOMS))
    }

    pub fn bal() -> &'static AxiomTable {
        static TABLE: OnceLock<AxiomTable> = OnceLock::new();
        TABLE.get_or_init(|| build(Logic::Bal, BAL_AXIOMS))
    }

    pub fn for_system(system: Logic) -> &'static AxiomTable {
        match system {
            Logic::Rl => Self::rl(),
            Logic::Bal => Self::bal(),
        }
    }

    pub fn get(&self, name: &str) -> Option<&Formula> {
        self.entries
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, f)| f)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&'static str, &Formula)> {
        self.entries.iter().map(|(n, f)| (*n, f))
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.iter().map(|(n, _)| *n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_have_expected_entries() {
        let rl: Vec<_> = AxiomTable::rl().names().collect();
        assert_eq!(
            rl,
            ["R1a", "R1b", "R2", "R3", "R4", "R5a", "R5b", "R6a", "R6b"]
        );
        let bal: Vec<_> = AxiomTable::bal().names().collect();
        assert_eq!(bal, ["BALB", "BALC", "BALN", "BALP", "BALO"]);
        for (_, f) in AxiomTable::rl().iter() {
            assert!(f.fits(Logic::Rl));
        }
        for (_, f) in AxiomTable::bal().iter() {
            assert!(f.fits(Logic::Bal));
        }
    }

    #[test]
    fn printed_forms() {
        let r6a = AxiomTable::rl().get("R6a").unwrap();
        assert_eq!(
            r6a.to_string(),
            "((φ -> ψ) \\/ 0 -> (ψ -> φ) \\/ 0) -> ψ -> φ"
        );
        let balp = AxiomTable::bal().get("BALP").unwrap();
        assert_eq!(balp.to_string(), "φ ^+ ^+ -> φ ^+");
    }
}
