//! Shipped derivations showing that every BAL axiom and rule holds in RL,
//! read through the translation of a BAL statement `x` into the RL pair
//! `x` and `x -> 0` (with `x ^+` read as `x \/ 0`).
//!
//! `+` variants prove `x`, `-` variants prove `x -> 0`. Derived rules carry
//! their premises as assumptions and are reused through `lemma` lines.

use crate::kernel::{LibraryError, Proof, TheoremLibrary};

/// `(file stem, script)` for every shipped proof.
pub const SOURCES: &[(&str, &str)] = &[
    (
        "asserting_positivity",
        include_str!("../corpus/asserting_positivity.rlproof"),
    ),
    ("balb_minus", include_str!("../corpus/balb_minus.rlproof")),
    ("balb_plus", include_str!("../corpus/balb_plus.rlproof")),
    ("balc", include_str!("../corpus/balc.rlproof")),
    ("balg_minus", include_str!("../corpus/balg_minus.rlproof")),
    ("balg_plus", include_str!("../corpus/balg_plus.rlproof")),
    (
        "balmi_minus_1",
        include_str!("../corpus/balmi_minus_1.rlproof"),
    ),
    (
        "balmi_minus_2",
        include_str!("../corpus/balmi_minus_2.rlproof"),
    ),
    (
        "balmi_minus_3",
        include_str!("../corpus/balmi_minus_3.rlproof"),
    ),
    ("balmp_minus", include_str!("../corpus/balmp_minus.rlproof")),
    ("balmp_plus", include_str!("../corpus/balmp_plus.rlproof")),
    ("baln_minus", include_str!("../corpus/baln_minus.rlproof")),
    ("baln_plus", include_str!("../corpus/baln_plus.rlproof")),
    ("balp_minus", include_str!("../corpus/balp_minus.rlproof")),
    ("balp_plus", include_str!("../corpus/balp_plus.rlproof")),
    ("balpi_minus", include_str!("../corpus/balpi_minus.rlproof")),
    ("balpi_plus", include_str!("../corpus/balpi_plus.rlproof")),
];

/// Parses every shipped script. Panics only if a shipped file is corrupt.
pub fn proofs() -> Vec<Proof> {
    SOURCES
        .iter()
        .map(|(stem, text)| Proof::parse(text).unwrap_or_else(|e| panic!("corpus/{stem}: {e}")))
        .collect()
}

/// A library holding the whole checked corpus.
pub fn standard_library() -> Result<TheoremLibrary, LibraryError> {
    let mut lib = TheoremLibrary::new();
    lib.register_all(proofs())?;
    Ok(lib)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_match_files() {
        for ((stem, _), p) in SOURCES.iter().zip(proofs()) {
            assert_eq!(*stem, p.name);
        }
    }

    #[test]
    fn whole_corpus_is_accepted() {
        let lib = standard_library().unwrap();
        assert_eq!(lib.len(), SOURCES.len());
    }
}
