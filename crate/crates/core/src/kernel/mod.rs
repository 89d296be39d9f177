//! Hilbert-style proof checking for RL and BAL.
//!
//! RL has the rules MP and RI over the axioms `R1a`..`R6b`; BAL has MP,
//! BALG, BALPI and BALMI over `BALB`, `BALC`, `BALN`, `BALP`, `BALO`.
//! Scripts are fully explicit: axiom lines are checked by one-sided
//! matching against the schema, rule lines by structural comparison with
//! the cited lines, and `lemma` lines by matching a checked library entry.

mod axioms;
mod check;
mod library;
mod proof;

pub use axioms::AxiomTable;
pub use check::{check_line, check_proof, CheckError, CheckReport, ProofContext};
pub use library::{LibraryError, TheoremLibrary};
pub use proof::{Justification, Proof, ProofFileError, ProofFileErrorKind, ProofLine};
