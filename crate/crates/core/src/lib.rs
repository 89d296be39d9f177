//! Riesz Logic (RL) and the Logic of Equilibrium (BAL).
//!
//! RL formulas are built from variables, `0`, `->` and `\/` and assert that
//! their interpretation in an abelian lattice-ordered group is positive.
//! BAL formulas are built from `->` and postfix `^+` and assert equality
//! with zero. This crate provides:
//!
//! * [`terms`]: formula trees, the text grammar, substitution and schema
//!   matching;
//! * [`semantics`]: evaluation in `Q^n` with the componentwise order;
//! * [`kernel`]: Hilbert-style proof checking for both systems and a
//!   library of checked theorems and derived rules;
//! * [`corpus`]: the shipped derivations that relate BAL to RL;
//! * [`decide`]: an exact validity procedure with countermodels;
//! * [`bridge`]: translations between RL and BAL;
//! * [`fuzzy`]: the logistic bridge to the unit interval and t-norms;
//! * [`distrib`]: term-context count matrices as vector lattices;
//! * [`cli`]: the `riesz` command-line front-end.

pub mod bridge;
pub mod cli;
pub mod corpus;
pub mod decide;
pub mod distrib;
pub mod fuzzy;
pub mod gen;
pub mod kernel;
pub mod semantics;
pub mod terms;

pub use terms::{parse_bal, parse_rl, parse_schema, Formula, Logic};
