//! Translations between RL and BAL.
//!
//! An RL statement `x` (asserting `0 <= x`) says the same as the BAL
//! statement `(x -> 0) ^+` (the negative part of `x` vanishes). A BAL
//! statement `x` (asserting `x = 0`) says the same as the two RL
//! statements `x` and `x -> 0`.
//!
//! BAL has neither `0` nor `\/`. Zero is written `z -> z` for a reserved
//! variable `z`, and `x \/ y` is encoded as `x + (y - x) ^+`, i.e.
//! `((T x -> T y) ^+ -> T 0) -> T x`. That join encoding is a
//! reconstruction; the tests check it semantically.

use std::fmt;

use thiserror::Error;

use crate::semantics::{holds_bal, holds_rl, SampleConfig, Valuation, ValuationSampler};
use crate::terms::Formula;

/// The variable used to express zero in BAL.
pub const RESERVED: &str = "z";

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum BridgeError {
    #[error("the variable `{RESERVED}` is reserved for the BAL encoding of 0")]
    ReservedVariable,
    #[error("`^+` is not an RL connective; desugar it first")]
    NotRl,
}

/// BAL's name for zero.
pub fn bal_zero() -> Formula {
    Formula::imp(Formula::var(RESERVED), Formula::var(RESERVED))
}

/// The term-level map from RL syntax into BAL syntax, preserving values.
pub fn rl_term_to_bal(f: &Formula) -> Result<Formula, BridgeError> {
    Ok(match f {
        Formula::Var(n) if n == RESERVED => return Err(BridgeError::ReservedVariable),
        Formula::Var(_) | Formula::Meta(_) => f.clone(),
        Formula::Zero => bal_zero(),
        Formula::Imp(a, b) => Formula::imp(rl_term_to_bal(a)?, rl_term_to_bal(b)?),
        Formula::Join(a, b) => {
            let x = rl_term_to_bal(a)?;
            let y = rl_term_to_bal(b)?;
            Formula::imp(
                Formula::imp(Formula::pos(Formula::imp(x.clone(), y)), bal_zero()),
                x,
            )
        }
        Formula::Pos(_) => return Err(BridgeError::NotRl),
    })
}

/// `(T f -> T 0) ^+`: holds in BAL exactly when `f` holds in RL.
pub fn rl_to_bal(f: &Formula) -> Result<Formula, BridgeError> {
    Ok(Formula::pos(Formula::imp(rl_term_to_bal(f)?, bal_zero())))
}

/// The two RL statements equivalent to one BAL statement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RlPair {
    pub first: Formula,
    /// Always `first -> 0`.
    pub second: Formula,
}

impl RlPair {
    pub fn holds(&self, v: &Valuation) -> bool {
        holds_rl(&self.first, v) && holds_rl(&self.second, v)
    }
}

impl fmt::Display for RlPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.first)?;
        write!(f, "{}", self.second)
    }
}

/// Reads `x ^+` as `x \/ 0`; everything else is kept.
pub fn bal_to_rl(f: &Formula) -> RlPair {
    let first = f.desugar_pos();
    let second = Formula::negation(first.clone());
    RlPair { first, second }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discrepancy {
    pub trial: usize,
    pub valuation: Valuation,
    pub rl_holds: bool,
    pub bal_holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub trials: usize,
    /// The lowest-index sample on which the two sides disagree.
    pub discrepancy: Option<Discrepancy>,
}

impl EquivalenceReport {
    pub fn agrees(&self) -> bool {
        self.discrepancy.is_none()
    }
}

fn sample_names(f: &Formula) -> Vec<String> {
    let mut names: Vec<String> = f.variables().into_iter().map(str::to_owned).collect();
    names.extend(f.metavariables().into_iter().map(str::to_owned));
    names
}

fn compare(
    f: &Formula,
    trials: usize,
    config: SampleConfig,
    sides: impl Fn(&Valuation) -> (bool, bool),
) -> EquivalenceReport {
    let names = sample_names(f);
    let mut sampler = ValuationSampler::new(config);
    for trial in 0..trials {
        let v = sampler.sample(names.iter().map(String::as_str));
        let (rl_holds, bal_holds) = sides(&v);
        if rl_holds != bal_holds {
            let discrepancy = Discrepancy {
                trial,
                valuation: v,
                rl_holds,
                bal_holds,
            };
            return EquivalenceReport {
                trials,
                discrepancy: Some(discrepancy),
            };
        }
    }
    EquivalenceReport {
        trials,
        discrepancy: None,
    }
}

/// Samples two-dimensional valuations and compares `f` in RL with
/// `rl_to_bal(f)` in BAL.
pub fn check_equivalence(
    f: &Formula,
    trials: usize,
    seed: u64,
) -> Result<EquivalenceReport, BridgeError> {
    check_equivalence_with(
        f,
        trials,
        SampleConfig {
            dimension: 2,
            seed,
            ..SampleConfig::default()
        },
    )
}

pub fn check_equivalence_with(
    f: &Formula,
    trials: usize,
    config: SampleConfig,
) -> Result<EquivalenceReport, BridgeError> {
    let g = rl_to_bal(f)?;
    Ok(compare(f, trials, config, |v| {
        (holds_rl(f, v), holds_bal(&g, v))
    }))
}

/// The dual check: `g` in BAL against the pair `bal_to_rl(g)` in RL.
pub fn check_bal_equivalence(g: &Formula, trials: usize, seed: u64) -> EquivalenceReport {
    let pair = bal_to_rl(g);
    let config = SampleConfig {
        dimension: 2,
        seed,
        ..SampleConfig::default()
    };
    compare(g, trials, config, |v| (pair.holds(v), holds_bal(g, v)))
}
