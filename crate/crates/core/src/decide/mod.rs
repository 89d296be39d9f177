//! Exact validity for RL and BAL.
//!
//! A formula is rewritten into a meet of joins of homogeneous integer linear
//! terms. It is valid iff every clause `max_j L_j` is nonnegative at every
//! real point, which is checked with exact Fourier–Motzkin elimination.
//!
//! Restricting to one-dimensional real (here rational) valuations relies on
//! a fact from the algebra of lattice-ordered groups: the variety of abelian
//! l-groups is generated by the additive group of the reals, so an
//! l-group inequality holds in every abelian l-group iff it holds in R.

mod fm;
mod normal_form;

use thiserror::Error;

use crate::semantics::{GroupElement, Valuation};
use crate::terms::Formula;

pub use fm::{clause_valid, clause_valid_with, ClauseVerdict};
pub use normal_form::{linearize, linearize_with, Clause, LinearTerm, MeetJoinNormalForm};

/// Size limits for normal-form expansion and elimination.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of clauses, and of terms in any one clause.
    pub clauses: usize,
    /// Maximum number of inequalities alive during elimination.
    pub inequalities: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            clauses: 100_000,
            inequalities: 100_000,
        }
    }
}

impl Budget {
    pub fn uniform(limit: usize) -> Self {
        Budget {
            clauses: limit,
            inequalities: limit,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DecideError {
    #[error("normal form exceeds the clause budget of {limit}")]
    ClauseBudget { limit: usize },
    #[error("elimination exceeds the inequality budget of {limit}")]
    InequalityBudget { limit: usize },
    #[error("integer coefficient overflow during normalization")]
    CoefficientOverflow,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    /// A one-dimensional valuation falsifying the formula.
    CounterExample(Valuation),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

/// Decision procedures parameterised by a size budget.
#[derive(Clone, Copy, Debug, Default)]
pub struct Decider {
    pub budget: Budget,
}

impl Decider {
    pub fn new(budget: Budget) -> Self {
        Decider { budget }
    }

    /// RL validity: `0 <= [[f]]` under every valuation.
    pub fn valid(&self, f: &Formula) -> Result<Verdict, DecideError> {
        let nf = linearize_with(f, &self.budget)?;
        for clause in nf.clauses() {
            if let ClauseVerdict::Witness(point) = clause_valid_with(clause, &self.budget)? {
                let mut v = Valuation::new(1);
                for name in f.variables().into_iter().chain(f.metavariables()) {
                    let value = point.get(name).cloned().unwrap_or_default();
                    v.set(name, GroupElement::from_coords(vec![value]));
                }
                return Ok(Verdict::CounterExample(v));
            }
        }
        Ok(Verdict::Valid)
    }

    /// BAL validity: `[[f]] = 0` under every valuation, checked as the two
    /// RL inequalities `t` and `t -> 0`.
    pub fn bal_valid(&self, f: &Formula) -> Result<Verdict, DecideError> {
        let t = f.desugar_pos();
        match self.valid(&t)? {
            Verdict::Valid => self.valid(&Formula::negation(t)),
            cex => Ok(cex),
        }
    }

    /// `[[f]] = [[g]]` under every valuation.
    pub fn equal(&self, f: &Formula, g: &Formula) -> Result<Verdict, DecideError> {
        match self.valid(&Formula::imp(f.clone(), g.clone()))? {
            Verdict::Valid => self.valid(&Formula::imp(g.clone(), f.clone())),
            cex => Ok(cex),
        }
    }
}

pub fn decide_valid(f: &Formula) -> Result<Verdict, DecideError> {
    Decider::default().valid(f)
}

pub fn decide_bal_valid(f: &Formula) -> Result<Verdict, DecideError> {
    Decider::default().bal_valid(f)
}

pub fn decide_equal(f: &Formula, g: &Formula) -> Result<Verdict, DecideError> {
    Decider::default().equal(f, g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::{eval, holds_bal, holds_rl};
    use crate::terms::{parse_bal, parse_rl};

    fn rl(s: &str) -> Formula {
        parse_rl(s).unwrap()
    }

    fn counterexample(v: Result<Verdict, DecideError>) -> Valuation {
        match v.unwrap() {
            Verdict::CounterExample(v) => v,
            Verdict::Valid => panic!("expected a counterexample"),
        }
    }

    #[test]
    fn rl_examples() {
        assert_eq!(decide_valid(&rl("a -> a \\/ b")).unwrap(), Verdict::Valid);
        let f = rl("a \\/ b -> a");
        let cex = counterexample(decide_valid(&f));
        assert!(!holds_rl(&f, &cex));
        assert_eq!(eval(&f, &cex), GroupElement::from_integers(&[-1]));
        assert_eq!(decide_valid(&rl("a \\/ (a -> 0)")).unwrap(), Verdict::Valid);
    }

    #[test]
    fn bal_examples() {
        let baln = parse_bal("((x -> y) -> y) -> x").unwrap();
        assert_eq!(decide_bal_valid(&baln).unwrap(), Verdict::Valid);
        let f = parse_bal("x -> y").unwrap();
        let cex = counterexample(decide_bal_valid(&f));
        assert!(!holds_bal(&f, &cex));
        assert_eq!(
            decide_bal_valid(&parse_bal("x ^+ -> x ^+").unwrap()).unwrap(),
            Verdict::Valid
        );
    }

    #[test]
    fn equality_examples() {
        assert!(decide_equal(&rl("a -> b"), &rl("(b -> c) -> (a -> c)"))
            .unwrap()
            .is_valid());
        assert!(decide_equal(&rl("a"), &rl("a")).unwrap().is_valid());
        let cex = counterexample(decide_equal(&rl("a ^+"), &rl("a")));
        assert_eq!(cex.get("a"), GroupElement::from_integers(&[-1]));
    }

    #[test]
    fn budget_errors_propagate() {
        let d = Decider::new(Budget::uniform(1));
        assert!(matches!(
            d.valid(&rl("a \\/ b -> a")),
            Err(DecideError::ClauseBudget { .. })
        ));
    }
}
