use std::fmt;

use thiserror::Error;

use super::axioms::AxiomTable;
use super::library::TheoremLibrary;
use super::proof::{Justification, Proof, ProofLine};
use crate::terms::{Formula, Logic, MatchError, Substitution};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("unknown axiom {name} in {system}")]
    UnknownAxiom { system: Logic, name: String },
    #[error("unknown lemma {0}")]
    UnknownLemma(String),
    #[error("lemma {name} is a {found} result, not {expected}")]
    LemmaSystem {
        name: String,
        expected: Logic,
        found: Logic,
    },
    #[error("no assumption {0}")]
    UnknownAssumption(usize),
    #[error("line cites {cited}, which is not an earlier line")]
    ForwardReference { cited: usize },
    #[error("line {cited} does not exist")]
    MissingLine { cited: usize },
    #[error("not an instance of {axiom}: {detail}")]
    SchemaMismatch {
        axiom: String,
        detail: Box<MatchError>,
    },
    #[error("formula differs from assumption {0}")]
    AssumptionMismatch(usize),
    #[error("{rule}: expected {expected}")]
    Malformed {
        rule: &'static str,
        expected: String,
    },
    #[error("rule {rule} is not available in {system}")]
    RuleNotInSystem { rule: &'static str, system: Logic },
    #[error("formula uses connectives outside {0}")]
    Language(Logic),
    #[error("lemma {name} takes {expected} premises, {found} cited")]
    LemmaArity {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("lemma {name}, {position}: {detail}")]
    LemmaMismatch {
        name: String,
        position: String,
        detail: Box<MatchError>,
    },
}

/// Everything a line may refer to while being checked.
pub struct ProofContext<'a> {
    pub system: Logic,
    pub assumptions: &'a [Formula],
    /// Lines already seen, in label order.
    pub lines: &'a [ProofLine],
    pub library: &'a TheoremLibrary,
}

impl ProofContext<'_> {
    fn cited(&self, current: usize, label: usize) -> Result<&Formula, CheckError> {
        if label >= current {
            return Err(CheckError::ForwardReference { cited: label });
        }
        self.lines
            .binary_search_by_key(&label, |l| l.label)
            .map(|i| &self.lines[i].formula)
            .map_err(|_| CheckError::MissingLine { cited: label })
    }

    fn require(&self, rule: &'static str, system: Logic) -> Result<(), CheckError> {
        if self.system == system {
            Ok(())
        } else {
            Err(CheckError::RuleNotInSystem {
                rule,
                system: self.system,
            })
        }
    }
}

fn malformed(rule: &'static str, expected: impl Into<String>) -> CheckError {
    CheckError::Malformed {
        rule,
        expected: expected.into(),
    }
}

/// Checks one line against the earlier lines of its proof.
pub fn check_line(ctx: &ProofContext<'_>, line: &ProofLine) -> Result<(), CheckError> {
    let formula = &line.formula;
    if !formula.fits(ctx.system) {
        return Err(CheckError::Language(ctx.system));
    }
    let here = line.label;
    match &line.justification {
        Justification::Assume(k) => {
            let a = k
                .checked_sub(1)
                .and_then(|i| ctx.assumptions.get(i))
                .ok_or(CheckError::UnknownAssumption(*k))?;
            if a != formula {
                return Err(CheckError::AssumptionMismatch(*k));
            }
        }
        Justification::Axiom(name) => {
            let schema = AxiomTable::for_system(ctx.system)
                .get(name)
                .ok_or_else(|| CheckError::UnknownAxiom {
                    system: ctx.system,
                    name: name.clone(),
                })?;
            Substitution::new()
                .extend_match(schema, formula)
                .map_err(|detail| CheckError::SchemaMismatch {
                    axiom: name.clone(),
                    detail: Box::new(detail),
                })?;
        }
        Justification::Mp(i, j) => {
            let premise = ctx.cited(here, *i)?;
            let major = ctx.cited(here, *j)?;
            let wanted = Formula::imp(premise.clone(), formula.clone());
            if *major != wanted {
                return Err(malformed("mp", format!("line {j} to be `{wanted}`")));
            }
        }
        Justification::Ri(i) => {
            ctx.require("ri", Logic::Rl)?;
            let premise = ctx.cited(here, *i)?;
            let Formula::Imp(a, b) = premise else {
                return Err(malformed("ri", format!("line {i} to be an implication")));
            };
            let shape = || format!("`{a} \\/ X -> {b} \\/ X` for a single X");
            match formula {
                Formula::Imp(l, r) => match (l.as_ref(), r.as_ref()) {
                    (Formula::Join(la, lc), Formula::Join(rb, rc)) if la == a && rb == b => {
                        if lc != rc {
                            return Err(malformed("ri", format!("{}; join tails differ", shape())));
                        }
                    }
                    _ => return Err(malformed("ri", shape())),
                },
                _ => return Err(malformed("ri", shape())),
            }
        }
        Justification::BalG(i, j) => {
            ctx.require("balg", Logic::Bal)?;
            let wanted = Formula::imp(ctx.cited(here, *i)?.clone(), ctx.cited(here, *j)?.clone());
            if *formula != wanted {
                return Err(malformed("balg", format!("`{wanted}`")));
            }
        }
        Justification::BalPi(i) => {
            ctx.require("balpi", Logic::Bal)?;
            let wanted = Formula::pos(ctx.cited(here, *i)?.clone());
            if *formula != wanted {
                return Err(malformed("balpi", format!("`{wanted}`")));
            }
        }
        Justification::BalMi(i) => {
            ctx.require("balmi", Logic::Bal)?;
            let premise = ctx.cited(here, *i)?;
            let Formula::Pos(inner) = premise else {
                return Err(malformed(
                    "balmi",
                    format!("line {i} to have the form `(A -> B) ^+`"),
                ));
            };
            let Formula::Imp(a, b) = inner.as_ref() else {
                return Err(malformed(
                    "balmi",
                    format!("line {i} to have the form `(A -> B) ^+`"),
                ));
            };
            let wanted = Formula::pos(Formula::imp(
                Formula::pos((**a).clone()),
                Formula::pos((**b).clone()),
            ));
            if *formula != wanted {
                return Err(malformed("balmi", format!("`{wanted}`")));
            }
        }
        Justification::Lemma(name, ks) => {
            let lemma = ctx
                .library
                .get(name)
                .ok_or_else(|| CheckError::UnknownLemma(name.clone()))?;
            if lemma.system != ctx.system {
                return Err(CheckError::LemmaSystem {
                    name: name.clone(),
                    expected: ctx.system,
                    found: lemma.system,
                });
            }
            if lemma.assumptions.len() != ks.len() {
                return Err(CheckError::LemmaArity {
                    name: name.clone(),
                    expected: lemma.assumptions.len(),
                    found: ks.len(),
                });
            }
            let mut sigma = Substitution::new();
            for (n, (pattern, k)) in lemma.assumptions.iter().zip(ks).enumerate() {
                let target = ctx.cited(here, *k)?;
                sigma.extend_match(pattern, target).map_err(|detail| {
                    CheckError::LemmaMismatch {
                        name: name.clone(),
                        position: format!("premise {} (line {k})", n + 1),
                        detail: Box::new(detail),
                    }
                })?;
            }
            // metavariables of the conclusion not fixed by the premises are
            // free: a checked script stays valid under any substitution
            let conclusion = lemma
                .conclusion_formula()
                .expect("library proofs are checked");
            sigma.extend_match(conclusion, formula).map_err(|detail| {
                CheckError::LemmaMismatch {
                    name: name.clone(),
                    position: "conclusion".into(),
                    detail: Box::new(detail),
                }
            })?;
        }
    }
    Ok(())
}

/// Per-line outcome of checking a whole proof.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub steps: usize,
    pub lines: Vec<(usize, Result<(), CheckError>)>,
    pub assumption_errors: Vec<(usize, CheckError)>,
    pub conclusion_error: Option<String>,
}

impl CheckReport {
    pub fn accepted(&self) -> bool {
        self.assumption_errors.is_empty()
            && self.conclusion_error.is_none()
            && self.lines.iter().all(|(_, r)| r.is_ok())
    }

    /// Label and error of the first rejected line.
    pub fn first_error(&self) -> Option<(usize, &CheckError)> {
        self.lines
            .iter()
            .find_map(|(l, r)| r.as_ref().err().map(|e| (*l, e)))
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.accepted() {
            return write!(f, "OK ({} lines)", self.steps);
        }
        if let Some((k, e)) = self.assumption_errors.first() {
            return write!(f, "REJECTED at assumption {k}: {e}");
        }
        match self.first_error() {
            Some((label, e)) => write!(f, "REJECTED at line {label}: {e}"),
            None => write!(
                f,
                "REJECTED: {}",
                self.conclusion_error.as_deref().unwrap_or("unknown")
            ),
        }
    }
}

/// Checks every line, continuing past failures so the report is complete.
pub fn check_proof(proof: &Proof, library: &TheoremLibrary) -> CheckReport {
    let assumption_errors = proof
        .assumptions
        .iter()
        .enumerate()
        .filter(|(_, a)| !a.fits(proof.system))
        .map(|(k, _)| (k + 1, CheckError::Language(proof.system)))
        .collect();
    let lines = proof
        .lines
        .iter()
        .enumerate()
        .map(|(i, line)| {
            let ctx = ProofContext {
                system: proof.system,
                assumptions: &proof.assumptions,
                lines: &proof.lines[..i],
                library,
            };
            (line.label, check_line(&ctx, line))
        })
        .collect();
    let conclusion_error = match proof.line(proof.conclusion) {
        None => Some(format!("qed cites missing line {}", proof.conclusion)),
        Some(_) => None,
    };
    CheckReport {
        name: proof.name.clone(),
        steps: proof.step_count(),
        lines,
        assumption_errors,
        conclusion_error,
    }
}
