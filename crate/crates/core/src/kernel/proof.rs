//! Proof scripts and their text format.
//!
//! ```text
//! # comment
//! system: RL
//! name: balg_plus
//! assume 1: α -> 0
//! 1: α -> 0 | assume 1 | step 1
//! 2: (φ -> ψ) -> ... | axiom R1a
//! 3: ... | mp 1 2
//! qed: 3
//! ```
//!
//! Line labels are 1-based and strictly increasing. A line may carry an
//! optional `step <k>` tag naming the numbered step of a compact
//! derivation it realises; auxiliary lines (explicit axiom instances and
//! re-derived instances) carry none. Tagged steps must be numbered 1, 2, ...
//! in order.

use std::fmt;

use thiserror::Error;

use crate::terms::{parse_schema, Formula, Logic, ParseError};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Justification {
    Assume(usize),
    Axiom(String),
    Mp(usize, usize),
    Ri(usize),
    BalG(usize, usize),
    BalPi(usize),
    BalMi(usize),
    Lemma(String, Vec<usize>),
}

impl Justification {
    /// Line labels this justification cites.
    pub fn cited(&self) -> Vec<usize> {
        match self {
            Justification::Assume(_) | Justification::Axiom(_) => vec![],
            Justification::Mp(i, j) | Justification::BalG(i, j) => vec![*i, *j],
            Justification::Ri(i) | Justification::BalPi(i) | Justification::BalMi(i) => vec![*i],
            Justification::Lemma(_, ks) => ks.clone(),
        }
    }
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Justification::Assume(k) => write!(f, "assume {k}"),
            Justification::Axiom(n) => write!(f, "axiom {n}"),
            Justification::Mp(i, j) => write!(f, "mp {i} {j}"),
            Justification::Ri(i) => write!(f, "ri {i}"),
            Justification::BalG(i, j) => write!(f, "balg {i} {j}"),
            Justification::BalPi(i) => write!(f, "balpi {i}"),
            Justification::BalMi(i) => write!(f, "balmi {i}"),
            Justification::Lemma(n, ks) => {
                write!(f, "lemma {n}")?;
                for k in ks {
                    write!(f, " {k}")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProofLine {
    pub label: usize,
    pub formula: Formula,
    pub justification: Justification,
    pub step: Option<usize>,
}

/// A derivation in RL or BAL. Assumptions make it a derived rule; lines may
/// mention metavariables, and the whole script stays valid under any
/// substitution for them.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Proof {
    pub system: Logic,
    pub name: String,
    pub assumptions: Vec<Formula>,
    pub lines: Vec<ProofLine>,
    /// Label of the concluding line.
    pub conclusion: usize,
}

impl Proof {
    pub fn line(&self, label: usize) -> Option<&ProofLine> {
        self.lines
            .binary_search_by_key(&label, |l| l.label)
            .ok()
            .map(|i| &self.lines[i])
    }

    pub fn conclusion_formula(&self) -> Option<&Formula> {
        self.line(self.conclusion).map(|l| &l.formula)
    }

    /// Number of tagged steps, or of all lines when no line is tagged.
    pub fn step_count(&self) -> usize {
        match self.lines.iter().filter(|l| l.step.is_some()).count() {
            0 => self.lines.len(),
            n => n,
        }
    }

    /// Lemma names cited anywhere in the script.
    pub fn lemma_dependencies(&self) -> Vec<&str> {
        let mut deps: Vec<&str> = self
            .lines
            .iter()
            .filter_map(|l| match &l.justification {
                Justification::Lemma(n, _) => Some(n.as_str()),
                _ => None,
            })
            .collect();
        deps.sort_unstable();
        deps.dedup();
        deps
    }

    /// Parses the text format.
    pub fn parse(text: &str) -> Result<Proof, ProofFileError> {
        parse_proof(text)
    }
}

impl fmt::Display for Proof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "system: {}", self.system)?;
        writeln!(f, "name: {}", self.name)?;
        for (k, a) in self.assumptions.iter().enumerate() {
            writeln!(f, "assume {}: {a}", k + 1)?;
        }
        for line in &self.lines {
            write!(
                f,
                "{}: {} | {}",
                line.label, line.formula, line.justification
            )?;
            if let Some(s) = line.step {
                write!(f, " | step {s}")?;
            }
            writeln!(f)?;
        }
        writeln!(f, "qed: {}", self.conclusion)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ProofFileError {
    /// 1-based line in the file.
    pub line: usize,
    pub kind: ProofFileErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ProofFileErrorKind {
    #[error("unknown system `{0}` (expected RL or BAL)")]
    UnknownSystem(String),
    #[error("missing `{0}:` header")]
    MissingHeader(&'static str),
    #[error("duplicate `{0}:` header")]
    DuplicateHeader(&'static str),
    #[error("`{0}` must come after the `system:` header")]
    BeforeSystem(&'static str),
    #[error("assumptions must be numbered 1, 2, ... in order; got {0}")]
    AssumptionOrder(usize),
    #[error("line labels must be strictly increasing; got {0}")]
    LabelOrder(usize),
    #[error("steps must be numbered 1, 2, ... in order; got {0}")]
    StepOrder(usize),
    #[error("malformed justification `{0}`")]
    Justification(String),
    #[error("invalid name `{0}`")]
    Name(String),
    #[error("unrecognised line `{0}`")]
    Unrecognised(String),
    #[error("{0}")]
    Formula(ParseError),
    #[error("no proof lines")]
    Empty,
}

fn valid_name(s: &str) -> bool {
    s.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
        && s.chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
}

fn parse_justification(text: &str) -> Option<Justification> {
    let mut words = text.split_whitespace();
    let head = words.next()?;
    let rest: Vec<&str> = words.collect();
    let nums = || {
        rest.iter()
            .map(|w| w.parse::<usize>().ok())
            .collect::<Option<Vec<_>>>()
    };
    Some(match (head, rest.as_slice()) {
        ("axiom", [name]) => Justification::Axiom(name.to_string()),
        ("lemma", [name, ..]) if valid_name(name) => {
            let ks = rest[1..]
                .iter()
                .map(|w| w.parse::<usize>().ok())
                .collect::<Option<Vec<_>>>()?;
            Justification::Lemma(name.to_string(), ks)
        }
        _ => match (head, nums()?.as_slice()) {
            ("assume", [k]) => Justification::Assume(*k),
            ("mp", [i, j]) => Justification::Mp(*i, *j),
            ("ri", [i]) => Justification::Ri(*i),
            ("balg", [i, j]) => Justification::BalG(*i, *j),
            ("balpi", [i]) => Justification::BalPi(*i),
            ("balmi", [i]) => Justification::BalMi(*i),
            _ => return None,
        },
    })
}

fn parse_proof(text: &str) -> Result<Proof, ProofFileError> {
    let mut system: Option<Logic> = None;
    let mut name: Option<String> = None;
    let mut assumptions = Vec::new();
    let mut lines: Vec<ProofLine> = Vec::new();
    let mut conclusion: Option<usize> = None;
    let mut last_step = 0;

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let err = |kind| ProofFileError {
            line: line_no,
            kind,
        };
        // formulas never contain '#', so comments can be stripped eagerly
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let formula = |s: &str, sys: Option<Logic>, what| {
            let sys = sys.ok_or(err(ProofFileErrorKind::BeforeSystem(what)))?;
            parse_schema(s.trim(), sys).map_err(|e| err(ProofFileErrorKind::Formula(e)))
        };
        if let Some(rest) = body.strip_prefix("system:") {
            if system.is_some() {
                return Err(err(ProofFileErrorKind::DuplicateHeader("system")));
            }
            system = Some(match rest.trim() {
                "RL" => Logic::Rl,
                "BAL" => Logic::Bal,
                other => return Err(err(ProofFileErrorKind::UnknownSystem(other.to_string()))),
            });
        } else if let Some(rest) = body.strip_prefix("name:") {
            if name.is_some() {
                return Err(err(ProofFileErrorKind::DuplicateHeader("name")));
            }
            let n = rest.trim();
            if !valid_name(n) {
                return Err(err(ProofFileErrorKind::Name(n.to_string())));
            }
            name = Some(n.to_string());
        } else if let Some(rest) = body.strip_prefix("qed:") {
            if conclusion.is_some() {
                return Err(err(ProofFileErrorKind::DuplicateHeader("qed")));
            }
            let k = rest
                .trim()
                .parse()
                .map_err(|_| err(ProofFileErrorKind::Unrecognised(body.to_string())))?;
            conclusion = Some(k);
        } else if let Some(rest) = body.strip_prefix("assume ") {
            let (k, f) = rest
                .split_once(':')
                .ok_or(err(ProofFileErrorKind::Unrecognised(body.to_string())))?;
            let k: usize = k
                .trim()
                .parse()
                .map_err(|_| err(ProofFileErrorKind::Unrecognised(body.to_string())))?;
            if k != assumptions.len() + 1 {
                return Err(err(ProofFileErrorKind::AssumptionOrder(k)));
            }
            assumptions.push(formula(f, system, "assume")?);
        } else if let Some((label, rest)) = body
            .split_once(':')
            .filter(|(l, _)| l.trim().parse::<usize>().is_ok())
        {
            let label: usize = label.trim().parse().expect("checked above");
            if label == 0 || lines.last().is_some_and(|l| l.label >= label) {
                return Err(err(ProofFileErrorKind::LabelOrder(label)));
            }
            let mut parts = rest.split('|');
            let f = formula(parts.next().unwrap_or(""), system, "proof lines")?;
            let just_text = parts
                .next()
                .ok_or(err(ProofFileErrorKind::Justification(String::new())))?
                .trim();
            let justification = parse_justification(just_text)
                .ok_or_else(|| err(ProofFileErrorKind::Justification(just_text.to_string())))?;
            let step = match parts.next().map(str::trim) {
                None => None,
                Some(tag) => {
                    let k = tag
                        .strip_prefix("step")
                        .and_then(|k| k.trim().parse::<usize>().ok())
                        .ok_or_else(|| err(ProofFileErrorKind::Unrecognised(tag.to_string())))?;
                    if k != last_step + 1 {
                        return Err(err(ProofFileErrorKind::StepOrder(k)));
                    }
                    last_step = k;
                    Some(k)
                }
            };
            if parts.next().is_some() {
                return Err(err(ProofFileErrorKind::Unrecognised(body.to_string())));
            }
            lines.push(ProofLine {
                label,
                formula: f,
                justification,
                step,
            });
        } else {
            return Err(err(ProofFileErrorKind::Unrecognised(body.to_string())));
        }
    }
    let end = text.lines().count().max(1);
    let missing = |h| ProofFileError {
        line: end,
        kind: ProofFileErrorKind::MissingHeader(h),
    };
    let system = system.ok_or(missing("system"))?;
    let name = name.ok_or(missing("name"))?;
    let conclusion = conclusion.ok_or(missing("qed"))?;
    if lines.is_empty() {
        return Err(ProofFileError {
            line: end,
            kind: ProofFileErrorKind::Empty,
        });
    }
    Ok(Proof {
        system,
        name,
        assumptions,
        lines,
        conclusion,
    })
}
