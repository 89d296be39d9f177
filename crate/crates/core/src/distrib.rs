//! Term-context count matrices viewed as vectors in a vector lattice.
//!
//! Each term is the vector of its counts over the contexts. Meet and join
//! are the componentwise minimum and maximum, and `a` entails `b` when `b`
//! occurs at least as often as `a` in every context.

use std::collections::HashMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::semantics::{parse_rational, GroupElement};

#[derive(Debug, Error)]
pub enum MatrixError {
    #[error("matrix has no header row")]
    Empty,
    #[error("header has no context columns")]
    NoContexts,
    #[error("row {row}: expected {expected} counts, found {found}")]
    Ragged {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("row {row}: count `{text}` is not a number")]
    Number { row: usize, text: String },
    #[error("row {row}: negative count {text}")]
    Negative { row: usize, text: String },
    #[error("term `{0}` appears twice")]
    DuplicateTerm(String),
    #[error("context `{0}` appears twice")]
    DuplicateContext(String),
    #[error("unknown term `{0}`")]
    UnknownTerm(String),
    #[error("`{0}` has no occurrences")]
    ZeroVector(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermDocumentMatrix {
    terms: Vec<String>,
    contexts: Vec<String>,
    rows: Vec<GroupElement>,
    index: HashMap<String, usize>,
}

impl TermDocumentMatrix {
    /// Reads CSV with contexts in the header and one term per row.
    /// `--` and empty cells count as zero.
    pub fn from_csv(text: &str) -> Result<Self, MatrixError> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .trim(csv::Trim::All)
            .comment(Some(b'#'))
            .from_reader(text.as_bytes());
        let mut records = reader.records();
        let header = records.next().ok_or(MatrixError::Empty)??;
        let contexts: Vec<String> = header.iter().skip(1).map(str::to_owned).collect();
        if contexts.is_empty() {
            return Err(MatrixError::NoContexts);
        }
        for (i, c) in contexts.iter().enumerate() {
            if contexts[..i].contains(c) {
                return Err(MatrixError::DuplicateContext(c.clone()));
            }
        }

        let mut m = TermDocumentMatrix {
            terms: Vec::new(),
            contexts,
            rows: Vec::new(),
            index: HashMap::new(),
        };
        for (k, record) in records.enumerate() {
            let record = record?;
            let row = k + 2;
            let found = record.len().saturating_sub(1);
            if found != m.contexts.len() {
                return Err(MatrixError::Ragged {
                    row,
                    expected: m.contexts.len(),
                    found,
                });
            }
            let term = record[0].to_owned();
            let mut counts = Vec::with_capacity(found);
            for cell in record.iter().skip(1) {
                let value = if cell.is_empty() || cell == "--" {
                    BigRational::zero()
                } else {
                    parse_rational(cell).ok_or_else(|| MatrixError::Number {
                        row,
                        text: cell.to_owned(),
                    })?
                };
                if value.is_negative() {
                    return Err(MatrixError::Negative {
                        row,
                        text: cell.to_owned(),
                    });
                }
                counts.push(value);
            }
            if m.index.insert(term.clone(), m.terms.len()).is_some() {
                return Err(MatrixError::DuplicateTerm(term));
            }
            m.terms.push(term);
            m.rows.push(GroupElement::from_coords(counts));
        }
        Ok(m)
    }

    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    pub fn contexts(&self) -> &[String] {
        &self.contexts
    }

    pub fn vector(&self, term: &str) -> Result<&GroupElement, MatrixError> {
        self.index
            .get(term)
            .map(|&i| &self.rows[i])
            .ok_or_else(|| MatrixError::UnknownTerm(term.to_owned()))
    }

    pub fn count(&self, term: &str, context: &str) -> Option<&BigRational> {
        let j = self.contexts.iter().position(|c| c == context)?;
        self.vector(term).ok().map(|v| &v.coords()[j])
    }

    pub fn meet(&self, t1: &str, t2: &str) -> Result<GroupElement, MatrixError> {
        Ok(self.vector(t1)?.meet(self.vector(t2)?))
    }

    pub fn join(&self, t1: &str, t2: &str) -> Result<GroupElement, MatrixError> {
        Ok(self.vector(t1)?.join(self.vector(t2)?))
    }

    /// Whether `t1 <= t2` in every context. On failure the witness is the
    /// context where `t1` exceeds `t2` the most (the first such on ties).
    pub fn entails(&self, t1: &str, t2: &str) -> Result<Entailment, MatrixError> {
        let (u, v) = (self.vector(t1)?, self.vector(t2)?);
        let mut witness: Option<(usize, BigRational)> = None;
        for (j, (a, b)) in u.coords().iter().zip(v.coords()).enumerate() {
            let excess = a - b;
            if excess.is_positive() && witness.as_ref().is_none_or(|(_, best)| excess > *best) {
                witness = Some((j, excess));
            }
        }
        Ok(Entailment {
            witness: witness.map(|(j, _)| Witness {
                context: self.contexts[j].clone(),
                left: u.coords()[j].clone(),
                right: v.coords()[j].clone(),
            }),
        })
    }

    pub fn cosine(&self, t1: &str, t2: &str) -> Result<f64, MatrixError> {
        let (u, v) = (self.vector(t1)?, self.vector(t2)?);
        let dot = |x: &GroupElement, y: &GroupElement| -> BigRational {
            x.coords().iter().zip(y.coords()).map(|(a, b)| a * b).sum()
        };
        let (uu, vv) = (dot(u, u), dot(v, v));
        for (t, n) in [(t1, &uu), (t2, &vv)] {
            if n.is_zero() {
                return Err(MatrixError::ZeroVector(t.to_owned()));
            }
        }
        let to_f64 = |r: BigRational| r.to_f64().unwrap_or(f64::NAN);
        Ok(to_f64(dot(u, v)) / (to_f64(uu) * to_f64(vv)).sqrt())
    }
}

/// A context where the entailment fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub context: String,
    pub left: BigRational,
    pub right: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entailment {
    pub witness: Option<Witness>,
}

impl Entailment {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

impl fmt::Display for Entailment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.witness {
            None => f.write_str("true"),
            Some(w) => write!(f, "false (context {}: {} > {})", w.context, w.left, w.right),
        }
    }
}
