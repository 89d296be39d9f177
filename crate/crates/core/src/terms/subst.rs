use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use super::formula::Formula;

/// Simultaneous replacement of metavariables by formulas.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Substitution(BTreeMap<String, Formula>);

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SubstError {
    #[error("no binding for metavariable {0}")]
    Unbound(String),
}

/// Why a schema failed to match a target.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MatchError {
    /// A metavariable already bound to one formula met a different one.
    #[error("metavariable {meta} is bound to `{bound}` but must also match `{found}`")]
    Conflict {
        meta: String,
        bound: Formula,
        found: Formula,
    },
    /// The target does not have the shape of the schema.
    #[error("expected the shape `{expected}`, found `{found}`")]
    Shape { expected: Formula, found: Formula },
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn bind(&mut self, meta: impl Into<String>, value: Formula) -> Option<Formula> {
        self.0.insert(meta.into(), value)
    }

    pub fn get(&self, meta: &str) -> Option<&Formula> {
        self.0.get(meta)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Formula)> {
        self.0.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// Applies the substitution; every metavariable of `schema` must be bound.
    pub fn apply(&self, schema: &Formula) -> Result<Formula, SubstError> {
        Ok(match schema {
            Formula::Meta(name) => self
                .0
                .get(name)
                .cloned()
                .ok_or_else(|| SubstError::Unbound(name.clone()))?,
            Formula::Var(_) | Formula::Zero => schema.clone(),
            Formula::Imp(a, b) => Formula::imp(self.apply(a)?, self.apply(b)?),
            Formula::Join(a, b) => Formula::join(self.apply(a)?, self.apply(b)?),
            Formula::Pos(a) => Formula::pos(self.apply(a)?),
        })
    }

    /// One-sided matching of `schema` against `target`, extending the
    /// bindings already present. Metavariables inside `target` are treated
    /// as opaque atoms. On failure the substitution may be partially
    /// extended.
    pub fn extend_match(&mut self, schema: &Formula, target: &Formula) -> Result<(), MatchError> {
        match (schema, target) {
            (Formula::Meta(name), _) => match self.0.get(name) {
                Some(bound) if bound == target => Ok(()),
                Some(bound) => Err(MatchError::Conflict {
                    meta: name.clone(),
                    bound: bound.clone(),
                    found: target.clone(),
                }),
                None => {
                    self.0.insert(name.clone(), target.clone());
                    Ok(())
                }
            },
            (Formula::Imp(a, b), Formula::Imp(c, d))
            | (Formula::Join(a, b), Formula::Join(c, d)) => {
                self.extend_match(a, c)?;
                self.extend_match(b, d)
            }
            (Formula::Pos(a), Formula::Pos(c)) => self.extend_match(a, c),
            (Formula::Var(x), Formula::Var(y)) if x == y => Ok(()),
            (Formula::Zero, Formula::Zero) => Ok(()),
            _ => Err(MatchError::Shape {
                expected: schema.clone(),
                found: target.clone(),
            }),
        }
    }
}

impl FromIterator<(String, Formula)> for Substitution {
    fn from_iter<I: IntoIterator<Item = (String, Formula)>>(iter: I) -> Self {
        Substitution(iter.into_iter().collect())
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (k, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{k} := {v}")?;
        }
        f.write_str("}")
    }
}

pub fn substitute(schema: &Formula, s: &Substitution) -> Result<Formula, SubstError> {
    s.apply(schema)
}

/// The unique substitution taking `schema` to `target`, if any.
pub fn match_schema(schema: &Formula, target: &Formula) -> Option<Substitution> {
    let mut s = Substitution::new();
    s.extend_match(schema, target).ok().map(|_| s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::{parse_rl, parse_schema, Logic};

    fn schema(s: &str) -> Formula {
        parse_schema(s, Logic::Rl).unwrap()
    }

    fn subst(pairs: &[(&str, &str)]) -> Substitution {
        pairs
            .iter()
            .map(|(k, v)| (k.to_string(), parse_rl(v).unwrap()))
            .collect()
    }

    #[test]
    fn substitute_examples() {
        let r2 = schema("Φ -> Φ \\/ Ψ");
        let got = substitute(&r2, &subst(&[("Φ", "a"), ("Ψ", "0")])).unwrap();
        assert_eq!(got.to_string(), "a -> a \\/ 0");

        let got = substitute(&schema("Φ"), &subst(&[("Φ", "b -> c")])).unwrap();
        assert_eq!(got.to_string(), "b -> c");

        let r6a = schema("((Φ -> Ψ) \\/ 0 -> (Ψ -> Φ) \\/ 0) -> (Ψ -> Φ)");
        let got = substitute(&r6a, &subst(&[("Φ", "a"), ("Ψ", "b")])).unwrap();
        assert_eq!(
            got.to_string(),
            "((a -> b) \\/ 0 -> (b -> a) \\/ 0) -> b -> a"
        );
    }

    #[test]
    fn substitute_requires_total_bindings() {
        let err = substitute(&schema("Φ -> Ψ"), &subst(&[("Φ", "a")])).unwrap_err();
        assert_eq!(err, SubstError::Unbound("Ψ".into()));
    }

    #[test]
    fn match_examples() {
        let r2 = schema("Φ -> Φ \\/ Ψ");
        let s = match_schema(&r2, &parse_rl("a -> a \\/ (b -> c)").unwrap()).unwrap();
        assert_eq!(s, subst(&[("Φ", "a"), ("Ψ", "b -> c")]));

        assert!(match_schema(&r2, &parse_rl("a -> b \\/ c").unwrap()).is_none());

        let r3 = schema("Φ \\/ Ψ -> Ψ \\/ Φ");
        let target = parse_rl("0 \\/ x -> x \\/ 0").unwrap();
        let s = match_schema(&r3, &target).unwrap();
        assert_eq!(s, subst(&[("Φ", "0"), ("Ψ", "x")]));
        assert_eq!(substitute(&r3, &s).unwrap(), target);
    }

    #[test]
    fn conflict_names_the_metavariable() {
        let mut s = Substitution::new();
        let err = s
            .extend_match(&schema("Φ -> Φ \\/ Ψ"), &parse_rl("a -> b \\/ c").unwrap())
            .unwrap_err();
        match err {
            MatchError::Conflict { meta, .. } => assert_eq!(meta, "Φ"),
            other => panic!("unexpected {other:?}"),
        }
    }
}
