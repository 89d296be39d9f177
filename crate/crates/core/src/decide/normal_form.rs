use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{Budget, DecideError};
use crate::semantics::{GroupElement, Valuation};
use crate::terms::Formula;

/// A homogeneous linear combination of variables with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearTerm(BTreeMap<String, i64>);

impl LinearTerm {
    pub fn zero() -> Self {
        LinearTerm::default()
    }

    pub fn variable(name: &str) -> Self {
        LinearTerm(BTreeMap::from([(name.to_string(), 1)]))
    }

    pub fn from_coefficients<'a>(pairs: impl IntoIterator<Item = (&'a str, i64)>) -> Self {
        let mut t = LinearTerm::zero();
        for (name, c) in pairs {
            t.add_coefficient(name, c).expect("coefficient overflow");
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coefficient(&self, name: &str) -> i64 {
        self.0.get(name).copied().unwrap_or(0)
    }

    pub fn coefficients(&self) -> impl Iterator<Item = (&str, i64)> {
        self.0.iter().map(|(k, &v)| (k.as_str(), v))
    }

    fn add_coefficient(&mut self, name: &str, c: i64) -> Result<(), DecideError> {
        let entry = self.0.entry(name.to_string()).or_insert(0);
        *entry = entry
            .checked_add(c)
            .ok_or(DecideError::CoefficientOverflow)?;
        if *entry == 0 {
            self.0.remove(name);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, DecideError> {
        let mut out = self.clone();
        for (name, &c) in &other.0 {
            out.add_coefficient(name, c)?;
        }
        Ok(out)
    }

    pub fn checked_neg(&self) -> Result<Self, DecideError> {
        self.0
            .iter()
            .map(|(k, &c)| c.checked_neg().map(|n| (k.clone(), n)))
            .collect::<Option<BTreeMap<_, _>>>()
            .map(LinearTerm)
            .ok_or(DecideError::CoefficientOverflow)
    }

    pub fn eval(&self, v: &Valuation) -> GroupElement {
        let mut acc = GroupElement::zero(v.dimension());
        for (name, &c) in &self.0 {
            acc = &acc
                + &v.get(name)
                    .scale(&BigRational::from_integer(BigInt::from(c)));
        }
        acc
    }

    pub fn eval_at(&self, point: &BTreeMap<String, BigRational>) -> BigRational {
        self.0
            .iter()
            .map(|(k, &c)| {
                point.get(k).cloned().unwrap_or_default()
                    * BigRational::from_integer(BigInt::from(c))
            })
            .sum()
    }
}

impl fmt::Display for LinearTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (i, (name, &c)) in self.0.iter().enumerate() {
            let (sign, mag) = if c < 0 {
                ("-", c.unsigned_abs())
            } else {
                ("+", c as u64)
            };
            match (i, sign) {
                (0, "-") => f.write_str("-")?,
                (0, _) => {}
                (_, s) => write!(f, " {s} ")?,
            }
            if mag != 1 {
                write!(f, "{mag}")?;
            }
            f.write_str(name)?;
        }
        Ok(())
    }
}

/// A join of linear terms; nonempty.
pub type Clause = BTreeSet<LinearTerm>;

/// A meet of clauses. At every valuation its value is the minimum over
/// clauses of the maximum over each clause's terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeetJoinNormalForm {
    clauses: Vec<Clause>,
}

// past this many clauses the quadratic subsumption pass is skipped
const ABSORPTION_LIMIT: usize = 4096;

impl MeetJoinNormalForm {
    pub fn term(t: LinearTerm) -> Self {
        MeetJoinNormalForm {
            clauses: vec![BTreeSet::from([t])],
        }
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn from_clauses(clauses: impl IntoIterator<Item = Clause>) -> Self {
        Self::simplified(clauses.into_iter().collect())
    }

    /// Meet over clauses of the join over terms.
    pub fn eval(&self, v: &Valuation) -> GroupElement {
        let clause_value = |c: &Clause| {
            c.iter()
                .map(|t| t.eval(v))
                .reduce(|a, b| a.join(&b))
                .expect("clauses are nonempty")
        };
        self.clauses
            .iter()
            .map(clause_value)
            .reduce(|a, b| a.meet(&b))
            .expect("normal forms are nonempty")
    }

    // Deduplicates clauses and drops clauses subsumed by a smaller one.
    fn simplified(clauses: Vec<Clause>) -> Self {
        let mut unique: Vec<Clause> = clauses
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        if unique.len() <= ABSORPTION_LIMIT {
            unique.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
            let mut kept: Vec<Clause> = Vec::with_capacity(unique.len());
            for c in unique {
                if !kept.iter().any(|k| k.is_subset(&c)) {
                    kept.push(c);
                }
            }
            kept.sort();
            unique = kept;
        }
        MeetJoinNormalForm { clauses: unique }
    }

    fn check_count(n: Option<usize>, budget: &Budget) -> Result<(), DecideError> {
        match n {
            Some(n) if n <= budget.clauses => Ok(()),
            _ => Err(DecideError::ClauseBudget {
                limit: budget.clauses,
            }),
        }
    }

    /// `(/\ A_i) \/ (/\ B_j) = /\_{i,j} (A_i \/ B_j)`.
    pub fn join(&self, other: &Self, budget: &Budget) -> Result<Self, DecideError> {
        Self::check_count(self.clauses.len().checked_mul(other.clauses.len()), budget)?;
        let mut out = Vec::with_capacity(self.clauses.len() * other.clauses.len());
        for a in &self.clauses {
            for b in &other.clauses {
                out.push(a.union(b).cloned().collect());
            }
        }
        Ok(Self::simplified(out))
    }

    /// `(/\ A_i) + (/\ B_j) = /\_{i,j} \/_{x in A_i, y in B_j} (x + y)`.
    pub fn sum(&self, other: &Self, budget: &Budget) -> Result<Self, DecideError> {
        Self::check_count(self.clauses.len().checked_mul(other.clauses.len()), budget)?;
        let mut out = Vec::with_capacity(self.clauses.len() * other.clauses.len());
        for a in &self.clauses {
            for b in &other.clauses {
                Self::check_count(a.len().checked_mul(b.len()), budget)?;
                let mut clause = Clause::new();
                for x in a {
                    for y in b {
                        clause.insert(x.checked_add(y)?);
                    }
                }
                out.push(clause);
            }
        }
        Ok(Self::simplified(out))
    }

    /// `-(/\_i \/ A_i) = \/_i /\_{t in A_i} (-t)`, redistributed into a meet
    /// of joins one clause at a time.
    pub fn negate(&self, budget: &Budget) -> Result<Self, DecideError> {
        let mut acc: Option<Self> = None;
        for clause in &self.clauses {
            let singletons = clause
                .iter()
                .map(|t| t.checked_neg().map(|n| BTreeSet::from([n])))
                .collect::<Result<Vec<_>, _>>()?;
            let piece = Self::simplified(singletons);
            acc = Some(match acc {
                None => piece,
                Some(a) => a.join(&piece, budget)?,
            });
        }
        Ok(acc.expect("normal forms are nonempty"))
    }
}

impl fmt::Display for MeetJoinNormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.clauses.iter().enumerate() {
            if i > 0 {
                f.write_str(" /\\ ")?;
            }
            f.write_str("{")?;
            for (j, t) in c.iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{t}")?;
            }
            f.write_str("}")?;
        }
        Ok(())
    }
}

/// Rewrites a formula into a meet of joins of linear terms.
///
/// Metavariables are treated like variables. `^+` is read as `\/ 0`.
pub fn linearize_with(f: &Formula, budget: &Budget) -> Result<MeetJoinNormalForm, DecideError> {
    Ok(match f {
        Formula::Var(name) | Formula::Meta(name) => {
            MeetJoinNormalForm::term(LinearTerm::variable(name))
        }
        Formula::Zero => MeetJoinNormalForm::term(LinearTerm::zero()),
        Formula::Imp(a, b) => {
            let minus_a = linearize_with(a, budget)?.negate(budget)?;
            linearize_with(b, budget)?.sum(&minus_a, budget)?
        }
        Formula::Join(a, b) => {
            linearize_with(a, budget)?.join(&linearize_with(b, budget)?, budget)?
        }
        Formula::Pos(a) => linearize_with(a, budget)?
            .join(&MeetJoinNormalForm::term(LinearTerm::zero()), budget)?,
    })
}

pub fn linearize(f: &Formula) -> Result<MeetJoinNormalForm, DecideError> {
    linearize_with(f, &Budget::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::parse_rl;

    fn nf(s: &str) -> MeetJoinNormalForm {
        linearize(&parse_rl(s).unwrap()).unwrap()
    }

    #[test]
    fn transitivity_cancels_to_zero() {
        let got = nf("(a -> b) -> ((c -> a) -> (c -> b))");
        assert_eq!(got.clauses(), &[BTreeSet::from([LinearTerm::zero()])]);
    }

    #[test]
    fn small_examples() {
        let got = nf("a \\/ 0");
        assert_eq!(
            got.clauses(),
            &[BTreeSet::from([
                LinearTerm::zero(),
                LinearTerm::variable("a")
            ])]
        );
        let got = nf("p -> q");
        assert_eq!(
            got.clauses(),
            &[BTreeSet::from([LinearTerm::from_coefficients([
                ("q", 1),
                ("p", -1)
            ])])]
        );
        assert_eq!(got.to_string(), "{-p + q}");
        // a - (a \/ b) = 0 /\ (a - b)
        let got = nf("a \\/ b -> a");
        assert_eq!(got.clauses().len(), 2);
    }

    #[test]
    fn budget_overflow_is_reported() {
        let tiny = Budget {
            clauses: 2,
            inequalities: 10,
        };
        let f = parse_rl("(a \\/ b) /\\ (c \\/ d) /\\ (e \\/ g)").unwrap();
        assert_eq!(
            linearize_with(&f, &tiny),
            Err(DecideError::ClauseBudget { limit: 2 })
        );
    }

    #[test]
    fn linear_term_display() {
        let t = LinearTerm::from_coefficients([("a", 2), ("b", -1), ("c", 1)]);
        assert_eq!(t.to_string(), "2a - b + c");
        assert_eq!(LinearTerm::zero().to_string(), "0");
    }
}
