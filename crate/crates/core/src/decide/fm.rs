//! Exact Fourier–Motzkin feasibility for systems `L_j(x) <= -1`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::normal_form::Clause;
use super::{Budget, DecideError};

/// `coeffs . x <= rhs`, scaled so all entries are coprime integers.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Constraint {
    coeffs: Vec<BigInt>,
    rhs: BigInt,
}

impl Constraint {
    fn normalized(mut self) -> Self {
        let g = self.coeffs.iter().fold(self.rhs.abs(), |g, c| g.gcd(c));
        if !g.is_zero() && !g.is_one() {
            for c in self.coeffs.iter_mut() {
                *c /= &g;
            }
            self.rhs /= &g;
        }
        self
    }

    fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

/// Outcome of checking a single clause.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClauseVerdict {
    /// `max_j L_j >= 0` everywhere.
    Valid,
    /// A point where every term of the clause is at most `-1`.
    Witness(BTreeMap<String, BigRational>),
}

// Chooses a value in [lo, hi]: zero if allowed, else the integer nearest zero,
// else an endpoint.
fn pick(lo: Option<BigRational>, hi: Option<BigRational>) -> BigRational {
    let zero = BigRational::zero();
    let fits =
        |x: &BigRational| lo.as_ref().is_none_or(|l| l <= x) && hi.as_ref().is_none_or(|h| x <= h);
    if fits(&zero) {
        return zero;
    }
    if let Some(l) = lo.as_ref().filter(|l| l.is_positive()) {
        let c = l.ceil();
        return if fits(&c) { c } else { l.clone() };
    }
    let h = hi
        .as_ref()
        .expect("interval excluding zero has an endpoint on that side");
    let c = h.floor();
    if fits(&c) {
        c
    } else {
        h.clone()
    }
}

/// Decides whether `max_j L_j(x) >= 0` for all rational `x`.
///
/// By homogeneity that holds iff `{ L_j(x) <= -1 : all j }` is infeasible;
/// otherwise the returned witness satisfies every inequality.
pub fn clause_valid_with(clause: &Clause, budget: &Budget) -> Result<ClauseVerdict, DecideError> {
    assert!(!clause.is_empty(), "clauses are nonempty");
    let names: Vec<String> = clause
        .iter()
        .flat_map(|t| t.coefficients().map(|(n, _)| n.to_string()))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let index: BTreeMap<&str, usize> = names
        .iter()
        .enumerate()
        .map(|(i, n)| (n.as_str(), i))
        .collect();

    let mut system: BTreeSet<Constraint> = clause
        .iter()
        .map(|t| {
            let mut coeffs = vec![BigInt::zero(); names.len()];
            for (n, c) in t.coefficients() {
                coeffs[index[n]] = BigInt::from(c);
            }
            Constraint {
                coeffs,
                rhs: -BigInt::one(),
            }
            .normalized()
        })
        .collect();

    let mut stages: Vec<(usize, Vec<Constraint>)> = Vec::new();
    let mut remaining: BTreeSet<usize> = (0..names.len()).collect();
    loop {
        if system.iter().any(|c| c.is_trivial() && c.rhs.is_negative()) {
            return Ok(ClauseVerdict::Valid);
        }
        system.retain(|c| !c.is_trivial());
        if system.is_empty() {
            break;
        }
        let count = |k: usize| {
            let pos = system.iter().filter(|c| c.coeffs[k].is_positive()).count();
            let neg = system.iter().filter(|c| c.coeffs[k].is_negative()).count();
            pos * neg
        };
        let var = *remaining
            .iter()
            .min_by_key(|&&k| count(k))
            .expect("nontrivial constraints mention a variable");
        remaining.remove(&var);

        let (pos, rest): (Vec<_>, Vec<_>) =
            system.iter().partition(|c| c.coeffs[var].is_positive());
        let (neg, zero): (Vec<_>, Vec<_>) =
            rest.into_iter().partition(|c| c.coeffs[var].is_negative());
        if zero.len() + pos.len() * neg.len() > budget.inequalities {
            return Err(DecideError::InequalityBudget {
                limit: budget.inequalities,
            });
        }
        let mut next: BTreeSet<Constraint> = zero.into_iter().cloned().collect();
        for p in &pos {
            for n in &neg {
                let mp = -&n.coeffs[var];
                let mn = p.coeffs[var].clone();
                let coeffs = p
                    .coeffs
                    .iter()
                    .zip(&n.coeffs)
                    .map(|(a, b)| a * &mp + b * &mn)
                    .collect();
                let rhs = &p.rhs * &mp + &n.rhs * &mn;
                next.insert(Constraint { coeffs, rhs }.normalized());
            }
        }
        stages.push((var, system.into_iter().collect()));
        system = next;
    }

    // Feasible: back-substitute in reverse elimination order.
    let mut values = vec![BigRational::zero(); names.len()];
    for (var, constraints) in stages.iter().rev() {
        let mut lo: Option<BigRational> = None;
        let mut hi: Option<BigRational> = None;
        for c in constraints {
            let a = &c.coeffs[*var];
            if a.is_zero() {
                continue;
            }
            let mut rest = BigRational::from_integer(c.rhs.clone());
            for (j, cj) in c.coeffs.iter().enumerate() {
                if j != *var && !cj.is_zero() {
                    rest -= &values[j] * BigRational::from_integer(cj.clone());
                }
            }
            let bound = rest / BigRational::from_integer(a.clone());
            if a.is_positive() {
                hi = Some(match hi {
                    Some(h) if h <= bound => h,
                    _ => bound,
                });
            } else {
                lo = Some(match lo {
                    Some(l) if l >= bound => l,
                    _ => bound,
                });
            }
        }
        values[*var] = pick(lo, hi);
    }
    let witness: BTreeMap<String, BigRational> = names.into_iter().zip(values).collect();
    debug_assert!(clause
        .iter()
        .all(|t| t.eval_at(&witness) <= -BigRational::one()));
    Ok(ClauseVerdict::Witness(witness))
}

pub fn clause_valid(clause: &Clause) -> Result<ClauseVerdict, DecideError> {
    clause_valid_with(clause, &Budget::default())
}
