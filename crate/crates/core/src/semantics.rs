//! Models over `Q^n` with the componentwise order.
//!
//! `Q^n` is an abelian lattice-ordered group for every `n`: the group
//! operation is vector addition and meet/join are componentwise min/max.
//! RL formulas assert `0 <= [[f]]`; BAL formulas assert `[[f]] = 0`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::terms::{Formula, Logic};

/// A point of `Q^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement(Vec<BigRational>);

impl GroupElement {
    pub fn zero(dimension: usize) -> Self {
        GroupElement(vec![BigRational::zero(); dimension])
    }

    pub fn from_coords(coords: Vec<BigRational>) -> Self {
        GroupElement(coords)
    }

    pub fn from_integers(coords: &[i64]) -> Self {
        GroupElement(
            coords
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn dimension(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.0
    }

    fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(&BigRational, &BigRational) -> BigRational,
    ) -> Self {
        assert_eq!(self.dimension(), other.dimension(), "dimension mismatch");
        GroupElement(self.0.iter().zip(&other.0).map(|(a, b)| f(a, b)).collect())
    }

    pub fn join(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| if a >= b { a.clone() } else { b.clone() })
    }

    pub fn meet(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| if a <= b { a.clone() } else { b.clone() })
    }

    /// `u \/ 0`.
    pub fn positive_part(&self) -> Self {
        self.join(&GroupElement::zero(self.dimension()))
    }

    /// `(-u) \/ 0`.
    pub fn negative_part(&self) -> Self {
        (-self).positive_part()
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        GroupElement(self.0.iter().map(|c| c * factor).collect())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|c| !c.is_negative())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// `self <= other` componentwise.
    pub fn le(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Add for &GroupElement {
    type Output = GroupElement;
    fn add(self, rhs: &GroupElement) -> GroupElement {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &GroupElement {
    type Output = GroupElement;
    fn sub(self, rhs: &GroupElement) -> GroupElement {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &GroupElement {
    type Output = GroupElement;
    fn neg(self) -> GroupElement {
        GroupElement(self.0.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// Parses `p/q`, an integer, or a finite decimal such as `2.5`.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    if let Some((p, q)) = text.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        return (!q.is_zero()).then(|| BigRational::new(p, q));
    }
    if let Some((whole, frac)) = text.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = whole.starts_with('-');
        let whole: BigInt = match whole {
            "" | "-" | "+" => BigInt::zero(),
            w => w.parse().ok()?,
        };
        let frac_value: BigInt = frac.parse().ok()?;
        let denom = num_traits::pow(BigInt::from(10), frac.len());
        let mut value =
            BigRational::from_integer(whole.abs()) + BigRational::new(frac_value, denom);
        if negative {
            value = -value;
        }
        return Some(value);
    }
    text.parse::<BigInt>().ok().map(BigRational::from_integer)
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ValuationError {
    #[error("line {line}: expected `name = (r1, ..., rn)`")]
    Syntax { line: usize },
    #[error("line {line}: `{text}` is not a rational number")]
    Number { line: usize, text: String },
    #[error("line {line}: {name} has dimension {found}, expected {expected}")]
    Dimension {
        line: usize,
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: {name} is bound twice")]
    Duplicate { line: usize, name: String },
}

/// Assignment of group elements to variables; unmapped variables are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Valuation {
    dimension: usize,
    map: BTreeMap<String, GroupElement>,
}

impl Valuation {
    pub fn new(dimension: usize) -> Self {
        assert!(dimension >= 1, "valuations need dimension >= 1");
        Valuation {
            dimension,
            map: BTreeMap::new(),
        }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Binds `name`; panics if the element has the wrong dimension.
    pub fn set(&mut self, name: impl Into<String>, value: GroupElement) -> &mut Self {
        assert_eq!(value.dimension(), self.dimension, "dimension mismatch");
        self.map.insert(name.into(), value);
        self
    }

    pub fn with(mut self, name: impl Into<String>, value: GroupElement) -> Self {
        self.set(name, value);
        self
    }

    pub fn get(&self, name: &str) -> GroupElement {
        self.map
            .get(name)
            .cloned()
            .unwrap_or_else(|| GroupElement::zero(self.dimension))
    }

    pub fn bindings(&self) -> impl Iterator<Item = (&str, &GroupElement)> {
        self.map.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// Multiplies every bound vector by `factor`.
    pub fn scale(&self, factor: &BigRational) -> Self {
        Valuation {
            dimension: self.dimension,
            map: self
                .map
                .iter()
                .map(|(k, v)| (k.clone(), v.scale(factor)))
                .collect(),
        }
    }

    /// Reads one `var = (r1, ..., rn)` binding per line; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, ValuationError> {
        let mut dimension = None;
        let mut map = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let (name, rhs) = body
                .split_once('=')
                .ok_or(ValuationError::Syntax { line })?;
            let name = name.trim();
            let rhs = rhs.trim();
            let valid_name = name.chars().next().is_some_and(|c| c.is_ascii_lowercase())
                && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            let inner = rhs.strip_prefix('(').and_then(|r| r.strip_suffix(')'));
            let (true, Some(inner)) = (valid_name, inner) else {
                return Err(ValuationError::Syntax { line });
            };
            let coords = inner
                .split(',')
                .map(|c| {
                    parse_rational(c).ok_or_else(|| ValuationError::Number {
                        line,
                        text: c.trim().to_string(),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            let expected = *dimension.get_or_insert(coords.len());
            if coords.len() != expected {
                return Err(ValuationError::Dimension {
                    line,
                    name: name.to_string(),
                    expected,
                    found: coords.len(),
                });
            }
            if map.insert(name.to_string(), GroupElement(coords)).is_some() {
                return Err(ValuationError::Duplicate {
                    line,
                    name: name.to_string(),
                });
            }
        }
        Ok(Valuation {
            dimension: dimension.unwrap_or(1),
            map,
        })
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, value) in &self.map {
            writeln!(f, "{name} = {value}")?;
        }
        Ok(())
    }
}

/// Value of a formula together with whether it holds in the given logic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalResult {
    pub value: GroupElement,
    pub holds: bool,
}

/// Interpretation of any formula: `->` is `right - left`, `\/` is
/// componentwise max, `^+` is the positive part, `0` is the zero vector.
/// Metavariables are looked up by name like variables.
pub fn eval(f: &Formula, v: &Valuation) -> GroupElement {
    match f {
        Formula::Var(name) | Formula::Meta(name) => v.get(name),
        Formula::Zero => GroupElement::zero(v.dimension()),
        Formula::Imp(a, b) => &eval(b, v) - &eval(a, v),
        Formula::Join(a, b) => eval(a, v).join(&eval(b, v)),
        Formula::Pos(a) => eval(a, v).positive_part(),
    }
}

pub fn eval_rl(f: &Formula, v: &Valuation) -> GroupElement {
    eval(f, v)
}

pub fn eval_bal(f: &Formula, v: &Valuation) -> GroupElement {
    eval(f, v)
}

pub fn holds_rl(f: &Formula, v: &Valuation) -> bool {
    eval(f, v).is_nonnegative()
}

pub fn holds_bal(f: &Formula, v: &Valuation) -> bool {
    eval(f, v).is_zero()
}

pub fn evaluate(f: &Formula, v: &Valuation, logic: Logic) -> EvalResult {
    let value = eval(f, v);
    let holds = match logic {
        Logic::Rl => value.is_nonnegative(),
        Logic::Bal => value.is_zero(),
    };
    EvalResult { value, holds }
}

/// Sampling parameters for integer-coordinate valuations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleConfig {
    pub dimension: usize,
    /// Coordinates are drawn uniformly from `[-bound, bound]`.
    pub bound: i64,
    pub seed: u64,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig {
            dimension: 1,
            bound: 10,
            seed: 0,
        }
    }
}

/// Deterministic generator of random integer valuations.
pub struct ValuationSampler {
    rng: ChaCha8Rng,
    dimension: usize,
    bound: i64,
}

impl ValuationSampler {
    pub fn new(config: SampleConfig) -> Self {
        assert!(config.dimension >= 1 && config.bound >= 0);
        ValuationSampler {
            rng: ChaCha8Rng::seed_from_u64(config.seed),
            dimension: config.dimension,
            bound: config.bound,
        }
    }

    fn coords(&mut self) -> Vec<i64> {
        (0..self.dimension)
            .map(|_| self.rng.gen_range(-self.bound..=self.bound))
            .collect()
    }

    /// Samples one vector per name.
    pub fn sample<'a>(&mut self, names: impl IntoIterator<Item = &'a str>) -> Valuation {
        let mut v = Valuation::new(self.dimension);
        for name in names {
            let c = self.coords();
            v.set(name, GroupElement::from_integers(&c));
        }
        v
    }
}

// i64 evaluation for the falsifier; `None` on overflow.
fn eval_small(f: &Formula, names: &[&str], point: &[Vec<i64>], k: usize) -> Option<i64> {
    Some(match f {
        Formula::Var(n) | Formula::Meta(n) => match names.binary_search(&n.as_str()) {
            Ok(i) => point[i][k],
            Err(_) => 0,
        },
        Formula::Zero => 0,
        Formula::Imp(a, b) => {
            eval_small(b, names, point, k)?.checked_sub(eval_small(a, names, point, k)?)?
        }
        Formula::Join(a, b) => eval_small(a, names, point, k)?.max(eval_small(b, names, point, k)?),
        Formula::Pos(a) => eval_small(a, names, point, k)?.max(0),
    })
}

/// Randomized search for a valuation under which an RL formula fails.
///
/// Tries `trials` integer valuations drawn from `config`; returns the first
/// falsifying one. Deterministic for a fixed seed.
pub fn random_falsify(f: &Formula, trials: usize, config: SampleConfig) -> Option<Valuation> {
    let names: Vec<&str> = {
        let mut all: BTreeSet<&str> = f.variables();
        all.extend(f.metavariables());
        all.into_iter().collect()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut point = vec![vec![0i64; config.dimension]; names.len()];
    for _ in 0..trials {
        for row in point.iter_mut() {
            for c in row.iter_mut() {
                *c = rng.gen_range(-config.bound..=config.bound);
            }
        }
        let values: Vec<Option<i64>> = (0..config.dimension)
            .map(|k| eval_small(f, &names, &point, k))
            .collect();
        let candidate = || {
            let mut v = Valuation::new(config.dimension);
            for (name, c) in names.iter().zip(&point) {
                v.set(*name, GroupElement::from_integers(c));
            }
            v
        };
        if values.iter().any(|x| matches!(x, Some(x) if *x < 0)) {
            return Some(candidate());
        }
        // overflowed coordinates fall back to exact arithmetic
        if values.iter().any(Option::is_none) {
            let v = candidate();
            if !holds_rl(f, &v) {
                return Some(v);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::{parse_bal, parse_rl};

    fn ints(c: &[i64]) -> GroupElement {
        GroupElement::from_integers(c)
    }

    #[test]
    fn rl_evaluation() {
        let v = Valuation::new(2)
            .with("p", ints(&[2, 0]))
            .with("q", ints(&[1, 3]));
        let f = parse_rl("p -> q").unwrap();
        assert_eq!(eval_rl(&f, &v), ints(&[-1, 3]));
        assert!(!holds_rl(&f, &v));
        assert_eq!(eval_rl(&Formula::Zero, &v), ints(&[0, 0]));

        let table = Valuation::new(8)
            .with("orange", ints(&[0, 2, 1, 0, 0, 7, 0, 3]))
            .with("fruit", ints(&[0, 1, 3, 0, 4, 3, 5, 3]));
        let join = parse_rl("orange \\/ fruit").unwrap();
        assert_eq!(eval_rl(&join, &table), ints(&[0, 2, 3, 0, 4, 7, 5, 3]));
    }

    #[test]
    fn bal_evaluation() {
        let v = Valuation::new(2).with("x", ints(&[-2, 5]));
        assert_eq!(eval_bal(&parse_bal("x ^+").unwrap(), &v), ints(&[0, 5]));

        let v = Valuation::new(1)
            .with("x", ints(&[1]))
            .with("y", ints(&[1]));
        let f = parse_bal("x -> y").unwrap();
        assert_eq!(eval_bal(&f, &v), ints(&[0]));
        assert!(holds_bal(&f, &v));

        let v = Valuation::new(2)
            .with("x", ints(&[3, 1]))
            .with("y", ints(&[1, 4]));
        assert_eq!(
            eval_bal(&parse_bal("(x -> y) ^+").unwrap(), &v),
            ints(&[0, 3])
        );
    }

    #[test]
    fn unmapped_variables_are_zero() {
        let v = Valuation::new(3);
        assert_eq!(
            eval(&parse_rl("a -> b").unwrap(), &v),
            GroupElement::zero(3)
        );
    }

    #[test]
    fn falsifier_examples() {
        let cfg = SampleConfig::default();
        let bad = parse_rl("a \\/ b -> a").unwrap();
        let witness = random_falsify(&bad, 100, cfg).expect("should falsify");
        assert!(!holds_rl(&bad, &witness));
        assert!(random_falsify(&parse_rl("a -> a \\/ b").unwrap(), 5000, cfg).is_none());
        assert!(random_falsify(&Formula::Zero, 100, cfg).is_none());
        // deterministic per seed
        assert_eq!(
            random_falsify(&bad, 100, cfg),
            random_falsify(&bad, 100, cfg)
        );
    }

    #[test]
    fn decomposition_into_positive_and_negative_parts() {
        let x = ints(&[3, -4, 0]);
        assert_eq!(&x.positive_part() - &x.negative_part(), x);
    }

    #[test]
    fn valuation_text_format() {
        let text = "# comment\nx = (1/2, -3)\n\ny = (0, 7/3)  # trailing\n";
        let v = Valuation::parse(text).unwrap();
        assert_eq!(v.dimension(), 2);
        assert_eq!(v.to_string(), "x = (1/2, -3)\ny = (0, 7/3)\n");
        assert_eq!(Valuation::parse(&v.to_string()).unwrap(), v);

        assert!(matches!(
            Valuation::parse("x = (1, 2)\ny = (1)"),
            Err(ValuationError::Dimension { line: 2, .. })
        ));
        assert!(matches!(
            Valuation::parse("x = (1, a)"),
            Err(ValuationError::Number { .. })
        ));
        assert!(matches!(
            Valuation::parse("x (1)"),
            Err(ValuationError::Syntax { line: 1 })
        ));
        assert!(matches!(
            Valuation::parse("x = (1)\nx = (2)"),
            Err(ValuationError::Duplicate { .. })
        ));
    }

    #[test]
    fn rational_literals() {
        assert_eq!(
            parse_rational("-3/6"),
            Some(BigRational::new((-1).into(), 2.into()))
        );
        assert_eq!(
            parse_rational("2.5"),
            Some(BigRational::new(5.into(), 2.into()))
        );
        assert_eq!(
            parse_rational("-0.25"),
            Some(BigRational::new((-1).into(), 4.into()))
        );
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }
}
