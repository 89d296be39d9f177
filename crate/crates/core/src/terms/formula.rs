use std::collections::BTreeSet;
use std::fmt;

/// The object language a formula is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Logic {
    /// Riesz Logic: `0`, `->`, `\/`.
    Rl,
    /// Logic of Equilibrium: `->`, postfix `^+`.
    Bal,
}

impl fmt::Display for Logic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Logic::Rl => f.write_str("RL"),
            Logic::Bal => f.write_str("BAL"),
        }
    }
}

/// A formula of RL or BAL, possibly schematic.
///
/// RL formulas use `Var`, `Zero`, `Imp` and `Join`; BAL formulas use `Var`,
/// `Imp` and `Pos`. `Meta` nodes stand for arbitrary formulas and only occur
/// in schemas (axioms, proof scripts).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Var(String),
    Meta(String),
    Zero,
    Imp(Box<Formula>, Box<Formula>),
    Join(Box<Formula>, Box<Formula>),
    Pos(Box<Formula>),
}

impl Formula {
    pub fn var(name: impl Into<String>) -> Self {
        Formula::Var(name.into())
    }

    pub fn meta(name: impl Into<String>) -> Self {
        Formula::Meta(name.into())
    }

    pub fn imp(left: Formula, right: Formula) -> Self {
        Formula::Imp(Box::new(left), Box::new(right))
    }

    pub fn join(left: Formula, right: Formula) -> Self {
        Formula::Join(Box::new(left), Box::new(right))
    }

    pub fn pos(inner: Formula) -> Self {
        Formula::Pos(Box::new(inner))
    }

    /// `x -> 0`, the group inverse.
    pub fn negation(inner: Formula) -> Self {
        Formula::imp(inner, Formula::Zero)
    }

    /// `((x -> 0) \/ (y -> 0)) -> 0`, the lattice meet.
    pub fn meet(left: Formula, right: Formula) -> Self {
        Formula::negation(Formula::join(
            Formula::negation(left),
            Formula::negation(right),
        ))
    }

    /// `(x -> 0) -> y`, the group sum.
    pub fn oplus(left: Formula, right: Formula) -> Self {
        Formula::imp(Formula::negation(left), right)
    }

    /// `x \/ 0`, the RL spelling of the positive part.
    pub fn positive_part(inner: Formula) -> Self {
        Formula::join(inner, Formula::Zero)
    }

    /// True when the formula contains no metavariables.
    pub fn is_ground(&self) -> bool {
        self.metavariables().is_empty()
    }

    /// True when every constructor belongs to the given language.
    pub fn fits(&self, logic: Logic) -> bool {
        match (self, logic) {
            (Formula::Var(_) | Formula::Meta(_), _) => true,
            (Formula::Imp(a, b), _) => a.fits(logic) && b.fits(logic),
            (Formula::Zero, Logic::Rl) => true,
            (Formula::Join(a, b), Logic::Rl) => a.fits(logic) && b.fits(logic),
            (Formula::Pos(a), Logic::Bal) => a.fits(logic),
            _ => false,
        }
    }

    /// Rewrites every `x ^+` into `x \/ 0`, yielding an RL formula.
    pub fn desugar_pos(&self) -> Formula {
        match self {
            Formula::Pos(a) => Formula::positive_part(a.desugar_pos()),
            Formula::Imp(a, b) => Formula::imp(a.desugar_pos(), b.desugar_pos()),
            Formula::Join(a, b) => Formula::join(a.desugar_pos(), b.desugar_pos()),
            other => other.clone(),
        }
    }

    /// Object variables in order of name.
    pub fn variables(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.visit_leaves(&mut |leaf| {
            if let Formula::Var(name) = leaf {
                out.insert(name.as_str());
            }
        });
        out
    }

    pub fn metavariables(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.visit_leaves(&mut |leaf| {
            if let Formula::Meta(name) = leaf {
                out.insert(name.as_str());
            }
        });
        out
    }

    /// Number of connectives (`->`, `\/`, `^+`).
    pub fn connectives(&self) -> usize {
        match self {
            Formula::Var(_) | Formula::Meta(_) | Formula::Zero => 0,
            Formula::Imp(a, b) | Formula::Join(a, b) => 1 + a.connectives() + b.connectives(),
            Formula::Pos(a) => 1 + a.connectives(),
        }
    }

    fn visit_leaves<'a>(&'a self, f: &mut impl FnMut(&'a Formula)) {
        match self {
            Formula::Imp(a, b) | Formula::Join(a, b) => {
                a.visit_leaves(f);
                b.visit_leaves(f);
            }
            Formula::Pos(a) => a.visit_leaves(f),
            leaf => f(leaf),
        }
    }
}

// Printing context: where a subformula sits relative to its parent.
#[derive(Clone, Copy, PartialEq)]
enum Slot {
    Top,
    ImpLeft,
    JoinLeft,
    JoinRight,
    PosInner,
}

fn write_in(formula: &Formula, slot: Slot, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match formula {
        Formula::Var(name) | Formula::Meta(name) => f.write_str(name),
        Formula::Zero => f.write_str("0"),
        Formula::Imp(a, b) => {
            let wrap = slot != Slot::Top;
            if wrap {
                f.write_str("(")?;
            }
            write_in(a, Slot::ImpLeft, f)?;
            f.write_str(" -> ")?;
            write_in(b, Slot::Top, f)?;
            if wrap {
                f.write_str(")")?;
            }
            Ok(())
        }
        Formula::Join(a, b) => {
            let wrap = matches!(slot, Slot::JoinRight | Slot::PosInner);
            if wrap {
                f.write_str("(")?;
            }
            write_in(a, Slot::JoinLeft, f)?;
            f.write_str(" \\/ ")?;
            write_in(b, Slot::JoinRight, f)?;
            if wrap {
                f.write_str(")")?;
            }
            Ok(())
        }
        Formula::Pos(a) => {
            write_in(a, Slot::PosInner, f)?;
            f.write_str(" ^+")
        }
    }
}

/// Canonical text with minimal parentheses: `->` is right-associative and
/// binds loosest, `\/` is left-associative, `^+` binds tightest.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_in(self, Slot::Top, f)
    }
}
