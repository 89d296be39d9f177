//! Seeded random formulas for property tests and cross-checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::terms::{Formula, Logic};

const NAMES: [&str; 8] = ["a", "b", "c", "d", "e", "f", "g", "h"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenConfig {
    pub logic: Logic,
    /// Upper bound on connectives; the actual count is uniform in `0..=max`.
    pub max_connectives: usize,
    /// Variables are drawn from the first `variables` of `a`, `b`, `c`, ...
    pub variables: usize,
}

impl GenConfig {
    pub fn rl() -> Self {
        GenConfig {
            logic: Logic::Rl,
            max_connectives: 12,
            variables: 4,
        }
    }

    pub fn bal() -> Self {
        GenConfig {
            logic: Logic::Bal,
            ..Self::rl()
        }
    }
}

pub struct FormulaGenerator {
    rng: ChaCha8Rng,
    config: GenConfig,
}

impl FormulaGenerator {
    pub fn new(config: GenConfig, seed: u64) -> Self {
        assert!((1..=NAMES.len()).contains(&config.variables));
        FormulaGenerator {
            rng: ChaCha8Rng::seed_from_u64(seed),
            config,
        }
    }

    pub fn next_formula(&mut self) -> Formula {
        let size = self.rng.gen_range(0..=self.config.max_connectives);
        self.sized(size)
    }

    /// A formula with exactly `size` primitive connectives.
    pub fn sized(&mut self, size: usize) -> Formula {
        if size == 0 {
            return self.leaf();
        }
        match self.config.logic {
            Logic::Rl => {
                let (l, r) = self.split(size - 1);
                if self.rng.gen_bool(0.5) {
                    Formula::imp(l, r)
                } else {
                    Formula::join(l, r)
                }
            }
            Logic::Bal => {
                if self.rng.gen_bool(0.3) {
                    Formula::pos(self.sized(size - 1))
                } else {
                    let (l, r) = self.split(size - 1);
                    Formula::imp(l, r)
                }
            }
        }
    }

    fn split(&mut self, total: usize) -> (Formula, Formula) {
        let left = self.rng.gen_range(0..=total);
        (self.sized(left), self.sized(total - left))
    }

    fn leaf(&mut self) -> Formula {
        if self.config.logic == Logic::Rl && self.rng.gen_ratio(1, 6) {
            return Formula::Zero;
        }
        Formula::var(NAMES[self.rng.gen_range(0..self.config.variables)])
    }
}

impl Iterator for FormulaGenerator {
    type Item = Formula;

    fn next(&mut self) -> Option<Formula> {
        Some(self.next_formula())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn respects_bounds_and_language() {
        for config in [GenConfig::rl(), GenConfig::bal()] {
            for f in FormulaGenerator::new(config, 3).take(500) {
                assert!(f.connectives() <= 12);
                assert!(f.variables().len() <= 4);
                assert!(f.fits(config.logic), "{f}");
            }
        }
    }

    #[test]
    fn deterministic() {
        let a: Vec<_> = FormulaGenerator::new(GenConfig::rl(), 9).take(20).collect();
        let b: Vec<_> = FormulaGenerator::new(GenConfig::rl(), 9).take(20).collect();
        assert_eq!(a, b);
    }
}
