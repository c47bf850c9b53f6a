//! Exhaustive bounded playout of a strategy against every input sequence.

use alloc::vec::Vec;

use super::Strategy;
use crate::error::Error;
use crate::limits::Limits;
use crate::ltlf::{Assignment, Evaluator, Formula, Partition, Trace};

/// Default cap on the number of complete plays examined.
pub const DEFAULT_PLAY_BUDGET: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Validation {
    /// Every play reached a satisfying prefix within the horizon.
    pub passed: bool,
    /// Plays examined, each ending at a satisfying prefix or at the horizon.
    pub plays: u64,
    /// The horizon is below the game's fixpoint iteration count, so a pass
    /// certifies less than the strategy promises.
    pub horizon_too_small: bool,
    /// A play of maximal length with no satisfying prefix.
    pub counterexample: Option<Trace>,
}

struct Playout<'a> {
    strategy: &'a Strategy,
    eval: Evaluator,
    n_inputs: usize,
    n_obs: usize,
    horizon: usize,
    budget: u64,
    plays: u64,
    word: Vec<Vec<bool>>,
    limits: &'a Limits,
}

impl Playout<'_> {
    /// Returns false when some continuation from `memory` fails.
    fn explore(&mut self, memory: usize) -> Result<bool, Error> {
        if self.word.len() == self.horizon {
            self.count()?;
            return Ok(false);
        }
        if self.plays & 0xfff == 0 {
            self.limits.check()?;
        }
        let output = self.strategy.output(memory).to_vec();
        for x in 0..1usize << self.n_inputs {
            let inputs: Vec<bool> = (0..self.n_inputs).map(|i| x >> i & 1 == 1).collect();
            let mut letter = output.clone();
            letter.extend_from_slice(&inputs);
            self.word.push(letter);
            if self.eval.eval(&self.word) {
                self.count()?;
            } else {
                let next = self.strategy.update(memory, &inputs[..self.n_obs]);
                if !self.explore(next)? {
                    return Ok(false);
                }
            }
            self.word.pop();
        }
        Ok(true)
    }

    fn count(&mut self) -> Result<(), Error> {
        self.plays += 1;
        if self.plays > self.budget {
            return Err(Error::PlayBudget(self.budget));
        }
        Ok(())
    }
}

/// Plays `strategy` against every sequence of observable and unobservable
/// inputs up to `horizon` letters, stopping each play at its first prefix
/// that satisfies `spec`.
///
/// Fails with [`Error::PlayBudget`] when more than `budget` plays would be
/// needed.
pub fn validate_strategy(
    strategy: &Strategy,
    spec: &Formula,
    p: &Partition,
    horizon: usize,
    budget: u64,
    limits: &Limits,
) -> Result<Validation, Error> {
    if strategy.outputs != p.outputs || strategy.obs != p.obs {
        return Err(Error::Partition("strategy does not match the partition".into()));
    }
    p.check_covers(spec)?;
    let alphabet = p.alphabet();
    let mut run = Playout {
        strategy,
        eval: Evaluator::new(spec, &alphabet)?,
        n_inputs: p.obs.len() + p.unobs.len(),
        n_obs: p.obs.len(),
        horizon,
        budget,
        plays: 0,
        word: Vec::with_capacity(horizon),
        limits,
    };
    let passed = run.explore(strategy.initial)?;
    let counterexample = (!passed).then(|| {
        run.word
            .iter()
            .map(|letter| alphabet.iter().cloned().zip(letter.iter().copied()).collect::<Assignment>())
            .collect()
    });
    Ok(Validation {
        passed,
        plays: run.plays,
        horizon_too_small: horizon < strategy.iterations,
        counterexample,
    })
}

#[cfg(test)]
mod tests {
    use super::super::{solve_reachability, StrategyState};
    use super::*;
    use crate::ltlf::{eval_trace, parse};
    use crate::symbolic::{build_game, NfaMode};
    use alloc::string::{String, ToString};
    use alloc::vec;

    fn names(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn extracted_strategies_pass() {
        let p = Partition::new(names(&["o"]), names(&["u"]), names(&["y", "z"])).unwrap();
        for text in ["F(o -> X y)", "G !o | F(o & X y)", "G(o -> X y) -> F(z & X !z)", "F(y & X z)"] {
            let f = parse(text).unwrap();
            for approach in crate::symbolic::Approach::ALL {
                let mut g = build_game(&f, &p, approach, NfaMode::default(), &Limits::default()).unwrap();
                let r = solve_reachability(&mut g, &Limits::default()).unwrap();
                let s = r.strategy.expect("realizable");
                let v = validate_strategy(&s, &f, &p, r.iterations + 2, DEFAULT_PLAY_BUDGET, &Limits::default())
                    .unwrap();
                assert!(v.passed && !v.horizon_too_small, "{text} {approach}");
            }
        }
    }

    #[test]
    fn a_losing_strategy_fails_with_a_counterexample() {
        let p = Partition::new(names(&["o"]), vec![], names(&["y"])).unwrap();
        let f = parse("X(y <-> o)").unwrap();
        let s = Strategy {
            outputs: names(&["y"]),
            obs: names(&["o"]),
            initial: 0,
            states: vec![StrategyState { memory: vec![], rank: 1, output: vec![true], next: vec![0, 0] }],
            iterations: 1,
        };
        let v = validate_strategy(&s, &f, &p, 3, DEFAULT_PLAY_BUDGET, &Limits::default()).unwrap();
        assert!(!v.passed);
        let trace = v.counterexample.unwrap();
        assert_eq!(trace.len(), 3);
        for k in 1..=3 {
            assert!(!eval_trace(&f, &trace[..k]).unwrap());
        }
        let v = validate_strategy(&s, &f, &p, 0, DEFAULT_PLAY_BUDGET, &Limits::default()).unwrap();
        assert!(v.horizon_too_small && !v.passed);
    }

    #[test]
    fn play_budget_is_enforced() {
        let p = Partition::new(names(&["a", "b"]), vec![], names(&["y"])).unwrap();
        let f = parse("X X X X X X X X X X X y").unwrap();
        let s = Strategy {
            outputs: names(&["y"]),
            obs: names(&["a", "b"]),
            initial: 0,
            states: vec![StrategyState { memory: vec![], rank: 1, output: vec![true], next: vec![0; 4] }],
            iterations: 1,
        };
        assert_eq!(
            validate_strategy(&s, &f, &p, 12, 1000, &Limits::default()).unwrap_err(),
            Error::PlayBudget(1000)
        );
    }
}
