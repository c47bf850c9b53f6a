//! One synthesis run: explicit phase, symbolic phase, solving, optional
//! validation, with wall-clock timeout and statistics.

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::mpsc::{self, RecvTimeoutError};
use std::sync::Arc;
use std::thread::{self, JoinHandle};
use std::time::{Duration, Instant};

use posyn_core::automata::Automaton;
use posyn_core::game::{solve_reachability, validate_strategy, Strategy, Validation, Verdict, DEFAULT_PLAY_BUDGET};
use posyn_core::limits::DEFAULT_STATE_BUDGET;
use posyn_core::ltlf::{Formula, Partition};
use posyn_core::symbolic::{explicit_phase, symbolic_phase, Approach, ConstructionStats, NfaMode};
use posyn_core::Limits;

use crate::error::Error;
use crate::report::StatsRow;

pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(300);

#[derive(Clone, Debug)]
pub struct Options {
    pub approach: Approach,
    pub nfa_mode: NfaMode,
    pub timeout: Option<Duration>,
    pub state_budget: usize,
    /// Playout horizon for strategy validation.
    pub validate: Option<usize>,
    pub play_budget: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            approach: Approach::Belief,
            nfa_mode: NfaMode::default(),
            timeout: Some(DEFAULT_TIMEOUT),
            state_budget: DEFAULT_STATE_BUDGET,
            validate: None,
            play_budget: DEFAULT_PLAY_BUDGET,
        }
    }
}

/// Raises a cancellation flag once a deadline passes, unless dropped first.
pub struct Watchdog {
    stop: Option<mpsc::Sender<()>>,
    thread: Option<JoinHandle<()>>,
    flag: Arc<AtomicBool>,
}

impl Watchdog {
    pub fn arm(timeout: Option<Duration>) -> Watchdog {
        let flag = Arc::new(AtomicBool::new(false));
        let Some(timeout) = timeout else {
            return Watchdog { stop: None, thread: None, flag };
        };
        let (tx, rx) = mpsc::channel::<()>();
        let raised = flag.clone();
        let thread = thread::spawn(move || {
            if rx.recv_timeout(timeout) == Err(RecvTimeoutError::Timeout) {
                raised.store(true, Ordering::Relaxed);
            }
        });
        Watchdog { stop: Some(tx), thread: Some(thread), flag }
    }

    pub fn flag(&self) -> Arc<AtomicBool> {
        self.flag.clone()
    }

    pub fn fired(&self) -> bool {
        self.flag.load(Ordering::Relaxed)
    }
}

impl Drop for Watchdog {
    fn drop(&mut self) {
        drop(self.stop.take());
        if let Some(t) = self.thread.take() {
            let _ = t.join();
        }
    }
}

/// Measurements of one completed run.
#[derive(Clone, Debug)]
pub struct RunStats {
    pub instance: String,
    pub approach: Approach,
    /// Building the explicit automaton the approach starts from.
    pub explicit_ms: f64,
    pub explicit_states: usize,
    /// Symbolic construction plus fixpoint and strategy extraction.
    pub symbolic_ms: f64,
    /// Explicit phase plus symbolic construction, without solving.
    pub build_ms: f64,
    pub total_ms: f64,
    pub construction: ConstructionStats,
    /// Nodes shared by all transition and accepting predicates.
    pub dd_nodes: usize,
    /// Decision-diagram arena size after solving; a memory estimate.
    pub arena_nodes: usize,
    pub iterations: usize,
    pub verdict: Verdict,
}

impl RunStats {
    pub fn row(&self) -> StatsRow {
        StatsRow {
            instance: self.instance.clone(),
            approach: self.approach.as_str().into(),
            explicit_ms: self.explicit_ms,
            explicit_states: self.explicit_states,
            symbolic_ms: self.symbolic_ms,
            dd_nodes: self.dd_nodes,
            state_vars: self.construction.n_state_vars,
            iterations: self.iterations,
            verdict: self.verdict.as_str().into(),
        }
    }
}

pub struct Outcome {
    pub stats: RunStats,
    /// The automaton produced by the explicit phase.
    pub explicit: Automaton,
    pub strategy: Option<Strategy>,
    /// Present when validation was requested and the game is realizable.
    pub validation: Option<Result<Validation, posyn_core::Error>>,
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

pub fn synthesize(instance: &str, f: &Formula, p: &Partition, opts: &Options) -> Result<Outcome, Error> {
    let watchdog = Watchdog::arm(opts.timeout);
    let limits = Limits::with_state_budget(opts.state_budget).with_cancel(watchdog.flag());
    let timed_out = |e: posyn_core::Error| match e {
        posyn_core::Error::Interrupted if watchdog.fired() => Error::Timeout(opts.timeout.unwrap_or_default()),
        e => Error::Core(e),
    };

    let start = Instant::now();
    let explicit = explicit_phase(f, p, opts.approach, opts.nfa_mode, &limits).map_err(timed_out)?;
    let explicit_time = start.elapsed();
    limits.check().map_err(timed_out)?;
    let mut game = symbolic_phase(&explicit, p, opts.approach)?;
    let build_time = start.elapsed();
    let construction = game.stats();
    let mut roots = game.delta.clone();
    roots.push(game.accepting);
    let dd_nodes = game.mgr.node_count(&roots);
    let result = solve_reachability(&mut game, &limits).map_err(timed_out)?;
    let solved = start.elapsed();

    let validation = match (opts.validate, &result.strategy) {
        (Some(horizon), Some(s)) => Some(validate_strategy(s, f, p, horizon, opts.play_budget, &limits)),
        _ => None,
    };
    let stats = RunStats {
        instance: instance.to_string(),
        approach: opts.approach,
        explicit_ms: ms(explicit_time),
        explicit_states: explicit.n_states(),
        symbolic_ms: ms(solved - explicit_time),
        build_ms: ms(build_time),
        total_ms: ms(start.elapsed()),
        construction,
        dd_nodes,
        arena_nodes: game.mgr.arena_size(),
        iterations: result.iterations,
        verdict: result.verdict,
    };
    Ok(Outcome { stats, explicit, strategy: result.strategy, validation })
}
