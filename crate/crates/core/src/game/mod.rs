//! Reachability games on symbolic DFAs.
//!
//! Each round the system fixes its outputs first and then the environment
//! picks the inputs, so the controllable predecessor of a set `W` is
//! `exists Y. forall Obs. W[Z <- delta]`. The winning region is the least
//! fixpoint `W_0 = accepting`, `W_{k+1} = W_k | cpre(W_k)`.

mod oracle;
mod validate;

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use hashbrown::HashMap;

pub use oracle::oracle_solve_explicit;
pub use validate::{validate_strategy, Validation, DEFAULT_PLAY_BUDGET};

use crate::bdd::{NodeId, VarId};
use crate::error::Error;
use crate::limits::Limits;
use crate::symbolic::SymbolicDfa;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Realizable,
    Unrealizable,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Realizable => "REALIZABLE",
            Verdict::Unrealizable => "UNREALIZABLE",
        }
    }

    pub fn from_bool(realizable: bool) -> Verdict {
        if realizable {
            Verdict::Realizable
        } else {
            Verdict::Unrealizable
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of [`solve_reachability`].
#[derive(Clone, Debug)]
pub struct GameResult {
    pub verdict: Verdict,
    /// Winning region over the state variables.
    pub winning: NodeId,
    /// Number of fixpoint steps that grew the region.
    pub iterations: usize,
    /// `layers[k]` is `W_k`.
    pub layers: Vec<NodeId>,
    /// `controllable[k]` is `forall Obs. W_k[Z <- delta]`, over states and outputs.
    pub controllable: Vec<NodeId>,
    pub strategy: Option<Strategy>,
}

/// A finite-state transducer over observations.
///
/// Memory states are game states. `next` is indexed by the observation
/// letter read as an integer, bit `i` holding `obs[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strategy {
    pub outputs: Vec<alloc::string::String>,
    pub obs: Vec<alloc::string::String>,
    pub initial: usize,
    pub states: Vec<StrategyState>,
    /// Fixpoint iterations of the game the strategy was extracted from.
    pub iterations: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrategyState {
    pub memory: Vec<bool>,
    /// Smallest `k` with the memory state in `W_k`.
    pub rank: usize,
    pub output: Vec<bool>,
    pub next: Vec<usize>,
}

impl Strategy {
    pub fn output(&self, state: usize) -> &[bool] {
        &self.states[state].output
    }

    /// Successor memory after observing `obs` (indexed like `self.obs`).
    pub fn update(&self, state: usize, obs: &[bool]) -> usize {
        self.states[state].next[obs_index(obs)]
    }
}

pub(crate) fn obs_index(obs: &[bool]) -> usize {
    obs.iter().enumerate().fold(0, |acc, (i, &b)| acc | (b as usize) << i)
}

fn bits(index: usize, n: usize) -> Vec<bool> {
    (0..n).map(|i| index >> i & 1 == 1).collect()
}

fn state_cube(g: &mut SymbolicDfa, state: &[bool]) -> NodeId {
    let lits: Vec<(VarId, bool)> = g.state_vars.iter().copied().zip(state.iter().copied()).collect();
    g.mgr.cube(&lits)
}

fn holds(g: &SymbolicDfa, f: NodeId, state: &[bool]) -> bool {
    let mut values = vec![false; g.mgr.var_count()];
    for (j, &v) in g.state_vars.iter().enumerate() {
        values[v.index()] = state[j];
    }
    g.mgr.eval_dense(f, &values)
}

/// Arena size above which the solver drops dead nodes between iterations.
const COMPACT_THRESHOLD: usize = 1 << 21;

/// Least-fixpoint solution without strategy extraction.
pub fn solve_fixpoint(g: &mut SymbolicDfa, limits: &Limits) -> Result<GameResult, Error> {
    let mut map: Vec<Option<NodeId>> = vec![None; g.mgr.var_count()];
    for (j, &z) in g.state_vars.iter().enumerate() {
        map[z.index()] = Some(g.delta[j]);
    }
    let obs = g.obs.clone();
    let outputs = g.outputs.clone();
    let mut layers = vec![g.accepting];
    let mut controllable = Vec::new();
    let mut w = g.accepting;
    loop {
        limits.check()?;
        let image = g.mgr.compose(w, &map);
        let c = g.mgr.forall(&obs, image);
        let pre = g.mgr.exists(&outputs, c);
        let next = g.mgr.or(w, pre);
        controllable.push(c);
        if next == w {
            break;
        }
        w = next;
        layers.push(w);
        if g.mgr.arena_size() > COMPACT_THRESHOLD {
            let mut roots = g.delta.clone();
            roots.push(g.accepting);
            roots.extend(&layers);
            roots.extend(&controllable);
            let moved = g.mgr.compact(&roots);
            let (d, rest) = moved.split_at(g.delta.len());
            g.delta = d.to_vec();
            g.accepting = rest[0];
            let (l, c) = rest[1..].split_at(layers.len());
            layers = l.to_vec();
            controllable = c.to_vec();
            w = *layers.last().unwrap();
            for (j, &z) in g.state_vars.iter().enumerate() {
                map[z.index()] = Some(g.delta[j]);
            }
        }
    }
    let iterations = layers.len() - 1;
    let initial = g.initial.clone();
    let verdict = Verdict::from_bool(holds(g, w, &initial));
    Ok(GameResult { verdict, winning: w, iterations, layers, controllable, strategy: None })
}

/// Solves the game and, when realizable, extracts a strategy.
pub fn solve_reachability(g: &mut SymbolicDfa, limits: &Limits) -> Result<GameResult, Error> {
    let mut result = solve_fixpoint(g, limits)?;
    if result.verdict == Verdict::Realizable {
        result.strategy = Some(extract_strategy(g, &result, limits)?);
    }
    Ok(result)
}

/// Strategy whose every move strictly lowers the fixpoint rank.
///
/// In a memory state of rank `r > 0` the output is the lexicographically
/// smallest assignment (first output most significant, false first) that
/// keeps every observable successor inside `W_{r-1}`. Rank-0 states have
/// already won; they emit all-false outputs and stay put. Only memory
/// states reachable under the strategy are enumerated.
pub fn extract_strategy(
    g: &mut SymbolicDfa,
    result: &GameResult,
    limits: &Limits,
) -> Result<Strategy, Error> {
    if !holds(g, result.winning, &g.initial) {
        return Err(Error::Unrealizable);
    }
    let n_obs = g.obs.len();
    let n_out = g.outputs.len();
    let mut index: HashMap<Vec<bool>, usize> = HashMap::new();
    let mut states: Vec<StrategyState> = Vec::new();
    index.insert(g.initial.clone(), 0);
    states.push(StrategyState { memory: g.initial.clone(), rank: 0, output: Vec::new(), next: Vec::new() });
    let mut cursor = 0;
    while cursor < states.len() {
        limits.check()?;
        let memory = states[cursor].memory.clone();
        let rank = result
            .layers
            .iter()
            .position(|&w| holds(g, w, &memory))
            .ok_or_else(|| Error::Automaton("strategy left the winning region".into()))?;
        let (output, next) = if rank == 0 {
            (vec![false; n_out], vec![cursor; 1 << n_obs])
        } else {
            let cube = state_cube(g, &memory);
            let here = g.mgr.and(result.controllable[rank - 1], cube);
            let outputs = g.outputs.clone();
            let output = g
                .mgr
                .pick_lex_min(here, &outputs)
                .ok_or_else(|| Error::Automaton("no output keeps the play winning".into()))?;
            let mut next = Vec::with_capacity(1 << n_obs);
            for o in 0..1usize << n_obs {
                let mut visible = output.clone();
                visible.extend(bits(o, n_obs));
                let succ = g.step(&memory, &visible);
                let id = match index.get(&succ) {
                    Some(&id) => id,
                    None => {
                        let id = states.len();
                        index.insert(succ.clone(), id);
                        states.push(StrategyState { memory: succ, rank: 0, output: Vec::new(), next: Vec::new() });
                        id
                    }
                };
                next.push(id);
            }
            (output, next)
        };
        let st = &mut states[cursor];
        st.rank = rank;
        st.output = output;
        st.next = next;
        cursor += 1;
    }
    Ok(Strategy {
        outputs: g.partition.outputs.clone(),
        obs: g.partition.obs.clone(),
        initial: 0,
        states,
        iterations: result.iterations,
    })
}
