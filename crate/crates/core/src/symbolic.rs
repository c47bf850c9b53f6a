//! Symbolic DFA games built from explicit automata.
//!
//! Three constructions produce a [`SymbolicDfa`] whose states are
//! assignments to state variables and whose accepting predicate holds
//! exactly on the states where every unobservable completion of the
//! observed history satisfies the specification:
//!
//! * projection: subset construction, one-hot, on the NFA of `!phi` with
//!   the unobservables projected out of every edge;
//! * belief: the same steps applied to the complement of the DFA of `phi`;
//! * quantified: the explicit minimal DFA of the universally quantified
//!   language, binary encoded.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::automata::{ltlf_to_nfa, Automaton, Kind};
use crate::bdd::{BddManager, NodeId, VarId};
use crate::error::Error;
use crate::limits::Limits;
use crate::ltlf::{Formula, Partition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Approach {
    Projection,
    Belief,
    Quantified,
}

impl Approach {
    pub const ALL: [Approach; 3] = [Approach::Belief, Approach::Projection, Approach::Quantified];

    pub fn as_str(self) -> &'static str {
        match self {
            Approach::Projection => "projection",
            Approach::Belief => "belief",
            Approach::Quantified => "quantified",
        }
    }
}

impl fmt::Display for Approach {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Approach {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Approach::ALL
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| Error::Parameter(alloc::format!("unknown approach `{s}`")))
    }
}

/// How the NFA of the negated specification is obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum NfaMode {
    /// The alternating-automaton NFA as compiled.
    Direct,
    /// Reverse, determinize and minimize, reverse again.
    #[default]
    ReverseCanonical,
}

impl NfaMode {
    pub fn as_str(self) -> &'static str {
        match self {
            NfaMode::Direct => "direct",
            NfaMode::ReverseCanonical => "reverse-canonical",
        }
    }
}

impl FromStr for NfaMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "direct" => Ok(NfaMode::Direct),
            "reverse-canonical" => Ok(NfaMode::ReverseCanonical),
            _ => Err(Error::Parameter(alloc::format!("unknown NFA mode `{s}`"))),
        }
    }
}

/// Sizes of a constructed game.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConstructionStats {
    pub approach: Approach,
    pub n_state_vars: usize,
    pub dd_nodes_transition: usize,
    pub dd_nodes_accepting: usize,
}

/// A deterministic game automaton over state variables.
///
/// The manager's variable order is: outputs, observable inputs,
/// unobservable inputs, then state variables with their primed copies
/// interleaved. `delta[j]` gives the next value of `state_vars[j]` and mentions
/// only state variables, outputs and observable inputs.
#[derive(Clone, Debug)]
pub struct SymbolicDfa {
    pub mgr: BddManager,
    pub approach: Approach,
    pub partition: Partition,
    pub state_vars: Vec<VarId>,
    pub next_vars: Vec<VarId>,
    pub outputs: Vec<VarId>,
    pub obs: Vec<VarId>,
    pub unobs: Vec<VarId>,
    pub delta: Vec<NodeId>,
    pub accepting: NodeId,
    pub initial: Vec<bool>,
}

impl SymbolicDfa {
    fn empty(n_state_vars: usize, p: &Partition, approach: Approach) -> SymbolicDfa {
        let mut mgr = BddManager::new();
        let mut register = |names: &[String]| -> Vec<VarId> {
            names.iter().map(|n| mgr.new_var(n)).collect()
        };
        let outputs = register(&p.outputs);
        let obs = register(&p.obs);
        let unobs = register(&p.unobs);
        let mut state_vars = Vec::with_capacity(n_state_vars);
        let mut next_vars = Vec::with_capacity(n_state_vars);
        for j in 0..n_state_vars {
            // `#` keeps these names disjoint from proposition identifiers.
            state_vars.push(mgr.new_var(&alloc::format!("#z{j}")));
            next_vars.push(mgr.new_var(&alloc::format!("#z{j}'")));
        }
        let zero = mgr.zero();
        SymbolicDfa {
            mgr,
            approach,
            partition: p.clone(),
            state_vars,
            next_vars,
            outputs,
            obs,
            unobs,
            delta: Vec::new(),
            accepting: zero,
            initial: vec![false; n_state_vars],
        }
    }

    /// Imports the edge predicates of `a` keyed by proposition name.
    fn import_edges(&mut self, a: &Automaton) -> Result<Vec<Vec<(usize, NodeId)>>, Error> {
        let mut map = Vec::with_capacity(a.alphabet().len());
        for name in a.alphabet() {
            let v = self.mgr.find_var(name).filter(|v| !self.is_state_var(*v)).ok_or_else(|| {
                Error::Partition(alloc::format!("`{name}` is not placed by the partition"))
            })?;
            map.push(v);
        }
        let roots: Vec<NodeId> =
            (0..a.n_states()).flat_map(|s| a.edges_from(s).iter().map(|&(_, p)| p)).collect();
        let imported = self.mgr.import_many(a.manager(), &roots, &|v| map[v.index()]);
        let mut it = imported.into_iter();
        Ok((0..a.n_states())
            .map(|s| a.edges_from(s).iter().map(|&(d, _)| (d, it.next().unwrap())).collect())
            .collect())
    }

    fn is_state_var(&self, v: VarId) -> bool {
        self.state_vars.contains(&v) || self.next_vars.contains(&v)
    }

    /// The visible letter order: outputs, then observable inputs.
    pub fn visible(&self) -> Vec<String> {
        self.partition.outputs.iter().chain(&self.partition.obs).cloned().collect()
    }

    pub fn n_state_vars(&self) -> usize {
        self.state_vars.len()
    }

    fn dense(&self, state: &[bool], visible: &[bool]) -> Vec<bool> {
        let mut values = vec![false; self.mgr.var_count()];
        for (j, &v) in self.state_vars.iter().enumerate() {
            values[v.index()] = state[j];
        }
        for (i, &v) in self.outputs.iter().chain(&self.obs).enumerate() {
            values[v.index()] = visible[i];
        }
        values
    }

    /// Successor state on a visible letter (outputs then observable inputs).
    pub fn step(&self, state: &[bool], visible: &[bool]) -> Vec<bool> {
        let values = self.dense(state, visible);
        self.delta.iter().map(|&d| self.mgr.eval_dense(d, &values)).collect()
    }

    pub fn is_accepting(&self, state: &[bool]) -> bool {
        let values = self.dense(state, &vec![false; self.outputs.len() + self.obs.len()]);
        self.mgr.eval_dense(self.accepting, &values)
    }

    /// Whether the state reached on `word` from the initial state accepts.
    pub fn accepts<L: AsRef<[bool]>>(&self, word: &[L]) -> bool {
        let mut state = self.initial.clone();
        for letter in word {
            state = self.step(&state, letter.as_ref());
        }
        self.is_accepting(&state)
    }

    /// The transition relation `AND_j (z_j' <-> delta_j)`.
    pub fn transition_relation(&mut self) -> NodeId {
        let mut rel = self.mgr.one();
        for j in (0..self.delta.len()).rev() {
            let next = self.mgr.var(self.next_vars[j]);
            let eq = self.mgr.iff(next, self.delta[j]);
            rel = self.mgr.and(rel, eq);
        }
        rel
    }

    /// Union of the supports of the transition and accepting predicates.
    pub fn support(&self) -> alloc::collections::BTreeSet<VarId> {
        let mut out = self.mgr.support(self.accepting);
        for &d in &self.delta {
            out.extend(self.mgr.support(d));
        }
        out
    }

    pub fn stats(&self) -> ConstructionStats {
        ConstructionStats {
            approach: self.approach,
            n_state_vars: self.state_vars.len(),
            dd_nodes_transition: self.mgr.node_count(&self.delta),
            dd_nodes_accepting: self.mgr.node_count(&[self.accepting]),
        }
    }

    /// Equality of all transition and accepting predicates, compared after
    /// importing `other` into this game's manager. Variable sets must match.
    pub fn same_predicates(&self, other: &SymbolicDfa) -> bool {
        if self.mgr.var_count() != other.mgr.var_count() || self.initial != other.initial {
            return false;
        }
        if (0..self.mgr.var_count())
            .any(|i| self.mgr.var_name(VarId(i as u32)) != other.mgr.var_name(VarId(i as u32)))
        {
            return false;
        }
        let mut mgr = self.mgr.clone();
        let mut roots = other.delta.clone();
        roots.push(other.accepting);
        let theirs = mgr.import_many(&other.mgr, &roots, &|v| v);
        let mut mine = self.delta.clone();
        mine.push(self.accepting);
        mine == theirs
    }
}

fn check_alphabet(a: &Automaton, p: &Partition) -> Result<(), Error> {
    if let Some(missing) = p.alphabet().into_iter().find(|n| !a.alphabet().contains(n)) {
        return Err(Error::Partition(alloc::format!(
            "`{missing}` is not in the automaton alphabet"
        )));
    }
    Ok(())
}

/// Subset construction over one-hot state variables, with the
/// unobservable inputs projected away.
///
/// `nfa` must recognize the negated specification. The accepting
/// predicate holds on subsets that contain no accepting state. When the
/// initial state rejects, a singleton subset of it would otherwise count
/// as winning before any letter is read; the initial state is made
/// non-reentrant and its variable excluded from the accepting predicate.
pub fn projection_construction(nfa: &Automaton, p: &Partition) -> Result<SymbolicDfa, Error> {
    check_alphabet(nfa, p)?;
    let exclude_initial = !nfa.is_accepting(nfa.initial());
    let nfa = if exclude_initial { nfa.isolate_initial() } else { nfa.clone() };
    build_subset_game(&nfa, p, Approach::Projection, exclude_initial)
}

fn build_subset_game(
    nfa: &Automaton,
    p: &Partition,
    approach: Approach,
    exclude_initial: bool,
) -> Result<SymbolicDfa, Error> {
    let n = nfa.n_states();
    let mut g = SymbolicDfa::empty(n, p, approach);
    let edges = g.import_edges(nfa)?;
    let unobs = g.unobs.clone();
    let mut delta = vec![g.mgr.zero(); n];
    for (i, out) in edges.iter().enumerate() {
        let zi = g.mgr.var(g.state_vars[i]);
        for &(j, t) in out {
            let visible = g.mgr.exists(&unobs, t);
            let term = g.mgr.and(zi, visible);
            delta[j] = g.mgr.or(delta[j], term);
        }
    }
    g.delta = delta;
    let finals: Vec<NodeId> = nfa.accepting_states().map(|s| g.mgr.var(g.state_vars[s])).collect();
    let any_final = g.mgr.or_all(finals);
    let mut accepting = g.mgr.not(any_final);
    if exclude_initial {
        let z0 = g.mgr.nvar(g.state_vars[nfa.initial()]);
        accepting = g.mgr.and(accepting, z0);
    }
    g.accepting = accepting;
    g.initial[nfa.initial()] = true;
    Ok(g)
}

/// Belief-state game of a complete DFA for the specification: the
/// projection construction applied to its complement.
pub fn belief_construction(dfa: &Automaton, p: &Partition) -> Result<SymbolicDfa, Error> {
    check_alphabet(dfa, p)?;
    let co = dfa.complement()?.into_nfa();
    // The complement accepts the empty word, so no initial-state exclusion.
    let exclude = !co.is_accepting(co.initial());
    let co = if exclude { co.isolate_initial() } else { co };
    build_subset_game(&co, p, Approach::Belief, exclude)
}

/// Minimal DFA over outputs and observable inputs accepting the words all
/// of whose unobservable extensions are accepted by `dfa`.
///
/// Complement, then per unobservable in declaration order project and
/// determinize-minimize, then complement again.
pub fn quantified_construction(
    dfa: &Automaton,
    p: &Partition,
    limits: &Limits,
) -> Result<Automaton, Error> {
    check_alphabet(dfa, p)?;
    let mut a = dfa.complement()?;
    for u in &p.unobs {
        limits.check()?;
        a = a.project(&[u.clone()])?.determinize_minimize(limits)?;
    }
    a.complement()
}

/// Binary encoding of a complete DFA with `ceil(log2 n)` state variables;
/// state `i` is encoded with bit `j` of `i` on variable `j`.
pub fn log_encode(dfa: &Automaton, p: &Partition) -> Result<SymbolicDfa, Error> {
    if dfa.kind() != Kind::Dfa {
        return Err(Error::Automaton("log encoding requires a DFA".into()));
    }
    let n = dfa.n_states();
    let bits = (usize::BITS - (n.max(1) - 1).leading_zeros()) as usize;
    let mut g = SymbolicDfa::empty(bits, p, Approach::Quantified);
    let edges = g.import_edges(dfa)?;
    let codes: Vec<NodeId> = (0..n)
        .map(|i| {
            let lits: Vec<(VarId, bool)> =
                (0..bits).map(|j| (g.state_vars[j], i >> j & 1 == 1)).collect();
            g.mgr.cube(&lits)
        })
        .collect();
    let mut delta = vec![g.mgr.zero(); bits];
    for (i, out) in edges.iter().enumerate() {
        for &(k, t) in out {
            let term = g.mgr.and(codes[i], t);
            for (j, d) in delta.iter_mut().enumerate() {
                if k >> j & 1 == 1 {
                    *d = g.mgr.or(*d, term);
                }
            }
        }
    }
    if let Some(u) = delta.iter().flat_map(|&d| g.mgr.support(d)).find(|v| g.unobs.contains(v)) {
        return Err(Error::Automaton(alloc::format!(
            "transition depends on unobservable `{}`",
            g.mgr.var_name(u)
        )));
    }
    g.delta = delta;
    let finals: Vec<NodeId> = dfa.accepting_states().map(|i| codes[i]).collect();
    g.accepting = g.mgr.or_all(finals);
    g.initial = (0..bits).map(|j| dfa.initial() >> j & 1 == 1).collect();
    Ok(g)
}

/// NFA of the negated specification over the partition alphabet.
pub fn negated_nfa(
    f: &Formula,
    p: &Partition,
    mode: NfaMode,
    limits: &Limits,
) -> Result<Automaton, Error> {
    let neg = Formula::not(f.clone());
    let nfa = ltlf_to_nfa(&neg, &p.alphabet(), limits)?;
    match mode {
        NfaMode::Direct => Ok(nfa),
        NfaMode::ReverseCanonical => Ok(nfa.reverse().determinize_minimize(limits)?.reverse()),
    }
}

/// Minimal complete DFA of the specification over the partition alphabet.
pub fn spec_dfa(f: &Formula, p: &Partition, limits: &Limits) -> Result<Automaton, Error> {
    ltlf_to_nfa(f, &p.alphabet(), limits)?.determinize_minimize(limits)
}

/// The explicit automaton each approach starts its symbolic phase from:
/// the negated NFA, the specification DFA, or the quantified DFA.
pub fn explicit_phase(
    f: &Formula,
    p: &Partition,
    approach: Approach,
    mode: NfaMode,
    limits: &Limits,
) -> Result<Automaton, Error> {
    p.check_covers(f)?;
    match approach {
        Approach::Projection => negated_nfa(f, p, mode, limits),
        Approach::Belief => spec_dfa(f, p, limits),
        Approach::Quantified => quantified_construction(&spec_dfa(f, p, limits)?, p, limits),
    }
}

/// Game for `approach` from the automaton returned by [`explicit_phase`].
pub fn symbolic_phase(
    a: &Automaton,
    p: &Partition,
    approach: Approach,
) -> Result<SymbolicDfa, Error> {
    match approach {
        Approach::Projection => projection_construction(a, p),
        Approach::Belief => belief_construction(a, p),
        Approach::Quantified => log_encode(a, p),
    }
}

/// Both phases in sequence.
pub fn build_game(
    f: &Formula,
    p: &Partition,
    approach: Approach,
    mode: NfaMode,
    limits: &Limits,
) -> Result<SymbolicDfa, Error> {
    let a = explicit_phase(f, p, approach, mode, limits)?;
    limits.check()?;
    symbolic_phase(&a, p, approach)
}

impl fmt::Display for ConstructionStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} state vars, {} transition nodes, {} accepting nodes",
            self.approach, self.n_state_vars, self.dd_nodes_transition, self.dd_nodes_accepting
        )
    }
}

impl fmt::Display for NfaMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}
