//! Explicit finite automata over propositional alphabets.
//!
//! States are enumerated; each ordered state pair carries at most one edge
//! predicate, a decision diagram over the alphabet propositions. Every
//! automaton owns a private [`BddManager`] whose variables are exactly its
//! alphabet, in order. Operations never mutate their input: they return a
//! new automaton backed by a freshly compacted manager.

mod compile;
mod determinize;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use hashbrown::HashMap;

pub use compile::ltlf_to_nfa;

use crate::bdd::{BddManager, NodeId, VarId};
use crate::error::Error;
use crate::limits::Limits;
use crate::ltlf::Assignment;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Nfa,
    Dfa,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Nfa => "NFA",
            Kind::Dfa => "DFA",
        }
    }
}

/// An NFA or DFA with edge predicates over `alphabet`.
#[derive(Clone, Debug)]
pub struct Automaton {
    kind: Kind,
    alphabet: Vec<String>,
    mgr: BddManager,
    initial: usize,
    accepting: Vec<bool>,
    // Per source state, `(destination, predicate)` sorted by destination.
    edges: Vec<Vec<(usize, NodeId)>>,
}

/// Incremental construction of an [`Automaton`].
pub struct Builder {
    pub mgr: BddManager,
    alphabet: Vec<String>,
    initial: usize,
    accepting: Vec<bool>,
    edges: Vec<BTreeMap<usize, NodeId>>,
}

impl Builder {
    pub fn new(alphabet: &[String]) -> Self {
        Builder {
            mgr: BddManager::with_vars(alphabet),
            alphabet: alphabet.to_vec(),
            initial: 0,
            accepting: Vec::new(),
            edges: Vec::new(),
        }
    }

    pub fn add_state(&mut self, accepting: bool) -> usize {
        self.accepting.push(accepting);
        self.edges.push(BTreeMap::new());
        self.accepting.len() - 1
    }

    pub fn set_initial(&mut self, s: usize) {
        self.initial = s;
    }

    pub fn set_accepting(&mut self, s: usize, accepting: bool) {
        self.accepting[s] = accepting;
    }

    /// Positive literal for an alphabet proposition. Panics on unknown names.
    pub fn lit(&mut self, name: &str) -> NodeId {
        let v = self.mgr.find_var(name).expect("proposition not in alphabet");
        self.mgr.var(v)
    }

    /// Adds `pred` to the edge `src -> dst`, OR-ing with any existing predicate.
    pub fn add_edge(&mut self, src: usize, dst: usize, pred: NodeId) {
        if self.mgr.is_false(pred) {
            return;
        }
        let merged = match self.edges[src].get(&dst) {
            Some(&old) => self.mgr.or(old, pred),
            None => pred,
        };
        self.edges[src].insert(dst, merged);
    }

    fn finish(self, kind: Kind) -> Automaton {
        Automaton {
            kind,
            alphabet: self.alphabet,
            mgr: self.mgr,
            initial: self.initial,
            accepting: self.accepting,
            edges: self.edges.into_iter().map(|m| m.into_iter().collect()).collect(),
        }
    }

    pub fn build_nfa(self) -> Automaton {
        self.finish(Kind::Nfa)
    }

    /// Fails unless every state has exactly one enabled edge per letter.
    pub fn build_dfa(self) -> Result<Automaton, Error> {
        let mut a = self.finish(Kind::Dfa);
        a.check_deterministic()?;
        Ok(a)
    }
}

impl Automaton {
    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn n_states(&self) -> usize {
        self.accepting.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_accepting(&self, s: usize) -> bool {
        self.accepting[s]
    }

    pub fn accepting_states(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n_states()).filter(|&s| self.accepting[s])
    }

    /// Outgoing `(destination, predicate)` pairs of `s`.
    pub fn edges_from(&self, s: usize) -> &[(usize, NodeId)] {
        &self.edges[s]
    }

    /// The predicate on `src -> dst`, if any letter enables that edge.
    pub fn edge(&self, src: usize, dst: usize) -> Option<NodeId> {
        self.edges[src].iter().find(|(d, _)| *d == dst).map(|&(_, p)| p)
    }

    pub fn n_edges(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }

    /// Manager holding the edge predicates; its variables are the alphabet.
    pub fn manager(&self) -> &BddManager {
        &self.mgr
    }

    /// Sum-of-products text of an edge predicate.
    pub fn pred_text(&self, pred: NodeId) -> String {
        self.mgr.to_sop(pred)
    }

    /// Same automaton, relabelled as an NFA.
    pub fn into_nfa(mut self) -> Automaton {
        self.kind = Kind::Nfa;
        self
    }

    fn alphabet_var(&self, name: &str) -> Result<VarId, Error> {
        self.mgr
            .find_var(name)
            .ok_or_else(|| Error::Automaton(alloc::format!("`{name}` is not in the alphabet")))
    }

    /// Verifies the DFA invariant: per state, edge predicates are pairwise
    /// disjoint and cover every letter.
    pub fn check_deterministic(&mut self) -> Result<(), Error> {
        for s in 0..self.n_states() {
            let mut covered = self.mgr.zero();
            for &(_, p) in &self.edges[s] {
                let overlap = self.mgr.and(covered, p);
                if !self.mgr.is_false(overlap) {
                    return Err(Error::Automaton(alloc::format!(
                        "state {s} has overlapping edges"
                    )));
                }
                covered = self.mgr.or(covered, p);
            }
            if !self.mgr.is_true(covered) {
                return Err(Error::Automaton(alloc::format!("state {s} is incomplete")));
            }
        }
        Ok(())
    }

    /// Rebuilds the automaton over a fresh manager holding only live nodes,
    /// keeping the states in `keep` (renumbered in order).
    fn rebuild(&self, kind: Kind, keep: &[usize], alphabet: &[String]) -> Automaton {
        let mut index = vec![usize::MAX; self.n_states()];
        for (new, &old) in keep.iter().enumerate() {
            index[old] = new;
        }
        let remap: Vec<u32> = self
            .alphabet
            .iter()
            .map(|p| alphabet.iter().position(|q| q == p).map_or(u32::MAX, |i| i as u32))
            .collect();
        let mut mgr = BddManager::with_vars(alphabet);
        let mut roots = Vec::new();
        for &old in keep {
            for &(d, p) in &self.edges[old] {
                if index[d] != usize::MAX {
                    roots.push(p);
                }
            }
        }
        let imported = mgr.import_many(&self.mgr, &roots, &|v| VarId(remap[v.index()]));
        let mut it = imported.into_iter();
        let mut edges = Vec::with_capacity(keep.len());
        for &old in keep {
            let mut out = Vec::new();
            for &(d, _) in &self.edges[old] {
                if index[d] != usize::MAX {
                    out.push((index[d], it.next().unwrap()));
                }
            }
            out.sort_by_key(|e| e.0);
            edges.push(out);
        }
        Automaton {
            kind,
            alphabet: alphabet.to_vec(),
            mgr,
            initial: index[self.initial],
            accepting: keep.iter().map(|&s| self.accepting[s]).collect(),
            edges,
        }
    }

    fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.n_states()];
        let mut stack = vec![self.initial];
        seen[self.initial] = true;
        while let Some(s) = stack.pop() {
            for &(d, _) in &self.edges[s] {
                if !seen[d] {
                    seen[d] = true;
                    stack.push(d);
                }
            }
        }
        seen
    }

    /// Removes states that are unreachable or cannot reach acceptance. The
    /// initial state is always kept. Only meaningful for NFAs: a trimmed DFA
    /// may become incomplete.
    pub fn trim(&self) -> Automaton {
        let fwd = self.reachable();
        let mut preds: Vec<Vec<usize>> = vec![Vec::new(); self.n_states()];
        for s in 0..self.n_states() {
            for &(d, _) in &self.edges[s] {
                preds[d].push(s);
            }
        }
        let mut bwd = self.accepting.clone();
        let mut stack: Vec<usize> = self.accepting_states().collect();
        while let Some(s) = stack.pop() {
            for &p in &preds[s] {
                if !bwd[p] {
                    bwd[p] = true;
                    stack.push(p);
                }
            }
        }
        let keep: Vec<usize> =
            (0..self.n_states()).filter(|&s| s == self.initial || (fwd[s] && bwd[s])).collect();
        self.rebuild(Kind::Nfa, &keep, &self.alphabet)
    }

    /// Automaton for the reversed language.
    ///
    /// With exactly one accepting state that state becomes initial;
    /// otherwise a fresh initial state receives copies of the reversed edges
    /// leaving the accepting states. The result is trimmed.
    pub fn reverse(&self) -> Automaton {
        let n = self.n_states();
        let mut b = Builder {
            mgr: self.mgr.clone(),
            alphabet: self.alphabet.clone(),
            initial: 0,
            accepting: vec![false; n],
            edges: vec![BTreeMap::new(); n],
        };
        b.accepting[self.initial] = true;
        for s in 0..n {
            for &(d, p) in &self.edges[s] {
                b.add_edge(d, s, p);
            }
        }
        let finals: Vec<usize> = self.accepting_states().collect();
        if finals.len() == 1 {
            b.initial = finals[0];
        } else {
            let fresh = b.add_state(self.accepting[self.initial]);
            for s in 0..n {
                for &(d, p) in &self.edges[s] {
                    if self.accepting[d] {
                        b.add_edge(fresh, s, p);
                    }
                }
            }
            b.initial = fresh;
        }
        b.build_nfa().trim()
    }

    /// Same language with an initial state that has no incoming edges. When
    /// the initial state is re-entered, a fresh copy of it becomes initial.
    pub fn isolate_initial(&self) -> Automaton {
        let reentered = self.edges.iter().any(|out| out.iter().any(|&(d, _)| d == self.initial));
        let mut out = self.clone();
        if reentered {
            out.accepting.push(self.accepting[self.initial]);
            out.edges.push(self.edges[self.initial].clone());
            out.initial = self.n_states();
        }
        out
    }

    /// Complement of a complete DFA: accepting states are flipped.
    pub fn complement(&self) -> Result<Automaton, Error> {
        if self.kind != Kind::Dfa {
            return Err(Error::Automaton("complement requires a DFA".into()));
        }
        let mut out = self.clone();
        out.check_deterministic()?;
        for acc in &mut out.accepting {
            *acc = !*acc;
        }
        Ok(out)
    }

    /// Existentially quantifies `vars` out of every edge predicate and drops
    /// them from the alphabet. The result is an NFA.
    pub fn project(&self, vars: &[String]) -> Result<Automaton, Error> {
        let qvars: Vec<VarId> =
            vars.iter().map(|v| self.alphabet_var(v)).collect::<Result<_, _>>()?;
        let mut tmp = self.clone();
        for s in 0..tmp.n_states() {
            for e in 0..tmp.edges[s].len() {
                let p = tmp.edges[s][e].1;
                tmp.edges[s][e].1 = tmp.mgr.exists(&qvars, p);
            }
        }
        let alphabet: Vec<String> =
            self.alphabet.iter().filter(|p| !vars.contains(p)).cloned().collect();
        let keep: Vec<usize> = (0..self.n_states()).collect();
        Ok(tmp.rebuild(Kind::Nfa, &keep, &alphabet))
    }

    /// Subset construction followed by minimization.
    pub fn determinize_minimize(&self, limits: &Limits) -> Result<Automaton, Error> {
        let d = self.determinize(limits)?;
        d.minimize(limits)
    }

    /// Membership of a word whose letters are indexed like the alphabet.
    pub fn run_word<L: AsRef<[bool]>>(&self, word: &[L]) -> Result<bool, Error> {
        let mut current = vec![false; self.n_states()];
        current[self.initial] = true;
        for letter in word {
            let letter = letter.as_ref();
            if letter.len() != self.alphabet.len() {
                return Err(Error::Automaton(alloc::format!(
                    "letter assigns {} of {} propositions",
                    letter.len(),
                    self.alphabet.len()
                )));
            }
            let mut next = vec![false; self.n_states()];
            for (s, _) in current.iter().enumerate().filter(|(_, on)| **on) {
                for &(d, p) in &self.edges[s] {
                    if !next[d] && self.mgr.eval_dense(p, letter) {
                        next[d] = true;
                    }
                }
            }
            current = next;
        }
        Ok(current.iter().zip(&self.accepting).any(|(on, acc)| *on && *acc))
    }

    /// Membership of a trace given by named assignments.
    pub fn accepts_trace(&self, trace: &[Assignment]) -> Result<bool, Error> {
        let mut word = Vec::with_capacity(trace.len());
        for a in trace {
            let mut letter = Vec::with_capacity(self.alphabet.len());
            for p in &self.alphabet {
                letter.push(*a.get(p).ok_or_else(|| Error::MissingProposition(p.clone()))?);
            }
            word.push(letter);
        }
        self.run_word(&word)
    }

    /// The unique successor of `s` on a letter, for DFAs.
    pub fn step(&self, s: usize, letter: &[bool]) -> Option<usize> {
        self.edges[s].iter().find(|(_, p)| self.mgr.eval_dense(*p, letter)).map(|&(d, _)| d)
    }

    /// Structural equality of two DFAs up to state renaming, starting from
    /// the initial states. Both must share the same alphabet.
    pub fn is_isomorphic(&self, other: &Automaton) -> bool {
        if self.alphabet != other.alphabet || self.n_states() != other.n_states() {
            return false;
        }
        let mut mgr = BddManager::with_vars(&self.alphabet);
        let id = |v: VarId| v;
        let mut map: HashMap<usize, usize> = HashMap::new();
        let mut used = vec![false; other.n_states()];
        let mut stack = vec![(self.initial, other.initial)];
        map.insert(self.initial, other.initial);
        used[other.initial] = true;
        while let Some((s, t)) = stack.pop() {
            if self.accepting[s] != other.accepting[t]
                || self.edges[s].len() != other.edges[t].len()
            {
                return false;
            }
            let mine: Vec<(usize, NodeId)> = self.edges[s]
                .iter()
                .map(|&(d, p)| (d, mgr.import(&self.mgr, p, &id)))
                .collect();
            let theirs: Vec<(usize, NodeId)> = other.edges[t]
                .iter()
                .map(|&(d, p)| (d, mgr.import(&other.mgr, p, &id)))
                .collect();
            for (d, p) in mine {
                let Some(&(d2, _)) = theirs.iter().find(|(_, q)| *q == p) else {
                    return false;
                };
                match map.get(&d) {
                    Some(&m) if m != d2 => return false,
                    Some(_) => {}
                    None => {
                        if used[d2] {
                            return false;
                        }
                        used[d2] = true;
                        map.insert(d, d2);
                        stack.push((d, d2));
                    }
                }
            }
        }
        map.len() == self.reachable().iter().filter(|r| **r).count()
    }

    /// Language equality, decided on minimal DFAs.
    pub fn same_language(&self, other: &Automaton, limits: &Limits) -> Result<bool, Error> {
        let a = self.determinize_minimize(limits)?;
        let b = other.determinize_minimize(limits)?;
        Ok(a.is_isomorphic(&b))
    }

    /// Graphviz rendering; accepting states are double circles and edges are
    /// labelled with sum-of-products predicates.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph automaton {\n  rankdir=LR;\n  init [shape=point];\n");
        for q in 0..self.n_states() {
            let shape = if self.accepting[q] { "doublecircle" } else { "circle" };
            let _ = writeln!(s, "  s{q} [shape={shape},label=\"{q}\"];");
        }
        let _ = writeln!(s, "  init -> s{};", self.initial);
        for q in 0..self.n_states() {
            for &(d, p) in &self.edges[q] {
                let _ = writeln!(s, "  s{q} -> s{d} [label=\"{}\"];", self.mgr.to_sop(p));
            }
        }
        s.push_str("}\n");
        s
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use alloc::string::ToString;

    pub(crate) fn names(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    /// Every word over `k` propositions of exactly `len` letters.
    pub(crate) fn words(k: usize, len: usize) -> Vec<Vec<Vec<bool>>> {
        let letters: Vec<Vec<bool>> =
            (0..1usize << k).map(|m| (0..k).map(|i| m >> i & 1 == 1).collect()).collect();
        let mut out = vec![Vec::new()];
        for _ in 0..len {
            let mut next = Vec::new();
            for w in &out {
                for l in &letters {
                    let mut w2 = w.clone();
                    w2.push(l.clone());
                    next.push(w2);
                }
            }
            out = next;
        }
        out
    }

    /// DFA over {p} accepting words whose first letter has p.
    pub(crate) fn first_has_p() -> Automaton {
        let mut b = Builder::new(&names(&["p"]));
        let (s0, yes, no) = (b.add_state(false), b.add_state(true), b.add_state(false));
        let p = b.lit("p");
        let np = b.mgr.not(p);
        let t = b.mgr.one();
        b.add_edge(s0, yes, p);
        b.add_edge(s0, no, np);
        b.add_edge(yes, yes, t);
        b.add_edge(no, no, t);
        b.build_dfa().unwrap()
    }

    #[test]
    fn builder_rejects_nondeterminism() {
        let mut b = Builder::new(&names(&["p"]));
        let s = b.add_state(false);
        let t = b.mgr.one();
        let p = b.lit("p");
        b.add_edge(s, s, t);
        let s2 = b.add_state(true);
        b.add_edge(s, s2, p);
        assert!(b.build_dfa().is_err());
        let mut b = Builder::new(&names(&["p"]));
        let s = b.add_state(false);
        let p = b.lit("p");
        b.add_edge(s, s, p);
        assert!(b.build_dfa().is_err());
    }

    #[test]
    fn run_word_basics() {
        let a = first_has_p();
        assert!(!a.run_word::<Vec<bool>>(&[]).unwrap());
        assert!(a.run_word(&[vec![true], vec![false]]).unwrap());
        assert!(!a.run_word(&[vec![false], vec![true]]).unwrap());
        assert!(a.run_word(&[vec![true, false]]).is_err());
    }

    #[test]
    fn reverse_first_becomes_last() {
        let r = first_has_p().reverse();
        for len in 1..=4 {
            for w in words(1, len) {
                assert_eq!(r.run_word(&w).unwrap(), w[len - 1][0]);
            }
        }
        assert!(!r.run_word::<Vec<bool>>(&[]).unwrap());
        let rr = r.reverse();
        assert!(rr.same_language(&first_has_p(), &Limits::default()).unwrap());
    }

    #[test]
    fn complement_flips_membership() {
        let a = first_has_p();
        let c = a.complement().unwrap();
        for len in 0..=3 {
            for w in words(1, len) {
                assert_ne!(a.run_word(&w).unwrap(), c.run_word(&w).unwrap());
            }
        }
        let cc = c.complement().unwrap();
        assert!(cc.is_isomorphic(&a));
        assert!(a.clone().into_nfa().complement().is_err());
    }

    #[test]
    fn complement_of_empty_accepts_everything() {
        let mut b = Builder::new(&names(&["p"]));
        let s = b.add_state(false);
        let t = b.mgr.one();
        b.add_edge(s, s, t);
        let c = b.build_dfa().unwrap().complement().unwrap();
        assert!(c.run_word(&[vec![false]]).unwrap());
        assert!(c.run_word::<Vec<bool>>(&[]).unwrap());
    }

    #[test]
    fn project_examples() {
        let mut b = Builder::new(&names(&["u", "x", "y"]));
        let (s0, s1) = (b.add_state(false), b.add_state(true));
        let (u, x, y) = (b.lit("u"), b.lit("x"), b.lit("y"));
        let ux = b.mgr.and(u, x);
        b.add_edge(s0, s1, ux);
        b.add_edge(s1, s1, y);
        let a = b.build_nfa();
        let p = a.project(&names(&["u"])).unwrap();
        assert_eq!(p.alphabet(), &names(&["x", "y"])[..]);
        assert_eq!(p.pred_text(p.edge(0, 1).unwrap()), "x");
        assert_eq!(p.pred_text(p.edge(1, 1).unwrap()), "y");
        // Projecting a proposition that occurs nowhere changes nothing.
        let q = p.project(&[]).unwrap();
        assert_eq!(q.pred_text(q.edge(0, 1).unwrap()), "x");
        assert!(a.project(&names(&["zz"])).is_err());
    }

    #[test]
    fn dot_output() {
        let dot = first_has_p().to_dot();
        assert!(dot.contains("doublecircle"));
        assert!(dot.contains("label=\"!p\""));
    }
}
