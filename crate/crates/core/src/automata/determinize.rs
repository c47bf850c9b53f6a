//! Subset construction and partition-refinement minimization.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use super::{Automaton, Kind};
use crate::bdd::{BddManager, NodeId};
use crate::error::Error;
use crate::limits::Limits;

/// Partitions the alphabet by which destinations are enabled.
///
/// `items` are `(destination, predicate)` with distinct destinations. The
/// result pairs each nonempty region with its sorted destination set; the
/// region of the empty set is included when nonempty.
fn split(mgr: &mut BddManager, items: &[(usize, NodeId)]) -> Vec<(Vec<usize>, NodeId)> {
    let mut parts: Vec<(Vec<usize>, NodeId)> = vec![(Vec::new(), mgr.one())];
    for &(d, p) in items {
        let not_p = mgr.not(p);
        let mut next = Vec::with_capacity(parts.len() * 2);
        for (set, region) in parts {
            let with = mgr.and(region, p);
            let without = mgr.and(region, not_p);
            if !mgr.is_false(with) {
                let mut s2 = set.clone();
                s2.push(d);
                next.push((s2, with));
            }
            if !mgr.is_false(without) {
                next.push((set, without));
            }
        }
        parts = next;
    }
    parts
}

impl Automaton {
    /// Reachable subset construction. The empty subset is materialized as a
    /// rejecting sink, so the result is a complete DFA.
    pub fn determinize(&self, limits: &Limits) -> Result<Automaton, Error> {
        let mut mgr = self.mgr.clone();
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut subsets: Vec<Vec<usize>> = Vec::new();
        let mut edges: Vec<Vec<(usize, NodeId)>> = Vec::new();
        let start = vec![self.initial];
        index.insert(start.clone(), 0);
        subsets.push(start);
        let mut next = 0;
        while next < subsets.len() {
            limits.check_states(subsets.len())?;
            let mut merged: BTreeMap<usize, NodeId> = BTreeMap::new();
            for &s in &subsets[next] {
                for &(d, p) in &self.edges[s] {
                    let p = match merged.get(&d) {
                        Some(&q) => mgr.or(q, p),
                        None => p,
                    };
                    merged.insert(d, p);
                }
            }
            let items: Vec<(usize, NodeId)> = merged.into_iter().collect();
            let split = split(&mut mgr, &items);
            let mut out = Vec::with_capacity(split.len());
            for (set, region) in split {
                let id = match index.get(&set) {
                    Some(&id) => id,
                    None => {
                        let id = subsets.len();
                        index.insert(set.clone(), id);
                        subsets.push(set);
                        id
                    }
                };
                out.push((id, region));
            }
            out.sort_by_key(|e| e.0);
            edges.push(out);
            next += 1;
        }
        limits.check_states(subsets.len())?;
        let accepting = subsets.iter().map(|set| set.iter().any(|&s| self.accepting[s])).collect();
        let dfa = Automaton {
            kind: Kind::Dfa,
            alphabet: self.alphabet.clone(),
            mgr,
            initial: 0,
            accepting,
            edges,
        };
        let all: Vec<usize> = (0..dfa.n_states()).collect();
        Ok(dfa.rebuild(Kind::Dfa, &all, &self.alphabet))
    }

    /// Minimal DFA by partition refinement on symbolic signatures.
    ///
    /// A state's signature is its current block together with, for each
    /// target block, the disjunction of edge predicates into that block.
    /// Canonicity of decision diagrams makes signature equality exact.
    /// States are renumbered in breadth-first order from the initial state.
    pub fn minimize(&self, limits: &Limits) -> Result<Automaton, Error> {
        if self.kind != Kind::Dfa {
            return Err(Error::Automaton("minimize requires a DFA".into()));
        }
        let reach = self.reachable();
        let live: Vec<usize> = (0..self.n_states()).filter(|&s| reach[s]).collect();
        let dfa = self.rebuild(Kind::Dfa, &live, &self.alphabet);
        let n = dfa.n_states();
        let mut mgr = dfa.mgr.clone();
        let mut block: Vec<usize> = dfa.accepting.iter().map(|&a| a as usize).collect();
        let mut n_blocks = block.iter().copied().max().map_or(0, |m| m + 1);
        if dfa.accepting.iter().all(|&a| a) {
            block = vec![0; n];
            n_blocks = 1;
        }
        loop {
            limits.check()?;
            let mut sigs: HashMap<(usize, Vec<(usize, NodeId)>), usize> = HashMap::new();
            let mut next_block = vec![0; n];
            for s in 0..n {
                let mut by_block: BTreeMap<usize, NodeId> = BTreeMap::new();
                for &(d, p) in &dfa.edges[s] {
                    let merged = match by_block.get(&block[d]) {
                        Some(&q) => mgr.or(q, p),
                        None => p,
                    };
                    by_block.insert(block[d], merged);
                }
                let sig = (block[s], by_block.into_iter().collect::<Vec<_>>());
                let fresh = sigs.len();
                next_block[s] = *sigs.entry(sig).or_insert(fresh);
            }
            let count = sigs.len();
            block = next_block;
            if count == n_blocks {
                break;
            }
            n_blocks = count;
        }
        // Breadth-first renumbering from the initial state's block.
        let mut order = vec![usize::MAX; n_blocks];
        let mut rep = Vec::with_capacity(n_blocks);
        let mut queue = alloc::collections::VecDeque::new();
        order[block[dfa.initial]] = 0;
        rep.push(dfa.initial);
        queue.push_back(dfa.initial);
        while let Some(s) = queue.pop_front() {
            for &(d, _) in &dfa.edges[s] {
                if order[block[d]] == usize::MAX {
                    order[block[d]] = rep.len();
                    rep.push(d);
                    queue.push_back(d);
                }
            }
        }
        let mut edges = Vec::with_capacity(rep.len());
        for &s in &rep {
            let mut by_block: BTreeMap<usize, NodeId> = BTreeMap::new();
            for &(d, p) in &dfa.edges[s] {
                let b = order[block[d]];
                let merged = match by_block.get(&b) {
                    Some(&q) => mgr.or(q, p),
                    None => p,
                };
                by_block.insert(b, merged);
            }
            edges.push(by_block.into_iter().collect());
        }
        let merged = Automaton {
            kind: Kind::Dfa,
            alphabet: dfa.alphabet.clone(),
            mgr,
            initial: 0,
            accepting: rep.iter().map(|&s| dfa.accepting[s]).collect(),
            edges,
        };
        let all: Vec<usize> = (0..merged.n_states()).collect();
        Ok(merged.rebuild(Kind::Dfa, &all, &merged.alphabet))
    }
}
