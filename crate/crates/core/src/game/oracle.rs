//! Brute-force realizability through explicitly enumerated belief states.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use super::Verdict;
use crate::automata::ltlf_to_nfa;
use crate::error::Error;
use crate::limits::Limits;
use crate::ltlf::{Formula, Partition};

/// Cap on enumerated belief states.
pub const BELIEF_BUDGET: usize = 1 << 12;

/// Realizability decided on the explicit belief-state game of the
/// specification's minimal DFA.
///
/// A belief is the set of DFA states consistent with the outputs and
/// observations so far. It is winning when all its states accept, or when
/// some output makes every observable successor belief winning.
pub fn oracle_solve_explicit(f: &Formula, p: &Partition, limits: &Limits) -> Result<Verdict, Error> {
    p.check_covers(f)?;
    let alphabet = p.alphabet();
    let dfa = ltlf_to_nfa(f, &alphabet, limits)?.determinize_minimize(limits)?;
    let (ny, no, nu) = (p.outputs.len(), p.obs.len(), p.unobs.len());
    let n_letters = 1usize << alphabet.len();

    // succ[s][letter], letters as integers with bit i for alphabet[i].
    let mut succ = vec![vec![0u32; n_letters]; dfa.n_states()];
    let mut letter = vec![false; alphabet.len()];
    for (s, row) in succ.iter_mut().enumerate() {
        for (l, slot) in row.iter_mut().enumerate() {
            for (i, b) in letter.iter_mut().enumerate() {
                *b = l >> i & 1 == 1;
            }
            *slot = dfa.step(s, &letter).expect("minimal DFA is complete") as u32;
        }
    }

    let mut index: HashMap<BTreeSet<u32>, usize> = HashMap::new();
    let mut beliefs: Vec<BTreeSet<u32>> = Vec::new();
    // moves[b][y][o] is the successor belief.
    let mut moves: Vec<Vec<Vec<usize>>> = Vec::new();
    let start: BTreeSet<u32> = [dfa.initial() as u32].into_iter().collect();
    index.insert(start.clone(), 0);
    beliefs.push(start);
    let mut cursor = 0;
    while cursor < beliefs.len() {
        limits.check()?;
        let mut table = vec![vec![0; 1 << no]; 1 << ny];
        for (y, row) in table.iter_mut().enumerate() {
            for (o, slot) in row.iter_mut().enumerate() {
                let mut next = BTreeSet::new();
                for &s in &beliefs[cursor] {
                    for u in 0..1usize << nu {
                        let l = y | o << ny | u << (ny + no);
                        next.insert(succ[s as usize][l]);
                    }
                }
                *slot = match index.get(&next) {
                    Some(&id) => id,
                    None => {
                        if beliefs.len() >= BELIEF_BUDGET {
                            return Err(Error::StateBudget(BELIEF_BUDGET));
                        }
                        index.insert(next.clone(), beliefs.len());
                        beliefs.push(next);
                        beliefs.len() - 1
                    }
                };
            }
        }
        moves.push(table);
        cursor += 1;
    }

    let mut win: Vec<bool> =
        beliefs.iter().map(|b| b.iter().all(|&s| dfa.is_accepting(s as usize))).collect();
    loop {
        limits.check()?;
        let mut changed = false;
        for b in 0..beliefs.len() {
            if !win[b] && moves[b].iter().any(|row| row.iter().all(|&n| win[n])) {
                win[b] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    Ok(Verdict::from_bool(win[0]))
}
