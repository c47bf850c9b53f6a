//! LTLf to NFA through the alternating automaton of the formula.
//!
//! NFA states are sets of pending obligations `X f` (strong: a next
//! instant must exist) and `WX f` (weak). Reading a letter expands the
//! conjunction of the obligations' bodies into a disjunction of
//! `(guard, next obligations)` terms, where guards are decision diagrams
//! over the alphabet. A state accepts iff it holds no strong obligation.
//! The initial state is distinct from every other state: it expands the
//! whole formula on the first letter and rejects the empty word.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use hashbrown::HashMap;

use super::{Automaton, Builder};
use crate::bdd::{BddManager, NodeId};
use crate::error::Error;
use crate::limits::Limits;
use crate::ltlf::Formula;

type Id = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Node {
    True,
    False,
    Lit(u32, bool),
    And(Id, Id),
    Or(Id, Id),
    Next(Id),
    WeakNext(Id),
    Until(Id, Id),
    Release(Id, Id),
}

/// Disjunction of `(obligations, guard)`; obligation sets are sorted and
/// pairwise distinct.
type Dnf = Vec<(Vec<Id>, NodeId)>;

struct Compiler<'a> {
    nodes: Vec<Node>,
    interned: HashMap<Node, Id>,
    props: &'a [String],
    expansion: HashMap<Id, Dnf>,
}

impl Compiler<'_> {
    fn intern(&mut self, n: Node) -> Id {
        if let Some(&id) = self.interned.get(&n) {
            return id;
        }
        let id = self.nodes.len() as Id;
        self.nodes.push(n);
        self.interned.insert(n, id);
        id
    }

    fn node(&self, id: Id) -> Node {
        self.nodes[id as usize]
    }

    fn mk_and(&mut self, a: Id, b: Id) -> Id {
        match (self.node(a), self.node(b)) {
            (Node::False, _) | (_, Node::False) => self.intern(Node::False),
            (Node::True, _) => b,
            (_, Node::True) => a,
            _ if a == b => a,
            _ => self.intern(Node::And(a.min(b), a.max(b))),
        }
    }

    fn mk_or(&mut self, a: Id, b: Id) -> Id {
        match (self.node(a), self.node(b)) {
            (Node::True, _) | (_, Node::True) => self.intern(Node::True),
            (Node::False, _) => b,
            (_, Node::False) => a,
            _ if a == b => a,
            _ => self.intern(Node::Or(a.min(b), a.max(b))),
        }
    }

    /// Interns an NNF formula.
    fn load(&mut self, f: &Formula) -> Result<Id, Error> {
        Ok(match f {
            Formula::True => self.intern(Node::True),
            Formula::False => self.intern(Node::False),
            Formula::Prop(p) => self.lit(p, true)?,
            Formula::Not(a) => match &**a {
                Formula::Prop(p) => self.lit(p, false)?,
                _ => return Err(Error::Automaton("formula is not in negation normal form".into())),
            },
            Formula::And(a, b) => {
                let (a, b) = (self.load(a)?, self.load(b)?);
                self.mk_and(a, b)
            }
            Formula::Or(a, b) => {
                let (a, b) = (self.load(a)?, self.load(b)?);
                self.mk_or(a, b)
            }
            Formula::Next(a) => {
                let a = self.load(a)?;
                match self.node(a) {
                    Node::False => a,
                    _ => self.intern(Node::Next(a)),
                }
            }
            Formula::WeakNext(a) => {
                let a = self.load(a)?;
                match self.node(a) {
                    Node::True => a,
                    _ => self.intern(Node::WeakNext(a)),
                }
            }
            Formula::Until(a, b) => {
                let (a, b) = (self.load(a)?, self.load(b)?);
                match (self.node(a), self.node(b)) {
                    (_, Node::True) | (_, Node::False) | (Node::False, _) => b,
                    _ => self.intern(Node::Until(a, b)),
                }
            }
            Formula::Release(a, b) => {
                let (a, b) = (self.load(a)?, self.load(b)?);
                match (self.node(a), self.node(b)) {
                    (_, Node::True) | (_, Node::False) | (Node::True, _) => b,
                    _ => self.intern(Node::Release(a, b)),
                }
            }
            Formula::Implies(..) | Formula::Iff(..) | Formula::Eventually(_) | Formula::Globally(_) => {
                return Err(Error::Automaton("formula is not in negation normal form".into()))
            }
        })
    }

    fn lit(&mut self, p: &str, positive: bool) -> Result<Id, Error> {
        let i = self
            .props
            .iter()
            .position(|q| q == p)
            .ok_or_else(|| Error::Automaton(alloc::format!("`{p}` is not in the alphabet")))?;
        Ok(self.intern(Node::Lit(i as u32, positive)))
    }

    /// Normalizes an obligation set: a strong `X f` subsumes `WX f`.
    fn normalize_set(&self, mut set: Vec<Id>) -> Vec<Id> {
        set.sort_unstable();
        set.dedup();
        let strong: Vec<Id> = set
            .iter()
            .filter_map(|&o| match self.node(o) {
                Node::Next(f) => Some(f),
                _ => None,
            })
            .collect();
        set.retain(|&o| !matches!(self.node(o), Node::WeakNext(f) if strong.contains(&f)));
        set
    }

    /// Merges equal obligation sets and drops terms made redundant by a
    /// term with fewer obligations.
    fn normalize_dnf(&self, mgr: &mut BddManager, terms: Dnf) -> Dnf {
        let mut merged: BTreeMap<Vec<Id>, NodeId> = BTreeMap::new();
        for (set, g) in terms {
            if mgr.is_false(g) {
                continue;
            }
            let g = match merged.get(&set) {
                Some(&old) => mgr.or(old, g),
                None => g,
            };
            merged.insert(set, g);
        }
        let mut terms: Dnf = merged.into_iter().collect();
        terms.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
        for i in 0..terms.len() {
            for j in 0..i {
                if terms[j].0.len() < terms[i].0.len() && is_subset(&terms[j].0, &terms[i].0) {
                    let not_j = mgr.not(terms[j].1);
                    terms[i].1 = mgr.and(terms[i].1, not_j);
                }
            }
        }
        terms.retain(|(_, g)| !mgr.is_false(*g));
        terms
    }

    fn product(&self, mgr: &mut BddManager, a: &Dnf, b: &Dnf) -> Dnf {
        let mut out = Vec::with_capacity(a.len() * b.len());
        for (sa, ga) in a {
            for (sb, gb) in b {
                let g = mgr.and(*ga, *gb);
                if mgr.is_false(g) {
                    continue;
                }
                let mut set = sa.clone();
                set.extend_from_slice(sb);
                out.push((self.normalize_set(set), g));
            }
        }
        self.normalize_dnf(mgr, out)
    }

    /// One-letter unfolding of a formula.
    fn expand(&mut self, mgr: &mut BddManager, id: Id) -> Dnf {
        if let Some(d) = self.expansion.get(&id) {
            return d.clone();
        }
        let d = match self.node(id) {
            Node::True => alloc::vec![(Vec::new(), mgr.one())],
            Node::False => Vec::new(),
            Node::Lit(v, pos) => {
                let g = mgr.literal(crate::bdd::VarId(v), pos);
                alloc::vec![(Vec::new(), g)]
            }
            Node::And(a, b) => {
                let (da, db) = (self.expand(mgr, a), self.expand(mgr, b));
                self.product(mgr, &da, &db)
            }
            Node::Or(a, b) => {
                let mut d = self.expand(mgr, a);
                d.extend(self.expand(mgr, b));
                self.normalize_dnf(mgr, d)
            }
            Node::Next(_) | Node::WeakNext(_) => alloc::vec![(alloc::vec![id], mgr.one())],
            Node::Until(a, b) => {
                let again = self.intern(Node::Next(id));
                let da = self.expand(mgr, a);
                let stay = self.product(mgr, &da, &alloc::vec![(alloc::vec![again], mgr.one())]);
                let mut d = self.expand(mgr, b);
                d.extend(stay);
                self.normalize_dnf(mgr, d)
            }
            Node::Release(a, b) => {
                let again = self.intern(Node::WeakNext(id));
                let mut da = self.expand(mgr, a);
                da.push((alloc::vec![again], mgr.one()));
                let da = self.normalize_dnf(mgr, da);
                let db = self.expand(mgr, b);
                self.product(mgr, &db, &da)
            }
        };
        self.expansion.insert(id, d.clone());
        d
    }

    fn body(&self, obligation: Id) -> Id {
        match self.node(obligation) {
            Node::Next(f) | Node::WeakNext(f) => f,
            _ => unreachable!("obligations are X/WX nodes"),
        }
    }

    fn accepting(&self, set: &[Id]) -> bool {
        set.iter().all(|&o| !matches!(self.node(o), Node::Next(_)))
    }
}

fn is_subset(small: &[Id], big: &[Id]) -> bool {
    small.iter().all(|x| big.binary_search(x).is_ok())
}

/// NFA over `alphabet` whose language is the set of nonempty traces
/// satisfying `f`. Propositions of `alphabet` not mentioned by `f` are
/// unconstrained. The result is trimmed.
pub fn ltlf_to_nfa(f: &Formula, alphabet: &[String], limits: &Limits) -> Result<Automaton, Error> {
    let nnf = f.to_nnf();
    let mut b = Builder::new(alphabet);
    let mut c = Compiler {
        nodes: Vec::new(),
        interned: HashMap::new(),
        props: alphabet,
        expansion: HashMap::new(),
    };
    let root = c.load(&nnf)?;
    let initial = b.add_state(false);
    b.set_initial(initial);

    // State 0 is the initial state; the others are obligation sets.
    let mut index: HashMap<Vec<Id>, usize> = HashMap::new();
    let mut sets: Vec<Vec<Id>> = alloc::vec![Vec::new()];
    let mut next = 0;
    while next < sets.len() {
        limits.check_states(sets.len())?;
        let terms = if next == 0 {
            c.expand(&mut b.mgr, root)
        } else {
            let mut acc: Dnf = alloc::vec![(Vec::new(), b.mgr.one())];
            for o in sets[next].clone() {
                let body = c.body(o);
                let d = c.expand(&mut b.mgr, body);
                acc = c.product(&mut b.mgr, &acc, &d);
                if acc.is_empty() {
                    break;
                }
            }
            acc
        };
        for (set, guard) in terms {
            let dst = match index.get(&set) {
                Some(&d) => d,
                None => {
                    let d = b.add_state(c.accepting(&set));
                    index.insert(set.clone(), d);
                    sets.push(set);
                    d
                }
            };
            b.add_edge(next, dst, guard);
        }
        next += 1;
    }
    limits.check_states(sets.len())?;
    Ok(b.build_nfa().trim())
}
