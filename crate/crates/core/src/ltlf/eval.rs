//! Finite-trace semantics, evaluated directly on the full operator set.
//!
//! This is the ground-truth language oracle for the automata layer, so it
//! deliberately does not go through negation normal form.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::Formula;
use crate::error::Error;

/// One instant of a trace: proposition name to truth value.
pub type Assignment = BTreeMap<String, bool>;

/// A finite sequence of assignments.
pub type Trace = Vec<Assignment>;

#[derive(Clone, Copy, Debug)]
enum Node {
    True,
    False,
    Prop(usize),
    Not(usize),
    And(usize, usize),
    Or(usize, usize),
    Implies(usize, usize),
    Iff(usize, usize),
    Next(usize),
    WeakNext(usize),
    Until(usize, usize),
    Release(usize, usize),
    Eventually(usize),
    Globally(usize),
}

/// A formula compiled against a fixed proposition order.
///
/// Letters are slices of booleans indexed like `props`; evaluation is a
/// backward sweep over positions, linear in `trace length * formula size`.
#[derive(Clone, Debug)]
pub struct Evaluator {
    props: Vec<String>,
    nodes: Vec<Node>,
}

impl Evaluator {
    pub fn new(f: &Formula, props: &[String]) -> Result<Self, Error> {
        let mut ev = Evaluator { props: props.to_vec(), nodes: Vec::new() };
        ev.compile(f)?;
        Ok(ev)
    }

    pub fn props(&self) -> &[String] {
        &self.props
    }

    fn compile(&mut self, f: &Formula) -> Result<usize, Error> {
        let node = match f {
            Formula::True => Node::True,
            Formula::False => Node::False,
            Formula::Prop(p) => match self.props.iter().position(|q| q == p) {
                Some(i) => Node::Prop(i),
                None => return Err(Error::MissingProposition(p.clone())),
            },
            Formula::Not(a) => Node::Not(self.compile(a)?),
            Formula::Next(a) => Node::Next(self.compile(a)?),
            Formula::WeakNext(a) => Node::WeakNext(self.compile(a)?),
            Formula::Eventually(a) => Node::Eventually(self.compile(a)?),
            Formula::Globally(a) => Node::Globally(self.compile(a)?),
            Formula::And(a, b) => Node::And(self.compile(a)?, self.compile(b)?),
            Formula::Or(a, b) => Node::Or(self.compile(a)?, self.compile(b)?),
            Formula::Implies(a, b) => Node::Implies(self.compile(a)?, self.compile(b)?),
            Formula::Iff(a, b) => Node::Iff(self.compile(a)?, self.compile(b)?),
            Formula::Until(a, b) => Node::Until(self.compile(a)?, self.compile(b)?),
            Formula::Release(a, b) => Node::Release(self.compile(a)?, self.compile(b)?),
        };
        self.nodes.push(node);
        Ok(self.nodes.len() - 1)
    }

    /// Satisfaction at position 0. The empty word satisfies nothing.
    pub fn eval<L: AsRef<[bool]>>(&self, word: &[L]) -> bool {
        if word.is_empty() {
            return false;
        }
        let n = self.nodes.len();
        let mut next = vec![false; n];
        let mut cur = vec![false; n];
        for (pos, letter) in word.iter().enumerate().rev() {
            let letter = letter.as_ref();
            let last = pos + 1 == word.len();
            for (i, node) in self.nodes.iter().enumerate() {
                cur[i] = match *node {
                    Node::True => true,
                    Node::False => false,
                    Node::Prop(p) => letter[p],
                    Node::Not(a) => !cur[a],
                    Node::And(a, b) => cur[a] && cur[b],
                    Node::Or(a, b) => cur[a] || cur[b],
                    Node::Implies(a, b) => !cur[a] || cur[b],
                    Node::Iff(a, b) => cur[a] == cur[b],
                    Node::Next(a) => !last && next[a],
                    Node::WeakNext(a) => last || next[a],
                    Node::Until(a, b) => cur[b] || (cur[a] && !last && next[i]),
                    Node::Release(a, b) => cur[b] && (cur[a] || last || next[i]),
                    Node::Eventually(a) => cur[a] || (!last && next[i]),
                    Node::Globally(a) => cur[a] && (last || next[i]),
                };
            }
            core::mem::swap(&mut cur, &mut next);
        }
        next[n - 1]
    }
}

/// Whether `trace` satisfies `f` at position 0.
///
/// Every assignment must give a value to every proposition of `f`, and the
/// trace must be nonempty.
pub fn eval_trace(f: &Formula, trace: &[Assignment]) -> Result<bool, Error> {
    if trace.is_empty() {
        return Err(Error::EmptyTrace);
    }
    let props: Vec<String> = f.props().into_iter().collect();
    let mut word = Vec::with_capacity(trace.len());
    for a in trace {
        let mut letter = Vec::with_capacity(props.len());
        for p in &props {
            match a.get(p) {
                Some(&v) => letter.push(v),
                None => return Err(Error::MissingProposition(p.clone())),
            }
        }
        word.push(letter);
    }
    Ok(Evaluator::new(f, &props)?.eval(&word))
}
