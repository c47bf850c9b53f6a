//! LTLf formulas over finite traces.
//!
//! A [`Formula`] is an immutable syntax tree over named propositions. The
//! textual grammar is handled by [`parse`], negation normal form by
//! [`Formula::to_nnf`] and finite-trace satisfaction by [`eval_trace`].

mod eval;
mod parse;

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub use eval::{eval_trace, Assignment, Evaluator, Trace};
pub use parse::{parse, ParseError};

use crate::error::Error;

/// LTLf syntax tree.
///
/// `WeakNext` is kept as a primitive so that negation normal form is closed:
/// on finite traces the dual of `Next` is not `Next`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    True,
    False,
    Prop(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Next(Box<Formula>),
    WeakNext(Box<Formula>),
    Until(Box<Formula>, Box<Formula>),
    Release(Box<Formula>, Box<Formula>),
    Eventually(Box<Formula>),
    Globally(Box<Formula>),
}

// Short constructors, used heavily by the benchmark generators and tests.
impl Formula {
    pub fn prop(name: impl Into<String>) -> Formula {
        Formula::Prop(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn next(f: Formula) -> Formula {
        Formula::Next(Box::new(f))
    }

    pub fn weak_next(f: Formula) -> Formula {
        Formula::WeakNext(Box::new(f))
    }

    pub fn until(a: Formula, b: Formula) -> Formula {
        Formula::Until(Box::new(a), Box::new(b))
    }

    pub fn release(a: Formula, b: Formula) -> Formula {
        Formula::Release(Box::new(a), Box::new(b))
    }

    pub fn eventually(f: Formula) -> Formula {
        Formula::Eventually(Box::new(f))
    }

    pub fn globally(f: Formula) -> Formula {
        Formula::Globally(Box::new(f))
    }

    /// Conjunction of all items; `True` when empty.
    pub fn and_all(items: impl IntoIterator<Item = Formula>) -> Formula {
        Self::fold_balanced(items.into_iter().collect(), Formula::True, Formula::and)
    }

    /// Disjunction of all items; `False` when empty.
    pub fn or_all(items: impl IntoIterator<Item = Formula>) -> Formula {
        Self::fold_balanced(items.into_iter().collect(), Formula::False, Formula::or)
    }

    // Balanced folding keeps the tree depth logarithmic in the number of items.
    fn fold_balanced(
        mut items: Vec<Formula>,
        unit: Formula,
        join: fn(Formula, Formula) -> Formula,
    ) -> Formula {
        match items.len() {
            0 => unit,
            1 => items.pop().unwrap(),
            n => {
                let right = items.split_off(n / 2);
                join(
                    Self::fold_balanced(items, unit.clone(), join),
                    Self::fold_balanced(right, unit, join),
                )
            }
        }
    }

    /// Names of all propositions occurring in the formula.
    pub fn props(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_props(&mut out);
        out
    }

    fn collect_props(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Prop(p) => {
                out.insert(p.clone());
            }
            Formula::Not(a)
            | Formula::Next(a)
            | Formula::WeakNext(a)
            | Formula::Eventually(a)
            | Formula::Globally(a) => a.collect_props(out),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b)
            | Formula::Until(a, b)
            | Formula::Release(a, b) => {
                a.collect_props(out);
                b.collect_props(out);
            }
        }
    }

    /// Number of syntax-tree nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::True | Formula::False | Formula::Prop(_) => 1,
            Formula::Not(a)
            | Formula::Next(a)
            | Formula::WeakNext(a)
            | Formula::Eventually(a)
            | Formula::Globally(a) => 1 + a.size(),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b)
            | Formula::Until(a, b)
            | Formula::Release(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Language-equivalent formula in negation normal form.
    ///
    /// The result only uses `True`, `False`, literals, `And`, `Or`, `Next`,
    /// `WeakNext`, `Until` and `Release`.
    pub fn to_nnf(&self) -> Formula {
        self.nnf(false)
    }

    fn nnf(&self, neg: bool) -> Formula {
        use Formula::*;
        match (self, neg) {
            (True, false) | (False, true) => True,
            (True, true) | (False, false) => False,
            (Prop(p), false) => Prop(p.clone()),
            (Prop(p), true) => Formula::not(Prop(p.clone())),
            (Not(a), _) => a.nnf(!neg),
            (And(a, b), false) | (Or(a, b), true) => Formula::and(a.nnf(neg), b.nnf(neg)),
            (Or(a, b), false) | (And(a, b), true) => Formula::or(a.nnf(neg), b.nnf(neg)),
            (Implies(a, b), false) => Formula::or(a.nnf(true), b.nnf(false)),
            (Implies(a, b), true) => Formula::and(a.nnf(false), b.nnf(true)),
            (Iff(a, b), false) => Formula::or(
                Formula::and(a.nnf(false), b.nnf(false)),
                Formula::and(a.nnf(true), b.nnf(true)),
            ),
            (Iff(a, b), true) => Formula::or(
                Formula::and(a.nnf(false), b.nnf(true)),
                Formula::and(a.nnf(true), b.nnf(false)),
            ),
            (Next(a), false) | (WeakNext(a), true) => Formula::next(a.nnf(neg)),
            (WeakNext(a), false) | (Next(a), true) => Formula::weak_next(a.nnf(neg)),
            (Until(a, b), false) | (Release(a, b), true) => Formula::until(a.nnf(neg), b.nnf(neg)),
            (Release(a, b), false) | (Until(a, b), true) => {
                Formula::release(a.nnf(neg), b.nnf(neg))
            }
            (Eventually(a), false) | (Globally(a), true) => Formula::until(True, a.nnf(neg)),
            (Globally(a), false) | (Eventually(a), true) => Formula::release(False, a.nnf(neg)),
        }
    }

    /// Whether the formula is in negation normal form.
    pub fn is_nnf(&self) -> bool {
        use Formula::*;
        match self {
            True | False | Prop(_) => true,
            Not(a) => matches!(**a, Prop(_)),
            And(a, b) | Or(a, b) | Until(a, b) | Release(a, b) => a.is_nnf() && b.is_nnf(),
            Next(a) | WeakNext(a) => a.is_nnf(),
            Implies(..) | Iff(..) | Eventually(_) | Globally(_) => false,
        }
    }
}

/// Fully parenthesized rendering, accepted back by [`parse`].
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Formula::*;
        let bin = |f: &mut fmt::Formatter<'_>, a: &Formula, op: &str, b: &Formula| {
            write!(f, "({a} {op} {b})")
        };
        match self {
            True => f.write_str("true"),
            False => f.write_str("false"),
            Prop(p) => f.write_str(p),
            Not(a) => write!(f, "(!{a})"),
            Next(a) => write!(f, "(X {a})"),
            WeakNext(a) => write!(f, "(WX {a})"),
            Eventually(a) => write!(f, "(F {a})"),
            Globally(a) => write!(f, "(G {a})"),
            And(a, b) => bin(f, a, "&", b),
            Or(a, b) => bin(f, a, "|", b),
            Implies(a, b) => bin(f, a, "->", b),
            Iff(a, b) => bin(f, a, "<->", b),
            Until(a, b) => bin(f, a, "U", b),
            Release(a, b) => bin(f, a, "R", b),
        }
    }
}

/// Split of the specification's propositions into observable inputs,
/// unobservable inputs and outputs. Each list keeps declaration order, which
/// fixes the decision-diagram variable order and the projection order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Partition {
    pub obs: Vec<String>,
    pub unobs: Vec<String>,
    pub outputs: Vec<String>,
}

impl Partition {
    /// Builds a partition, rejecting duplicates and overlapping sets.
    pub fn new(obs: Vec<String>, unobs: Vec<String>, outputs: Vec<String>) -> Result<Self, Error> {
        let mut seen = BTreeSet::new();
        for name in obs.iter().chain(&unobs).chain(&outputs) {
            if !is_identifier(name) {
                return Err(Error::Partition(alloc::format!("invalid proposition name `{name}`")));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::Partition(alloc::format!(
                    "proposition `{name}` listed more than once"
                )));
            }
        }
        Ok(Partition { obs, unobs, outputs })
    }

    /// All inputs, observable ones first.
    pub fn inputs(&self) -> impl Iterator<Item = &String> {
        self.obs.iter().chain(&self.unobs)
    }

    /// Alphabet order used by every automaton built for synthesis:
    /// outputs, then observable inputs, then unobservable inputs.
    pub fn alphabet(&self) -> Vec<String> {
        self.outputs.iter().chain(&self.obs).chain(&self.unobs).cloned().collect()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.alphabet().iter().any(|p| p == name)
    }

    /// Fails when the formula mentions a proposition the partition does not place.
    pub fn check_covers(&self, f: &Formula) -> Result<(), Error> {
        let all: BTreeSet<String> = self.alphabet().into_iter().collect();
        match f.props().into_iter().find(|p| !all.contains(p)) {
            Some(p) => Err(Error::Partition(alloc::format!(
                "proposition `{p}` is not assigned to inputs or outputs"
            ))),
            None => Ok(()),
        }
    }

    /// Same inputs and outputs with every input observable.
    pub fn fully_observable(&self) -> Partition {
        Partition {
            obs: self.inputs().cloned().collect(),
            unobs: Vec::new(),
            outputs: self.outputs.clone(),
        }
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_') && !parse::is_keyword(s)
}
