//! Reduced ordered binary decision diagrams.
//!
//! A [`BddManager`] owns an arena of hash-consed nodes under a fixed variable
//! order (the order in which variables are created). Handles ([`NodeId`])
//! are canonical: two handles from the same manager are equal iff they denote
//! the same Boolean function. Nodes are never freed; the arena grows
//! monotonically for the lifetime of the manager.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;
use core::sync::atomic::{AtomicU32, Ordering};

use hashbrown::HashMap;

const FALSE: u32 = 0;
const TRUE: u32 = 1;
const TERMINAL_VAR: u32 = u32::MAX;

static NEXT_MANAGER: AtomicU32 = AtomicU32::new(1);

/// Position of a variable in the manager's order. Lower is closer to the root.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(pub u32);

impl VarId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Handle to a function inside one particular [`BddManager`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId {
    manager: u32,
    index: u32,
}

impl NodeId {
    /// Position in the owning manager's arena. Deterministic for identical
    /// build sequences.
    pub fn index(self) -> u32 {
        self.index
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum BddError {
    #[error("unknown decision-diagram variable {0}")]
    UnknownVariable(u32),
    #[error("node belongs to a different manager")]
    ForeignNode,
    #[error("variable `{0}` is in the support but unassigned")]
    Unassigned(String),
    #[error("substitution maps two variables onto `{0}`")]
    Collision(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    And,
    Or,
    Xor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantifier {
    Exists,
    Forall,
}

/// Argument of [`BddManager::mk`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Leaf {
    Const(bool),
    Var(VarId),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct Node {
    var: u32,
    lo: u32,
    hi: u32,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum CacheOp {
    And,
    Or,
    Xor,
    Exists,
    Forall,
    Restrict,
}

/// Node arena plus unique table and operation caches.
///
/// Cloning yields a snapshot that shares the manager identity: handles taken
/// before the clone stay valid in both copies.
#[derive(Clone)]
pub struct BddManager {
    id: u32,
    names: Vec<String>,
    nodes: Vec<Node>,
    unique: HashMap<Node, u32>,
    cache: HashMap<(CacheOp, u32, u32), u32>,
    not_cache: HashMap<u32, u32>,
    ite_cache: HashMap<(u32, u32, u32), u32>,
}

impl core::fmt::Debug for BddManager {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("BddManager")
            .field("vars", &self.names)
            .field("nodes", &self.nodes.len())
            .finish()
    }
}

impl Default for BddManager {
    fn default() -> Self {
        Self::new()
    }
}

impl BddManager {
    pub fn new() -> Self {
        let terminal = |v| Node { var: TERMINAL_VAR, lo: v, hi: v };
        BddManager {
            id: NEXT_MANAGER.fetch_add(1, Ordering::Relaxed),
            names: Vec::new(),
            nodes: vec![terminal(FALSE), terminal(TRUE)],
            unique: HashMap::new(),
            cache: HashMap::new(),
            not_cache: HashMap::new(),
            ite_cache: HashMap::new(),
        }
    }

    /// Manager with one variable per name, in order.
    pub fn with_vars<S: AsRef<str>>(names: &[S]) -> Self {
        let mut m = Self::new();
        for n in names {
            m.new_var(n.as_ref());
        }
        m
    }

    /// Appends a variable at the bottom of the order.
    pub fn new_var(&mut self, name: &str) -> VarId {
        self.names.push(String::from(name));
        VarId(self.names.len() as u32 - 1)
    }

    pub fn var_count(&self) -> usize {
        self.names.len()
    }

    pub fn var_name(&self, v: VarId) -> &str {
        &self.names[v.index()]
    }

    pub fn find_var(&self, name: &str) -> Option<VarId> {
        self.names.iter().position(|n| n == name).map(|i| VarId(i as u32))
    }

    /// Total number of nodes allocated in the arena, terminals included.
    pub fn arena_size(&self) -> usize {
        self.nodes.len()
    }

    /// Frees every node not reachable from `roots` and returns their new
    /// handles. The manager takes a fresh identity, so any other handle into
    /// it is afterwards rejected as foreign.
    pub fn compact(&mut self, roots: &[NodeId]) -> Vec<NodeId> {
        let mut fresh = BddManager::with_vars(&self.names);
        let out = fresh.import_many(self, roots, &|v| v);
        *self = fresh;
        out
    }

    pub fn clear_caches(&mut self) {
        self.cache.clear();
        self.not_cache.clear();
        self.ite_cache.clear();
    }

    fn handle(&self, index: u32) -> NodeId {
        NodeId { manager: self.id, index }
    }

    fn own(&self, n: NodeId) -> Result<u32, BddError> {
        if n.manager == self.id {
            Ok(n.index)
        } else {
            Err(BddError::ForeignNode)
        }
    }

    fn raw(&self, n: NodeId) -> u32 {
        self.own(n).expect("node handle used with a foreign BddManager")
    }

    fn check_var(&self, v: VarId) -> Result<(), BddError> {
        if v.index() < self.names.len() {
            Ok(())
        } else {
            Err(BddError::UnknownVariable(v.0))
        }
    }

    pub fn constant(&self, value: bool) -> NodeId {
        self.handle(if value { TRUE } else { FALSE })
    }

    pub fn zero(&self) -> NodeId {
        self.constant(false)
    }

    pub fn one(&self) -> NodeId {
        self.constant(true)
    }

    /// Node for a constant or a positive literal.
    pub fn mk(&mut self, leaf: Leaf) -> Result<NodeId, BddError> {
        match leaf {
            Leaf::Const(b) => Ok(self.constant(b)),
            Leaf::Var(v) => {
                self.check_var(v)?;
                let i = self.node(v.0, FALSE, TRUE);
                Ok(self.handle(i))
            }
        }
    }

    /// Positive literal. Panics on an unknown variable.
    pub fn var(&mut self, v: VarId) -> NodeId {
        self.mk(Leaf::Var(v)).expect("unknown variable")
    }

    /// Negative literal. Panics on an unknown variable.
    pub fn nvar(&mut self, v: VarId) -> NodeId {
        self.check_var(v).expect("unknown variable");
        let i = self.node(v.0, TRUE, FALSE);
        self.handle(i)
    }

    pub fn literal(&mut self, v: VarId, positive: bool) -> NodeId {
        if positive {
            self.var(v)
        } else {
            self.nvar(v)
        }
    }

    /// Node `(var ? hi : lo)` where `var` is above every variable of `hi`
    /// and `lo`. This is the raw constructor; ordering is checked only in
    /// debug builds.
    pub fn make_node(&mut self, v: VarId, lo: NodeId, hi: NodeId) -> NodeId {
        let (lo, hi) = (self.raw(lo), self.raw(hi));
        debug_assert!(v.0 < self.nodes[lo as usize].var && v.0 < self.nodes[hi as usize].var);
        let i = self.node(v.0, lo, hi);
        self.handle(i)
    }

    fn node(&mut self, var: u32, lo: u32, hi: u32) -> u32 {
        if lo == hi {
            return lo;
        }
        let n = Node { var, lo, hi };
        if let Some(&i) = self.unique.get(&n) {
            return i;
        }
        let i = self.nodes.len() as u32;
        self.nodes.push(n);
        self.unique.insert(n, i);
        i
    }

    pub fn is_const(&self, f: NodeId) -> bool {
        self.raw(f) <= TRUE
    }

    pub fn is_true(&self, f: NodeId) -> bool {
        self.raw(f) == TRUE
    }

    pub fn is_false(&self, f: NodeId) -> bool {
        self.raw(f) == FALSE
    }

    /// Top variable, `None` for constants.
    pub fn top_var(&self, f: NodeId) -> Option<VarId> {
        let n = self.nodes[self.raw(f) as usize];
        (n.var != TERMINAL_VAR).then_some(VarId(n.var))
    }

    /// `(low, high)` children of a non-constant node.
    pub fn children(&self, f: NodeId) -> Option<(NodeId, NodeId)> {
        let n = self.nodes[self.raw(f) as usize];
        (n.var != TERMINAL_VAR).then(|| (self.handle(n.lo), self.handle(n.hi)))
    }

    // ------------------------------------------------------------------
    // Boolean algebra

    pub fn apply(&mut self, op: BinOp, a: NodeId, b: NodeId) -> Result<NodeId, BddError> {
        let (a, b) = (self.own(a)?, self.own(b)?);
        let r = match op {
            BinOp::And => self.and_rec(a, b),
            BinOp::Or => self.or_rec(a, b),
            BinOp::Xor => self.xor_rec(a, b),
        };
        Ok(self.handle(r))
    }

    pub fn negate(&mut self, a: NodeId) -> Result<NodeId, BddError> {
        let a = self.own(a)?;
        let r = self.not_rec(a);
        Ok(self.handle(r))
    }

    pub fn and(&mut self, a: NodeId, b: NodeId) -> NodeId {
        self.apply(BinOp::And, a, b).expect("node handle used with a foreign BddManager")
    }

    pub fn or(&mut self, a: NodeId, b: NodeId) -> NodeId {
        self.apply(BinOp::Or, a, b).expect("node handle used with a foreign BddManager")
    }

    pub fn xor(&mut self, a: NodeId, b: NodeId) -> NodeId {
        self.apply(BinOp::Xor, a, b).expect("node handle used with a foreign BddManager")
    }

    pub fn not(&mut self, a: NodeId) -> NodeId {
        self.negate(a).expect("node handle used with a foreign BddManager")
    }

    pub fn iff(&mut self, a: NodeId, b: NodeId) -> NodeId {
        let x = self.xor(a, b);
        self.not(x)
    }

    pub fn implies(&mut self, a: NodeId, b: NodeId) -> NodeId {
        let na = self.not(a);
        self.or(na, b)
    }

    /// Whether `a` implies `b`.
    pub fn leq(&mut self, a: NodeId, b: NodeId) -> bool {
        let nb = self.not(b);
        let both = self.and(a, nb);
        self.is_false(both)
    }

    pub fn ite(&mut self, f: NodeId, g: NodeId, h: NodeId) -> NodeId {
        let (f, g, h) = (self.raw(f), self.raw(g), self.raw(h));
        let r = self.ite_rec(f, g, h);
        self.handle(r)
    }

    pub fn and_all(&mut self, items: impl IntoIterator<Item = NodeId>) -> NodeId {
        let mut acc = self.one();
        for x in items {
            acc = self.and(acc, x);
        }
        acc
    }

    pub fn or_all(&mut self, items: impl IntoIterator<Item = NodeId>) -> NodeId {
        let mut acc = self.zero();
        for x in items {
            acc = self.or(acc, x);
        }
        acc
    }

    /// Conjunction of literals `(var, polarity)`.
    pub fn cube(&mut self, lits: &[(VarId, bool)]) -> NodeId {
        let mut sorted = lits.to_vec();
        sorted.sort_by(|a, b| b.0.cmp(&a.0));
        let mut acc = TRUE;
        for (v, pos) in sorted {
            acc = if pos { self.node(v.0, FALSE, acc) } else { self.node(v.0, acc, FALSE) };
        }
        self.handle(acc)
    }

    fn top2(&self, a: u32, b: u32) -> u32 {
        self.nodes[a as usize].var.min(self.nodes[b as usize].var)
    }

    fn cofactors(&self, f: u32, var: u32) -> (u32, u32) {
        let n = self.nodes[f as usize];
        if n.var == var {
            (n.lo, n.hi)
        } else {
            (f, f)
        }
    }

    fn and_rec(&mut self, a: u32, b: u32) -> u32 {
        if a == FALSE || b == FALSE {
            return FALSE;
        }
        if a == TRUE || a == b {
            return b;
        }
        if b == TRUE {
            return a;
        }
        let key = (CacheOp::And, a.min(b), a.max(b));
        if let Some(&r) = self.cache.get(&key) {
            return r;
        }
        let v = self.top2(a, b);
        let (a0, a1) = self.cofactors(a, v);
        let (b0, b1) = self.cofactors(b, v);
        let lo = self.and_rec(a0, b0);
        let hi = self.and_rec(a1, b1);
        let r = self.node(v, lo, hi);
        self.cache.insert(key, r);
        r
    }

    fn or_rec(&mut self, a: u32, b: u32) -> u32 {
        if a == TRUE || b == TRUE {
            return TRUE;
        }
        if a == FALSE || a == b {
            return b;
        }
        if b == FALSE {
            return a;
        }
        let key = (CacheOp::Or, a.min(b), a.max(b));
        if let Some(&r) = self.cache.get(&key) {
            return r;
        }
        let v = self.top2(a, b);
        let (a0, a1) = self.cofactors(a, v);
        let (b0, b1) = self.cofactors(b, v);
        let lo = self.or_rec(a0, b0);
        let hi = self.or_rec(a1, b1);
        let r = self.node(v, lo, hi);
        self.cache.insert(key, r);
        r
    }

    fn xor_rec(&mut self, a: u32, b: u32) -> u32 {
        if a == b {
            return FALSE;
        }
        if a == FALSE {
            return b;
        }
        if b == FALSE {
            return a;
        }
        if a == TRUE {
            return self.not_rec(b);
        }
        if b == TRUE {
            return self.not_rec(a);
        }
        let key = (CacheOp::Xor, a.min(b), a.max(b));
        if let Some(&r) = self.cache.get(&key) {
            return r;
        }
        let v = self.top2(a, b);
        let (a0, a1) = self.cofactors(a, v);
        let (b0, b1) = self.cofactors(b, v);
        let lo = self.xor_rec(a0, b0);
        let hi = self.xor_rec(a1, b1);
        let r = self.node(v, lo, hi);
        self.cache.insert(key, r);
        r
    }

    fn not_rec(&mut self, a: u32) -> u32 {
        if a <= TRUE {
            return a ^ 1;
        }
        if let Some(&r) = self.not_cache.get(&a) {
            return r;
        }
        let n = self.nodes[a as usize];
        let lo = self.not_rec(n.lo);
        let hi = self.not_rec(n.hi);
        let r = self.node(n.var, lo, hi);
        self.not_cache.insert(a, r);
        r
    }

    fn ite_rec(&mut self, f: u32, g: u32, h: u32) -> u32 {
        if f == TRUE {
            return g;
        }
        if f == FALSE {
            return h;
        }
        if g == h {
            return g;
        }
        if g == TRUE && h == FALSE {
            return f;
        }
        if g == FALSE && h == TRUE {
            return self.not_rec(f);
        }
        if g == TRUE {
            return self.or_rec(f, h);
        }
        if h == FALSE {
            return self.and_rec(f, g);
        }
        if let Some(&r) = self.ite_cache.get(&(f, g, h)) {
            return r;
        }
        let v = self.top2(f, g).min(self.nodes[h as usize].var);
        let (f0, f1) = self.cofactors(f, v);
        let (g0, g1) = self.cofactors(g, v);
        let (h0, h1) = self.cofactors(h, v);
        let lo = self.ite_rec(f0, g0, h0);
        let hi = self.ite_rec(f1, g1, h1);
        let r = self.node(v, lo, hi);
        self.ite_cache.insert((f, g, h), r);
        r
    }

    // ------------------------------------------------------------------
    // Quantification, restriction, substitution

    /// Existential or universal quantification over `vars`.
    pub fn quantify(
        &mut self,
        mode: Quantifier,
        vars: &[VarId],
        f: NodeId,
    ) -> Result<NodeId, BddError> {
        let f = self.own(f)?;
        for &v in vars {
            self.check_var(v)?;
        }
        let lits: Vec<(VarId, bool)> = vars.iter().map(|&v| (v, true)).collect();
        let cube = self.cube(&lits).index;
        let r = self.quant_rec(mode, f, cube);
        Ok(self.handle(r))
    }

    pub fn exists(&mut self, vars: &[VarId], f: NodeId) -> NodeId {
        self.quantify(Quantifier::Exists, vars, f).expect("invalid quantification")
    }

    pub fn forall(&mut self, vars: &[VarId], f: NodeId) -> NodeId {
        self.quantify(Quantifier::Forall, vars, f).expect("invalid quantification")
    }

    fn quant_rec(&mut self, mode: Quantifier, f: u32, mut cube: u32) -> u32 {
        if f <= TRUE {
            return f;
        }
        let fv = self.nodes[f as usize].var;
        while cube != TRUE && self.nodes[cube as usize].var < fv {
            cube = self.nodes[cube as usize].hi;
        }
        if cube == TRUE {
            return f;
        }
        let op = match mode {
            Quantifier::Exists => CacheOp::Exists,
            Quantifier::Forall => CacheOp::Forall,
        };
        if let Some(&r) = self.cache.get(&(op, f, cube)) {
            return r;
        }
        let n = self.nodes[f as usize];
        let c = self.nodes[cube as usize];
        let r = if c.var == n.var {
            let lo = self.quant_rec(mode, n.lo, c.hi);
            let hi = self.quant_rec(mode, n.hi, c.hi);
            match mode {
                Quantifier::Exists => self.or_rec(lo, hi),
                Quantifier::Forall => self.and_rec(lo, hi),
            }
        } else {
            let lo = self.quant_rec(mode, n.lo, cube);
            let hi = self.quant_rec(mode, n.hi, cube);
            self.node(n.var, lo, hi)
        };
        self.cache.insert((op, f, cube), r);
        r
    }

    /// Cofactor of `f` under a partial assignment given as literals.
    pub fn restrict(&mut self, f: NodeId, lits: &[(VarId, bool)]) -> NodeId {
        let f = self.raw(f);
        let cube = self.cube(lits).index;
        let r = self.restrict_rec(f, cube);
        self.handle(r)
    }

    // `cube` is a conjunction of literals; restricts `f` to it.
    fn restrict_rec(&mut self, f: u32, mut cube: u32) -> u32 {
        if f <= TRUE {
            return f;
        }
        let fv = self.nodes[f as usize].var;
        while cube != TRUE && self.nodes[cube as usize].var < fv {
            let c = self.nodes[cube as usize];
            cube = if c.lo == FALSE { c.hi } else { c.lo };
        }
        if cube == TRUE {
            return f;
        }
        if let Some(&r) = self.cache.get(&(CacheOp::Restrict, f, cube)) {
            return r;
        }
        let n = self.nodes[f as usize];
        let c = self.nodes[cube as usize];
        let r = if c.var == n.var {
            if c.lo == FALSE {
                self.restrict_rec(n.hi, c.hi)
            } else {
                self.restrict_rec(n.lo, c.lo)
            }
        } else {
            let lo = self.restrict_rec(n.lo, cube);
            let hi = self.restrict_rec(n.hi, cube);
            self.node(n.var, lo, hi)
        };
        self.cache.insert((CacheOp::Restrict, f, cube), r);
        r
    }

    /// Simultaneous functional composition: every variable `v` with
    /// `map[v] = Some(g)` is replaced by `g`.
    pub fn compose(&mut self, f: NodeId, map: &[Option<NodeId>]) -> NodeId {
        let raw_map: Vec<Option<u32>> = map.iter().map(|g| g.map(|g| self.raw(g))).collect();
        let f = self.raw(f);
        let mut memo = HashMap::new();
        let r = self.compose_rec(f, &raw_map, &mut memo);
        self.handle(r)
    }

    fn compose_rec(&mut self, f: u32, map: &[Option<u32>], memo: &mut HashMap<u32, u32>) -> u32 {
        if f <= TRUE {
            return f;
        }
        if let Some(&r) = memo.get(&f) {
            return r;
        }
        let n = self.nodes[f as usize];
        let lo = self.compose_rec(n.lo, map, memo);
        let hi = self.compose_rec(n.hi, map, memo);
        let g = match map.get(n.var as usize).copied().flatten() {
            Some(g) => g,
            None => self.node(n.var, FALSE, TRUE),
        };
        let r = self.ite_rec(g, hi, lo);
        memo.insert(f, r);
        r
    }

    /// Simultaneous variable renaming.
    ///
    /// Fails when two variables would land on the same target, either
    /// because the map is not injective or because a target is already in
    /// the support of `f` without being renamed itself.
    pub fn substitute(&mut self, f: NodeId, map: &[(VarId, VarId)]) -> Result<NodeId, BddError> {
        self.own(f)?;
        let support = self.support(f);
        let mut targets = BTreeSet::new();
        for &(from, to) in map {
            self.check_var(from)?;
            self.check_var(to)?;
            if !targets.insert(to) {
                return Err(BddError::Collision(self.names[to.index()].clone()));
            }
        }
        for &(_, to) in map {
            let renamed_away = map.iter().any(|&(from, _)| from == to);
            if support.contains(&to) && !renamed_away {
                return Err(BddError::Collision(self.names[to.index()].clone()));
            }
        }
        let mut vec_map = vec![None; self.names.len()];
        for &(from, to) in map {
            vec_map[from.index()] = Some(self.var(to));
        }
        Ok(self.compose(f, &vec_map))
    }

    /// Copies `f` from `src` into this manager, renaming variables through
    /// `map`. The map does not need to preserve order.
    pub fn import(&mut self, src: &BddManager, f: NodeId, map: &dyn Fn(VarId) -> VarId) -> NodeId {
        let mut memo = HashMap::new();
        let r = self.import_rec(src, src.raw(f), map, &mut memo);
        self.handle(r)
    }

    /// Like [`BddManager::import`] for many roots sharing one memo table.
    pub fn import_many(
        &mut self,
        src: &BddManager,
        roots: &[NodeId],
        map: &dyn Fn(VarId) -> VarId,
    ) -> Vec<NodeId> {
        let mut memo = HashMap::new();
        roots
            .iter()
            .map(|&f| {
                let r = self.import_rec(src, src.raw(f), map, &mut memo);
                self.handle(r)
            })
            .collect()
    }

    fn import_rec(
        &mut self,
        src: &BddManager,
        f: u32,
        map: &dyn Fn(VarId) -> VarId,
        memo: &mut HashMap<u32, u32>,
    ) -> u32 {
        if f <= TRUE {
            return f;
        }
        if let Some(&r) = memo.get(&f) {
            return r;
        }
        let n = src.nodes[f as usize];
        let lo = self.import_rec(src, n.lo, map, memo);
        let hi = self.import_rec(src, n.hi, map, memo);
        let v = map(VarId(n.var));
        let lit = self.node(v.0, FALSE, TRUE);
        let r = self.ite_rec(lit, hi, lo);
        memo.insert(f, r);
        r
    }

    // ------------------------------------------------------------------
    // Inspection

    /// Truth value under `assignment`, which must cover the support of `f`.
    pub fn evaluate(
        &self,
        f: NodeId,
        assignment: &dyn Fn(VarId) -> Option<bool>,
    ) -> Result<bool, BddError> {
        let mut i = self.own(f)?;
        while i > TRUE {
            let n = self.nodes[i as usize];
            match assignment(VarId(n.var)) {
                Some(true) => i = n.hi,
                Some(false) => i = n.lo,
                None => return Err(BddError::Unassigned(self.names[n.var as usize].clone())),
            }
        }
        Ok(i == TRUE)
    }

    /// Evaluation under a dense assignment indexed by variable.
    pub fn eval_dense(&self, f: NodeId, values: &[bool]) -> bool {
        let mut i = self.raw(f);
        while i > TRUE {
            let n = self.nodes[i as usize];
            i = if values[n.var as usize] { n.hi } else { n.lo };
        }
        i == TRUE
    }

    pub fn support(&self, f: NodeId) -> BTreeSet<VarId> {
        let mut out = BTreeSet::new();
        let mut seen = BTreeSet::new();
        let mut stack = vec![self.raw(f)];
        while let Some(i) = stack.pop() {
            if i <= TRUE || !seen.insert(i) {
                continue;
            }
            let n = self.nodes[i as usize];
            out.insert(VarId(n.var));
            stack.push(n.lo);
            stack.push(n.hi);
        }
        out
    }

    /// Number of distinct nodes, terminals included, reachable from `roots`.
    pub fn node_count(&self, roots: &[NodeId]) -> usize {
        let mut seen = BTreeSet::new();
        let mut stack: Vec<u32> = roots.iter().map(|&r| self.raw(r)).collect();
        while let Some(i) = stack.pop() {
            if !seen.insert(i) {
                continue;
            }
            if i > TRUE {
                let n = self.nodes[i as usize];
                stack.push(n.lo);
                stack.push(n.hi);
            }
        }
        seen.len()
    }

    /// Lexicographically smallest assignment to `vars` (false before true,
    /// earlier variables more significant) that satisfies `f`. Variables of
    /// `f` outside `vars` are treated existentially.
    pub fn pick_lex_min(&mut self, f: NodeId, vars: &[VarId]) -> Option<Vec<bool>> {
        let others: Vec<VarId> =
            self.support(f).into_iter().filter(|v| !vars.contains(v)).collect();
        let mut g = self.exists(&others, f);
        if self.is_false(g) {
            return None;
        }
        let mut out = Vec::with_capacity(vars.len());
        for &v in vars {
            let low = self.restrict(g, &[(v, false)]);
            if self.is_false(low) {
                g = self.restrict(g, &[(v, true)]);
                out.push(true);
            } else {
                g = low;
                out.push(false);
            }
        }
        Some(out)
    }

    /// Disjoint cubes covering `f`, one per path to the true terminal.
    pub fn cubes(&self, f: NodeId) -> Vec<Vec<(VarId, bool)>> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        self.cubes_rec(self.raw(f), &mut path, &mut out);
        out
    }

    fn cubes_rec(&self, f: u32, path: &mut Vec<(VarId, bool)>, out: &mut Vec<Vec<(VarId, bool)>>) {
        if f == FALSE {
            return;
        }
        if f == TRUE {
            out.push(path.clone());
            return;
        }
        let n = self.nodes[f as usize];
        path.push((VarId(n.var), false));
        self.cubes_rec(n.lo, path, out);
        path.pop();
        path.push((VarId(n.var), true));
        self.cubes_rec(n.hi, path, out);
        path.pop();
    }

    /// Sum-of-products rendering, e.g. `a & !b | c`.
    pub fn to_sop(&self, f: NodeId) -> String {
        if self.is_true(f) {
            return String::from("true");
        }
        if self.is_false(f) {
            return String::from("false");
        }
        let mut s = String::new();
        for (i, cube) in self.cubes(f).iter().enumerate() {
            if i > 0 {
                s.push_str(" | ");
            }
            for (j, &(v, pos)) in cube.iter().enumerate() {
                if j > 0 {
                    s.push_str(" & ");
                }
                if !pos {
                    s.push('!');
                }
                s.push_str(&self.names[v.index()]);
            }
        }
        s
    }

    /// Graphviz rendering of the diagram rooted at `f`; dashed edges are
    /// low (false) branches.
    pub fn to_dot(&self, f: NodeId) -> String {
        let mut s = String::from("digraph bdd {\n");
        s.push_str("  n0 [shape=box,label=\"0\"];\n  n1 [shape=box,label=\"1\"];\n");
        let mut seen = BTreeSet::new();
        let mut stack = vec![self.raw(f)];
        while let Some(i) = stack.pop() {
            if i <= TRUE || !seen.insert(i) {
                continue;
            }
            let n = self.nodes[i as usize];
            let _ = writeln!(s, "  n{i} [label=\"{}\"];", self.names[n.var as usize]);
            let _ = writeln!(s, "  n{i} -> n{} [style=dashed];", n.lo);
            let _ = writeln!(s, "  n{i} -> n{};", n.hi);
            stack.push(n.lo);
            stack.push(n.hi);
        }
        s.push_str("}\n");
        s
    }
}
