use posyn_core::bdd::{BddManager, NodeId, VarId};
use proptest::prelude::*;

const VARS: usize = 6;

#[derive(Clone, Debug)]
enum Expr {
    Const(bool),
    Var(usize),
    Not(Box<Expr>),
    And(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
    Xor(Box<Expr>, Box<Expr>),
}

fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        1 => any::<bool>().prop_map(Expr::Const),
        6 => (0..VARS).prop_map(Expr::Var),
    ];
    leaf.prop_recursive(5, 40, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| Expr::Not(Box::new(e))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::And(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Or(Box::new(a), Box::new(b))),
            (inner.clone(), inner).prop_map(|(a, b)| Expr::Xor(Box::new(a), Box::new(b))),
        ]
    })
}

fn eval(e: &Expr, bits: usize) -> bool {
    match e {
        Expr::Const(c) => *c,
        Expr::Var(i) => bits >> i & 1 == 1,
        Expr::Not(a) => !eval(a, bits),
        Expr::And(a, b) => eval(a, bits) && eval(b, bits),
        Expr::Or(a, b) => eval(a, bits) || eval(b, bits),
        Expr::Xor(a, b) => eval(a, bits) != eval(b, bits),
    }
}

fn truth_table(e: &Expr) -> Vec<bool> {
    (0..1 << VARS).map(|bits| eval(e, bits)).collect()
}

fn build(m: &mut BddManager, e: &Expr) -> NodeId {
    match e {
        Expr::Const(c) => m.constant(*c),
        Expr::Var(i) => m.var(VarId(*i as u32)),
        Expr::Not(a) => {
            let a = build(m, a);
            m.not(a)
        }
        Expr::And(a, b) => {
            let (a, b) = (build(m, a), build(m, b));
            m.and(a, b)
        }
        Expr::Or(a, b) => {
            let (a, b) = (build(m, a), build(m, b));
            m.or(a, b)
        }
        Expr::Xor(a, b) => {
            let (a, b) = (build(m, a), build(m, b));
            m.xor(a, b)
        }
    }
}

fn manager() -> BddManager {
    BddManager::with_vars(&["x0", "x1", "x2", "x3", "x4", "x5"])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn handles_are_equal_iff_functions_are(a in expr(), b in expr()) {
        let mut m = manager();
        let (fa, fb) = (build(&mut m, &a), build(&mut m, &b));
        prop_assert_eq!(fa == fb, truth_table(&a) == truth_table(&b));
        for bits in 0..1usize << VARS {
            let values: Vec<bool> = (0..VARS).map(|i| bits >> i & 1 == 1).collect();
            prop_assert_eq!(m.eval_dense(fa, &values), eval(&a, bits));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn exists_is_dual_to_forall(e in expr(), mask in 0u32..1 << VARS) {
        let mut m = manager();
        let f = build(&mut m, &e);
        let vars: Vec<VarId> = (0..VARS as u32).filter(|i| mask >> i & 1 == 1).map(VarId).collect();
        let ex = m.exists(&vars, f);
        let nf = m.not(f);
        let all = m.forall(&vars, nf);
        prop_assert_eq!(ex, m.not(all));
        prop_assert!(m.support(ex).iter().all(|v| !vars.contains(v)));
    }

    #[test]
    fn node_counts_are_reproducible(e in expr()) {
        let (mut m1, mut m2) = (manager(), manager());
        let (f1, f2) = (build(&mut m1, &e), build(&mut m2, &e));
        prop_assert_eq!(f1.index(), f2.index());
        prop_assert_eq!(m1.node_count(&[f1]), m2.node_count(&[f2]));
    }
}
