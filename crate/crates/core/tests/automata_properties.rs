mod common;

use common::{formula, names, words, words_up_to};
use posyn_core::automata::{ltlf_to_nfa, Automaton, Builder, Kind};
use posyn_core::bench::{generate, Family};
use posyn_core::ltlf::{Evaluator, Formula};
use posyn_core::symbolic::{negated_nfa, NfaMode};
use posyn_core::Limits;
use proptest::prelude::*;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

const PROPS: &[&str] = &["a", "b", "c"];

/// Complete DFA over `alphabet` with uniformly random successors per letter.
fn random_dfa(rng: &mut ChaCha8Rng, alphabet: &[String], states: usize) -> Automaton {
    let mut b = Builder::new(alphabet);
    for _ in 0..states {
        b.add_state(rng.next_u32() % 2 == 0);
    }
    let vars: Vec<_> = alphabet.iter().map(|n| b.mgr.find_var(n).unwrap()).collect();
    for s in 0..states {
        for l in 0..1usize << vars.len() {
            let lits: Vec<_> = vars.iter().enumerate().map(|(i, &v)| (v, l >> i & 1 == 1)).collect();
            let minterm = b.mgr.cube(&lits);
            b.add_edge(s, rng.next_u32() as usize % states, minterm);
        }
    }
    b.build_dfa().unwrap()
}

fn random_word(rng: &mut ChaCha8Rng, width: usize, len: usize) -> Vec<Vec<bool>> {
    (0..len).map(|_| (0..width).map(|_| rng.next_u32() & 1 == 1).collect()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn compiled_nfa_agrees_with_the_evaluator(
        f in formula(PROPS, 4),
        w in prop::collection::vec(prop::collection::vec(any::<bool>(), 3), 1..7),
    ) {
        let props = names(PROPS);
        let nfa = ltlf_to_nfa(&f, &props, &Limits::default()).unwrap();
        let eval = Evaluator::new(&f, &props).unwrap();
        prop_assert_eq!(nfa.run_word(&w).unwrap(), eval.eval(&w), "{} on {:?}", f, w);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn reverse_canonical_nfa_keeps_the_language(f in formula(PROPS, 3)) {
        let p = posyn_core::ltlf::Partition::new(names(&["a"]), names(&["b"]), names(&["c"])).unwrap();
        let limits = Limits::default();
        let direct = negated_nfa(&f, &p, NfaMode::Direct, &limits).unwrap();
        let canonical = negated_nfa(&f, &p, NfaMode::ReverseCanonical, &limits).unwrap();
        prop_assert!(direct.same_language(&canonical, &limits).unwrap());
        prop_assert_eq!(canonical.kind(), Kind::Nfa);
    }

    #[test]
    fn minimal_dfas_are_fixed_points_of_minimization(f in formula(PROPS, 4)) {
        let limits = Limits::default();
        let dfa = ltlf_to_nfa(&f, &names(PROPS), &limits).unwrap().determinize_minimize(&limits).unwrap();
        let again = dfa.minimize(&limits).unwrap();
        prop_assert_eq!(again.n_states(), dfa.n_states());
        prop_assert!(again.is_isomorphic(&dfa));
        let redone = dfa.determinize_minimize(&limits).unwrap();
        prop_assert!(redone.is_isomorphic(&dfa));
    }
}

#[test]
fn reversal_reverses_words_of_random_dfas() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let alphabet = names(&["a", "b"]);
    for _ in 0..30 {
        let states = 1 + rng.next_u32() as usize % 5;
        let dfa = random_dfa(&mut rng, &alphabet, states);
        let rev = dfa.reverse();
        for len in 0..=5 {
            for w in words(2, len) {
                let back: Vec<_> = w.iter().rev().cloned().collect();
                assert_eq!(dfa.run_word(&w).unwrap(), rev.run_word(&back).unwrap());
            }
        }
        let twice = rev.reverse().determinize_minimize(&Limits::default()).unwrap();
        assert!(twice.same_language(&dfa, &Limits::default()).unwrap());
    }
}

#[test]
fn complement_flips_membership_of_random_words() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let alphabet = names(&["a", "b", "c"]);
    let dfa = random_dfa(&mut rng, &alphabet, 6);
    let co = dfa.complement().unwrap();
    for _ in 0..100 {
        let len = rng.next_u32() as usize % 8;
        let w = random_word(&mut rng, 3, len);
        assert_ne!(dfa.run_word(&w).unwrap(), co.run_word(&w).unwrap());
    }
    assert!(co.complement().unwrap().same_language(&dfa, &Limits::default()).unwrap());
}

#[test]
fn projection_accepts_exactly_the_projected_words() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let alphabet = names(&["x", "u", "y"]);
    for _ in 0..20 {
        let dfa = random_dfa(&mut rng, &alphabet, 3);
        let proj = dfa.project(&names(&["u"])).unwrap();
        assert_eq!(proj.alphabet(), names(&["x", "y"]).as_slice());
        for len in 0..=4 {
            for w in words(2, len) {
                let witnessed = (0..1usize << len).any(|us| {
                    let full: Vec<Vec<bool>> =
                        w.iter().enumerate().map(|(k, l)| vec![l[0], us >> k & 1 == 1, l[1]]).collect();
                    dfa.run_word(&full).unwrap()
                });
                assert_eq!(proj.run_word(&w).unwrap(), witnessed);
            }
        }
    }
}

/// Smallest member of each family: its minimal DFA agrees with the evaluator
/// on every word short enough to enumerate, and on sampled words up to five
/// letters.
#[test]
fn benchmark_dfas_agree_with_the_evaluator() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for (family, n, m) in [(Family::MovingTarget, 2, 1), (Family::CoinGame, 3, 1), (Family::PrivatePeek, 1, 1)] {
        let inst = generate(family, n, m, 0).unwrap();
        let alphabet = inst.partition.alphabet();
        let limits = Limits::default();
        let dfa = ltlf_to_nfa(&inst.formula, &alphabet, &limits).unwrap().determinize_minimize(&limits).unwrap();
        let eval = Evaluator::new(&inst.formula, &alphabet).unwrap();
        let width = alphabet.len();
        let exhaustive = if width <= 6 { 3 } else { 2 };
        for w in words_up_to(width, exhaustive) {
            assert_eq!(dfa.run_word(&w).unwrap(), eval.eval(&w), "{} on {:?}", inst.name(), w);
        }
        for _ in 0..5000 {
            let len = 1 + rng.next_u32() as usize % 5;
            let w = random_word(&mut rng, width, len);
            assert_eq!(dfa.run_word(&w).unwrap(), eval.eval(&w), "{} on {:?}", inst.name(), w);
        }
    }
}

#[test]
fn false_and_true_compile_to_trivial_languages() {
    let props = names(&["a"]);
    let limits = Limits::default();
    let none = ltlf_to_nfa(&Formula::False, &props, &limits).unwrap().determinize_minimize(&limits).unwrap();
    let all = ltlf_to_nfa(&Formula::True, &props, &limits).unwrap().determinize_minimize(&limits).unwrap();
    for w in words_up_to(1, 4) {
        assert!(!none.run_word(&w).unwrap());
        assert!(all.run_word(&w).unwrap());
    }
    // The empty trace satisfies nothing.
    assert!(!all.run_word::<Vec<bool>>(&[]).unwrap());
}
