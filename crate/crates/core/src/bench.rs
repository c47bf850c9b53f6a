//! Benchmark families and random formulas.
//!
//! Three parameterized games with partial observability:
//!
//! * Moving-Target: guess the position of a hidden target that moves one
//!   step left or right every turn;
//! * Coin-Game: flip hidden coins to heads while the environment may
//!   secretly swap the neighbours of the flipped coin;
//! * Private-Peek: slide plates in and out of a box until a hole lines up,
//!   with holes placed by seeded random cubes.
//!
//! Randomness comes from ChaCha8 seeded with the instance seed, so every
//! instance is reproducible from its parameters.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::Error;
use crate::ltlf::{Formula, Partition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    MovingTarget,
    CoinGame,
    PrivatePeek,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::MovingTarget, Family::CoinGame, Family::PrivatePeek];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::MovingTarget => "moving-target",
            Family::CoinGame => "coin-game",
            Family::PrivatePeek => "private-peek",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Family::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown family `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Expected {
    Realizable,
    Unrealizable,
    Unknown,
}

impl Expected {
    pub fn as_str(self) -> &'static str {
        match self {
            Expected::Realizable => "REALIZABLE",
            Expected::Unrealizable => "UNREALIZABLE",
            Expected::Unknown => "UNKNOWN",
        }
    }
}

impl fmt::Display for Expected {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Expected {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "REALIZABLE" => Ok(Expected::Realizable),
            "UNREALIZABLE" => Ok(Expected::Unrealizable),
            "UNKNOWN" => Ok(Expected::Unknown),
            _ => Err(Error::Parameter(format!("unknown expected verdict `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchInstance {
    pub family: Family,
    pub n: usize,
    /// Holes per player; Private-Peek only.
    pub m: Option<usize>,
    /// Private-Peek only.
    pub seed: Option<u64>,
    pub formula: Formula,
    pub partition: Partition,
    pub expected: Expected,
}

impl BenchInstance {
    /// File stem such as `coin-game_n4` or `private-peek_n2_m1_s7`.
    pub fn name(&self) -> String {
        match (self.m, self.seed) {
            (Some(m), Some(s)) => format!("{}_n{}_m{}_s{}", self.family, self.n, m, s),
            _ => format!("{}_n{}", self.family, self.n),
        }
    }
}

fn indexed(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn props(names: &[String]) -> Vec<Formula> {
    names.iter().map(Formula::prop).collect()
}

/// No two of `xs` hold together: pairwise negated conjunctions.
pub fn at_most_one(xs: &[Formula]) -> Formula {
    let mut clauses = Vec::new();
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            clauses.push(Formula::not(Formula::and(xs[i].clone(), xs[j].clone())));
        }
    }
    Formula::and_all(clauses)
}

/// Exactly one of `xs` holds: their disjunction plus [`at_most_one`].
pub fn exactly_one(xs: &[Formula]) -> Formula {
    Formula::and(Formula::or_all(xs.iter().cloned()), at_most_one(xs))
}

fn x(f: Formula) -> Formula {
    Formula::next(f)
}

fn g(f: Formula) -> Formula {
    Formula::globally(f)
}

fn x_true() -> Formula {
    x(Formula::True)
}

/// Moving-Target on a line of `n >= 2` positions.
pub fn gen_moving_target(n: usize) -> Result<BenchInstance, Error> {
    if n < 2 {
        return Err(Error::Parameter("moving-target needs n >= 2".into()));
    }
    let targets = indexed("target_", n);
    let guesses = indexed("guess_", n);
    let t = props(&targets);
    let gs = props(&guesses);
    let hit = Formula::prop("hit");

    let target = g(exactly_one(&t));
    let moves = Formula::and_all((0..n).map(|i| {
        let mut neighbours = Vec::new();
        if i > 0 {
            neighbours.push(t[i - 1].clone());
        }
        if i + 1 < n {
            neighbours.push(t[i + 1].clone());
        }
        Formula::implies(x(t[i].clone()), Formula::or_all(neighbours))
    }));
    let movement = g(Formula::implies(x_true(), moves));
    let hits = Formula::and_all(
        (0..n).map(|i| g(Formula::implies(Formula::and(t[i].clone(), gs[i].clone()), hit.clone()))),
    );
    let system = Formula::and(g(exactly_one(&gs)), Formula::eventually(hit));
    let formula = Formula::implies(Formula::and_all([target, movement, hits]), system);
    Ok(BenchInstance {
        family: Family::MovingTarget,
        n,
        m: None,
        seed: None,
        formula,
        partition: Partition::new(alloc::vec!["hit".into()], targets, guesses)?,
        expected: Expected::Realizable,
    })
}

/// Coin-Game with `n >= 3` coins in a ring.
///
/// Every assumption that starts at the second instant uses the weak next,
/// so a one-letter trace does not falsify the assumptions by itself.
pub fn gen_coin_game(n: usize) -> Result<BenchInstance, Error> {
    if n < 3 {
        return Err(Error::Parameter("coin-game needs n >= 3".into()));
    }
    let coins = indexed("coin_", n);
    let flips = indexed("flip_", n);
    let c = props(&coins);
    let fl = props(&flips);
    let (valid, heads, swap) = (Formula::prop("valid"), Formula::prop("heads"), Formula::prop("swap"));
    let unchanged = |i: usize| Formula::iff(x(c[i].clone()), c[i].clone());

    let init = exactly_one(&c.iter().cloned().map(Formula::not).collect::<Vec<_>>());
    let valid_rule = Formula::weak_next(g(Formula::iff(valid.clone(), exactly_one(&fl))));
    let heads_rule = Formula::weak_next(g(Formula::implies(
        valid.clone(),
        Formula::iff(
            heads,
            Formula::or_all((0..n).map(|i| Formula::and(fl[i].clone(), c[i].clone()))),
        ),
    )));
    let update = Formula::and_all((0..n).map(|i| {
        let (l, r) = ((i + n - 1) % n, (i + 1) % n);
        let flipped = Formula::iff(x(c[i].clone()), Formula::not(c[i].clone()));
        let swapped = Formula::and(
            Formula::iff(x(c[l].clone()), c[r].clone()),
            Formula::iff(x(c[r].clone()), c[l].clone()),
        );
        let kept = Formula::and(unchanged(l), unchanged(r));
        let others = Formula::and_all((0..n).filter(|&k| k != i && k != l && k != r).map(unchanged));
        let effect = Formula::and_all([
            flipped,
            Formula::implies(x(swap.clone()), swapped),
            Formula::implies(x(Formula::not(swap.clone())), kept),
            others,
        ]);
        g(Formula::implies(x(valid.clone()), Formula::implies(x(fl[i].clone()), effect)))
    }));
    let system = Formula::eventually(Formula::and_all(c.iter().cloned()));
    let formula =
        Formula::implies(Formula::and_all([init, valid_rule, heads_rule, update]), system);
    let mut unobs = coins;
    unobs.push("swap".into());
    Ok(BenchInstance {
        family: Family::CoinGame,
        n,
        m: None,
        seed: None,
        formula,
        partition: Partition::new(alloc::vec!["valid".into(), "heads".into()], unobs, flips)?,
        expected: if n == 3 { Expected::Unrealizable } else { Expected::Realizable },
    })
}

/// Conjunction of a random subset of `vars`, each kept with probability
/// 1/2 and negated with probability 1/2. One 32-bit draw per variable:
/// bit 0 selects, bit 1 negates.
pub fn random_cube(rng: &mut ChaCha8Rng, vars: &[String]) -> Formula {
    let mut lits = Vec::new();
    for v in vars {
        let draw = rng.next_u32();
        if draw & 1 == 1 {
            let p = Formula::prop(v.as_str());
            lits.push(if draw & 2 == 2 { Formula::not(p) } else { p });
        }
    }
    Formula::and_all(lits)
}

/// Private-Peek with `n` plates and `m` holes per player.
///
/// Hole cubes are drawn for the environment's holes first, then the
/// system's, each over the environment plates followed by the system plates.
pub fn gen_private_peek(n: usize, m: usize, seed: u64) -> Result<BenchInstance, Error> {
    if n == 0 || m == 0 {
        return Err(Error::Parameter("private-peek needs n >= 1 and m >= 1".into()));
    }
    let plates_e = indexed("plate_e_", n);
    let plates_s = indexed("plate_s_", n);
    let peeks_e = indexed("peek_e_", m);
    let peeks_s = indexed("peek_s_", m);
    let (turn_s, turn_e) = (Formula::prop("turn_s"), Formula::prop("turn_e"));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let all_plates: Vec<String> = plates_e.iter().chain(&plates_s).cloned().collect();
    let cubes_e: Vec<Formula> = (0..m).map(|_| random_cube(&mut rng, &all_plates)).collect();
    let cubes_s: Vec<Formula> = (0..m).map(|_| random_cube(&mut rng, &all_plates)).collect();

    let plates_in = |plates: &[String]| Formula::and_all(props(plates));
    let wait = |plates: &[String], turn: &Formula| {
        Formula::and_all(plates.iter().map(|p| {
            let p = Formula::prop(p.as_str());
            g(Formula::implies(x(Formula::not(turn.clone())), Formula::iff(x(p.clone()), p)))
        }))
    };
    let moves = |plates: &[String], turn: &Formula| {
        let changed: Vec<Formula> = plates
            .iter()
            .map(|p| {
                let p = Formula::prop(p.as_str());
                Formula::iff(x(p.clone()), Formula::not(p))
            })
            .collect();
        g(Formula::implies(x(turn.clone()), at_most_one(&changed)))
    };
    let peek = |peeks: &[String], cubes: &[Formula]| {
        Formula::and_all(
            peeks.iter().zip(cubes).map(|(p, c)| g(Formula::iff(Formula::prop(p.as_str()), c.clone()))),
        )
    };

    let turn = Formula::and_all([
        Formula::not(turn_e.clone()),
        Formula::not(turn_s.clone()),
        x(turn_s.clone()),
        x(g(Formula::iff(turn_s.clone(), Formula::not(turn_e.clone())))),
        x(g(Formula::implies(x_true(), Formula::iff(x(turn_s.clone()), turn_e.clone())))),
    ]);
    let safe = Formula::and_all(peeks_e.iter().map(|p| {
        Formula::implies(turn_e.clone(), Formula::not(Formula::prop(p.as_str())))
    }));
    let reach = Formula::and(turn_s.clone(), Formula::or_all(props(&peeks_s)));
    let goal = Formula::until(safe, reach);

    let assumptions = Formula::and_all([
        plates_in(&plates_e),
        wait(&plates_e, &turn_e),
        moves(&plates_e, &turn_e),
        peek(&peeks_e, &cubes_e),
        peek(&peeks_s, &cubes_s),
    ]);
    let guarantees = Formula::and_all([
        turn,
        plates_in(&plates_s),
        wait(&plates_s, &turn_s),
        moves(&plates_s, &turn_s),
        goal,
    ]);
    let formula = Formula::implies(assumptions, guarantees);

    let hidden = n.div_ceil(2);
    let mut unobs = peeks_e;
    unobs.extend(plates_e[..hidden].iter().cloned());
    let mut obs: Vec<String> = plates_e[hidden..].to_vec();
    obs.extend(peeks_s);
    let mut outputs: Vec<String> = alloc::vec!["turn_s".into(), "turn_e".into()];
    outputs.extend(plates_s);
    Ok(BenchInstance {
        family: Family::PrivatePeek,
        n,
        m: Some(m),
        seed: Some(seed),
        formula,
        partition: Partition::new(obs, unobs, outputs)?,
        expected: Expected::Unknown,
    })
}

/// Dispatches on `family`; `m` and `seed` are only read for Private-Peek.
pub fn generate(family: Family, n: usize, m: usize, seed: u64) -> Result<BenchInstance, Error> {
    match family {
        Family::MovingTarget => gen_moving_target(n),
        Family::CoinGame => gen_coin_game(n),
        Family::PrivatePeek => gen_private_peek(n, m, seed),
    }
}

/// Random formula of nesting depth at most `depth` over `props`, using the
/// full operator set.
pub fn random_formula(rng: &mut ChaCha8Rng, props: &[String], depth: usize) -> Formula {
    let r = rng.next_u32();
    if depth == 0 || r % 8 == 0 {
        return match (r >> 3) % 10 {
            0 => Formula::True,
            1 => Formula::False,
            k => Formula::prop(props[k as usize % props.len()].as_str()),
        };
    }
    let sub = |rng: &mut ChaCha8Rng| random_formula(rng, props, depth - 1);
    match (r >> 3) % 13 {
        0 => Formula::not(sub(rng)),
        1 => Formula::and(sub(rng), sub(rng)),
        2 => Formula::or(sub(rng), sub(rng)),
        3 => Formula::implies(sub(rng), sub(rng)),
        4 => Formula::iff(sub(rng), sub(rng)),
        5 => Formula::next(sub(rng)),
        6 => Formula::weak_next(sub(rng)),
        7 | 8 => Formula::until(sub(rng), sub(rng)),
        9 => Formula::release(sub(rng), sub(rng)),
        10 | 11 => Formula::eventually(sub(rng)),
        _ => Formula::globally(sub(rng)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ltlf::Evaluator;
    use alloc::collections::BTreeSet;
    use alloc::string::ToString;
    use alloc::vec;

    fn vars(k: usize) -> Vec<String> {
        indexed("x", k)
    }

    fn count_models(f: &Formula, k: usize) -> usize {
        let ev = Evaluator::new(f, &vars(k)).unwrap();
        (0..1usize << k)
            .filter(|m| ev.eval(&[(0..k).map(|i| m >> i & 1 == 1).collect::<Vec<_>>()]))
            .count()
    }

    #[test]
    fn cardinality_helpers_count_models() {
        for k in 1..=6 {
            let xs = props(&vars(k));
            assert_eq!(count_models(&exactly_one(&xs), k), k);
            assert_eq!(count_models(&at_most_one(&xs), k), k + 1);
        }
    }

    #[test]
    fn exactly_one_of_two_is_xor() {
        let xs = props(&vars(2));
        let ev = Evaluator::new(&exactly_one(&xs), &vars(2)).unwrap();
        for m in 0..4usize {
            let l = vec![m & 1 == 1, m & 2 == 2];
            assert_eq!(ev.eval(&[l.clone()]), l[0] != l[1]);
        }
    }

    fn check_partition(inst: &BenchInstance) {
        let free: BTreeSet<String> = inst.formula.props();
        let placed: BTreeSet<String> = inst.partition.alphabet().into_iter().collect();
        assert_eq!(free, placed, "{}", inst.name());
    }

    #[test]
    fn partitions_cover_exactly_the_free_propositions() {
        for n in 2..=5 {
            check_partition(&gen_moving_target(n).unwrap());
        }
        for n in 3..=5 {
            check_partition(&gen_coin_game(n).unwrap());
        }
        for n in 1..=3 {
            for m in 1..=2 {
                for seed in 0..10 {
                    check_partition(&gen_private_peek(n, m, seed).unwrap());
                }
            }
        }
    }

    #[test]
    fn roles_follow_the_family_definitions() {
        let mt = gen_moving_target(3).unwrap();
        assert_eq!(mt.partition.obs, vec!["hit".to_string()]);
        assert_eq!(mt.partition.unobs.len(), 3);
        let cg = gen_coin_game(4).unwrap();
        assert_eq!(cg.partition.obs, vec!["valid".to_string(), "heads".to_string()]);
        assert!(cg.partition.unobs.contains(&"swap".to_string()));
        assert_eq!(cg.expected, Expected::Realizable);
        assert_eq!(gen_coin_game(3).unwrap().expected, Expected::Unrealizable);
        let pp = gen_private_peek(3, 2, 1).unwrap();
        assert_eq!(pp.partition.unobs, ["peek_e_1", "peek_e_2", "plate_e_1", "plate_e_2"]);
        assert_eq!(pp.partition.obs, ["plate_e_3", "peek_s_1", "peek_s_2"]);
        assert_eq!(pp.partition.outputs, ["turn_s", "turn_e", "plate_s_1", "plate_s_2", "plate_s_3"]);
        assert_eq!(pp.name(), "private-peek_n3_m2_s1");
    }

    #[test]
    fn parameters_are_checked() {
        assert!(gen_moving_target(1).is_err());
        assert!(gen_coin_game(2).is_err());
        assert!(gen_private_peek(0, 1, 0).is_err());
        assert!(gen_private_peek(1, 0, 0).is_err());
        assert!("coin-game".parse::<Family>().is_ok());
        assert!("coins".parse::<Family>().is_err());
    }

    #[test]
    fn generation_is_seeded() {
        assert_eq!(gen_private_peek(2, 2, 7).unwrap(), gen_private_peek(2, 2, 7).unwrap());
        let differ = (0..10).any(|s| gen_private_peek(2, 2, s).unwrap() != gen_private_peek(2, 2, 7).unwrap());
        assert!(differ);
    }

    #[test]
    fn empty_cube_is_true() {
        // Every selection bit off yields the empty conjunction.
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut saw_empty = false;
        for _ in 0..64 {
            if random_cube(&mut rng, &vars(2)) == Formula::True {
                saw_empty = true;
            }
        }
        assert!(saw_empty);
        assert_eq!(random_cube(&mut rng, &[]), Formula::True);
    }

    #[test]
    fn random_formulas_respect_depth_and_props() {
        fn depth(f: &Formula) -> usize {
            use Formula::*;
            match f {
                True | False | Prop(_) => 0,
                Not(a) | Next(a) | WeakNext(a) | Eventually(a) | Globally(a) => 1 + depth(a),
                And(a, b) | Or(a, b) | Implies(a, b) | Iff(a, b) | Until(a, b) | Release(a, b) => {
                    1 + depth(a).max(depth(b))
                }
            }
        }
        let ps = vars(3);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let f = random_formula(&mut rng, &ps, 4);
            assert!(depth(&f) <= 4);
            assert!(f.props().iter().all(|p| ps.contains(p)));
        }
    }
}
