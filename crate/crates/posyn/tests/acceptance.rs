//! Acceptance suite: one PASS/FAIL line per criterion. Criterion 8 is
//! observational and never fails the run.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use posyn::report::{append_stats, read_stats};
use posyn::run::{synthesize, Options, Outcome};
use posyn_core::automata::ltlf_to_nfa;
use posyn_core::bench::{generate, random_formula, BenchInstance, Expected, Family};
use posyn_core::game::{oracle_solve_explicit, validate_strategy, Verdict};
use posyn_core::ltlf::{Evaluator, Formula, Partition};
use posyn_core::symbolic::{quantified_construction, spec_dfa, Approach};
use posyn_core::{Error as CoreError, Limits};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

const RUN_TIMEOUT: Duration = Duration::from_secs(300);
const ORACLE_SECONDS: f64 = 60.0;
const PLAY_LIMIT: u64 = 10_000_000;

struct Run {
    approach: Approach,
    result: Result<Outcome, posyn::Error>,
}

struct Case {
    inst: BenchInstance,
    runs: Vec<Run>,
}

impl Case {
    fn verdicts(&self) -> Vec<(Approach, Verdict)> {
        self.runs
            .iter()
            .filter_map(|r| r.result.as_ref().ok().map(|o| (r.approach, o.stats.verdict)))
            .collect()
    }
}

struct Report {
    gating_failures: usize,
}

impl Report {
    fn line(&mut self, n: usize, title: &str, gating: bool, pass: bool, detail: String) {
        let status = if pass { "PASS" } else { "FAIL" };
        let kind = if gating { "" } else { " (observational)" };
        println!("criterion {n} {title}: {status}{kind} {detail}");
        if gating && !pass {
            self.gating_failures += 1;
        }
    }
}

fn names(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn words(width: usize, len: usize) -> impl Iterator<Item = Vec<Vec<bool>>> {
    let letters = 1usize << width;
    (0..letters.pow(len as u32)).map(move |mut code| {
        (0..len)
            .map(|_| {
                let l = code % letters;
                code /= letters;
                (0..width).map(|i| l >> i & 1 == 1).collect()
            })
            .collect()
    })
}

fn solve_all(inst: BenchInstance) -> Case {
    let runs = Approach::ALL
        .iter()
        .map(|&approach| {
            let opts = Options { approach, timeout: Some(RUN_TIMEOUT), ..Options::default() };
            Run { approach, result: synthesize(&inst.name(), &inst.formula, &inst.partition, &opts) }
        })
        .collect();
    Case { inst, runs }
}

fn headline_instances() -> Vec<BenchInstance> {
    let mut out: Vec<BenchInstance> = (2..=5).map(|n| generate(Family::MovingTarget, n, 1, 0).unwrap()).collect();
    out.extend((3..=5).map(|n| generate(Family::CoinGame, n, 1, 0).unwrap()));
    out
}

fn peek_instances() -> Vec<BenchInstance> {
    let mut out = Vec::new();
    for n in 1..=2 {
        for m in 1..=2 {
            out.extend((0..30).map(|seed| generate(Family::PrivatePeek, n, m, seed).unwrap()));
        }
    }
    out
}

fn criterion_1(report: &mut Report, headline: &[Case]) {
    let (mut matched, mut incomplete, mut wrong) = (0, 0, Vec::new());
    for case in headline {
        let expected = match case.inst.expected {
            Expected::Realizable => Verdict::Realizable,
            Expected::Unrealizable => Verdict::Unrealizable,
            Expected::Unknown => unreachable!("headline families have known verdicts"),
        };
        for run in &case.runs {
            match &run.result {
                Ok(o) if o.stats.verdict == expected => matched += 1,
                Ok(o) => wrong.push(format!("{} {}={}", case.inst.name(), run.approach, o.stats.verdict)),
                Err(e) => {
                    incomplete += 1;
                    println!("  note: {} {} did not complete: {e}", case.inst.name(), run.approach);
                }
            }
        }
        if case.verdicts().is_empty() {
            wrong.push(format!("{} no approach completed", case.inst.name()));
        }
    }
    report.line(
        1,
        "benchmark verdicts",
        true,
        wrong.is_empty(),
        format!("({matched} runs match, {incomplete} incomplete, mismatches: {wrong:?})"),
    );
}

fn criterion_2(report: &mut Report, cases: &[&Case]) {
    let mut disagreements = Vec::new();
    let mut compared = 0;
    for case in cases {
        let vs = case.verdicts();
        compared += vs.len().saturating_sub(1);
        if vs.iter().any(|(_, v)| *v != vs[0].1) {
            disagreements.push(format!("{} {:?}", case.inst.name(), vs));
        }
    }
    report.line(
        2,
        "cross-approach agreement",
        true,
        disagreements.is_empty(),
        format!("({} instances, {compared} pairwise comparisons, disagreements: {disagreements:?})", cases.len()),
    );
}

fn criterion_3(report: &mut Report, cases: &[&Case]) {
    let (mut agreed, mut over_budget, mut slowest) = (0, 0, 0.0f64);
    let mut failures = Vec::new();
    for case in cases {
        let inst = &case.inst;
        let start = Instant::now();
        let oracle = oracle_solve_explicit(&inst.formula, &inst.partition, &Limits::default());
        let secs = start.elapsed().as_secs_f64();
        let must_fit = inst.n <= 3 && inst.m.unwrap_or(1) == 1;
        match oracle {
            Ok(v) => {
                slowest = slowest.max(secs);
                if secs > ORACLE_SECONDS {
                    failures.push(format!("{} took {secs:.1} s", inst.name()));
                }
                if case.verdicts().iter().all(|(_, s)| *s == v) {
                    agreed += 1;
                } else {
                    failures.push(format!("{} oracle={v} symbolic={:?}", inst.name(), case.verdicts()));
                }
            }
            Err(CoreError::StateBudget(_)) if !must_fit => over_budget += 1,
            Err(e) => failures.push(format!("{} oracle error: {e}", inst.name())),
        }
    }
    report.line(
        3,
        "oracle equivalence",
        true,
        failures.is_empty(),
        format!("({agreed} instances agree, {over_budget} beyond the belief budget, slowest oracle {slowest:.2} s, failures: {failures:?})"),
    );
}

fn criterion_4(report: &mut Report) {
    let props = names(&["a", "b", "c"]);
    let limits = Limits::default();
    let (mut words_checked, mut failures) = (0usize, Vec::new());
    for seed in 0..200u64 {
        let f = random_formula(&mut ChaCha8Rng::seed_from_u64(seed), &props, 4);
        let dfa = ltlf_to_nfa(&f, &props, &limits).and_then(|n| n.determinize_minimize(&limits)).unwrap();
        let eval = Evaluator::new(&f, &props).unwrap();
        let bad = (1..=5).flat_map(|len| words(3, len)).find(|w| {
            words_checked += 1;
            dfa.run_word(w).unwrap() != eval.eval(w)
        });
        if let Some(w) = bad {
            failures.push(format!("seed {seed}: {f} on {w:?}"));
        }
    }
    report.line(
        4,
        "language soundness",
        true,
        failures.is_empty(),
        format!("(200 formulas, {words_checked} words, failures: {failures:?})"),
    );
}

fn criterion_5(report: &mut Report) {
    let p = Partition::new(names(&["o"]), names(&["u"]), names(&["y"])).unwrap();
    let alphabet = p.alphabet();
    let limits = Limits::default();
    let (mut words_checked, mut failures) = (0usize, Vec::new());
    for seed in 0..50u64 {
        let f = random_formula(&mut ChaCha8Rng::seed_from_u64(1000 + seed), &alphabet, 4);
        let q = quantified_construction(&spec_dfa(&f, &p, &limits).unwrap(), &p, &limits).unwrap();
        let eval = Evaluator::new(&f, &alphabet).unwrap();
        for len in 1..=4 {
            for w in words(2, len) {
                words_checked += 1;
                let all_extensions = (0..1usize << len).all(|us| {
                    let full: Vec<Vec<bool>> =
                        w.iter().enumerate().map(|(k, l)| vec![l[0], l[1], us >> k & 1 == 1]).collect();
                    eval.eval(&full)
                });
                if q.run_word(&w).unwrap() != all_extensions {
                    failures.push(format!("seed {seed}: {f} on {w:?}"));
                }
            }
        }
    }
    report.line(
        5,
        "quantified-language property",
        true,
        failures.is_empty(),
        format!("(50 formulas, {words_checked} words, failures: {failures:?})"),
    );
}

fn criterion_6(report: &mut Report, headline: &[Case]) {
    let (mut passed, mut infeasible, mut failures) = (0, 0, Vec::new());
    for case in headline {
        for run in &case.runs {
            let Ok(out) = &run.result else { continue };
            let Some(s) = &out.strategy else { continue };
            let horizon = out.stats.iterations + 2;
            let inst = &case.inst;
            match validate_strategy(s, &inst.formula, &inst.partition, horizon, PLAY_LIMIT, &Limits::default()) {
                Ok(v) if v.passed => passed += 1,
                Ok(v) => failures.push(format!("{} {} counterexample {:?}", inst.name(), run.approach, v.counterexample)),
                Err(CoreError::PlayBudget(_)) => infeasible += 1,
                Err(e) => failures.push(format!("{} {}: {e}", inst.name(), run.approach)),
            }
        }
    }
    report.line(
        6,
        "strategy validity",
        true,
        failures.is_empty() && passed > 0,
        format!("({passed} strategies pass, {infeasible} beyond 10^7 plays, failures: {failures:?})"),
    );
}

/// Random specifications over two observable inputs and one output, split
/// evenly between realizable and unrealizable by the explicit oracle.
fn criterion_7(report: &mut Report) {
    let p = Partition::new(names(&["a", "b"]), vec![], names(&["y"])).unwrap();
    let alphabet = p.alphabet();
    let limits = Limits::default();
    let mut picked: Vec<(Formula, Verdict)> = Vec::new();
    let (mut realizable, mut unrealizable) = (0, 0);
    let mut seed = 0u64;
    while realizable + unrealizable < 20 {
        let f = random_formula(&mut ChaCha8Rng::seed_from_u64(5000 + seed), &alphabet, 3);
        seed += 1;
        let v = oracle_solve_explicit(&f, &p, &limits).unwrap();
        let slot = if v == Verdict::Realizable { &mut realizable } else { &mut unrealizable };
        if *slot < 10 {
            *slot += 1;
            picked.push((f, v));
        }
    }
    let mut failures = Vec::new();
    for (f, expected) in &picked {
        for approach in Approach::ALL {
            let opts = Options { approach, ..Options::default() };
            match synthesize("random", f, &p, &opts) {
                Ok(o) if o.stats.verdict == *expected => {}
                Ok(o) => failures.push(format!("{f} {approach}={} oracle={expected}", o.stats.verdict)),
                Err(e) => failures.push(format!("{f} {approach}: {e}")),
            }
        }
    }
    report.line(
        7,
        "degenerate partial observability",
        true,
        failures.is_empty(),
        format!("(10 realizable + 10 unrealizable formulas from {seed} samples, 60 runs, failures: {failures:?})"),
    );
}

fn criterion_8(report: &mut Report, cases: &[&Case]) {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("acceptance_stats.csv");
    let _ = std::fs::remove_file(&path);
    let rows: Vec<_> = cases
        .iter()
        .flat_map(|c| c.runs.iter().filter_map(|r| r.result.as_ref().ok().map(|o| o.stats.row())))
        .collect();
    append_stats(&path, &rows).unwrap();
    let mut vars: BTreeMap<String, BTreeMap<String, usize>> = BTreeMap::new();
    for row in read_stats(&path).unwrap() {
        vars.entry(row.instance).or_default().insert(row.approach, row.state_vars);
    }
    let (mut fewer, mut compared, mut exceptions) = (0, 0, Vec::new());
    for (instance, by) in &vars {
        let Some(&q) = by.get("quantified") else { continue };
        let others: Vec<usize> = ["belief", "projection"].iter().filter_map(|a| by.get(*a).copied()).collect();
        if others.is_empty() {
            continue;
        }
        compared += 1;
        if others.iter().all(|&o| q < o) {
            fewer += 1;
        } else {
            exceptions.push(format!("{instance} {by:?}"));
        }
    }
    report.line(
        8,
        "state-variable counts",
        false,
        exceptions.is_empty(),
        format!(
            "(quantified uses fewer state variables on {fewer}/{compared} instances, exceptions: {exceptions:?}; rows in {})",
            path.display()
        ),
    );
}

fn main() {
    let start = Instant::now();
    let headline: Vec<Case> = headline_instances().into_iter().map(solve_all).collect();
    let peek: Vec<Case> = peek_instances().into_iter().map(solve_all).collect();
    let all: Vec<&Case> = headline.iter().chain(&peek).collect();

    let mut report = Report { gating_failures: 0 };
    criterion_1(&mut report, &headline);
    criterion_2(&mut report, &all);
    criterion_3(&mut report, &all);
    criterion_4(&mut report);
    criterion_5(&mut report);
    criterion_6(&mut report, &headline);
    criterion_7(&mut report);
    criterion_8(&mut report, &all);
    println!("acceptance finished in {:.1} s", start.elapsed().as_secs_f64());
    if report.gating_failures > 0 {
        println!("{} gating criteria failed", report.gating_failures);
        std::process::exit(1);
    }
}
