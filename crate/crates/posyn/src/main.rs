use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use posyn::formats::{read_formula, read_partition, sibling_partition, write_instance};
use posyn::report::{append_stats, automaton_json, construction_json, strategy_json, write_json};
use posyn::run::{synthesize, Options, Outcome};
use posyn::{exit, Error};
use posyn_core::bench::{generate, Family};
use posyn_core::game::{Verdict, DEFAULT_PLAY_BUDGET};
use posyn_core::limits::DEFAULT_STATE_BUDGET;
use posyn_core::symbolic::{Approach, NfaMode};

/// LTLf synthesis under partial observability.
#[derive(Parser)]
#[command(name = "posyn", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide realizability of a specification and extract a strategy.
    ///
    /// Prints REALIZABLE (exit 0) or UNREALIZABLE (exit 1). Input errors exit
    /// 2, timeouts and exhausted budgets 3, failed validation 4.
    Synth(SynthArgs),
    /// Write a benchmark instance as `<name>.ltlf` and `<name>.part`.
    Gen(GenArgs),
    /// Run many instances, each with every requested approach.
    ///
    /// Each formula file is paired with the `.part` file of the same stem.
    /// Prints one tab-separated line per run. Exit 4 if completed runs of an
    /// instance disagree, otherwise 2 or 3 if any run failed, else 0.
    Batch(BatchArgs),
}

#[derive(Args)]
struct Common {
    /// Explicit NFA used by the projection approach.
    #[arg(long, default_value = "reverse-canonical")]
    nfa_mode: NfaMode,
    /// Wall-clock limit per run in seconds; 0 disables it.
    #[arg(long, default_value_t = 300.0)]
    timeout: f64,
    /// Maximum number of explicitly enumerated automaton states.
    #[arg(long, default_value_t = DEFAULT_STATE_BUDGET)]
    state_budget: usize,
    /// Append one statistics row per completed run to this CSV file.
    #[arg(long)]
    stats_out: Option<PathBuf>,
}

impl Common {
    fn options(&self, approach: Approach) -> Options {
        Options {
            approach,
            nfa_mode: self.nfa_mode,
            timeout: (self.timeout > 0.0).then(|| Duration::from_secs_f64(self.timeout)),
            state_budget: self.state_budget,
            validate: None,
            play_budget: DEFAULT_PLAY_BUDGET,
        }
    }
}

#[derive(Args)]
struct SynthArgs {
    formula: PathBuf,
    partition: PathBuf,
    #[arg(long, default_value = "belief")]
    approach: Approach,
    #[command(flatten)]
    common: Common,
    /// Write the strategy as JSON (realizable instances only).
    #[arg(long)]
    strategy_out: Option<PathBuf>,
    /// Play the strategy against every input sequence up to this many steps.
    #[arg(long, value_name = "H")]
    validate: Option<usize>,
    /// Maximum number of plays examined by --validate.
    #[arg(long, default_value_t = DEFAULT_PLAY_BUDGET)]
    play_budget: u64,
    /// Write the explicit-phase automaton in Graphviz format.
    #[arg(long)]
    dot_out: Option<PathBuf>,
    /// Write the explicit-phase automaton as JSON.
    #[arg(long)]
    automaton_out: Option<PathBuf>,
    /// Write construction sizes and build time as JSON.
    #[arg(long)]
    construction_out: Option<PathBuf>,
    /// Print run statistics to standard error.
    #[arg(short, long)]
    verbose: bool,
}

#[derive(Args)]
struct GenArgs {
    family: Family,
    #[arg(long)]
    n: usize,
    /// Peek count (private-peek only).
    #[arg(long, default_value_t = 1)]
    m: usize,
    /// Generator seed (private-peek only).
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct BatchArgs {
    #[arg(required = true)]
    formulas: Vec<PathBuf>,
    /// Approaches to run; repeatable. Defaults to all three.
    #[arg(long = "approach")]
    approaches: Vec<Approach>,
    #[command(flatten)]
    common: Common,
    /// Concurrent runs.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

fn instance_name(formula: &Path) -> String {
    formula.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "instance".into())
}

fn run_file(formula: &Path, partition: &Path, opts: &Options) -> Result<Outcome, Error> {
    let f = read_formula(formula)?;
    let p = read_partition(partition)?;
    synthesize(&instance_name(formula), &f, &p, opts)
}

fn synth(args: SynthArgs) -> Result<u8, Error> {
    let opts = Options {
        validate: args.validate,
        play_budget: args.play_budget,
        ..args.common.options(args.approach)
    };
    let out = run_file(&args.formula, &args.partition, &opts)?;
    let stats = &out.stats;
    println!("{}", stats.verdict);
    if args.verbose {
        eprintln!(
            "{} {}: explicit {:.1} ms ({} states), symbolic {:.1} ms, {} state vars, {} dd nodes, {} iterations, arena {} nodes",
            stats.instance,
            stats.approach,
            stats.explicit_ms,
            stats.explicit_states,
            stats.symbolic_ms,
            stats.construction.n_state_vars,
            stats.dd_nodes,
            stats.iterations,
            stats.arena_nodes,
        );
    }
    if let Some(path) = &args.common.stats_out {
        append_stats(path, &[stats.row()])?;
    }
    if let Some(path) = &args.dot_out {
        std::fs::write(path, out.explicit.to_dot()).map_err(|e| Error::io(path, e))?;
    }
    if let Some(path) = &args.automaton_out {
        write_json(path, &automaton_json(&out.explicit))?;
    }
    if let Some(path) = &args.construction_out {
        write_json(path, &construction_json(&stats.construction, stats.build_ms))?;
    }
    if let (Some(path), Some(s)) = (&args.strategy_out, &out.strategy) {
        write_json(path, &strategy_json(s))?;
    }
    let verdict_code = match stats.verdict {
        Verdict::Realizable => exit::REALIZABLE,
        Verdict::Unrealizable => exit::UNREALIZABLE,
    };
    match out.validation {
        None => Ok(verdict_code),
        Some(Ok(v)) => {
            if v.horizon_too_small {
                eprintln!(
                    "warning: horizon {} is below the {} fixpoint iterations",
                    args.validate.unwrap_or(0),
                    stats.iterations
                );
            }
            if v.passed {
                eprintln!("validation passed ({} plays)", v.plays);
                Ok(verdict_code)
            } else {
                eprintln!("validation FAILED after {} plays; counterexample:", v.plays);
                for (k, letter) in v.counterexample.unwrap_or_default().iter().enumerate() {
                    let true_props: Vec<&str> =
                        letter.iter().filter(|(_, &b)| b).map(|(n, _)| n.as_str()).collect();
                    eprintln!("  {k}: {{{}}}", true_props.join(", "));
                }
                Ok(exit::CHECK)
            }
        }
        Some(Err(e)) => {
            eprintln!("validation inconclusive: {e}");
            Ok(exit::RESOURCE)
        }
    }
}

fn gen(args: GenArgs) -> Result<u8, Error> {
    let inst = generate(args.family, args.n, args.m, args.seed)?;
    let (formula, partition) = write_instance(&inst, &args.out)?;
    println!("{}", formula.display());
    println!("{}", partition.display());
    Ok(0)
}

fn batch(args: BatchArgs) -> Result<u8, Error> {
    let approaches = if args.approaches.is_empty() { Approach::ALL.to_vec() } else { args.approaches.clone() };
    let runs: Vec<(&PathBuf, Approach)> =
        args.formulas.iter().flat_map(|f| approaches.iter().map(move |&a| (f, a))).collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs.max(1))
        .build()
        .expect("thread pool construction");
    let results: Vec<Result<Outcome, Error>> = pool.install(|| {
        runs.par_iter()
            .map(|&(f, a)| run_file(f, &sibling_partition(f), &args.common.options(a)))
            .collect()
    });

    let mut code = exit::REALIZABLE;
    let mut rows = Vec::new();
    let mut verdicts: BTreeMap<String, Vec<(Approach, Verdict)>> = BTreeMap::new();
    for (&(f, a), r) in runs.iter().zip(results) {
        let name = instance_name(f);
        match r {
            Ok(out) => {
                println!("{name}\t{a}\t{}", out.stats.verdict);
                verdicts.entry(name).or_default().push((a, out.stats.verdict));
                rows.push(out.stats.row());
            }
            Err(e) => {
                println!("{name}\t{a}\terror: {e}");
                code = code.max(e.exit_code());
            }
        }
    }
    if let Some(path) = &args.common.stats_out {
        append_stats(path, &rows)?;
    }
    for (name, vs) in &verdicts {
        if vs.iter().any(|(_, v)| *v != vs[0].1) {
            let detail: Vec<String> = vs.iter().map(|(a, v)| format!("{a}={v}")).collect();
            eprintln!("disagreement on {name}: {}", detail.join(" "));
            code = exit::CHECK;
        }
    }
    Ok(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Synth(a) => synth(a),
        Command::Gen(a) => gen(a),
        Command::Batch(a) => batch(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("posyn: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
