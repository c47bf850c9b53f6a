//! Formula, partition and benchmark-instance files.
//!
//! A partition file has one `key: names...` line per role. `inputs` lists
//! every environment proposition, `unobservables` (optional) the inputs the
//! system cannot see, and `outputs` the system's propositions. `#` starts a
//! comment.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use posyn_core::bench::BenchInstance;
use posyn_core::ltlf::{parse, Formula, Partition};

use crate::error::Error;

/// A malformed partition file, with a 1-based line number (0 for the whole file).
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

fn format_error(line: usize, message: impl Into<String>) -> FormatError {
    FormatError { line, message: message.into() }
}

pub fn parse_partition(text: &str) -> Result<Partition, FormatError> {
    let mut inputs: Option<Vec<String>> = None;
    let mut unobs: Option<Vec<String>> = None;
    let mut outputs: Option<Vec<String>> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, rest) = line
            .split_once(':')
            .ok_or_else(|| format_error(i + 1, "expected `inputs:`, `unobservables:` or `outputs:`"))?;
        let slot = match key.trim() {
            "inputs" => &mut inputs,
            "unobservables" => &mut unobs,
            "outputs" => &mut outputs,
            other => return Err(format_error(i + 1, format!("unknown section `{other}`"))),
        };
        if slot.is_some() {
            return Err(format_error(i + 1, format!("duplicate `{}:` line", key.trim())));
        }
        *slot = Some(rest.split_whitespace().map(str::to_string).collect());
    }
    let inputs = inputs.ok_or_else(|| format_error(0, "missing `inputs:` line"))?;
    let outputs = outputs.ok_or_else(|| format_error(0, "missing `outputs:` line"))?;
    let unobs = unobs.unwrap_or_default();
    if let Some(u) = unobs.iter().find(|u| !inputs.contains(u)) {
        return Err(format_error(0, format!("unobservable `{u}` is not listed among the inputs")));
    }
    let obs = inputs.iter().filter(|x| !unobs.contains(x)).cloned().collect();
    Partition::new(obs, unobs, outputs).map_err(|e| format_error(0, e.to_string()))
}

/// Inverse of [`parse_partition`]: inputs are listed observables first.
pub fn write_partition(p: &Partition) -> String {
    let join = |xs: &[String]| xs.iter().map(|x| format!(" {x}")).collect::<String>();
    let mut out = String::new();
    writeln!(out, "inputs:{}{}", join(&p.obs), join(&p.unobs)).unwrap();
    if !p.unobs.is_empty() {
        writeln!(out, "unobservables:{}", join(&p.unobs)).unwrap();
    }
    writeln!(out, "outputs:{}", join(&p.outputs)).unwrap();
    out
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

pub fn read_formula(path: &Path) -> Result<Formula, Error> {
    parse(&read(path)?).map_err(|e| Error::Input { path: path.into(), message: e.to_string() })
}

pub fn read_partition(path: &Path) -> Result<Partition, Error> {
    parse_partition(&read(path)?).map_err(|e| Error::Input { path: path.into(), message: e.to_string() })
}

/// `# family=… n=… [m=… seed=…] expected=…`
pub fn header(inst: &BenchInstance) -> String {
    let mut h = format!("# family={} n={}", inst.family, inst.n);
    if let Some(m) = inst.m {
        write!(h, " m={m}").unwrap();
    }
    if let Some(seed) = inst.seed {
        write!(h, " seed={seed}").unwrap();
    }
    write!(h, " expected={}", inst.expected).unwrap();
    h
}

/// Formula and partition file contents, each starting with the header line.
pub fn instance_texts(inst: &BenchInstance) -> (String, String) {
    let h = header(inst);
    (format!("{h}\n{}\n", inst.formula), format!("{h}\n{}", write_partition(&inst.partition)))
}

/// Writes `<name>.ltlf` and `<name>.part` into `dir`, creating it if needed.
pub fn write_instance(inst: &BenchInstance, dir: &Path) -> Result<(PathBuf, PathBuf), Error> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let (formula, partition) = instance_texts(inst);
    let base = dir.join(inst.name());
    let paths = (base.with_extension("ltlf"), base.with_extension("part"));
    fs::write(&paths.0, formula).map_err(|e| Error::io(&paths.0, e))?;
    fs::write(&paths.1, partition).map_err(|e| Error::io(&paths.1, e))?;
    Ok(paths)
}

/// The partition file next to a formula file: same stem, `.part` extension.
pub fn sibling_partition(formula: &Path) -> PathBuf {
    formula.with_extension("part")
}
