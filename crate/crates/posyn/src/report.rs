//! JSON and CSV renderings of strategies, automata and run statistics.

use std::fs::OpenOptions;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use posyn_core::automata::Automaton;
use posyn_core::game::Strategy;
use posyn_core::symbolic::ConstructionStats;

use crate::error::Error;

fn assignment(names: &[String], values: &[bool]) -> Map<String, Value> {
    names.iter().zip(values).map(|(n, &b)| (n.clone(), Value::from(b as u8))).collect()
}

/// `{initial, states: [{id, output: {y: 0|1}, next: [{obs: {o: 0|1}, to}]}]}`
pub fn strategy_json(s: &Strategy) -> Value {
    let states: Vec<Value> = s
        .states
        .iter()
        .enumerate()
        .map(|(id, st)| {
            let next: Vec<Value> = st
                .next
                .iter()
                .enumerate()
                .map(|(letter, &to)| {
                    let obs: Vec<bool> = (0..s.obs.len()).map(|i| letter >> i & 1 == 1).collect();
                    serde_json::json!({ "obs": assignment(&s.obs, &obs), "to": to })
                })
                .collect();
            serde_json::json!({ "id": id, "output": assignment(&s.outputs, &st.output), "next": next })
        })
        .collect();
    serde_json::json!({ "initial": s.initial, "states": states })
}

/// `{kind, n_states, initial, accepting: [..], edges: [{src, dst, pred}]}`
pub fn automaton_json(a: &Automaton) -> Value {
    let edges: Vec<Value> = (0..a.n_states())
        .flat_map(|src| {
            a.edges_from(src)
                .iter()
                .map(move |&(dst, pred)| serde_json::json!({ "src": src, "dst": dst, "pred": a.pred_text(pred) }))
        })
        .collect();
    serde_json::json!({
        "kind": a.kind().as_str(),
        "n_states": a.n_states(),
        "initial": a.initial(),
        "accepting": a.accepting_states().collect::<Vec<_>>(),
        "edges": edges,
    })
}

/// `{approach, n_state_vars, dd_nodes_transition, dd_nodes_accepting, build_ms}`
pub fn construction_json(stats: &ConstructionStats, build_ms: f64) -> Value {
    serde_json::json!({
        "approach": stats.approach.as_str(),
        "n_state_vars": stats.n_state_vars,
        "dd_nodes_transition": stats.dd_nodes_transition,
        "dd_nodes_accepting": stats.dd_nodes_accepting,
        "build_ms": build_ms,
    })
}

pub fn write_json(path: &Path, value: &Value) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(value)?;
    std::fs::write(path, text + "\n").map_err(|e| Error::io(path, e))
}

/// One row of the statistics CSV; field order is the column order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StatsRow {
    pub instance: String,
    pub approach: String,
    pub explicit_ms: f64,
    pub explicit_states: usize,
    pub symbolic_ms: f64,
    pub dd_nodes: usize,
    pub state_vars: usize,
    pub iterations: usize,
    pub verdict: String,
}

/// Appends rows to a CSV file, writing the header first when the file is new or empty.
pub fn append_stats(path: &Path, rows: &[StatsRow]) -> Result<(), Error> {
    let mut file = OpenOptions::new().create(true).append(true).open(path).map_err(|e| Error::io(path, e))?;
    let empty = file.metadata().map_err(|e| Error::io(path, e))?.len() == 0;
    let mut w = csv::WriterBuilder::new().has_headers(empty).from_writer(Vec::new());
    for row in rows {
        w.serialize(row)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::io(path, e.into_error()))?;
    file.write_all(&bytes).map_err(|e| Error::io(path, e))
}

pub fn read_stats(path: &Path) -> Result<Vec<StatsRow>, Error> {
    let mut r = csv::Reader::from_path(path)?;
    Ok(r.deserialize().collect::<Result<_, _>>()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use posyn_core::game::StrategyState;

    #[test]
    fn strategy_json_shape() {
        let s = Strategy {
            outputs: vec!["y".into()],
            obs: vec!["o".into()],
            initial: 0,
            states: vec![
                StrategyState { memory: vec![], rank: 1, output: vec![true], next: vec![0, 1] },
                StrategyState { memory: vec![], rank: 0, output: vec![false], next: vec![1, 1] },
            ],
            iterations: 1,
        };
        let v = strategy_json(&s);
        assert_eq!(
            v,
            serde_json::json!({"initial": 0, "states": [
                {"id": 0, "output": {"y": 1}, "next": [{"obs": {"o": 0}, "to": 0}, {"obs": {"o": 1}, "to": 1}]},
                {"id": 1, "output": {"y": 0}, "next": [{"obs": {"o": 0}, "to": 1}, {"obs": {"o": 1}, "to": 1}]},
            ]})
        );
    }

    #[test]
    fn stats_append_writes_one_header() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("stats.csv");
        let row = StatsRow {
            instance: "coin-game_n3".into(),
            approach: "belief".into(),
            explicit_ms: 1.5,
            explicit_states: 9,
            symbolic_ms: 0.25,
            dd_nodes: 40,
            state_vars: 9,
            iterations: 1,
            verdict: "UNREALIZABLE".into(),
        };
        append_stats(&path, &[row.clone()]).unwrap();
        append_stats(&path, &[row.clone()]).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(
            text.lines().next().unwrap(),
            "instance,approach,explicit_ms,explicit_states,symbolic_ms,dd_nodes,state_vars,iterations,verdict"
        );
        assert_eq!(text.lines().count(), 3);
        assert_eq!(read_stats(&path).unwrap(), vec![row.clone(), row]);
    }
}
