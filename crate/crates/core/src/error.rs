use alloc::string::String;

use crate::bdd::BddError;
use crate::ltlf::ParseError;

/// Errors surfaced by the synthesis pipeline.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("satisfaction is undefined on the empty trace")]
    EmptyTrace,
    #[error("no value for proposition `{0}`")]
    MissingProposition(String),
    #[error("invalid partition: {0}")]
    Partition(String),
    #[error(transparent)]
    Bdd(#[from] BddError),
    #[error("invalid automaton: {0}")]
    Automaton(String),
    #[error("explicit state budget of {0} states exceeded")]
    StateBudget(usize),
    #[error("playout budget of {0} plays exceeded")]
    PlayBudget(u64),
    #[error("interrupted")]
    Interrupted,
    #[error("no strategy exists: the game is unrealizable")]
    Unrealizable,
    #[error("invalid parameter: {0}")]
    Parameter(String),
}
