use alloc::sync::Arc;
use core::sync::atomic::{AtomicBool, Ordering};

use crate::error::Error;

/// Default cap on explicitly enumerated automaton states.
pub const DEFAULT_STATE_BUDGET: usize = 1 << 20;

/// Resource limits threaded through the explicit and symbolic phases.
///
/// `cancel` is polled at coarse-grained points (per explicit state, per
/// fixpoint iteration); whoever owns the flag decides when to raise it.
#[derive(Clone, Debug)]
pub struct Limits {
    pub state_budget: usize,
    cancel: Option<Arc<AtomicBool>>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { state_budget: DEFAULT_STATE_BUDGET, cancel: None }
    }
}

impl Limits {
    pub fn with_state_budget(state_budget: usize) -> Self {
        Limits { state_budget, cancel: None }
    }

    pub fn with_cancel(mut self, flag: Arc<AtomicBool>) -> Self {
        self.cancel = Some(flag);
        self
    }

    pub fn check(&self) -> Result<(), Error> {
        match &self.cancel {
            Some(flag) if flag.load(Ordering::Relaxed) => Err(Error::Interrupted),
            _ => Ok(()),
        }
    }

    pub fn check_states(&self, n: usize) -> Result<(), Error> {
        if n > self.state_budget {
            return Err(Error::StateBudget(self.state_budget));
        }
        self.check()
    }
}
