//! File formats, reports and the synthesis driver behind the `posyn`
//! command-line tool.

pub mod error;
pub mod formats;
pub mod report;
pub mod run;

pub use error::{exit, Error};
