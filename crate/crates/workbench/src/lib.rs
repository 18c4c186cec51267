//! Text front end and JSON reports over `deligne-core`.

pub mod fixtures;
pub mod parse;
pub mod report;
pub mod run;

pub use report::{Check, Report, WbError, WbResult};
