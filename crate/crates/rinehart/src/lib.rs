//! Command-line front end: the DSL, command dispatch and JSON reports.

pub mod cli;
pub mod commands;
pub mod dsl;
pub mod report;

pub use cli::{execute, Outcome};
