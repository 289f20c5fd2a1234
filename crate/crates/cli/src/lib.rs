//! Scenario parsing, command dispatch and reports for the `grlc` binary.

pub mod commands;
pub mod report;
pub mod scenario;

pub use commands::{run_counterexample, run_scenario, CliError, Command, Overrides};
pub use report::{Report, Status};
pub use scenario::{parse_scenario, serialize_scenario, Diagnostic, ParseError, Scenario};
