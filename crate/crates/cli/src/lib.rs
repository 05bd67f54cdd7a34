//! Problem files, JSON reports and command dispatch for `golodlab`.

pub mod problem;
pub mod report;

pub use problem::{parse_problem, ProblemSpec};
pub use report::{run_command, run_corpus, Command, Outcome, Report, RunError, RunOptions};
