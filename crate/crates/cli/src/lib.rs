//! Instance files, solver dispatch and run reports behind the `faircover` binary.

pub mod format;
pub mod generate;
pub mod report;
pub mod run;

pub use format::{parse_instance, serialize, Instance, ParseError};
pub use generate::{generate, InstanceKind};
pub use report::{Algorithm, RunReport, Selection, Verification};
pub use run::{exit_code, parse_epsilon, run, RunError, SolveOptions};
