//! Implementation of the `leaffn` command-line tool.
//!
//! Subcommands:
//!
//! * `table` — CSV grids of function values, with `-` for cells outside a
//!   hyperbolic domain;
//! * `constants` — the defining constants per basis, `NA` where a limit
//!   does not exist;
//! * `check` — seeded residual suites over the formula registry;
//! * `plot-data` — figure series: translated curves computed through the
//!   addition formulas, double/half-angle curves, and the extended
//!   basis-2 hyperbolic functions.
//!
//! Exit codes: 0 success, 1 residual failure, 2 usage error, 3 numerical
//! failure.

pub mod check;
pub mod constants_cmd;
pub mod figures;
pub mod funcs;
pub mod output;
pub mod table;

/// Failure modes shared by the subcommands, ordered by exit code.
#[derive(Debug)]
pub enum CliError {
    /// Exit code 1: a residual suite exceeded its tolerance.
    ResidualFailure,
    /// Exit code 2: invalid arguments or an unknown identifier.
    Usage(String),
    /// Exit code 3: a numerical kernel failed to converge.
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::ResidualFailure => 1,
            CliError::Usage(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::ResidualFailure => write!(f, "residual tolerance exceeded"),
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<leaffn::LeafError> for CliError {
    fn from(e: leaffn::LeafError) -> Self {
        match e {
            leaffn::LeafError::DomainError { message } => CliError::Usage(message),
            other => CliError::Numerical(other.to_string()),
        }
    }
}
