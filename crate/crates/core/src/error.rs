use std::io;

use thiserror::Error;

/// Failures surfaced by the library.
///
/// Budget-style errors carry the best bounds known when the search stopped so
/// callers can degrade to an inexact answer instead of aborting.
#[derive(Debug, Error)]
pub enum Error {
    #[error("explicit power needs {edges} edges, above the cap of {cap}")]
    MemoryBudget { edges: u64, cap: u64 },

    #[error("{what}: budget exhausted (best bounds {lower}..={upper})")]
    BudgetExceeded {
        what: &'static str,
        lower: u64,
        upper: u64,
    },

    #[error("induced subgraph on S and its r-neighbourhood has a cycle: {cycle:?}")]
    ForestViolation { cycle: Vec<usize> },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("bisection did not converge after {iterations} iterations (bracket [{lo}, {hi}])")]
    NoConvergence { lo: f64, hi: f64, iterations: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
