use thiserror::Error;

/// Errors raised by instance construction, the solvers and the oracles.
///
/// Infeasible instances are not errors: solvers report them as `None`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex id {id} out of range 1..={count}")]
    VertexOutOfRange { id: usize, count: usize },
    #[error("edge id {id} out of range 1..={count}")]
    EdgeOutOfRange { id: usize, count: usize },
    #[error("color {color} out of range 1..={count}")]
    ColorOutOfRange { color: u32, count: usize },
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("malformed linear program: {0}")]
    MalformedLp(String),
    #[error("contract violation: {0}")]
    ContractViolation(String),
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
    #[error("{what} = {actual} exceeds the exhaustive-search cap of {cap}")]
    CapExceeded {
        what: &'static str,
        actual: usize,
        cap: usize,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
