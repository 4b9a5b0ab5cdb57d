use crate::chemistry::HartreeFockResult;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("unsupported feature: {0}")]
    Unsupported(String),

    /// SCF did not reach the energy criterion; carries the last iterate.
    #[error("Hartree-Fock did not converge after {} iterations", .0.iterations)]
    ScfNotConverged(Box<HartreeFockResult>),
}

pub(crate) fn invalid_arg(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
