//! Crate-wide error type.

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("edge index {0} out of range")]
    InvalidEdge(usize),

    #[error("vertex index {vertex} out of range (graph has {vertex_count} vertices)")]
    InvalidVertex { vertex: usize, vertex_count: usize },

    #[error("cannot contract loop edge {0}")]
    ContractLoop(usize),

    /// A brute-force enumeration would exceed its pinned size limit.
    #[error("size guard exceeded: {0}")]
    SizeGuard(String),

    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(usize, usize),

    #[error("not a subgroup of Z_{q}: {reason}")]
    NotSubgroup { q: usize, reason: String },

    #[error("{0} is not an odd prime")]
    NotOddPrime(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("graph is not simple: {0}")]
    NotSimple(String),

    #[error("graph is not cubic: {0}")]
    NotCubic(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
