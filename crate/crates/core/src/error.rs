//! Error types shared across modules.

use std::fmt;

/// Malformed textual input, with the character offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub message: String,
    pub position: usize,
}

impl ParseError {
    pub fn new(message: impl Into<String>, position: usize) -> Self {
        Self { message: message.into(), position }
    }

    /// Shifts the reported position by `offset`.
    pub fn at(mut self, offset: usize) -> Self {
        self.position += offset;
        self
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at position {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

/// Errors from group construction and group-theoretic operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("parameter out of range: {0}")]
    Parameter(String),
    #[error("mixed quaternion representations")]
    Representation,
    #[error("not closed under multiplication: {0}")]
    NotClosed(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("element not in group: {0}")]
    NotMember(String),
    #[error("map is not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("map is not bijective")]
    NotBijective,
    #[error("automorphism not applicable: {0}")]
    InvalidAutomorphism(String),
    #[error("no isomorphism between quotients")]
    NoIsomorphism,
}
