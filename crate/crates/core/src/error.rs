use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Negative power of an element that is not a unit of its ring.
    #[error("cannot invert non-unit {0}")]
    NonUnitInverse(String),
    /// A base was specialised to zero while negative exponents require its inverse.
    #[error("base {0} evaluated at zero but appears with a negative exponent")]
    ZeroBase(&'static str),
    #[error("relation mismatch: {0} vs {1}")]
    RelationMismatch(String, String),
    /// Relation constants must be a single monomial with coefficient 1.
    #[error("invalid relation constant {0}: expected a single monomial with coefficient 1")]
    InvalidRelation(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
