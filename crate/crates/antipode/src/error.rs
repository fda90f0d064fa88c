//! Error type shared across the kernel.

use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum KernelError {
    #[error("division by zero")]
    DivisionByZero,

    #[error("scalar arithmetic across different fields: {left} vs {right}")]
    FieldMismatch { left: String, right: String },

    #[error("{p} is not prime")]
    NotPrime { p: u64 },

    #[error("cyclotomic index must be at least 1, got {n}")]
    InvalidCyclotomicIndex { n: u64 },

    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("unknown generator `{name}`")]
    UnknownGenerator { name: String },

    #[error(
        "relation `{relation}` cannot be oriented: `{lhs}` does not exceed every \
         monomial of its replacement under the monomial order"
    )]
    TerminationOrderViolation { relation: String, lhs: String },

    #[error("word `{word}` is not group-like in this presentation")]
    NotGroupLike { word: String },

    #[error("word `{word}` is not invertible in this presentation")]
    NotInvertible { word: String },

    #[error("presentation `{name}` failed verification and cannot be trusted: {reason}")]
    Untrusted { name: String, reason: String },

    #[error("generator `{name}` declared invertible must be group-like")]
    InvertibleNotGroupLike { name: String },

    #[error("{context}: {message}")]
    InvalidPresentation { context: String, message: String },

    #[error("structure map for `{name}` is missing")]
    MissingStructureMap { name: String },

    #[error("basis window at bound {bound} is empty")]
    EmptyWindow { bound: u64 },

    #[error(
        "conjugation by `{conjugator}` does not preserve the computed space: \
         the image of `{witness}` falls outside it (the window is likely too \
         small — enlarge the bound)"
    )]
    NotInvariant { conjugator: String, witness: String },

    #[error("computation exceeded cutoff {cutoff}: {context}")]
    CutoffExceeded { cutoff: u64, context: String },

    #[error("unsupported field for this operation: {field}")]
    UnsupportedField { field: String },

    #[error(
        "computed antipode order {m} is odd and exceeds 1, contradicting the \
         parity law (this indicates a kernel bug)"
    )]
    ParityViolation { m: u64 },

    #[error("the declared grading is violated: {witness}")]
    GradingViolation { witness: String },

    #[error("graded order law violated: {witness}")]
    LawViolation { witness: String },

    #[error("{0}")]
    Io(String),

    #[error("document error: {0}")]
    Document(String),
}
