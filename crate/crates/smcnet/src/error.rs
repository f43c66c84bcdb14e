use thiserror::Error;

use crate::formula::Formula;

/// Errors shared by every layer of the crate: parsing, typing, and net
/// construction. Parse errors carry 1-based line/column positions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax {
        line: usize,
        col: usize,
        msg: String,
    },

    #[error("unknown sort `{0}`")]
    UnknownSort(String),

    #[error("unknown operation `{0}`")]
    UnknownOp(String),

    #[error("duplicate sort `{0}`")]
    DuplicateSort(String),

    #[error("duplicate operation `{0}`")]
    DuplicateOp(String),

    #[error("duplicate equation `{0}`")]
    DuplicateEquation(String),

    #[error("`{0}` is a reserved name")]
    ReservedName(String),

    #[error(
        "equation `{name}`: sides have different arities: {lhs_src} -> {lhs_tgt} vs {rhs_src} -> {rhs_tgt}"
    )]
    EquationTypeMismatch {
        name: String,
        lhs_src: Formula,
        lhs_tgt: Formula,
        rhs_src: Formula,
        rhs_tgt: Formula,
    },

    #[error("composition mismatch: cannot feed {produced} into {expected}")]
    CompositionMismatch {
        produced: Formula,
        expected: Formula,
    },

    #[error("arity mismatch: {f_src} -> {f_tgt} vs {g_src} -> {g_tgt}")]
    ArityMismatch {
        f_src: Formula,
        f_tgt: Formula,
        g_src: Formula,
        g_tgt: Formula,
    },

    #[error("curry needs a tensor domain, got {0}")]
    DomainNotTensor(Formula),

    #[error("uncurry needs a -o codomain, got {0}")]
    CodomainNotHom(Formula),

    #[error("not a structural constant: {0}")]
    NotStructural(String),

    #[error("operation requires a correct net")]
    NotCorrect,

    #[error("invalid net: {0}")]
    InvalidNet(String),

    #[error("invalid json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
