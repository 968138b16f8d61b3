//! Crate error type.

/// Errors surfaced by library operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VirasoroError {
    #[error("family mismatch: vector tagged `{found}` used with a `{expected}` module")]
    FamilyMismatch { expected: String, found: String },

    #[error("polynomial has a nonzero constant term; not in the submodule generated by the degree-one element")]
    NonzeroConstantTerm,

    #[error("level {level} exceeds the configured cap {cap}")]
    LevelCapExceeded { level: u32, cap: u32 },

    #[error("index {k} is below the defining range (minimum {min})")]
    IndexBelowRange { k: i64, min: i64 },

    #[error("truncation window too small: {0}")]
    WindowTooSmall(String),

    #[error("inconclusive within the margin window: {0}")]
    Inconclusive(String),

    #[error("factor outside the catalog: {0}")]
    NonCatalogFactor(String),

    #[error("parse error: {0}")]
    Parse(String),
}
