//! Error type shared by the whole pipeline, with a stable mapping to the
//! CLI exit-code ladder.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("non-reduced input: {0}")]
    NonReduced(String),

    #[error("arrangement is not essential (all lines through one point)")]
    NotEssential,

    #[error("Milnor algebra dimensions did not stabilize; the input is most likely non-reduced")]
    NotStabilized,

    #[error("declared lattice is inconsistent with the polynomial: {0}")]
    DeclaredMismatch(String),

    #[error("catalog construction failed: {0}")]
    Construction(String),

    #[error("matrix entries live in different field contexts")]
    MixedContexts,

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// Exit code for the CLI: 2 for input problems, 3 for non-essential
    /// arrangements, 4 for internal invariant violations.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_)
            | Error::NonReduced(_)
            | Error::NotStabilized
            | Error::DeclaredMismatch(_)
            | Error::Construction(_) => 2,
            Error::NotEssential => 3,
            Error::MixedContexts | Error::Internal(_) => 4,
        }
    }
}
