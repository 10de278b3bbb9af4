//! Error type shared by every operation in the crate.

/// The three failure classes every operation reports.
///
/// `Input` covers malformed or inconsistent inputs (schema violations, ring
/// mismatches, windows too small for the requested operation). `Refused`
/// covers computations that completed but whose certificate did not
/// stabilize, or whose answer is "undefined"/"none found" — the caller gets a
/// diagnostic, never a silently wrong number. `Inconsistency` is reserved for
/// exact-arithmetic disagreements between quantities that are provably equal;
/// it always indicates a bug or a window chosen too small to be in the stable
/// range.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("refused: {0}")]
    Refused(String),
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
    pub fn refused(msg: impl Into<String>) -> Self {
        Error::Refused(msg.into())
    }
    pub fn inconsistency(msg: impl Into<String>) -> Self {
        Error::Inconsistency(msg.into())
    }
}
