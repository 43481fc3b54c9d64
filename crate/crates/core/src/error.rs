use thiserror::Error;

/// Exact integer type used for every coefficient and closed-form value.
///
/// All arithmetic on it goes through checked operations; an overflow is
/// surfaced as [`Error::Overflow`] instead of wrapping.
pub type Int = i128;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("truncation mismatch: {left} vs {right}")]
    TruncationMismatch { left: usize, right: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported degree d = {0} (the formula requires d >= 3)")]
    UnsupportedDegree(u32),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("oracle value {oracle} exceeds formula bound {bound} for profile {profile}")]
    BoundViolation {
        profile: String,
        oracle: Int,
        bound: Int,
    },
}

impl Error {
    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    /// True for errors caused by the caller's input rather than by a failed
    /// check or an arithmetic limit.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Precondition(_)
                | Error::UnsupportedDegree(_)
                | Error::Config(_)
                | Error::TruncationMismatch { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn add(a: Int, b: Int) -> Result<Int> {
    a.checked_add(b).ok_or(Error::Overflow("addition"))
}

pub(crate) fn sub(a: Int, b: Int) -> Result<Int> {
    a.checked_sub(b).ok_or(Error::Overflow("subtraction"))
}

pub(crate) fn mul(a: Int, b: Int) -> Result<Int> {
    a.checked_mul(b).ok_or(Error::Overflow("multiplication"))
}
