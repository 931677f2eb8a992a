use thiserror::Error;

/// Errors raised by the numerical routines.
///
/// The variants mirror the failure classes the CLI maps onto exit codes:
/// domain and contract violations are caller mistakes, accuracy and search
/// failures mean a numerical method did not converge.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("accuracy error: {message} (best estimate {estimate:e})")]
    Accuracy { message: String, estimate: f64 },

    #[error("capacity error: {0}")]
    Capacity(String),

    #[error("contract violation: {0}")]
    Contract(String),

    /// The first state has weight outside the support of the second, so the
    /// relative entropy is +inf. Kept separate from numerical failures.
    #[error("relative entropy is infinite: support of the first state is not contained in the support of the second")]
    InfiniteDivergence,

    #[error("root search failed: {message}")]
    Search {
        message: String,
        /// `(u, g(u))` samples of the scan that failed to bracket a root.
        trace: Vec<(f64, f64)>,
    },

    #[error("internal consistency error: {0}")]
    Internal(String),

    #[error("format error: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

/// Rejects `u >= 1` (and NaN), the admissible range of the prior family.
pub(crate) fn check_u(u: f64) -> Result<()> {
    if u < 1.0 {
        Ok(())
    } else {
        domain(format!("prior parameter u must satisfy u < 1, got {u}"))
    }
}
