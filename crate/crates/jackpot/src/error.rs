//! Error type shared by every module in the crate.

/// Errors produced by validation, domain checks, and size guards.
///
/// The variants map onto the CLI exit-code scheme: [`Error::Invalid`] and
/// [`Error::Domain`] are usage errors (exit 2), [`Error::Infeasible`] is an
/// infeasible problem size (exit 3). Optimizer non-convergence is *not* an
/// error — the optimizer always returns a report with `converged = false`
/// rather than failing silently or loudly.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A constructor or operation rejected its input; `field` names the
    /// offending parameter and `reason` states the violated clause.
    #[error("invalid {field}: {reason}")]
    Invalid {
        /// Name of the parameter or field that failed validation.
        field: &'static str,
        /// Human-readable statement of the violated constraint.
        reason: String,
    },

    /// An input lies outside the mathematical domain of an operation.
    #[error("domain error in {op}: {reason}")]
    Domain {
        /// Operation that rejected the input.
        op: &'static str,
        /// Which domain restriction was violated.
        reason: String,
    },

    /// The requested computation exceeds the supported problem size.
    #[error("infeasible size: {0}")]
    Infeasible(String),
}

impl Error {
    pub(crate) fn invalid(field: &'static str, reason: impl Into<String>) -> Self {
        Error::Invalid {
            field,
            reason: reason.into(),
        }
    }

    pub(crate) fn domain(op: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain {
            op,
            reason: reason.into(),
        }
    }
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
