use thiserror::Error;

/// Failure modes shared by all modules.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("non-finite input in {0}")]
    NonFinite(&'static str),

    #[error("eigensolver did not converge for eigenvalue {index} within {cap} iterations")]
    NonConvergence { index: usize, cap: usize },

    #[error("matrix is not symmetric: relative defect {defect:e}")]
    Asymmetric { defect: f64 },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("basis mismatch: {left} vs {right}")]
    BasisMismatch { left: String, right: String },

    #[error("exactness window too small: {0}")]
    WindowTooSmall(String),

    #[error("{what}: residual {value:e} exceeds tolerance {tol:e}")]
    Tolerance {
        what: String,
        value: f64,
        tol: f64,
    },

    #[error("ill-conditioned: {0}")]
    IllConditioned(String),

    #[error("rank-deficient word set: rank {rank} of {words}")]
    RankDeficient { rank: usize, words: usize },
}

impl Error {
    pub(crate) fn tolerance(what: impl Into<String>, value: f64, tol: f64) -> Self {
        Error::Tolerance {
            what: what.into(),
            value,
            tol,
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    /// True when the failure comes from bad caller input rather than a numerical check.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidParameter(_)
                | Error::NonFinite(_)
                | Error::Dimension(_)
                | Error::BasisMismatch { .. }
                | Error::WindowTooSmall(_)
                | Error::Asymmetric { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
