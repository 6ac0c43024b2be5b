use alloc::string::String;

/// Failures reported by the numerical layers.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid double well: {0}")]
    InvalidWell(String),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("normal distance {z} reaches the focal collar {bound}")]
    Collar { z: f64, bound: f64 },

    #[error("right-hand side is not orthogonal to the kernel (overlap {overlap:e})")]
    NonOrthogonal { overlap: f64 },

    #[error("singular system (smallest singular value {sigma:e})")]
    Singular { sigma: f64 },

    #[error("no convergence after {iterations} iterations (last update {last_update:e})")]
    NoConvergence { iterations: usize, last_update: f64 },

    #[error("grid resolution insufficient: {0}")]
    Resolution(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
