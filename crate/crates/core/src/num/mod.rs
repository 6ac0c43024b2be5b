//! Shared numerical kernels.

pub mod cheb;
pub mod fd;
pub mod fit;
pub mod fourier;
pub mod jet;
pub mod linalg;
pub mod math;
pub mod quad;
