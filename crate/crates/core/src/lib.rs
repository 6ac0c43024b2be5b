//! Numerical layers of a phase-field (Cahn–Hilliard) construction whose
//! interface concentrates on the Clifford torus.
//!
//! The crate is `no_std` with `alloc`; enable the default `std` feature to get
//! `std::error::Error` on [`Error`]. All math goes through `libm`, so results
//! do not depend on the platform's libm.
//!
//! Layers, bottom up:
//! - [`profile`]: the one-dimensional heteroclinic `v⋆`, its correction `η`,
//!   the constants `c⋆`, `b⋆`, `d`, projection identities and weighted norms.
//! - [`geometry`]: tori of revolution, curvature jets, circle fields and the
//!   Laplace–Beltrami operator.
//! - [`fermi`]: parallel surfaces, the exact Laplacian in shifted normal
//!   coordinates, its truncated expansion and an ambient Cartesian oracle.
//! - [`willmore_op`]: the Jacobi operator, the linearized Willmore operator
//!   and the bordered system that pins the average.
//! - [`phasefield`]: the approximate solution, the fourth-order residual `F`
//!   and its derivatives, cutoffs and the projection onto `v⋆′`.
//! - [`reduction`]: the inner linear operator, the remainder `R`, volume
//!   formulas and the reduced bifurcation iteration.
#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod error;
pub mod fermi;
pub mod geometry;
pub mod grid;
pub mod num;
pub mod phasefield;
pub mod profile;
pub mod reduction;
pub mod willmore_op;

pub use error::{Error, Result};

/// Version of this crate, recorded in run artifacts.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
