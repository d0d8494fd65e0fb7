//! Explicit orthonormal Alpert multiwavelets.
//!
//! The wavelets, their two-scale filter matrices and their Fourier
//! transforms are built in exact arithmetic over rationals extended by
//! square roots, so every orthogonality identity can be checked with
//! equality rather than a tolerance. The [`transform`] module turns the
//! filter matrices into a working multiresolution transform on `[0, 1)`.

pub mod error;
pub mod filterbank;
pub mod fourier;
pub mod hypergeom;
pub mod legendre;
pub mod matrix;
pub mod poly;
pub mod report;
pub mod scalar;
pub mod signal_io;
pub mod transform;
pub mod verify;
pub mod wavelets;

pub use error::{Error, Result};
pub use matrix::ExactMatrix;
pub use poly::{PiecewisePoly, Poly};
pub use report::{Check, Report};
pub use scalar::{ExactScalar, SurdSum};
