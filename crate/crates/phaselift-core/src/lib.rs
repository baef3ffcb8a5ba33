//! PhaseLift recovery of signals from intensity measurements
//! `y_i = |<xi_i, x0>|^2 + w_i` with subgaussian measurement ensembles.
//!
//! The crate bundles the pieces needed to run and audit the recovery
//! pipeline end to end:
//!
//! - [`hermitian`]: dense complex Hermitian matrices, Jacobi
//!   eigendecomposition, PSD projection, and the norms used throughout.
//! - [`ensembles`]: seeded generators for the measurement distributions
//!   (Gaussian, Rademacher, Steinhaus, complex Bernoulli, rotated real)
//!   together with analytic and empirical moment profiles.
//! - [`lifted`]: the lifted linear operator `A(Z)(i) = <xi_i xi_i*, Z>`,
//!   its adjoint, the intensity forward model, and operator-norm
//!   estimation.
//! - [`solver`]: primal-dual solver for
//!   `min ||A(X) - y||_1  s.t.  X >= 0` and its real-restricted variant,
//!   plus signal extraction and error metrics.
//! - [`cone`]: diagnostics for the cone of admissible directions, its
//!   partition by the dominant-negative-eigenvalue test, and the norm
//!   bounds that partition satisfies.
//! - [`theory`]: executable checks of the moment formulas, small-ball
//!   probabilities, rank-1 l1 isometry, and operator-norm scaling.
//! - [`experiments`]: reproducible experiment runners (phase transitions,
//!   ambiguity demos, noise scaling, theory suite) with CSV/JSON reports.

pub mod cmatrix;
pub mod cone;
pub mod ensembles;
pub mod error;
pub mod experiments;
pub mod hermitian;
pub mod io;
pub mod lifted;
pub mod rng;
pub mod solver;
#[cfg(test)]
pub(crate) mod testutil;
pub mod theory;

pub use cmatrix::ComplexMatrix;
pub use error::{Error, Result};
pub use hermitian::{EigenDecomposition, HermitianMatrix, MatrixNorms};

/// Complex scalar used across the crate.
pub type Complex64 = num_complex::Complex<f64>;
