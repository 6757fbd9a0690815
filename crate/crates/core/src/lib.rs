//! Local PCA tangent-space estimation laboratory.
//!
//! The crate is organised bottom-up:
//!
//! * [`numerics`] dense linear algebra (Jacobi eigensolver, one-sided Jacobi SVD,
//!   block subspace iteration, norms).
//! * [`manifold`] synthetic manifold germs `x ↦ [x, f_1(x), …, f_{n-m}(x)]` with
//!   random curvature spectra, plus the third-order deviation constant `C_s`.
//! * [`sampling`] seeded uniform tangent-coordinate clouds and their data matrices.
//! * [`estimator`] local PCA without mean subtraction and subspace error metrics.
//! * [`bounds`] closed-form sampling width / density bounds.
//! * [`concentration`] matrix Chernoff / Bernstein tail evaluators and their
//!   Monte-Carlo validation.
//! * [`harness`] the experiment drivers, CSV records and SVG charts.
//!
//! Trials are fanned out with rayon when the `parallel` feature is enabled (the
//! default); see [`par`].

pub mod bounds;
pub mod concentration;
pub mod error;
pub mod estimator;
pub mod harness;
pub mod manifold;
pub mod numerics;
pub mod par;
pub mod rng;
pub mod sampling;

pub use error::{Error, Result};
pub use numerics::Matrix;
