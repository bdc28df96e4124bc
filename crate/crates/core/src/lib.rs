//! Exact symbolic-numeric computation of Berezin–Toeplitz kernel expansions.
//!
//! The library computes the coefficients of the semiclassical expansion of
//! Toeplitz kernels `T_f^{(k)}` and their compositions at a point of a
//! quantizable Kähler manifold, working over an exact scalar ring (Gaussian
//! rationals with a formal `π`) and truncated bigraded power series ("jets").
//! Two independent evaluation paths — a stationary-phase expansion engine and
//! closed-form curvature expressions — are cross-checked against each other
//! and against exactly solvable models (Bargmann–Fock space, the projective
//! line).

pub mod error;
pub mod jet;
pub mod jet_matrix;
pub mod scalar;

pub use error::{BtError, Result};
pub use jet::{Deg, Jet, DEG_INF};
pub use jet_matrix::JetMatrix;
pub use scalar::{GaussRat, PiScalar};
