//! Simulation toolkit for probabilistic cloning of two non-orthogonal pure
//! quantum states.
//!
//! A cloning machine for a known pair `|psi0>`, `|psi1>` couples the input
//! system A to a blank copy B and a two-level probe P, applies one joint
//! unitary, and measures the probe. On the success outcome the A and B
//! registers each hold an exact copy of the input; the success probability is
//! `1 / (1 + s)` where `s` is the (rephased, real nonnegative) overlap of the
//! two designated states. The crate builds such machines explicitly, simulates
//! them shot by shot, and checks the efficiency bounds that limit *any*
//! machine of this kind.
//!
//! Module map:
//! - [`linalg`] — dense complex vectors/matrices, Hermitian eigendecomposition
//!   and square root, Gram–Schmidt utilities.
//! - [`state`] — pure states over tensor-factor spaces, density operators,
//!   fidelity, projective and subsystem measurement.
//! - [`synthesis`] — unitaries realizing prescribed image pairs (two-point
//!   interpolation with canonical basis completion).
//! - [`machine`] — the cloning machine itself: branch amplitudes, assembly,
//!   application, probe postselection, and the explicit two-qubit example.
//! - [`bounds`] — efficiency bounds and the inner-product constraint analysis
//!   for arbitrary candidate machines.
//! - [`sim`] — seeded Monte Carlo over probe outcomes and the
//!   filtering counterexample showing fidelity is not measurement-monotone.
//! - [`tol`] — the numerical tolerances used across the crate, in one place.

#![warn(missing_docs)]

pub mod bounds;
pub mod error;
pub mod linalg;
pub mod machine;
pub mod sim;
pub mod state;
pub mod synthesis;
pub mod tol;

pub use error::{Error, Result};
pub use linalg::{Complex64, ComplexMatrix, ComplexVector};
