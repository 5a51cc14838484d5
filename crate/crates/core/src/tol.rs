//! Numerical tolerances shared across the crate.
//!
//! Every threshold that a contract or validation gate depends on lives here so
//! the values can be audited (and referenced from tests) in one place.

/// Max entrywise deviation `|H - H^dag|` for a matrix to count as Hermitian.
pub const HERMITIAN: f64 = 1e-10;

/// Unitarity gate: max-entry residual of both `U U^dag - I` and `U^dag U - I`.
pub const UNITARITY: f64 = 1e-10;

/// Reconstruction contract of the Hermitian eigendecomposition,
/// `max |V diag(lambda) V^dag - H|`.
pub const EIG_RESIDUAL: f64 = 1e-10;

/// Most negative eigenvalue the PSD square root tolerates; anything in
/// `[EIG_CLIP_FLOOR, 0)` is clipped to zero, anything below is rejected.
pub const EIG_CLIP_FLOOR: f64 = -1e-12;

/// Round-trip contract of the matrix square root, `max |R R - H|`.
pub const SQRT_RESIDUAL: f64 = 1e-9;

/// Residual norm below which a vector counts as linearly dependent during
/// Gram–Schmidt (both explicit orthonormalization and basis completion).
pub const DEPENDENCE: f64 = 1e-8;

/// Orthonormality gate for caller-supplied vector tuples and measurement
/// bases: max deviation of the Gram matrix from the identity.
pub const ORTHONORMALITY: f64 = 1e-10;

/// Norm deviation tolerated by the pure-state constructor.
pub const STATE_NORM: f64 = 1e-12;

/// Density-operator validation gate (hermiticity, unit trace, eigenvalue
/// floor).
pub const DENSITY: f64 = 1e-10;

/// Acceptance gate on the Gram deltas of a source/target pair handed to the
/// two-pair unitary synthesis. Looser than construction arithmetic (~1e-12 in
/// practice) so that independently assembled inputs are not rejected for
/// round-off.
pub const GRAM_ACCEPT: f64 = 1e-9;

/// Overlap magnitude at or above which two designated states are treated as
/// identical (cloning them probabilistically is then meaningless).
pub const NEAR_IDENTICAL_OVERLAP: f64 = 1.0 - 1e-8;

/// Relative spectral cutoff inside the general fidelity trace: eigenvalues of
/// `sqrt(rho0) rho1 sqrt(rho0)` below this fraction of the largest one are
/// treated as exact zeros. Square-rooting round-off-level eigenvalues would
/// otherwise inject ~1e-8 noise into the trace.
pub const FIDELITY_TRACE_CUTOFF: f64 = 1e-13;

/// Probability below which a measurement branch is reported without a
/// post-state (renormalizing would only amplify round-off).
pub const PROB_FLOOR: f64 = 1e-15;

/// Gate for declaring the mean-efficiency bound saturated.
pub const SATURATION: f64 = 1e-9;

/// Gate for the orthogonality conditions on the failure components of a
/// candidate machine, and for the inner-product constraint audit.
pub const CONSTRAINT: f64 = 1e-9;
