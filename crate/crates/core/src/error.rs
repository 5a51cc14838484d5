//! Crate-wide error type.

use thiserror::Error;

/// Convenience alias used by every fallible operation in this crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Two operands (or an operand and a declared space) disagree in size.
    #[error("dimension mismatch in {context}: expected {expected}, got {got}")]
    DimensionMismatch {
        /// What was being checked when the mismatch surfaced.
        context: &'static str,
        /// The size the operation required.
        expected: usize,
        /// The size it was handed.
        got: usize,
    },

    /// An operation that needs a square matrix got a rectangular one.
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare {
        /// Row count of the offending matrix.
        rows: usize,
        /// Column count of the offending matrix.
        cols: usize,
    },

    /// A matrix handed to a Hermitian-only routine was not Hermitian.
    #[error("matrix is not Hermitian (max |H - H^dag| entry = {deviation:.3e}, tolerance {tolerance:.3e})")]
    NotHermitian {
        /// Largest entrywise deviation from the adjoint.
        deviation: f64,
        /// The gate it had to pass.
        tolerance: f64,
    },

    /// The square root was asked for a matrix with a genuinely negative
    /// eigenvalue (below the clip floor).
    #[error("matrix is not positive semidefinite (eigenvalue {eigenvalue:.3e})")]
    NotPositiveSemidefinite {
        /// The offending eigenvalue.
        eigenvalue: f64,
    },

    /// The iterative eigensolver did not reach its off-diagonal target.
    #[error("eigensolver failed to converge after {sweeps} sweeps (off-diagonal max {off_diagonal:.3e})")]
    EigenConvergence {
        /// Sweeps performed before giving up.
        sweeps: usize,
        /// Largest remaining off-diagonal magnitude.
        off_diagonal: f64,
    },

    /// A vector that must have unit norm does not.
    #[error("vector is not normalized (norm {norm})")]
    NotNormalized {
        /// The actual norm.
        norm: f64,
    },

    /// A vector with (numerically) zero norm cannot be normalized.
    #[error("cannot normalize a zero vector (norm {norm:.3e})")]
    ZeroNorm {
        /// The actual norm.
        norm: f64,
    },

    /// Two vectors that must be linearly independent are (numerically)
    /// parallel.
    #[error("vectors are linearly dependent (orthogonal residual norm {residual:.3e})")]
    ParallelVectors {
        /// Norm of the second vector's component orthogonal to the first.
        residual: f64,
    },

    /// A tuple or basis that must be orthonormal is not.
    #[error("vectors are not orthonormal (max Gram deviation {deviation:.3e}, tolerance {tolerance:.3e})")]
    NotOrthonormal {
        /// Largest deviation of the Gram matrix from the identity.
        deviation: f64,
        /// The gate it had to pass.
        tolerance: f64,
    },

    /// A density operator's trace is not 1.
    #[error("density operator trace is {trace}, expected 1")]
    InvalidTrace {
        /// The actual trace (real part).
        trace: f64,
    },

    /// A non-finite number (NaN or infinity) was found where data enters the
    /// crate.
    #[error("non-finite value in {context}")]
    NonFinite {
        /// Where the value was found.
        context: &'static str,
    },

    /// Source and target tuples for unitary synthesis differ in length.
    #[error("source/target tuple size mismatch: {sources} sources vs {targets} targets")]
    TupleSizeMismatch {
        /// Number of source vectors.
        sources: usize,
        /// Number of target vectors.
        targets: usize,
    },

    /// More vectors than the space can hold.
    #[error("{count} vectors exceed the space dimension {dim}")]
    TooManyVectors {
        /// Number of vectors supplied.
        count: usize,
        /// Ambient dimension.
        dim: usize,
    },

    /// Canonical completion could not extend the given vectors to a full
    /// basis (only possible if the inputs were not actually orthonormal).
    #[error("basis completion stalled at {found} of {dim} vectors")]
    BasisCompletion {
        /// Vectors found before stalling.
        found: usize,
        /// Ambient dimension.
        dim: usize,
    },

    /// A source/target pair violates the norm/inner-product matching
    /// conditions required for a unitary to map one onto the other.
    #[error("Gram conditions violated (norm deltas {norm0_delta:.3e}, {norm1_delta:.3e}; cross delta {cross_delta:.3e}; tolerance {tolerance:.3e})")]
    GramMismatch {
        /// `| <phi0|phi0> - <t0|t0> |`.
        norm0_delta: f64,
        /// `| <phi1|phi1> - <t1|t1> |`.
        norm1_delta: f64,
        /// `| <phi0|phi1> - <t0|t1> |`.
        cross_delta: f64,
        /// The gate the deltas had to pass.
        tolerance: f64,
    },

    /// An overlap parameter left the half-open interval `[0, 1)`.
    #[error("overlap {overlap} outside [0, 1)")]
    OverlapOutOfRange {
        /// The offending value.
        overlap: f64,
    },

    /// A flag-state overlap left the closed interval `[-1, 1]`.
    #[error("flag overlap {value} outside [-1, 1]")]
    FlagOverlapOutOfRange {
        /// The offending value.
        value: f64,
    },

    /// The two designated states are too close to identical to clone
    /// probabilistically.
    #[error("designated states are nearly identical (|overlap| = {overlap})")]
    StatesNearIdentical {
        /// Magnitude of the overlap.
        overlap: f64,
    },

    /// A tensor-factor index does not exist in the given space shape.
    #[error("factor index {index} out of range for a space with {factors} factors")]
    FactorIndexOutOfRange {
        /// The requested factor.
        index: usize,
        /// How many factors the shape has.
        factors: usize,
    },

    /// The mixing angle of the two-qubit example left `[0, pi/4)`.
    #[error("mixing angle {alpha} outside [0, pi/4)")]
    AlphaOutOfRange {
        /// The offending angle.
        alpha: f64,
    },

    /// A Monte Carlo run was requested with no shots.
    #[error("shot count must be at least 1")]
    ZeroShots,
}
