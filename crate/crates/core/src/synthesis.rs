//! Synthesis of unitaries with prescribed images.
//!
//! Two levels:
//! - [`tuple_mapping_unitary`] sends one orthonormal tuple onto another by
//!   completing both to full bases (canonical directions, ascending index,
//!   dependent ones skipped) and summing outer products. The completion rule
//!   is deterministic, so the synthesized unitary is pinned — not just *a*
//!   unitary with the right images, but always the same one.
//! - [`pair_mapping_unitary`] handles two general (non-orthogonal, any-norm)
//!   vectors: a unitary mapping `phi0 -> target0`, `phi1 -> target1` exists
//!   exactly when both Gram matrices agree, which [`check_gram`] gates. The
//!   construction orthonormalizes each side with the shared coefficients of
//!   [`OrthonormalizationPair`] and delegates to the tuple case.
//!
//! This is the engine room of the cloning machine: its designated input and
//! output vectors are exactly such a Gram-matched pair.

use crate::error::{Error, Result};
use crate::linalg::{complete_basis, Complex64, ComplexMatrix, ComplexVector};
use crate::tol;

/// How far a source/target pair is from satisfying the Gram conditions that
/// make a connecting unitary possible.
#[derive(Clone, Copy, Debug)]
pub struct GramCheckReport {
    /// `| <phi0|phi0> - <target0|target0> |`.
    pub norm0_delta: f64,
    /// `| <phi1|phi1> - <target1|target1> |`.
    pub norm1_delta: f64,
    /// `| <phi0|phi1> - <target0|target1> |`.
    pub cross_delta: f64,
    /// Whether all three deltas passed the tolerance handed to
    /// [`check_gram`].
    pub passed: bool,
}

/// Compares the Gram data of `(phi0, phi1)` against `(target0, target1)`.
///
/// A unitary with `U phi_s = target_s` exists iff norms and the mutual inner
/// product agree; `passed` reports whether all three deltas stay within
/// `tolerance`.
pub fn check_gram(
    phi0: &ComplexVector,
    phi1: &ComplexVector,
    target0: &ComplexVector,
    target1: &ComplexVector,
    tolerance: f64,
) -> Result<GramCheckReport> {
    let norm0_delta = (phi0.inner(phi0)? - target0.inner(target0)?).norm();
    let norm1_delta = (phi1.inner(phi1)? - target1.inner(target1)?).norm();
    let cross_delta = (phi0.inner(phi1)? - target0.inner(target1)?).norm();
    Ok(GramCheckReport {
        norm0_delta,
        norm1_delta,
        cross_delta,
        passed: norm0_delta <= tolerance && norm1_delta <= tolerance && cross_delta <= tolerance,
    })
}

/// The two-vector Gram–Schmidt data `gamma0 = ||phi0||`,
/// `e0 = phi0 / gamma0`, `gamma1 = ||phi1 - (<phi0|phi1>/gamma0^2) phi0||`,
/// `e1` the normalized residual.
///
/// The same `(gamma0, gamma1, <phi0|phi1>)` coefficients applied to a
/// Gram-matched target pair produce its orthonormalization — which is what
/// lets [`pair_mapping_unitary`] line the two sides up vector by vector.
#[derive(Clone, Debug)]
pub struct OrthonormalizationPair {
    /// Norm of the first vector.
    pub gamma0: f64,
    /// Norm of the second vector's component orthogonal to the first.
    pub gamma1: f64,
    /// First orthonormal direction.
    pub e0: ComplexVector,
    /// Second orthonormal direction.
    pub e1: ComplexVector,
}

impl OrthonormalizationPair {
    /// Orthonormalizes a pair of linearly independent vectors.
    ///
    /// Fails with [`Error::ZeroNorm`] when `phi0` is numerically zero and
    /// with [`Error::ParallelVectors`] when the orthogonal residual of
    /// `phi1` falls below [`tol::DEPENDENCE`].
    pub fn build(phi0: &ComplexVector, phi1: &ComplexVector) -> Result<Self> {
        let gamma0 = phi0.norm();
        if gamma0 < tol::DEPENDENCE {
            return Err(Error::ZeroNorm { norm: gamma0 });
        }
        let e0 = phi0.scaled(Complex64::new(1.0 / gamma0, 0.0));
        let cross = phi0.inner(phi1)?;
        let coefficient = cross / Complex64::new(gamma0 * gamma0, 0.0);
        let residual = phi1.sub(&phi0.scaled(coefficient))?;
        let gamma1 = residual.norm();
        if gamma1 < tol::DEPENDENCE {
            return Err(Error::ParallelVectors { residual: gamma1 });
        }
        let e1 = residual.scaled(Complex64::new(1.0 / gamma1, 0.0));
        Ok(Self {
            gamma0,
            gamma1,
            e0,
            e1,
        })
    }
}

/// Builds the unitary sending each `sources[i]` to `targets[i]`.
///
/// Both tuples must be orthonormal within [`tol::ORTHONORMALITY`], equally
/// long, and no longer than `dim`. Both are completed to full bases by the
/// deterministic canonical rule of [`complete_basis`], and the result is
/// the outer-product sum `sum_i |target_i><source_i|` over the completed
/// bases — unitary by construction, with residual at round-off level.
pub fn tuple_mapping_unitary(
    sources: &[ComplexVector],
    targets: &[ComplexVector],
    dim: usize,
) -> Result<ComplexMatrix> {
    if sources.len() != targets.len() {
        return Err(Error::TupleSizeMismatch {
            sources: sources.len(),
            targets: targets.len(),
        });
    }
    for v in sources.iter().chain(targets.iter()) {
        if v.dim() != dim {
            return Err(Error::DimensionMismatch {
                context: "tuple mapping vectors",
                expected: dim,
                got: v.dim(),
            });
        }
    }
    let full_sources = complete_basis(sources, dim)?;
    let full_targets = complete_basis(targets, dim)?;
    let mut unitary = ComplexMatrix::zeros(dim, dim);
    for (target, source) in full_targets.iter().zip(&full_sources) {
        unitary = unitary.add(&target.outer(source))?;
    }
    Ok(unitary)
}

/// Builds a unitary sending `phi0 -> target0` and `phi1 -> target1` for a
/// general (non-orthogonal, any-norm) Gram-matched pair.
///
/// Gated by [`check_gram`] at [`tol::GRAM_ACCEPT`]. Both sides are reduced
/// to orthonormal pairs with the *source* coefficients (norms and mutual
/// inner product), the target side is re-orthonormalized to scrub the
/// caller's Gram slack, and the tuple case finishes the job. The mapping
/// holds within the Gram tolerance; the unitarity residual stays at
/// [`tol::UNITARITY`] regardless.
///
/// Degenerate inputs degrade gracefully: a parallel pair (orthogonal
/// residual below [`tol::DEPENDENCE`]) synthesizes from `phi0` alone, and a
/// zero `phi0` from `phi1` alone.
pub fn pair_mapping_unitary(
    phi0: &ComplexVector,
    phi1: &ComplexVector,
    target0: &ComplexVector,
    target1: &ComplexVector,
) -> Result<ComplexMatrix> {
    let dim = phi0.dim();
    for v in [phi1, target0, target1] {
        if v.dim() != dim {
            return Err(Error::DimensionMismatch {
                context: "pair mapping vectors",
                expected: dim,
                got: v.dim(),
            });
        }
    }
    let report = check_gram(phi0, phi1, target0, target1, tol::GRAM_ACCEPT)?;
    if !report.passed {
        return Err(Error::GramMismatch {
            norm0_delta: report.norm0_delta,
            norm1_delta: report.norm1_delta,
            cross_delta: report.cross_delta,
            tolerance: tol::GRAM_ACCEPT,
        });
    }

    match OrthonormalizationPair::build(phi0, phi1) {
        Ok(pair) => {
            let cross = phi0.inner(phi1)?;
            let coefficient = cross / Complex64::new(pair.gamma0 * pair.gamma0, 0.0);
            let scaled_target0 = target0.normalized()?;
            let raw_target1 = target1
                .sub(&target0.scaled(coefficient))?
                .scaled(Complex64::new(1.0 / pair.gamma1, 0.0));
            // Scrub the (at most GRAM_ACCEPT-sized) slack so the tuple
            // preconditions and the unitarity contract hold exactly.
            let overlap = scaled_target0.inner(&raw_target1)?;
            let orthogonal = raw_target1.sub(&scaled_target0.scaled(overlap))?;
            let norm = orthogonal.norm();
            if norm < tol::DEPENDENCE {
                return Err(Error::ParallelVectors { residual: norm });
            }
            let scaled_target1 = orthogonal.scaled(Complex64::new(1.0 / norm, 0.0));
            tuple_mapping_unitary(&[pair.e0, pair.e1], &[scaled_target0, scaled_target1], dim)
        }
        Err(Error::ParallelVectors { .. }) => {
            // phi1 is a multiple of phi0; matching Gram data forces the
            // targets into the same relation, so one pair pins everything.
            tuple_mapping_unitary(&[phi0.normalized()?], &[target0.normalized()?], dim)
        }
        Err(Error::ZeroNorm { .. }) => {
            // phi0 is numerically zero. If phi1 is too, any unitary works
            // (identity); otherwise phi1 alone determines the mapping.
            if phi1.norm() < tol::DEPENDENCE {
                Ok(ComplexMatrix::identity(dim))
            } else {
                tuple_mapping_unitary(&[phi1.normalized()?], &[target1.normalized()?], dim)
            }
        }
        Err(other) => Err(other),
    }
}
