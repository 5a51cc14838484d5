//! Pure states, density operators, fidelity, and measurement.
//!
//! States live over explicitly factored tensor-product spaces
//! ([`SpaceShape`]): the cloning setup is a three-factor space
//! `A (x) B (x) P`, and probe postselection needs to address factor `P` by
//! index. Index convention follows [`crate::linalg`]'s `kron`: the first
//! factor is most significant, so for factor dims `[d0, d1, d2]` the flat
//! index of digits `(i0, i1, i2)` is `(i0 * d1 + i1) * d2 + i2`.
//!
//! Fidelity comes in two flavors: the general mixed-state trace formula
//! `F(rho0, rho1) = tr sqrt( sqrt(rho0) rho1 sqrt(rho0) )` and the pure-state
//! shortcut `|<psi0|psi1>|`. The test suite checks they agree on pure inputs.

use crate::error::{Error, Result};
use crate::linalg::{Complex64, ComplexMatrix, ComplexVector};
use crate::tol;

/// Ordered tensor-factor dimensions of a state space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceShape {
    factor_dims: Vec<usize>,
}

impl SpaceShape {
    /// Builds a shape from per-factor dimensions (all must be >= 1, at least
    /// one factor).
    pub fn new(factor_dims: Vec<usize>) -> Result<Self> {
        if factor_dims.is_empty() {
            return Err(Error::DimensionMismatch {
                context: "space shape (needs at least one factor)",
                expected: 1,
                got: 0,
            });
        }
        if factor_dims.contains(&0) {
            return Err(Error::DimensionMismatch {
                context: "space shape (zero-dimensional factor)",
                expected: 1,
                got: 0,
            });
        }
        Ok(Self { factor_dims })
    }

    /// Single-factor shape of the given dimension.
    pub fn single(dim: usize) -> Result<Self> {
        Self::new(vec![dim])
    }

    /// The factor dimensions.
    pub fn factor_dims(&self) -> &[usize] {
        &self.factor_dims
    }

    /// Number of tensor factors.
    pub fn factor_count(&self) -> usize {
        self.factor_dims.len()
    }

    /// Dimension of one factor.
    pub fn factor_dim(&self, index: usize) -> Result<usize> {
        self.factor_dims
            .get(index)
            .copied()
            .ok_or(Error::FactorIndexOutOfRange {
                index,
                factors: self.factor_dims.len(),
            })
    }

    /// Product of all factor dimensions.
    pub fn total_dim(&self) -> usize {
        self.factor_dims.iter().product()
    }

    /// Flat-index stride of a factor: the product of all dimensions after it.
    pub fn stride(&self, index: usize) -> Result<usize> {
        if index >= self.factor_dims.len() {
            return Err(Error::FactorIndexOutOfRange {
                index,
                factors: self.factor_dims.len(),
            });
        }
        Ok(self.factor_dims[index + 1..].iter().product())
    }

    /// The shape with one factor removed. Removing the only factor leaves
    /// the trivial one-dimensional space `[1]`.
    pub fn without_factor(&self, index: usize) -> Result<Self> {
        if index >= self.factor_dims.len() {
            return Err(Error::FactorIndexOutOfRange {
                index,
                factors: self.factor_dims.len(),
            });
        }
        let mut dims = self.factor_dims.clone();
        dims.remove(index);
        if dims.is_empty() {
            dims.push(1);
        }
        Self::new(dims)
    }

    /// Concatenation of two shapes (tensor product of the spaces).
    pub fn joined(&self, other: &Self) -> Self {
        let mut dims = self.factor_dims.clone();
        dims.extend_from_slice(&other.factor_dims);
        Self { factor_dims: dims }
    }
}

/// A unit-norm state vector over a shaped tensor-product space.
///
/// Normalization (within [`tol::STATE_NORM`]) and shape/length agreement are
/// checked at construction, so holders can rely on both.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    amplitudes: ComplexVector,
    shape: SpaceShape,
}

impl PureState {
    /// Wraps amplitudes over `shape`. The vector length must equal the
    /// shape's total dimension and the norm must be 1 within
    /// [`tol::STATE_NORM`].
    pub fn new(amplitudes: ComplexVector, shape: SpaceShape) -> Result<Self> {
        if amplitudes.dim() != shape.total_dim() {
            return Err(Error::DimensionMismatch {
                context: "pure state amplitudes vs shape",
                expected: shape.total_dim(),
                got: amplitudes.dim(),
            });
        }
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > tol::STATE_NORM {
            return Err(Error::NotNormalized { norm });
        }
        Ok(Self { amplitudes, shape })
    }

    /// Like [`Self::new`] but renormalizes first (rejecting zero vectors).
    pub fn normalized_from(amplitudes: ComplexVector, shape: SpaceShape) -> Result<Self> {
        let unit = amplitudes.normalized()?;
        Self::new(unit, shape)
    }

    /// A state over a single factor of dimension `amplitudes.dim()`.
    pub fn from_amplitudes(amplitudes: ComplexVector) -> Result<Self> {
        let shape = SpaceShape::single(amplitudes.dim())?;
        Self::new(amplitudes, shape)
    }

    /// The canonical basis state `|index>` over `shape`.
    pub fn basis(shape: SpaceShape, index: usize) -> Result<Self> {
        let dim = shape.total_dim();
        if index >= dim {
            return Err(Error::DimensionMismatch {
                context: "basis state index",
                expected: dim,
                got: index,
            });
        }
        Self::new(ComplexVector::basis(dim, index), shape)
    }

    /// Total dimension.
    pub fn dim(&self) -> usize {
        self.amplitudes.dim()
    }

    /// The underlying shape.
    pub fn shape(&self) -> &SpaceShape {
        &self.shape
    }

    /// The amplitude vector.
    pub fn amplitudes(&self) -> &ComplexVector {
        &self.amplitudes
    }

    /// `<self|other>`.
    pub fn overlap(&self, other: &Self) -> Result<Complex64> {
        self.amplitudes.inner(&other.amplitudes)
    }

    /// Tensor product; `self` takes the most significant index position and
    /// the shapes concatenate.
    pub fn tensor(&self, other: &Self) -> Self {
        Self {
            amplitudes: self.amplitudes.kron(&other.amplitudes),
            shape: self.shape.joined(&other.shape),
        }
    }

    /// The same physical state with a global phase `e^(i angle)` applied.
    pub fn with_phase(&self, angle: f64) -> Self {
        Self {
            amplitudes: self.amplitudes.scaled(Complex64::from_polar(1.0, angle)),
            shape: self.shape.clone(),
        }
    }

    /// The rank-one projector `|self><self|` as a density operator.
    pub fn to_density(&self) -> DensityOperator {
        DensityOperator {
            matrix: self.amplitudes.outer(&self.amplitudes),
            shape: self.shape.clone(),
        }
    }
}

/// A density operator: Hermitian, unit-trace, positive semidefinite (all
/// within [`tol::DENSITY`]).
#[derive(Clone, Debug, PartialEq)]
pub struct DensityOperator {
    matrix: ComplexMatrix,
    shape: SpaceShape,
}

impl DensityOperator {
    /// Validates and wraps a matrix: square with the shape's total dimension,
    /// Hermitian, trace 1, and no eigenvalue below `-`[`tol::DENSITY`].
    pub fn new(matrix: ComplexMatrix, shape: SpaceShape) -> Result<Self> {
        if matrix.rows() != matrix.cols() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        if matrix.rows() != shape.total_dim() {
            return Err(Error::DimensionMismatch {
                context: "density operator vs shape",
                expected: shape.total_dim(),
                got: matrix.rows(),
            });
        }
        let dev = matrix.hermitian_deviation()?;
        if dev > tol::DENSITY {
            return Err(Error::NotHermitian {
                deviation: dev,
                tolerance: tol::DENSITY,
            });
        }
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > tol::DENSITY || trace.im.abs() > tol::DENSITY {
            return Err(Error::InvalidTrace { trace: trace.re });
        }
        let eig = matrix.hermitian_eig()?;
        if let Some(&lowest) = eig.eigenvalues.first() {
            if lowest < -tol::DENSITY {
                return Err(Error::NotPositiveSemidefinite { eigenvalue: lowest });
            }
        }
        Ok(Self { matrix, shape })
    }

    /// The underlying matrix.
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// The underlying shape.
    pub fn shape(&self) -> &SpaceShape {
        &self.shape
    }

    /// Total dimension.
    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }
}

/// One branch of a measurement: its label, its probability, and (when the
/// probability is not numerically zero) the renormalized post-measurement
/// state.
#[derive(Clone, Debug)]
pub struct MeasurementOutcome {
    /// Index of the measured basis vector.
    pub label: usize,
    /// Born-rule probability of this branch.
    pub probability: f64,
    /// Renormalized conditional state; `None` when the probability falls
    /// below [`tol::PROB_FLOOR`].
    pub post_state: Option<PureState>,
}

/// General fidelity `F(rho0, rho1) = tr sqrt( sqrt(rho0) rho1 sqrt(rho0) )`.
///
/// Eigenvalues of the inner product matrix below
/// [`tol::FIDELITY_TRACE_CUTOFF`] relative to the largest are treated as
/// exact zeros before the square root: round-off-level eigenvalues would
/// otherwise contribute `sqrt(eps) ~ 1e-8` artifacts to the trace.
pub fn fidelity(rho0: &DensityOperator, rho1: &DensityOperator) -> Result<f64> {
    if rho0.dim() != rho1.dim() {
        return Err(Error::DimensionMismatch {
            context: "fidelity operands",
            expected: rho0.dim(),
            got: rho1.dim(),
        });
    }
    let root0 = rho0.matrix.hermitian_sqrt()?;
    let product = root0.matmul(&rho1.matrix)?.matmul(&root0)?;
    let n = product.rows();
    let symmetrized = ComplexMatrix::from_fn(n, n, |r, c| {
        (product.entry(r, c) + product.entry(c, r).conj()) * Complex64::new(0.5, 0.0)
    });
    let eig = symmetrized.hermitian_eig()?;
    let largest = eig.eigenvalues.last().copied().unwrap_or(0.0).max(0.0);
    let cutoff = largest * tol::FIDELITY_TRACE_CUTOFF;
    Ok(eig
        .eigenvalues
        .iter()
        .filter(|&&lambda| lambda > cutoff && lambda > 0.0)
        .map(|&lambda| lambda.sqrt())
        .sum())
}

/// Pure-state fidelity `|<psi0|psi1>|`.
pub fn pure_fidelity(psi0: &PureState, psi1: &PureState) -> Result<f64> {
    Ok(psi0.overlap(psi1)?.norm())
}

/// Projective measurement of the full space in the given orthonormal basis.
///
/// The basis must be complete (`dim` vectors) and orthonormal within
/// [`tol::ORTHONORMALITY`]. Every branch carries its basis vector as the
/// post-state; probabilities sum to 1 within round-off.
pub fn measure_projective(
    psi: &PureState,
    basis: &[ComplexVector],
) -> Result<Vec<MeasurementOutcome>> {
    if basis.len() != psi.dim() {
        return Err(Error::DimensionMismatch {
            context: "projective measurement basis count",
            expected: psi.dim(),
            got: basis.len(),
        });
    }
    for b in basis {
        if b.dim() != psi.dim() {
            return Err(Error::DimensionMismatch {
                context: "projective measurement basis vector",
                expected: psi.dim(),
                got: b.dim(),
            });
        }
    }
    let dev = crate::linalg::gram_deviation(basis)?;
    if dev > tol::ORTHONORMALITY {
        return Err(Error::NotOrthonormal {
            deviation: dev,
            tolerance: tol::ORTHONORMALITY,
        });
    }
    basis
        .iter()
        .enumerate()
        .map(|(label, b)| {
            let amplitude = b.inner(psi.amplitudes())?;
            let post = PureState::normalized_from(b.clone(), psi.shape().clone())?;
            Ok(MeasurementOutcome {
                label,
                probability: amplitude.norm_sqr(),
                post_state: Some(post),
            })
        })
        .collect()
}

/// Measurement of one tensor factor in an orthonormal basis of that factor.
///
/// Branch `k` has probability `|| <b_k|_factor psi ||^2` and, when that is
/// not numerically zero, the renormalized conditional state over the
/// remaining factors as its post-state.
pub fn measure_subsystem(
    psi: &PureState,
    factor_index: usize,
    basis: &[ComplexVector],
) -> Result<Vec<MeasurementOutcome>> {
    let factor_dim = psi.shape().factor_dim(factor_index)?;
    if basis.len() != factor_dim {
        return Err(Error::DimensionMismatch {
            context: "subsystem measurement basis count",
            expected: factor_dim,
            got: basis.len(),
        });
    }
    for b in basis {
        if b.dim() != factor_dim {
            return Err(Error::DimensionMismatch {
                context: "subsystem measurement basis vector",
                expected: factor_dim,
                got: b.dim(),
            });
        }
    }
    let dev = crate::linalg::gram_deviation(basis)?;
    if dev > tol::ORTHONORMALITY {
        return Err(Error::NotOrthonormal {
            deviation: dev,
            tolerance: tol::ORTHONORMALITY,
        });
    }

    let stride = psi.shape().stride(factor_index)?;
    let remaining_shape = psi.shape().without_factor(factor_index)?;
    let remaining_dim = psi.dim() / factor_dim;
    let block = stride * factor_dim;

    basis
        .iter()
        .enumerate()
        .map(|(label, b)| {
            // Contract <b| onto the measured factor.
            let mut cond = vec![Complex64::new(0.0, 0.0); remaining_dim];
            for (flat, &amp) in psi.amplitudes().as_slice().iter().enumerate() {
                let digit = (flat / stride) % factor_dim;
                let rest = (flat / block) * stride + (flat % stride);
                cond[rest] += b.entry(digit).conj() * amp;
            }
            let conditional = ComplexVector::new(cond)?;
            let probability = conditional.norm_squared();
            let post_state = if probability > tol::PROB_FLOOR {
                Some(PureState::normalized_from(
                    conditional,
                    remaining_shape.clone(),
                )?)
            } else {
                None
            };
            Ok(MeasurementOutcome {
                label,
                probability,
                post_state,
            })
        })
        .collect()
}
