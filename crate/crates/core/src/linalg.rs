//! Dense complex vectors and matrices sized for tensor-product state spaces.
//!
//! Everything here is plain `Vec<Complex64>` storage with explicit loops: the
//! spaces in this crate top out at a few dozen dimensions, where clarity and
//! auditability beat clever blocking. The two workhorses with real numerical
//! content are [`ComplexMatrix::hermitian_eig`] (cyclic Jacobi with complex
//! rotations) and the Gram–Schmidt pair [`orthonormalize`] /
//! [`complete_basis`]; both carry explicit residual contracts checked by the
//! test suite.
//!
//! Conventions:
//! - matrices are row-major;
//! - `kron` puts the **left** factor in the most significant index position,
//!   so `a.kron(&b)` indexes as `i_a * dim_b + i_b`;
//! - [`ComplexVector::inner`] is conjugate-linear in `self` (`<self|other>`).

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::tol;

/// Double-precision complex scalar used throughout the crate.
pub type Complex64 = Complex<f64>;

/// Maximum Jacobi sweeps before the eigensolver reports non-convergence.
const MAX_JACOBI_SWEEPS: usize = 60;

fn all_finite(entries: &[Complex64]) -> bool {
    entries.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// A dense complex column vector with at least one entry.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexVector {
    entries: Vec<Complex64>,
}

impl ComplexVector {
    /// Wraps raw entries. Rejects empty input and non-finite components.
    pub fn new(entries: Vec<Complex64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::DimensionMismatch {
                context: "vector construction",
                expected: 1,
                got: 0,
            });
        }
        if !all_finite(&entries) {
            return Err(Error::NonFinite {
                context: "vector entries",
            });
        }
        Ok(Self { entries })
    }

    /// Builds a vector from real components.
    pub fn from_real(re: &[f64]) -> Result<Self> {
        Self::new(re.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// The zero vector of the given dimension.
    ///
    /// # Panics
    /// If `dim` is zero.
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "vector dimension must be at least 1");
        Self {
            entries: vec![Complex64::new(0.0, 0.0); dim],
        }
    }

    /// The canonical basis vector `e_index`.
    ///
    /// # Panics
    /// If `index >= dim` or `dim` is zero.
    pub fn basis(dim: usize, index: usize) -> Self {
        assert!(
            index < dim,
            "basis index {index} out of range for dim {dim}"
        );
        let mut v = Self::zeros(dim);
        v.entries[index] = Complex64::new(1.0, 0.0);
        v
    }

    /// Number of entries.
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// Entry at `index`.
    ///
    /// # Panics
    /// If `index` is out of range.
    pub fn entry(&self, index: usize) -> Complex64 {
        self.entries[index]
    }

    /// Borrow all entries.
    pub fn as_slice(&self) -> &[Complex64] {
        &self.entries
    }

    /// Euclidean norm.
    pub fn norm(&self) -> f64 {
        self.norm_squared().sqrt()
    }

    /// Squared Euclidean norm.
    pub fn norm_squared(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `<self|other>`, conjugate-linear in `self`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                context: "inner product",
                expected: self.dim(),
                got: other.dim(),
            });
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// A unit-norm copy. Fails on (numerically) zero vectors.
    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n < 1e-300 {
            return Err(Error::ZeroNorm { norm: n });
        }
        Ok(self.scaled(Complex64::new(1.0 / n, 0.0)))
    }

    /// Entrywise scalar multiple.
    pub fn scaled(&self, factor: Complex64) -> Self {
        Self {
            entries: self.entries.iter().map(|z| z * factor).collect(),
        }
    }

    /// Entrywise sum.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                context: "vector addition",
                expected: self.dim(),
                got: other.dim(),
            });
        }
        Ok(Self {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Entrywise difference.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                context: "vector subtraction",
                expected: self.dim(),
                got: other.dim(),
            });
        }
        Ok(Self {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Tensor product; `self` takes the most significant index position.
    pub fn kron(&self, other: &Self) -> Self {
        let mut entries = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.entries {
            for b in &other.entries {
                entries.push(a * b);
            }
        }
        Self { entries }
    }

    /// Outer product `|self><other|`.
    pub fn outer(&self, other: &Self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.dim(), other.dim(), |r, c| {
            self.entries[r] * other.entries[c].conj()
        })
    }

    /// Largest entrywise distance to `other`.
    ///
    /// # Panics
    /// If dimensions differ.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim(), other.dim(), "max_abs_diff dimension mismatch");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Result of a Hermitian eigendecomposition `H = V diag(lambda) V^dag`.
#[derive(Clone, Debug)]
pub struct HermitianEig {
    /// Real eigenvalues in ascending order.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors as matrix columns, ordered to match.
    pub eigenvectors: ComplexMatrix,
}

/// A dense row-major complex matrix with at least one row and column.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Wraps row-major entries. Rejects shape/length mismatch and non-finite
    /// components.
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                context: "matrix construction",
                expected: rows * cols,
                got: entries.len(),
            });
        }
        if !all_finite(&entries) {
            return Err(Error::NonFinite {
                context: "matrix entries",
            });
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix by evaluating `f(row, col)`.
    ///
    /// # Panics
    /// If either dimension is zero.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        assert!(
            rows >= 1 && cols >= 1,
            "matrix dimensions must be at least 1"
        );
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Self {
            rows,
            cols,
            entries,
        }
    }

    /// The zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| Complex64::new(0.0, 0.0))
    }

    /// The identity matrix.
    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, dim, |r, c| {
            Complex64::new(if r == c { 1.0 } else { 0.0 }, 0.0)
        })
    }

    /// Row count.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Column count.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry at `(row, col)`.
    ///
    /// # Panics
    /// If either index is out of range.
    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        assert!(
            row < self.rows && col < self.cols,
            "matrix index out of range"
        );
        self.entries[row * self.cols + col]
    }

    /// Borrow the row-major entries.
    pub fn as_slice(&self) -> &[Complex64] {
        &self.entries
    }

    /// Column `col` as a vector.
    ///
    /// # Panics
    /// If `col` is out of range.
    pub fn column(&self, col: usize) -> ComplexVector {
        assert!(col < self.cols, "column index out of range");
        ComplexVector {
            entries: (0..self.rows).map(|r| self.entry(r, col)).collect(),
        }
    }

    /// Matrix product `self * rhs`.
    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                context: "matrix product",
                expected: self.cols,
                got: rhs.rows,
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.entries[r * self.cols + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for c in 0..rhs.cols {
                    out.entries[r * rhs.cols + c] += a * rhs.entries[k * rhs.cols + c];
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product `self * v`.
    pub fn mul_vec(&self, v: &ComplexVector) -> Result<ComplexVector> {
        if self.cols != v.dim() {
            return Err(Error::DimensionMismatch {
                context: "matrix-vector product",
                expected: self.cols,
                got: v.dim(),
            });
        }
        let mut out = ComplexVector::zeros(self.rows);
        for r in 0..self.rows {
            let mut acc = Complex64::new(0.0, 0.0);
            for c in 0..self.cols {
                acc += self.entries[r * self.cols + c] * v.entries[c];
            }
            out.entries[r] = acc;
        }
        Ok(out)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.entry(c, r).conj())
    }

    /// Tensor product; `self` takes the most significant index position.
    pub fn kron(&self, other: &Self) -> Self {
        Self::from_fn(self.rows * other.rows, self.cols * other.cols, |r, c| {
            self.entry(r / other.rows, c / other.cols) * other.entry(r % other.rows, c % other.cols)
        })
    }

    /// Entrywise scalar multiple.
    pub fn scaled(&self, factor: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|z| z * factor).collect(),
        }
    }

    /// Entrywise sum.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                context: "matrix addition",
                expected: self.rows * self.cols,
                got: other.rows * other.cols,
            });
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Entrywise difference.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                context: "matrix subtraction",
                expected: self.rows * self.cols,
                got: other.rows * other.cols,
            });
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Trace (sum of diagonal entries).
    ///
    /// # Panics
    /// If the matrix is not square.
    pub fn trace(&self) -> Complex64 {
        assert_eq!(self.rows, self.cols, "trace of a non-square matrix");
        (0..self.rows).map(|i| self.entry(i, i)).sum()
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise distance to `other`.
    ///
    /// # Panics
    /// If shapes differ.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert!(
            self.rows == other.rows && self.cols == other.cols,
            "max_abs_diff shape mismatch"
        );
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub(crate) fn require_square(&self) -> Result<usize> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(self.rows)
    }

    /// Largest entrywise deviation from the adjoint, `max |H - H^dag|`.
    pub fn hermitian_deviation(&self) -> Result<f64> {
        let n = self.require_square()?;
        let mut dev: f64 = 0.0;
        for r in 0..n {
            for c in 0..n {
                dev = dev.max((self.entry(r, c) - self.entry(c, r).conj()).norm());
            }
        }
        Ok(dev)
    }

    /// Max-entry residual of `U U^dag - I` and `U^dag U - I` (the larger of
    /// the two).
    pub fn unitarity_residual(&self) -> Result<f64> {
        let n = self.require_square()?;
        let id = Self::identity(n);
        let adj = self.adjoint();
        let left = self.matmul(&adj)?.sub(&id)?.max_abs();
        let right = adj.matmul(self)?.sub(&id)?.max_abs();
        Ok(left.max(right))
    }

    /// Whether both unitarity residuals stay within `tolerance`.
    pub fn is_unitary(&self, tolerance: f64) -> Result<bool> {
        Ok(self.unitarity_residual()? <= tolerance)
    }

    /// Full eigendecomposition of a Hermitian matrix by cyclic Jacobi
    /// rotations.
    ///
    /// The input must be Hermitian within [`tol::HERMITIAN`]; it is
    /// symmetrized before iteration so round-off asymmetry cannot leak into
    /// the spectrum. Eigenvalues come back real and ascending, eigenvectors
    /// as orthonormal columns, and the reconstruction
    /// `V diag(lambda) V^dag` matches the input to [`tol::EIG_RESIDUAL`].
    pub fn hermitian_eig(&self) -> Result<HermitianEig> {
        let n = self.require_square()?;
        let dev = self.hermitian_deviation()?;
        if dev > tol::HERMITIAN {
            return Err(Error::NotHermitian {
                deviation: dev,
                tolerance: tol::HERMITIAN,
            });
        }

        // Work on the Hermitian average of the input and its adjoint.
        let mut a = Self::from_fn(n, n, |r, c| {
            (self.entry(r, c) + self.entry(c, r).conj()) * Complex64::new(0.5, 0.0)
        });
        let mut v = Self::identity(n);

        let scale = a.max_abs().max(1e-300);
        let stop = scale * 1e-15;

        let mut converged = false;
        let mut sweeps = 0;
        while sweeps < MAX_JACOBI_SWEEPS {
            let mut off: f64 = 0.0;
            for p in 0..n {
                for q in (p + 1)..n {
                    off = off.max(a.entry(p, q).norm());
                }
            }
            if off <= stop {
                converged = true;
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    jacobi_rotate(&mut a, &mut v, p, q, stop * 0.1);
                }
            }
            sweeps += 1;
        }
        if !converged {
            let mut off: f64 = 0.0;
            for p in 0..n {
                for q in (p + 1)..n {
                    off = off.max(a.entry(p, q).norm());
                }
            }
            // One last chance: good enough for the reconstruction contract?
            if off > scale * 1e-12 {
                return Err(Error::EigenConvergence {
                    sweeps,
                    off_diagonal: off,
                });
            }
        }

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| {
            a.entry(i, i)
                .re
                .partial_cmp(&a.entry(j, j).re)
                .expect("eigenvalues are finite")
        });
        let eigenvalues: Vec<f64> = order.iter().map(|&i| a.entry(i, i).re).collect();
        let eigenvectors = Self::from_fn(n, n, |r, c| v.entry(r, order[c]));
        Ok(HermitianEig {
            eigenvalues,
            eigenvectors,
        })
    }

    /// Positive-semidefinite square root via [`Self::hermitian_eig`].
    ///
    /// Eigenvalues in `[`[`tol::EIG_CLIP_FLOOR`]`, 0)` are clipped to zero;
    /// anything more negative is rejected. The result `R` is Hermitian PSD
    /// with `max |R R - H|` within [`tol::SQRT_RESIDUAL`].
    pub fn hermitian_sqrt(&self) -> Result<Self> {
        let eig = self.hermitian_eig()?;
        let n = self.rows;
        let mut roots = Vec::with_capacity(n);
        for &lambda in &eig.eigenvalues {
            if lambda < tol::EIG_CLIP_FLOOR {
                return Err(Error::NotPositiveSemidefinite { eigenvalue: lambda });
            }
            roots.push(lambda.max(0.0).sqrt());
        }
        let vmat = &eig.eigenvectors;
        // R = V diag(sqrt(lambda)) V^dag, assembled directly and then
        // symmetrized to scrub round-off asymmetry.
        let mut r = Self::zeros(n, n);
        for (k, &root) in roots.iter().enumerate() {
            if root == 0.0 {
                continue;
            }
            let col = vmat.column(k);
            for i in 0..n {
                let vi = col.entry(i) * root;
                for j in 0..n {
                    r.entries[i * n + j] += vi * col.entry(j).conj();
                }
            }
        }
        Ok(Self::from_fn(n, n, |i, j| {
            (r.entry(i, j) + r.entry(j, i).conj()) * Complex64::new(0.5, 0.0)
        }))
    }
}

/// One cyclic-Jacobi step: zero the `(p, q)` entry of the Hermitian matrix
/// `a` with a complex rotation, accumulating the rotation into `v`.
fn jacobi_rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize, skip: f64) {
    let n = a.rows;
    let apq = a.entry(p, q);
    let b = apq.norm();
    if b <= skip {
        return;
    }
    // Split off the phase so the remaining 2x2 problem is real symmetric:
    // with phase = apq / |apq|, conjugating by diag(1, conj(phase)) turns the
    // block [[app, apq], [apq^*, aqq]] into [[app, b], [b, aqq]].
    let phase = apq / Complex64::new(b, 0.0);
    let app = a.entry(p, p).re;
    let aqq = a.entry(q, q).re;
    let tau = (aqq - app) / (2.0 * b);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // Rotation columns: col_p <- c*col_p - s*conj(phase)*col_q,
    //                   col_q <- s*col_p + c*conj(phase)*col_q.
    let cs = Complex64::new(c, 0.0);
    let sp = phase.conj() * Complex64::new(s, 0.0);
    let cp = phase.conj() * Complex64::new(c, 0.0);

    for r in 0..n {
        let arp = a.entries[r * n + p];
        let arq = a.entries[r * n + q];
        a.entries[r * n + p] = cs * arp - sp * arq;
        a.entries[r * n + q] = Complex64::new(s, 0.0) * arp + cp * arq;

        let vrp = v.entries[r * n + p];
        let vrq = v.entries[r * n + q];
        v.entries[r * n + p] = cs * vrp - sp * vrq;
        v.entries[r * n + q] = Complex64::new(s, 0.0) * vrp + cp * vrq;
    }
    for col in 0..n {
        let apc = a.entries[p * n + col];
        let aqc = a.entries[q * n + col];
        a.entries[p * n + col] = cs * apc - sp.conj() * aqc;
        a.entries[q * n + col] = Complex64::new(s, 0.0) * apc + cp.conj() * aqc;
    }
    // Scrub the rotated pivot pair: exactly zero by construction.
    a.entries[p * n + q] = Complex64::new(0.0, 0.0);
    a.entries[q * n + p] = Complex64::new(0.0, 0.0);
    let app_new = a.entries[p * n + p];
    let aqq_new = a.entries[q * n + q];
    a.entries[p * n + p] = Complex64::new(app_new.re, 0.0);
    a.entries[q * n + q] = Complex64::new(aqq_new.re, 0.0);
}

/// Output of [`orthonormalize`]: the surviving vectors and how many inputs
/// were dropped as linearly dependent.
#[derive(Clone, Debug)]
pub struct Orthonormalized {
    /// Orthonormal vectors, in input order.
    pub vectors: Vec<ComplexVector>,
    /// Number of inputs dropped for falling below the dependence threshold.
    pub dropped: usize,
}

/// Modified Gram–Schmidt over `vectors` in input order.
///
/// Each vector is orthogonalized twice against the survivors (re-orthogonalization
/// keeps the output Gram matrix at the 1e-12 level even for nearly dependent
/// inputs); vectors whose residual norm falls below `dependence_tol` are
/// dropped and counted.
pub fn orthonormalize(vectors: &[ComplexVector], dependence_tol: f64) -> Result<Orthonormalized> {
    let mut kept: Vec<ComplexVector> = Vec::with_capacity(vectors.len());
    let mut dropped = 0;
    for v in vectors {
        if let Some(first) = kept.first() {
            if first.dim() != v.dim() {
                return Err(Error::DimensionMismatch {
                    context: "orthonormalization",
                    expected: first.dim(),
                    got: v.dim(),
                });
            }
        }
        match project_out(v, &kept, dependence_tol)? {
            Some(unit) => kept.push(unit),
            None => dropped += 1,
        }
    }
    Ok(Orthonormalized {
        vectors: kept,
        dropped,
    })
}

/// Orthogonalizes `v` against `basis` (two modified-Gram–Schmidt passes) and
/// normalizes; `None` if the residual drops below `dependence_tol`.
fn project_out(
    v: &ComplexVector,
    basis: &[ComplexVector],
    dependence_tol: f64,
) -> Result<Option<ComplexVector>> {
    let mut w = v.clone();
    for _ in 0..2 {
        for e in basis {
            let c = e.inner(&w)?;
            w = w.sub(&e.scaled(c))?;
        }
    }
    let n = w.norm();
    if n < dependence_tol {
        return Ok(None);
    }
    Ok(Some(w.scaled(Complex64::new(1.0 / n, 0.0))))
}

/// Largest deviation of the Gram matrix of `vectors` from the identity.
pub fn gram_deviation(vectors: &[ComplexVector]) -> Result<f64> {
    let mut dev: f64 = 0.0;
    for (i, a) in vectors.iter().enumerate() {
        for (j, b) in vectors.iter().enumerate() {
            let g = a.inner(b)?;
            let target = Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0);
            dev = dev.max((g - target).norm());
        }
    }
    Ok(dev)
}

/// Extends an orthonormal tuple to a full orthonormal basis of `C^dim` by
/// appending canonical basis vectors in ascending index order (Gram–Schmidt
/// orthonormalized, skipping the linearly dependent ones).
///
/// The completion rule is deterministic, which downstream synthesis relies on:
/// identical inputs always produce the identical basis.
pub fn complete_basis(vectors: &[ComplexVector], dim: usize) -> Result<Vec<ComplexVector>> {
    if vectors.len() > dim {
        return Err(Error::TooManyVectors {
            count: vectors.len(),
            dim,
        });
    }
    for v in vectors {
        if v.dim() != dim {
            return Err(Error::DimensionMismatch {
                context: "basis completion",
                expected: dim,
                got: v.dim(),
            });
        }
    }
    let dev = gram_deviation(vectors)?;
    if dev > tol::ORTHONORMALITY {
        return Err(Error::NotOrthonormal {
            deviation: dev,
            tolerance: tol::ORTHONORMALITY,
        });
    }

    let mut basis: Vec<ComplexVector> = vectors.to_vec();
    for index in 0..dim {
        if basis.len() == dim {
            break;
        }
        let candidate = ComplexVector::basis(dim, index);
        if let Some(unit) = project_out(&candidate, &basis, tol::DEPENDENCE)? {
            basis.push(unit);
        }
    }
    if basis.len() != dim {
        return Err(Error::BasisCompletion {
            found: basis.len(),
            dim,
        });
    }
    Ok(basis)
}
