//! Python extension module for the probabilistic cloning toolkit.
//!
//! Compiles to an abi3 `cdylib` importable as `probclone`. Amplitudes cross
//! the boundary as plain Python lists of `complex`; reports and analyses come
//! back as dicts so they print and serialize without any wrapper types.
//!
//! Build with `cargo build -p probclone-py`, then place the produced
//! `libprobclone.so` on `sys.path` as `probclone.so` (see
//! `python/smoke_test.py` for a self-contained way to do that).

// The binding macros insert PyErr-to-PyErr conversions on every fallible
// method; the lint fires on their expansion, not on code in this file.
#![allow(clippy::useless_conversion)]

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use probclone_core::bounds::{self, GeneralMachineSpec};
use probclone_core::machine::{self, CloningMachine, MachineConfig};
use probclone_core::sim::{self, DesignatedInput};
use probclone_core::state::{fidelity as density_fidelity, PureState, SpaceShape};
use probclone_core::{tol, Complex64, ComplexMatrix, ComplexVector};

fn domain_err(err: probclone_core::Error) -> PyErr {
    PyValueError::new_err(err.to_string())
}

fn state_from(amplitudes: Vec<Complex64>) -> PyResult<PureState> {
    let dim = amplitudes.len();
    let vector = ComplexVector::new(amplitudes).map_err(domain_err)?;
    let shape = SpaceShape::single(dim).map_err(domain_err)?;
    PureState::new(vector, shape).map_err(domain_err)
}

fn vector_entries(v: &ComplexVector) -> Vec<Complex64> {
    v.as_slice().to_vec()
}

fn matrix_rows(m: &ComplexMatrix) -> Vec<Vec<Complex64>> {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m.entry(r, c)).collect())
        .collect()
}

/// A cloning machine for one designated pair of states.
///
/// Constructed from the two amplitude lists; the probe and blank-copy
/// choices default to the canonical ones for the pair's dimension.
#[pyclass]
struct Machine {
    inner: CloningMachine,
}

#[pymethods]
impl Machine {
    /// Build the machine for the designated pair `psi0`, `psi1`.
    ///
    /// Raises ValueError for zero vectors, mismatched dimensions, or a pair
    /// too close to identical to separate.
    #[new]
    fn new(psi0: Vec<Complex64>, psi1: Vec<Complex64>) -> PyResult<Self> {
        let psi0 = state_from(psi0)?;
        let psi1 = state_from(psi1)?;
        let config = MachineConfig::default_for_dim(psi0.dim()).map_err(domain_err)?;
        let inner = CloningMachine::build(psi0, psi1, config).map_err(domain_err)?;
        Ok(Self { inner })
    }

    /// Dimension of each designated state.
    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    /// Rephased overlap of the designated pair (real, in `[0, 1)`).
    #[getter]
    fn overlap(&self) -> f64 {
        self.inner.overlap_s()
    }

    /// Phase removed from the second state to make the overlap real.
    #[getter]
    fn rephase_angle(&self) -> f64 {
        self.inner.rephase_angle()
    }

    /// Success probability for either designated input.
    #[getter]
    fn eta(&self) -> f64 {
        self.inner.eta()
    }

    /// The four machine amplitudes as a dict.
    #[getter]
    fn amplitudes<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let amps = self.inner.amplitudes();
        let dict = PyDict::new_bound(py);
        dict.set_item("a00", amps.a00)?;
        dict.set_item("a01", amps.a01)?;
        dict.set_item("a10", amps.a10)?;
        dict.set_item("a11", amps.a11)?;
        Ok(dict)
    }

    /// First designated state (after any rephasing), as a list of complex.
    fn psi0(&self) -> Vec<Complex64> {
        vector_entries(self.inner.psi0().amplitudes())
    }

    /// Second designated state (after any rephasing), as a list of complex.
    fn psi1(&self) -> Vec<Complex64> {
        vector_entries(self.inner.psi1().amplitudes())
    }

    /// The joint unitary as a row-major nested list.
    fn unitary(&self) -> Vec<Vec<Complex64>> {
        matrix_rows(self.inner.unitary())
    }

    /// Deviation of the joint matrix from exact unitarity.
    fn unitarity_residual(&self) -> PyResult<f64> {
        self.inner
            .unitary()
            .unitarity_residual()
            .map_err(domain_err)
    }

    /// Evolve `input ⊗ blank ⊗ probe` through the machine.
    ///
    /// Returns the joint output amplitudes (dimension `2·n²`).
    fn apply(&self, input: Vec<Complex64>) -> PyResult<Vec<Complex64>> {
        let state = state_from(input)?;
        let out = self.inner.apply(&state).map_err(domain_err)?;
        Ok(vector_entries(out.amplitudes()))
    }

    /// Evolve and measure the probe.
    ///
    /// Returns a dict with `success`, `probability`, `post_state` (the joint
    /// two-copy amplitudes on success, else None), and `clone_fidelity`
    /// (fidelity of the post-measurement state against `input ⊗ input`).
    fn postselect<'py>(
        &self,
        py: Python<'py>,
        input: Vec<Complex64>,
    ) -> PyResult<Bound<'py, PyDict>> {
        let state = state_from(input)?;
        let outcome = self.inner.postselect(&state).map_err(domain_err)?;
        let dict = PyDict::new_bound(py);
        dict.set_item("success", outcome.success)?;
        dict.set_item("probability", outcome.probability)?;
        dict.set_item(
            "post_state",
            outcome
                .post_state_ab
                .as_ref()
                .map(|s| vector_entries(s.amplitudes())),
        )?;
        dict.set_item("clone_fidelity", outcome.clone_fidelity)?;
        Ok(dict)
    }

    /// Run a seeded Monte Carlo experiment on a designated input.
    ///
    /// `input_label` selects the designated state (0 or 1). Returns the full
    /// report as a dict, including the draw-generator identifier so runs can
    /// be replayed elsewhere.
    #[pyo3(signature = (input_label, shots, seed = 0))]
    fn run_monte_carlo<'py>(
        &self,
        py: Python<'py>,
        input_label: u8,
        shots: u64,
        seed: u64,
    ) -> PyResult<Bound<'py, PyDict>> {
        let input = DesignatedInput::from_label(input_label)
            .ok_or_else(|| PyValueError::new_err("input_label must be 0 or 1"))?;
        let report = sim::run_monte_carlo(&self.inner, input, shots, seed).map_err(domain_err)?;
        let dict = PyDict::new_bound(py);
        dict.set_item("seed", report.seed)?;
        dict.set_item("shots", report.shots)?;
        dict.set_item("input_label", report.input_label)?;
        dict.set_item("successes", report.successes)?;
        dict.set_item("empirical_eta", report.empirical_eta)?;
        dict.set_item("analytic_eta", report.analytic_eta)?;
        dict.set_item("z_score", report.z_score)?;
        dict.set_item("mean_clone_fidelity", report.mean_clone_fidelity)?;
        dict.set_item("generator", sim::GENERATOR_ID)?;
        Ok(dict)
    }

    /// Audit this machine against the efficiency constraints.
    ///
    /// Returns the per-input efficiencies, residuals, the probe-orthogonality
    /// violation, both sides of the overlap inequality, mean-efficiency
    /// figures and bounds, plus `saturated` and `constraint_holds` flags.
    fn analyze<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let analysis = GeneralMachineSpec::from_machine(&self.inner)
            .analyze()
            .map_err(domain_err)?;
        let dict = PyDict::new_bound(py);
        dict.set_item("eta0", analysis.eta0)?;
        dict.set_item("eta1", analysis.eta1)?;
        dict.set_item("flag_overlap", analysis.flag_overlap)?;
        dict.set_item("residual0", analysis.residual0)?;
        dict.set_item("residual1", analysis.residual1)?;
        dict.set_item("orthogonality_violation", analysis.orthogonality_violation)?;
        dict.set_item("overlap_constraint_lhs", analysis.overlap_constraint_lhs)?;
        dict.set_item("overlap_constraint_rhs", analysis.overlap_constraint_rhs)?;
        dict.set_item("mean_eta", analysis.mean_eta)?;
        dict.set_item("mean_eta_bound", analysis.mean_eta_bound)?;
        dict.set_item("universal_eta_bound", analysis.universal_eta_bound)?;
        dict.set_item("saturated", analysis.saturated)?;
        dict.set_item(
            "constraint_holds",
            analysis.constraint_holds(tol::SATURATION),
        )?;
        Ok(dict)
    }

    fn __repr__(&self) -> String {
        format!(
            "Machine(dim={}, overlap={:.6}, eta={:.6})",
            self.inner.dim(),
            self.inner.overlap_s(),
            self.inner.eta()
        )
    }
}

/// Best possible success probability for a pair with rephased overlap `s`.
#[pyfunction]
fn universal_bound(overlap: f64) -> PyResult<f64> {
    bounds::universal_bound(overlap).map_err(domain_err)
}

/// Upper bound on the mean success probability when the machine's failure
/// flags have overlap `flag_overlap`.
#[pyfunction]
fn mean_efficiency_bound(overlap: f64, flag_overlap: f64) -> PyResult<f64> {
    bounds::mean_efficiency_bound(overlap, flag_overlap).map_err(domain_err)
}

/// Whether efficiencies `(eta0, eta1)` are admissible for overlap `s` and
/// flag overlap `flag_overlap`.
#[pyfunction]
fn check_no_perfect_cloning(overlap: f64, eta0: f64, eta1: f64, flag_overlap: f64) -> bool {
    bounds::check_no_perfect_cloning(overlap, eta0, eta1, flag_overlap)
}

/// The two closed-form image columns of the qubit machine at angle `alpha`.
#[pyfunction]
fn golden_qubit_images(alpha: f64) -> PyResult<(Vec<Complex64>, Vec<Complex64>)> {
    let (first, fifth) = machine::golden_qubit_images(alpha).map_err(domain_err)?;
    Ok((
        vector_entries(first.amplitudes()),
        vector_entries(fifth.amplitudes()),
    ))
}

/// Fidelity between the pure states with the given amplitude lists.
#[pyfunction]
fn state_fidelity(a: Vec<Complex64>, b: Vec<Complex64>) -> PyResult<f64> {
    let a = state_from(a)?;
    let b = state_from(b)?;
    density_fidelity(&a.to_density(), &b.to_density()).map_err(domain_err)
}

/// The measurement counterexample: a filter that drives the fidelity of a
/// distinguishable pair from 1/2 to 0.
#[pyfunction]
fn filter_demo(py: Python<'_>) -> PyResult<Bound<'_, PyDict>> {
    let report = sim::filter_demo().map_err(domain_err)?;
    let dict = PyDict::new_bound(py);
    dict.set_item("fidelity_before", report.fidelity_before)?;
    dict.set_item("fidelity_after", report.fidelity_after)?;
    dict.set_item("keep_probability_psi0", report.keep_probability_psi0)?;
    dict.set_item("keep_probability_psi1", report.keep_probability_psi1)?;
    dict.set_item("monotonicity_violated", report.monotonicity_violated)?;
    Ok(dict)
}

/// Module definition.
#[pymodule]
fn probclone(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Machine>()?;
    m.add_function(wrap_pyfunction!(universal_bound, m)?)?;
    m.add_function(wrap_pyfunction!(mean_efficiency_bound, m)?)?;
    m.add_function(wrap_pyfunction!(check_no_perfect_cloning, m)?)?;
    m.add_function(wrap_pyfunction!(golden_qubit_images, m)?)?;
    m.add_function(wrap_pyfunction!(state_fidelity, m)?)?;
    m.add_function(wrap_pyfunction!(filter_demo, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add("GENERATOR_ID", sim::GENERATOR_ID)?;
    Ok(())
}
