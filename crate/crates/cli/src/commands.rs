//! The bodies of the five subcommands, independent of argument parsing.

use std::path::Path;

use probclone_core::bounds::{mean_efficiency_bound, universal_bound, GeneralMachineSpec};
use probclone_core::machine::{CloningMachine, MachineConfig};
use probclone_core::sim::{filter_demo, run_monte_carlo, DesignatedInput};
use probclone_core::state::{PureState, SpaceShape};
use probclone_core::synthesis::check_gram;
use probclone_core::{Complex64, ComplexVector};
use serde_json::json;

use crate::error::CliError;
use crate::formats::{read_json, write_json, MachineFile, MachineParts, StateFile};
use crate::report::{
    AnalysisOutcome, BoundOutcome, GramDeltas, MachineSummary, ReportPayload, RunReport,
    SimulationOutcome, VerificationOutcome,
};

/// Tolerances the verify command checks against; every one is a flag so a
/// stored machine can be re-examined at other strictness levels without
/// recompiling.
#[derive(Clone, Copy, Debug)]
pub struct VerifyTolerances {
    /// Ceiling for the unitarity residual (default 1e-10).
    pub unitary: f64,
    /// Ceiling for Gram and overlap deltas (default 1e-9).
    pub gram: f64,
    /// Ceiling for efficiency mismatches (default 1e-9).
    pub eta: f64,
    /// Ceiling for the flag-orthogonality violation (default 1e-9).
    pub orthogonality: f64,
    /// Ceiling for the designated-image residuals (default 1e-9).
    pub mapping: f64,
}

impl Default for VerifyTolerances {
    fn default() -> Self {
        Self {
            unitary: 1e-10,
            gram: 1e-9,
            eta: 1e-9,
            orthogonality: 1e-9,
            mapping: 1e-9,
        }
    }
}

/// Runs the three-level filtering counterexample.
pub fn cmd_filter_demo() -> Result<RunReport, CliError> {
    let demo = filter_demo()?;
    RunReport::new(
        "filter-demo",
        json!({}),
        ReportPayload::FilterDemo(demo.into()),
    )
}

/// Builds a machine from two state files (plus optional blank-copy and
/// failure-state overrides), writes it to `out`, and reports a summary.
pub fn cmd_build(
    psi0_path: &Path,
    psi1_path: &Path,
    sigma_path: Option<&Path>,
    phi_ab_path: Option<&Path>,
    out_path: &Path,
) -> Result<RunReport, CliError> {
    let psi0 = load_state(psi0_path)?;
    let psi1 = load_state(psi1_path)?;
    let n = psi0.dim();
    let defaults = MachineConfig::default_for_dim(n)?;
    let sigma = match sigma_path {
        Some(path) => load_state(path)?,
        None => defaults.sigma().clone(),
    };
    let phi_ab = match phi_ab_path {
        Some(path) => load_state_shaped(path, SpaceShape::new(vec![n, n])?)?,
        None => defaults.phi_ab().clone(),
    };
    let config = MachineConfig::new(
        sigma,
        phi_ab,
        defaults.probe_success().clone(),
        defaults.probe_fail().clone(),
    )?;
    let machine = CloningMachine::build(psi0, psi1, config)?;
    let file = MachineFile::from_machine(&machine);
    write_json(out_path, &file)?;
    let summary = MachineSummary {
        dim: machine.dim(),
        overlap_s: machine.overlap_s(),
        rephase_angle: machine.rephase_angle(),
        eta: machine.eta(),
        unitarity_residual: machine.unitary().unitarity_residual()?,
        machine_path: out_path.display().to_string(),
    };
    RunReport::new(
        "build",
        json!({
            "psi0": psi0_path.display().to_string(),
            "psi1": psi1_path.display().to_string(),
            "sigma": sigma_path.map(|p| p.display().to_string()),
            "phi_ab": phi_ab_path.map(|p| p.display().to_string()),
            "out": out_path.display().to_string(),
        }),
        ReportPayload::Machine(summary),
    )
}

/// Monte Carlo simulates probe measurements of a stored machine.
pub fn cmd_clone(
    machine_path: &Path,
    input_label: u8,
    shots: u64,
    seed: u64,
) -> Result<RunReport, CliError> {
    let machine = read_json::<MachineFile>(machine_path)?.to_machine()?;
    let input = DesignatedInput::from_label(input_label)
        .ok_or_else(|| CliError::Usage(format!("input label {input_label} is not 0 or 1")))?;
    let simulation = run_monte_carlo(&machine, input, shots, seed)?;
    RunReport::new(
        "clone",
        json!({
            "machine": machine_path.display().to_string(),
            "input": input_label,
            "shots": shots,
            "seed": seed,
        }),
        ReportPayload::Simulation(SimulationOutcome::from(simulation)),
    )
}

/// Evaluates the closed-form efficiency bounds at one overlap.
pub fn cmd_bound(overlap: f64, flag_overlap: Option<f64>) -> Result<RunReport, CliError> {
    let universal = universal_bound(overlap)?;
    let mean = flag_overlap
        .map(|k| mean_efficiency_bound(overlap, k))
        .transpose()?;
    RunReport::new(
        "bound",
        json!({
            "overlap": overlap,
            "flag_overlap": flag_overlap,
        }),
        ReportPayload::Bound(BoundOutcome {
            overlap_s: overlap,
            universal_bound: universal,
            flag_overlap,
            mean_efficiency_bound: mean,
        }),
    )
}

/// Re-checks a stored machine file and reports every failed metric by name.
///
/// Returns the report together with the overall verdict; the caller maps a
/// failing verdict to exit code 3.
pub fn cmd_verify(
    machine_path: &Path,
    tolerances: VerifyTolerances,
) -> Result<(RunReport, bool), CliError> {
    let parts = read_json::<MachineFile>(machine_path)?.to_parts()?;
    let mut failures = Vec::new();

    let unitarity_residual = parts.unitary.unitarity_residual()?;
    if unitarity_residual > tolerances.unitary {
        failures.push(format!(
            "unitarity_residual = {unitarity_residual:.3e} exceeds {:.1e}",
            tolerances.unitary
        ));
    }

    let source0 = assemble_source(&parts, &parts.psi0);
    let source1 = assemble_source(&parts, &parts.psi1);
    let target0 = assemble_target(
        &parts,
        &parts.psi0,
        parts.amplitudes.a00,
        parts.amplitudes.a01,
    )?;
    let target1 = assemble_target(
        &parts,
        &parts.psi1,
        parts.amplitudes.a10,
        parts.amplitudes.a11,
    )?;

    let mapping_residual0 = parts.unitary.mul_vec(&source0)?.sub(&target0)?.norm();
    let mapping_residual1 = parts.unitary.mul_vec(&source1)?.sub(&target1)?.norm();
    for (name, value) in [
        ("mapping_residual0", mapping_residual0),
        ("mapping_residual1", mapping_residual1),
    ] {
        if value > tolerances.mapping {
            failures.push(format!(
                "{name} = {value:.3e} exceeds {:.1e}",
                tolerances.mapping
            ));
        }
    }

    let gram = check_gram(&source0, &source1, &target0, &target1, tolerances.gram)?;
    if !gram.passed {
        failures.push(format!(
            "gram deltas (norm0 {:.3e}, norm1 {:.3e}, cross {:.3e}) exceed {:.1e}",
            gram.norm0_delta, gram.norm1_delta, gram.cross_delta, tolerances.gram
        ));
    }

    let overlap_delta =
        (parts.psi0.overlap(&parts.psi1)? - Complex64::new(parts.overlap_s, 0.0)).norm();
    if overlap_delta > tolerances.gram {
        failures.push(format!(
            "overlap_s delta = {overlap_delta:.3e} exceeds {:.1e}",
            tolerances.gram
        ));
    }

    let eta_delta = (parts.eta - 1.0 / (1.0 + parts.overlap_s)).abs();
    if eta_delta > tolerances.eta {
        failures.push(format!(
            "eta delta = {eta_delta:.3e} from 1/(1+s) exceeds {:.1e}",
            tolerances.eta
        ));
    }

    let analysis = if unitarity_residual <= tolerances.unitary {
        let spec = GeneralMachineSpec::new(
            parts.unitary.clone(),
            parts.psi0.clone(),
            parts.psi1.clone(),
            parts.config.sigma().clone(),
            parts.config.probe_success().clone(),
            parts.config.probe_success().clone(),
            parts.config.probe_success().clone(),
        )?;
        let analysis = spec.analyze()?;
        for (name, eta) in [("eta0", analysis.eta0), ("eta1", analysis.eta1)] {
            let delta = (eta - parts.eta).abs();
            if delta > tolerances.eta {
                failures.push(format!(
                    "{name} delta = {delta:.3e} from stored eta exceeds {:.1e}",
                    tolerances.eta
                ));
            }
        }
        if analysis.orthogonality_violation > tolerances.orthogonality {
            failures.push(format!(
                "orthogonality_violation = {:.3e} exceeds {:.1e}",
                analysis.orthogonality_violation, tolerances.orthogonality
            ));
        }
        if !analysis.saturated {
            failures.push("saturated = false (mean bound does not meet the ceiling)".to_string());
        }
        if !analysis.constraint_holds(1e-9) {
            failures.push(format!(
                "overlap constraint lhs {:.6} exceeds rhs {:.6}",
                analysis.overlap_constraint_lhs, analysis.overlap_constraint_rhs
            ));
        }
        Some(AnalysisOutcome::from(analysis))
    } else {
        None
    };

    let passed = failures.is_empty();
    let outcome = VerificationOutcome {
        unitarity_residual,
        mapping_residual0,
        mapping_residual1,
        gram: GramDeltas {
            norm0_delta: gram.norm0_delta,
            norm1_delta: gram.norm1_delta,
            cross_delta: gram.cross_delta,
        },
        overlap_delta,
        eta_delta,
        analysis,
        failures,
        passed,
    };
    let report = RunReport::new(
        "verify",
        json!({
            "machine": machine_path.display().to_string(),
            "unitary_tol": tolerances.unitary,
            "gram_tol": tolerances.gram,
            "eta_tol": tolerances.eta,
            "orthogonality_tol": tolerances.orthogonality,
            "mapping_tol": tolerances.mapping,
        }),
        ReportPayload::Verification(outcome),
    )?;
    Ok((report, passed))
}

/// Loads a single-register state file, warning on stderr when it had to be
/// renormalized.
fn load_state(path: &Path) -> Result<PureState, CliError> {
    let file: StateFile = read_json(path)?;
    let shape = SpaceShape::single(file.dim.max(1))?;
    let (state, warning) = file.to_state(shape)?;
    if let Some(deviation) = warning {
        eprintln!(
            "warning: renormalized {} (norm deviation {deviation:.3e})",
            path.display()
        );
    }
    Ok(state)
}

/// Loads a state file over an explicit factor shape.
fn load_state_shaped(path: &Path, shape: SpaceShape) -> Result<PureState, CliError> {
    let file: StateFile = read_json(path)?;
    let (state, warning) = file.to_state(shape)?;
    if let Some(deviation) = warning {
        eprintln!(
            "warning: renormalized {} (norm deviation {deviation:.3e})",
            path.display()
        );
    }
    Ok(state)
}

/// `|psi>|Sigma>|m0>` as stored-machine input vector.
fn assemble_source(parts: &MachineParts, psi: &PureState) -> ComplexVector {
    psi.tensor(parts.config.sigma())
        .tensor(parts.config.probe_success())
        .amplitudes()
        .clone()
}

/// `a_s0 |psi>|psi>|m0> + a_s1 |Phi_AB>|m1>` as stored-machine image
/// vector.
fn assemble_target(
    parts: &MachineParts,
    psi: &PureState,
    success: f64,
    failure: f64,
) -> Result<ComplexVector, CliError> {
    let success_branch = psi
        .tensor(psi)
        .tensor(parts.config.probe_success())
        .amplitudes()
        .scaled(Complex64::new(success, 0.0));
    let failure_branch = parts
        .config
        .phi_ab()
        .tensor(parts.config.probe_fail())
        .amplitudes()
        .scaled(Complex64::new(failure, 0.0));
    Ok(success_branch.add(&failure_branch)?)
}
