//! The structured report every command emits.
//!
//! A [`RunReport`] wraps a command-specific payload together with the tool
//! version, the random-generator identifier, and an echo of the inputs, and
//! is written as JSON — parseable back by this same module, which the test
//! suite holds as an invariant. Every numeric field in a payload must be
//! finite before a report is allowed out the door.

use probclone_core::bounds::BoundAnalysis;
use probclone_core::sim::{FilterDemoReport, SimulationReport};
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::formats::SCHEMA_VERSION;

/// Envelope around one command's results.
#[derive(Clone, Debug, Deserialize, PartialEq, Serialize)]
pub struct RunReport {
    /// Report format revision.
    pub schema_version: u32,
    /// Which subcommand produced this report.
    pub command: String,
    /// Version of the tool that wrote it.
    pub tool_version: String,
    /// Identifier of the per-shot random generator.
    pub generator_id: String,
    /// Echo of the invocation's inputs.
    pub inputs: serde_json::Value,
    /// Command-specific payload.
    pub results: ReportPayload,
}

impl RunReport {
    /// Assembles a report, rejecting payloads with non-finite numbers.
    pub fn new(
        command: &str,
        inputs: serde_json::Value,
        results: ReportPayload,
    ) -> Result<Self, CliError> {
        if !results.is_finite() {
            return Err(CliError::Domain(format!(
                "refusing to report non-finite numbers for {command}"
            )));
        }
        Ok(Self {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            generator_id: probclone_core::sim::GENERATOR_ID.to_string(),
            inputs,
            results,
        })
    }
}

/// The command-specific half of a report.
#[derive(Clone, Debug, Deserialize, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReportPayload {
    /// Summary of a freshly built machine.
    Machine(MachineSummary),
    /// Monte Carlo statistics of probe measurements.
    Simulation(SimulationOutcome),
    /// The fidelity-filtering counterexample values.
    FilterDemo(FilterOutcome),
    /// Closed-form efficiency bounds.
    Bound(BoundOutcome),
    /// Verification verdict for a machine file.
    Verification(VerificationOutcome),
}

impl ReportPayload {
    /// Whether every numeric field is finite.
    pub fn is_finite(&self) -> bool {
        match self {
            Self::Machine(m) => m.is_finite(),
            Self::Simulation(s) => s.is_finite(),
            Self::FilterDemo(f) => f.is_finite(),
            Self::Bound(b) => b.is_finite(),
            Self::Verification(v) => v.is_finite(),
        }
    }
}

/// What the build command reports about the machine it wrote.
#[derive(Clone, Debug, Deserialize, PartialEq, Serialize)]
pub struct MachineSummary {
    /// System dimension.
    pub dim: usize,
    /// Rephased overlap of the designated pair.
    pub overlap_s: f64,
    /// Phase removed from the second input state.
    pub rephase_angle: f64,
    /// Success probability for either designated input.
    pub eta: f64,
    /// `max(|U U* - I|, |U* U - I|)` of the synthesized joint unitary.
    pub unitarity_residual: f64,
    /// Where the machine file was written.
    pub machine_path: String,
}

impl MachineSummary {
    fn is_finite(&self) -> bool {
        [
            self.overlap_s,
            self.rephase_angle,
            self.eta,
            self.unitarity_residual,
        ]
        .iter()
        .all(|x| x.is_finite())
    }
}

/// Serializable mirror of a Monte Carlo run.
#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Serialize)]
pub struct SimulationOutcome {
    /// Seed the run was keyed on.
    pub seed: u64,
    /// Number of shots simulated.
    pub shots: u64,
    /// Which designated state was fed in.
    pub input_label: u8,
    /// Shots that flagged success.
    pub successes: u64,
    /// `successes / shots`.
    pub empirical_eta: f64,
    /// Analytic success probability.
    pub analytic_eta: f64,
    /// Binomial z-score of the success count.
    pub z_score: f64,
    /// Mean clone fidelity over successful shots.
    pub mean_clone_fidelity: f64,
}

impl SimulationOutcome {
    fn is_finite(&self) -> bool {
        [
            self.empirical_eta,
            self.analytic_eta,
            self.z_score,
            self.mean_clone_fidelity,
        ]
        .iter()
        .all(|x| x.is_finite())
    }
}

impl From<SimulationReport> for SimulationOutcome {
    fn from(r: SimulationReport) -> Self {
        Self {
            seed: r.seed,
            shots: r.shots,
            input_label: r.input_label,
            successes: r.successes,
            empirical_eta: r.empirical_eta,
            analytic_eta: r.analytic_eta,
            z_score: r.z_score,
            mean_clone_fidelity: r.mean_clone_fidelity,
        }
    }
}

/// Serializable mirror of the filtering counterexample.
#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Serialize)]
pub struct FilterOutcome {
    /// General-path fidelity before filtering.
    pub fidelity_before: f64,
    /// Fidelity of the kept post-measurement states.
    pub fidelity_after: f64,
    /// Survival probability of the first state.
    pub keep_probability_psi0: f64,
    /// Survival probability of the second state.
    pub keep_probability_psi1: f64,
    /// Whether filtering strictly decreased the fidelity.
    pub monotonicity_violated: bool,
}

impl FilterOutcome {
    fn is_finite(&self) -> bool {
        [
            self.fidelity_before,
            self.fidelity_after,
            self.keep_probability_psi0,
            self.keep_probability_psi1,
        ]
        .iter()
        .all(|x| x.is_finite())
    }
}

impl From<FilterDemoReport> for FilterOutcome {
    fn from(r: FilterDemoReport) -> Self {
        Self {
            fidelity_before: r.fidelity_before,
            fidelity_after: r.fidelity_after,
            keep_probability_psi0: r.keep_probability_psi0,
            keep_probability_psi1: r.keep_probability_psi1,
            monotonicity_violated: r.monotonicity_violated,
        }
    }
}

/// What the bound command reports.
#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Serialize)]
pub struct BoundOutcome {
    /// Overlap the bounds were evaluated at.
    pub overlap_s: f64,
    /// Universal ceiling `1/(1+s)`.
    pub universal_bound: f64,
    /// Flag overlap, when one was supplied.
    pub flag_overlap: Option<f64>,
    /// Mean-efficiency bound `(1-s)/(1-s^2 k)`, when a flag overlap was
    /// supplied.
    pub mean_efficiency_bound: Option<f64>,
}

impl BoundOutcome {
    fn is_finite(&self) -> bool {
        self.overlap_s.is_finite()
            && self.universal_bound.is_finite()
            && self.flag_overlap.map_or(true, f64::is_finite)
            && self.mean_efficiency_bound.map_or(true, f64::is_finite)
    }
}

/// Serializable mirror of a full bound analysis.
#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Serialize)]
pub struct AnalysisOutcome {
    /// Efficiency measured for the first designated state.
    pub eta0: f64,
    /// Efficiency measured for the second designated state.
    pub eta1: f64,
    /// Success-flag overlap as `[re, im]`.
    pub flag_overlap: [f64; 2],
    /// Norm of the first residual branch.
    pub residual0: f64,
    /// Norm of the second residual branch.
    pub residual1: f64,
    /// Largest flag contraction of a normalized residual.
    pub orthogonality_violation: f64,
    /// Left side of the inner-product constraint.
    pub overlap_constraint_lhs: f64,
    /// Right side of the inner-product constraint.
    pub overlap_constraint_rhs: f64,
    /// Mean of the two efficiencies.
    pub mean_eta: f64,
    /// Mean-efficiency bound at the measured overlaps.
    pub mean_eta_bound: f64,
    /// Universal ceiling at the measured overlap.
    pub universal_eta_bound: f64,
    /// Whether the mean bound meets the universal ceiling.
    pub saturated: bool,
}

impl AnalysisOutcome {
    fn is_finite(&self) -> bool {
        [
            self.eta0,
            self.eta1,
            self.flag_overlap[0],
            self.flag_overlap[1],
            self.residual0,
            self.residual1,
            self.orthogonality_violation,
            self.overlap_constraint_lhs,
            self.overlap_constraint_rhs,
            self.mean_eta,
            self.mean_eta_bound,
            self.universal_eta_bound,
        ]
        .iter()
        .all(|x| x.is_finite())
    }
}

impl From<BoundAnalysis> for AnalysisOutcome {
    fn from(a: BoundAnalysis) -> Self {
        Self {
            eta0: a.eta0,
            eta1: a.eta1,
            flag_overlap: [a.flag_overlap.re, a.flag_overlap.im],
            residual0: a.residual0,
            residual1: a.residual1,
            orthogonality_violation: a.orthogonality_violation,
            overlap_constraint_lhs: a.overlap_constraint_lhs,
            overlap_constraint_rhs: a.overlap_constraint_rhs,
            mean_eta: a.mean_eta,
            mean_eta_bound: a.mean_eta_bound,
            universal_eta_bound: a.universal_eta_bound,
            saturated: a.saturated,
        }
    }
}

/// Per-metric deltas between stored states and stored designated images.
#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Serialize)]
pub struct GramDeltas {
    /// Norm mismatch of the first source/target pair.
    pub norm0_delta: f64,
    /// Norm mismatch of the second source/target pair.
    pub norm1_delta: f64,
    /// Cross inner-product mismatch.
    pub cross_delta: f64,
}

impl GramDeltas {
    fn is_finite(&self) -> bool {
        [self.norm0_delta, self.norm1_delta, self.cross_delta]
            .iter()
            .all(|x| x.is_finite())
    }
}

/// What the verify command reports.
#[derive(Clone, Debug, Deserialize, PartialEq, Serialize)]
pub struct VerificationOutcome {
    /// Unitarity residual of the stored matrix.
    pub unitarity_residual: f64,
    /// `|U source0 - target0|` for the stored designated pair.
    pub mapping_residual0: f64,
    /// `|U source1 - target1|`.
    pub mapping_residual1: f64,
    /// Gram deltas between stored sources and targets.
    pub gram: GramDeltas,
    /// Mismatch between the stored overlap and the states' actual overlap.
    pub overlap_delta: f64,
    /// Mismatch between the stored efficiency and `1/(1+s)`.
    pub eta_delta: f64,
    /// Full bound analysis, present only when the matrix was unitary enough
    /// to audit.
    pub analysis: Option<AnalysisOutcome>,
    /// Names and values of every failed check; empty on success.
    pub failures: Vec<String>,
    /// Whether every check passed.
    pub passed: bool,
}

impl VerificationOutcome {
    fn is_finite(&self) -> bool {
        [
            self.unitarity_residual,
            self.mapping_residual0,
            self.mapping_residual1,
            self.overlap_delta,
            self.eta_delta,
        ]
        .iter()
        .all(|x| x.is_finite())
            && self.gram.is_finite()
            && self
                .analysis
                .as_ref()
                .map_or(true, AnalysisOutcome::is_finite)
    }
}
