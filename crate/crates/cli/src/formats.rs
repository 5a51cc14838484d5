//! On-disk formats: state files and machine files.
//!
//! Both are JSON with complex numbers written as two-element `[re, im]`
//! arrays and matrices row-major with declared shape — no binary floats —
//! so fixtures stay diffable and hand-writable. Machine files carry a
//! schema version for future evolution.

use probclone_core::machine::{CloningAmplitudes, CloningMachine, MachineConfig};
use probclone_core::state::{PureState, SpaceShape};
use probclone_core::{Complex64, ComplexMatrix, ComplexVector};
use serde::{Deserialize, Serialize};
use std::path::Path;

use crate::error::CliError;

/// Current schema version written into machine files.
pub const SCHEMA_VERSION: u32 = 1;

/// Norm deviation above which a state file is rejected outright.
pub const STATE_NORM_REJECT: f64 = 1e-6;

/// Norm deviation above which a state file is renormalized with a warning.
pub const STATE_NORM_WARN: f64 = 1e-12;

/// A pure state on disk: its dimension and `[re, im]` amplitude pairs.
#[derive(Clone, Debug, Deserialize, PartialEq, Serialize)]
pub struct StateFile {
    /// Number of amplitudes.
    pub dim: usize,
    /// Row of `[re, im]` pairs, one per basis state.
    pub amplitudes: Vec<[f64; 2]>,
}

impl StateFile {
    /// Snapshot of an in-memory state.
    pub fn from_state(state: &PureState) -> Self {
        Self {
            dim: state.dim(),
            amplitudes: state
                .amplitudes()
                .as_slice()
                .iter()
                .map(|z| [z.re, z.im])
                .collect(),
        }
    }

    /// Reconstructs the state over the given factor shape.
    ///
    /// The declared dimension must match both the amplitude count and the
    /// shape's total dimension. A norm off unity by more than
    /// [`STATE_NORM_REJECT`] is a domain error; above [`STATE_NORM_WARN`]
    /// the vector is renormalized and the deviation handed back so the
    /// caller can warn.
    pub fn to_state(&self, shape: SpaceShape) -> Result<(PureState, Option<f64>), CliError> {
        if self.dim == 0 || self.dim != self.amplitudes.len() {
            return Err(CliError::Domain(format!(
                "state file declares dim {} but carries {} amplitudes",
                self.dim,
                self.amplitudes.len()
            )));
        }
        if shape.total_dim() != self.dim {
            return Err(CliError::Domain(format!(
                "state file dimension {} does not fit the expected shape of total dimension {}",
                self.dim,
                shape.total_dim()
            )));
        }
        let vector = ComplexVector::new(
            self.amplitudes
                .iter()
                .map(|&[re, im]| Complex64::new(re, im))
                .collect(),
        )?;
        let deviation = (vector.norm() - 1.0).abs();
        if deviation > STATE_NORM_REJECT {
            return Err(CliError::Domain(format!(
                "state vector norm deviates from 1 by {deviation:.3e}, beyond the \
                 {STATE_NORM_REJECT:.0e} acceptance window"
            )));
        }
        if deviation > STATE_NORM_WARN {
            let state = PureState::normalized_from(vector, shape)?;
            Ok((state, Some(deviation)))
        } else {
            Ok((PureState::new(vector, shape)?, None))
        }
    }
}

/// A dense complex matrix on disk, row-major.
#[derive(Clone, Debug, Deserialize, PartialEq, Serialize)]
pub struct MatrixFile {
    /// Row count.
    pub rows: usize,
    /// Column count.
    pub cols: usize,
    /// `rows * cols` entries as `[re, im]` pairs, row-major.
    pub entries: Vec<[f64; 2]>,
}

impl MatrixFile {
    /// Snapshot of an in-memory matrix.
    pub fn from_matrix(matrix: &ComplexMatrix) -> Self {
        Self {
            rows: matrix.rows(),
            cols: matrix.cols(),
            entries: matrix.as_slice().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    /// Reconstructs the matrix.
    pub fn to_matrix(&self) -> Result<ComplexMatrix, CliError> {
        if self.rows * self.cols != self.entries.len() {
            return Err(CliError::Domain(format!(
                "matrix file declares {}x{} but carries {} entries",
                self.rows,
                self.cols,
                self.entries.len()
            )));
        }
        Ok(ComplexMatrix::new(
            self.rows,
            self.cols,
            self.entries
                .iter()
                .map(|&[re, im]| Complex64::new(re, im))
                .collect(),
        )?)
    }
}

/// The four designated branch amplitudes on disk.
#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Serialize)]
pub struct AmplitudesFile {
    /// Success amplitude for the first designated state.
    pub a00: f64,
    /// Failure amplitude for the first designated state.
    pub a01: f64,
    /// Success amplitude for the second designated state.
    pub a10: f64,
    /// Failure amplitude for the second designated state.
    pub a11: f64,
}

/// A fully assembled machine on disk.
///
/// `psi1` is stored already rephased (its overlap with `psi0` real and
/// nonnegative); `rephase_angle` records the phase removed from the
/// caller's original second state.
#[derive(Clone, Debug, Deserialize, PartialEq, Serialize)]
pub struct MachineFile {
    /// File format revision.
    pub schema_version: u32,
    /// System dimension `n`.
    pub dim: usize,
    /// First designated state (dimension `n`).
    pub psi0: StateFile,
    /// Second designated state, rephased (dimension `n`).
    pub psi1: StateFile,
    /// Blank-copy preparation of register B (dimension `n`).
    pub sigma: StateFile,
    /// Failure-branch AB state (dimension `n^2`).
    pub phi_ab: StateFile,
    /// Probe state flagging success (dimension 2).
    pub probe_success: StateFile,
    /// Probe state flagging failure (dimension 2).
    pub probe_fail: StateFile,
    /// Rephased overlap `s`.
    pub overlap_s: f64,
    /// Phase removed from the original second state.
    pub rephase_angle: f64,
    /// Designated branch amplitudes.
    pub amplitudes: AmplitudesFile,
    /// Joint unitary on `A (x) B (x) P`, dimension `2 n^2`.
    pub unitary: MatrixFile,
    /// Success probability for either designated input.
    pub eta: f64,
}

/// Machine file contents reassembled into core values but not yet
/// revalidated as a machine — what the verify command inspects, so that a
/// faulty unitary still yields a diagnosable report instead of a load
/// error.
#[derive(Clone, Debug)]
pub struct MachineParts {
    /// First designated state.
    pub psi0: PureState,
    /// Second designated state (rephased).
    pub psi1: PureState,
    /// Ancilla configuration.
    pub config: MachineConfig,
    /// Stored joint matrix, unitarity unchecked.
    pub unitary: ComplexMatrix,
    /// Stored overlap.
    pub overlap_s: f64,
    /// Stored rephase angle.
    pub rephase_angle: f64,
    /// Stored branch amplitudes.
    pub amplitudes: CloningAmplitudes,
    /// Stored efficiency.
    pub eta: f64,
}

impl MachineFile {
    /// Snapshot of an assembled machine.
    pub fn from_machine(machine: &CloningMachine) -> Self {
        let config = machine.config();
        let amps = machine.amplitudes();
        Self {
            schema_version: SCHEMA_VERSION,
            dim: machine.dim(),
            psi0: StateFile::from_state(machine.psi0()),
            psi1: StateFile::from_state(machine.psi1()),
            sigma: StateFile::from_state(config.sigma()),
            phi_ab: StateFile::from_state(config.phi_ab()),
            probe_success: StateFile::from_state(config.probe_success()),
            probe_fail: StateFile::from_state(config.probe_fail()),
            overlap_s: machine.overlap_s(),
            rephase_angle: machine.rephase_angle(),
            amplitudes: AmplitudesFile {
                a00: amps.a00,
                a01: amps.a01,
                a10: amps.a10,
                a11: amps.a11,
            },
            unitary: MatrixFile::from_matrix(machine.unitary()),
            eta: machine.eta(),
        }
    }

    /// Reassembles the stored pieces without judging the unitary.
    pub fn to_parts(&self) -> Result<MachineParts, CliError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(CliError::Domain(format!(
                "machine file schema version {} is not the supported {SCHEMA_VERSION}",
                self.schema_version
            )));
        }
        let n = self.dim;
        if n < 2 {
            return Err(CliError::Domain(format!(
                "machine file dimension {n} is below the two-level minimum"
            )));
        }
        let single = SpaceShape::single(n)?;
        let (psi0, _) = self.psi0.to_state(single.clone())?;
        let (psi1, _) = self.psi1.to_state(single.clone())?;
        let (sigma, _) = self.sigma.to_state(single)?;
        let (phi_ab, _) = self.phi_ab.to_state(SpaceShape::new(vec![n, n])?)?;
        let probe_shape = SpaceShape::single(2)?;
        let (probe_success, _) = self.probe_success.to_state(probe_shape.clone())?;
        let (probe_fail, _) = self.probe_fail.to_state(probe_shape)?;
        let config = MachineConfig::new(sigma, phi_ab, probe_success, probe_fail)?;
        let unitary = self.unitary.to_matrix()?;
        Ok(MachineParts {
            psi0,
            psi1,
            config,
            unitary,
            overlap_s: self.overlap_s,
            rephase_angle: self.rephase_angle,
            amplitudes: CloningAmplitudes {
                a00: self.amplitudes.a00,
                a01: self.amplitudes.a01,
                a10: self.amplitudes.a10,
                a11: self.amplitudes.a11,
            },
            eta: self.eta,
        })
    }

    /// Reassembles and fully revalidates the machine (strict path used by
    /// the clone command: a corrupt file is a domain error).
    pub fn to_machine(&self) -> Result<CloningMachine, CliError> {
        let parts = self.to_parts()?;
        CloningMachine::from_parts(
            parts.psi0,
            parts.psi1,
            parts.config,
            parts.amplitudes,
            parts.unitary,
            parts.overlap_s,
            parts.rephase_angle,
            parts.eta,
        )
        .map_err(|err| CliError::Domain(format!("corrupt machine file: {err}")))
    }
}

/// Reads and parses a JSON value from disk, classifying failures as usage
/// errors (exit code 1).
pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|err| CliError::Usage(format!("cannot read {}: {err}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|err| CliError::Usage(format!("cannot parse {}: {err}", path.display())))
}

/// Serializes a value as pretty JSON (with trailing newline) to disk.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|err| CliError::Usage(format!("cannot serialize {}: {err}", path.display())))?;
    text.push('\n');
    std::fs::write(path, text)
        .map_err(|err| CliError::Usage(format!("cannot write {}: {err}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use probclone_core::machine::qubit_example_pair;

    fn example_machine() -> CloningMachine {
        let (psi0, psi1) = qubit_example_pair(std::f64::consts::FRAC_PI_6).unwrap();
        CloningMachine::build(psi0, psi1, MachineConfig::default_for_dim(2).unwrap()).unwrap()
    }

    #[test]
    fn state_files_round_trip() {
        let machine = example_machine();
        let file = StateFile::from_state(machine.psi1());
        let json = serde_json::to_string(&file).unwrap();
        let back: StateFile = serde_json::from_str(&json).unwrap();
        let (state, warning) = back.to_state(SpaceShape::single(2).unwrap()).unwrap();
        assert!(warning.is_none());
        assert!(state.amplitudes().max_abs_diff(machine.psi1().amplitudes()) <= 1e-15);
    }

    #[test]
    fn slightly_denormalized_states_renormalize_with_a_warning() {
        let file = StateFile {
            dim: 2,
            amplitudes: vec![[1.0 + 1e-8, 0.0], [0.0, 0.0]],
        };
        let (state, warning) = file.to_state(SpaceShape::single(2).unwrap()).unwrap();
        assert!(warning.unwrap() > 1e-12);
        assert!((state.amplitudes().norm() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn badly_denormalized_states_are_rejected() {
        let file = StateFile {
            dim: 2,
            amplitudes: vec![[0.9, 0.0], [0.0, 0.0]],
        };
        assert!(matches!(
            file.to_state(SpaceShape::single(2).unwrap()),
            Err(CliError::Domain(_))
        ));
    }

    #[test]
    fn dimension_lies_are_rejected() {
        let file = StateFile {
            dim: 3,
            amplitudes: vec![[1.0, 0.0], [0.0, 0.0]],
        };
        assert!(file.to_state(SpaceShape::single(3).unwrap()).is_err());
        let file = StateFile {
            dim: 2,
            amplitudes: vec![[1.0, 0.0], [0.0, 0.0]],
        };
        assert!(file.to_state(SpaceShape::single(3).unwrap()).is_err());
    }

    #[test]
    fn machine_files_round_trip_through_json() {
        let machine = example_machine();
        let file = MachineFile::from_machine(&machine);
        let json = serde_json::to_string_pretty(&file).unwrap();
        let back: MachineFile = serde_json::from_str(&json).unwrap();
        assert_eq!(back, file);
        let rebuilt = back.to_machine().unwrap();
        assert!(rebuilt.unitary().max_abs_diff(machine.unitary()) <= 1e-15);
        assert_eq!(rebuilt.eta(), machine.eta());
    }

    #[test]
    fn spoiled_unitary_fails_strict_load_but_not_parts() {
        let machine = example_machine();
        let mut file = MachineFile::from_machine(&machine);
        file.unitary.entries[3][0] += 1e-3;
        assert!(file.to_parts().is_ok());
        assert!(matches!(file.to_machine(), Err(CliError::Domain(_))));
    }

    #[test]
    fn wrong_schema_version_is_rejected() {
        let machine = example_machine();
        let mut file = MachineFile::from_machine(&machine);
        file.schema_version = 99;
        assert!(matches!(file.to_parts(), Err(CliError::Domain(_))));
    }
}
