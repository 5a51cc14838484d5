//! Efficiency limits for probabilistic cloning and the audit that checks a
//! concrete machine against them.
//!
//! Any unitary-plus-postselection machine that clones each designated state
//! `|psi_s>` with probability `eta_s`, flagging success on probe state
//! `|P^(s)>`, is constrained by the inner-product relation between its two
//! designated evolutions: with `s = <psi0|psi1>` (rephased real) and
//! `k = <P^(0)|P^(1)>`,
//!
//! ```text
//! s - sqrt(eta0 eta1) s^2 k  <=  sqrt((1 - eta0)(1 - eta1))
//! ```
//!
//! which yields the mean-efficiency bound `(eta0 + eta1)/2 <= (1-s)/(1-s^2 k)`
//! and, at the optimal `k = 1`, the universal ceiling `1/(1+s)`. The machines
//! built by [`crate::machine`] saturate both.
//!
//! [`GeneralMachineSpec::analyze`] re-derives every quantity of that chain
//! numerically from an arbitrary joint unitary, including a structural check
//! that the non-designated branches really avoid the success flags (without
//! which the inequality chain does not apply).

use crate::error::{Error, Result};
use crate::linalg::{Complex64, ComplexMatrix, ComplexVector};
use crate::machine::CloningMachine;
use crate::state::PureState;
use crate::tol;

/// The universal efficiency ceiling `1/(1+s)` for rephased overlap
/// `s` in `[0, 1)`.
pub fn universal_bound(overlap_s: f64) -> Result<f64> {
    if !overlap_s.is_finite() || !(0.0..1.0).contains(&overlap_s) {
        return Err(Error::OverlapOutOfRange { overlap: overlap_s });
    }
    Ok(1.0 / (1.0 + overlap_s))
}

/// The mean-efficiency bound `(1-s)/(1-s^2 k)` for rephased overlap `s` in
/// `[0, 1)` and flag overlap `k` in `[-1, 1]`.
///
/// At `k = 1` this coincides with [`universal_bound`]; smaller flag overlaps
/// only tighten it (at `k = 0` it degrades to `1 - s`).
pub fn mean_efficiency_bound(overlap_s: f64, flag_overlap: f64) -> Result<f64> {
    if !overlap_s.is_finite() || !(0.0..1.0).contains(&overlap_s) {
        return Err(Error::OverlapOutOfRange { overlap: overlap_s });
    }
    if !flag_overlap.is_finite() || !(-1.0..=1.0).contains(&flag_overlap) {
        return Err(Error::FlagOverlapOutOfRange {
            value: flag_overlap,
        });
    }
    Ok((1.0 - overlap_s) / (1.0 - overlap_s * overlap_s * flag_overlap))
}

/// Whether claimed per-state efficiencies are consistent with the
/// mean-efficiency bound: `(eta0 + eta1)/2 <= (1-s)/(1-s^2 k) + 1e-12`.
///
/// Returns `false` for claims that would amount to cloning better than any
/// machine of this form allows (for example perfect deterministic cloning of
/// non-orthogonal states: `eta0 = eta1 = 1` with `s > 0`).
pub fn check_no_perfect_cloning(overlap_s: f64, eta0: f64, eta1: f64, flag_overlap: f64) -> bool {
    debug_assert!((0.0..1.0).contains(&overlap_s), "overlap out of range");
    debug_assert!(
        (-1.0..=1.0).contains(&flag_overlap),
        "flag overlap out of range"
    );
    debug_assert!((0.0..=1.0).contains(&eta0), "eta0 out of range");
    debug_assert!((0.0..=1.0).contains(&eta1), "eta1 out of range");
    let bound = (1.0 - overlap_s) / (1.0 - overlap_s * overlap_s * flag_overlap);
    (eta0 + eta1) / 2.0 <= bound + 1e-12
}

/// Everything the audit extracts from one joint unitary: per-state
/// efficiencies, the structural flag-orthogonality violation, both sides of
/// the inner-product constraint, and the resulting efficiency bounds.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundAnalysis {
    /// Overlap of the output with the ideal double copy of the first state,
    /// squared.
    pub eta0: f64,
    /// Same for the second state.
    pub eta1: f64,
    /// Overlap `<P^(0)|P^(1)>` of the two success flag states.
    pub flag_overlap: Complex64,
    /// Norm of the first output's component away from its ideal branch.
    pub residual0: f64,
    /// Same for the second output.
    pub residual1: f64,
    /// Largest probe-contraction norm of a normalized residual against a
    /// success flag. Zero (to round-off) for machines of the designated
    /// form; a nonzero value means the inequality chain below does not
    /// constrain this unitary.
    pub orthogonality_violation: f64,
    /// Real part of `s - sqrt(eta0 eta1) s^2 k`.
    pub overlap_constraint_lhs: f64,
    /// `sqrt((1 - eta0)(1 - eta1))`.
    pub overlap_constraint_rhs: f64,
    /// `(eta0 + eta1)/2`.
    pub mean_eta: f64,
    /// `(1-s)/(1-s^2 k)` evaluated with the real parts of the measured
    /// overlaps.
    pub mean_eta_bound: f64,
    /// `1/(1+s)` evaluated with the real part of the measured overlap.
    pub universal_eta_bound: f64,
    /// Whether the mean bound meets the universal ceiling (flag overlap
    /// effectively 1).
    pub saturated: bool,
}

impl BoundAnalysis {
    /// Whether the inner-product constraint holds within `slack`.
    pub fn constraint_holds(&self, slack: f64) -> bool {
        self.overlap_constraint_lhs <= self.overlap_constraint_rhs + slack
    }
}

/// An arbitrary candidate cloning process: a joint unitary on
/// `A (x) B (x) P` together with the designated pair, blank state, probe
/// initial state, and the two success flag states.
#[derive(Clone, Debug)]
pub struct GeneralMachineSpec {
    unitary: ComplexMatrix,
    psi0: PureState,
    psi1: PureState,
    sigma: PureState,
    probe_init: PureState,
    probe_flag0: PureState,
    probe_flag1: PureState,
}

impl GeneralMachineSpec {
    /// Validates dimensions, unitarity, and that the designated pair is not
    /// effectively identical.
    pub fn new(
        unitary: ComplexMatrix,
        psi0: PureState,
        psi1: PureState,
        sigma: PureState,
        probe_init: PureState,
        probe_flag0: PureState,
        probe_flag1: PureState,
    ) -> Result<Self> {
        let n = psi0.dim();
        if n < 2 {
            return Err(Error::DimensionMismatch {
                context: "designated state dimension",
                expected: 2,
                got: n,
            });
        }
        if psi1.dim() != n || sigma.dim() != n {
            return Err(Error::DimensionMismatch {
                context: "audit states",
                expected: n,
                got: if psi1.dim() != n {
                    psi1.dim()
                } else {
                    sigma.dim()
                },
            });
        }
        let d = probe_init.dim();
        if d < 2 {
            return Err(Error::DimensionMismatch {
                context: "probe dimension",
                expected: 2,
                got: d,
            });
        }
        if probe_flag0.dim() != d || probe_flag1.dim() != d {
            return Err(Error::DimensionMismatch {
                context: "probe flag states",
                expected: d,
                got: if probe_flag0.dim() != d {
                    probe_flag0.dim()
                } else {
                    probe_flag1.dim()
                },
            });
        }
        let joint = n * n * d;
        unitary.require_square()?;
        if unitary.rows() != joint {
            return Err(Error::DimensionMismatch {
                context: "audit unitary",
                expected: joint,
                got: unitary.rows(),
            });
        }
        let residual = unitary.unitarity_residual()?;
        if residual > tol::UNITARITY {
            return Err(Error::NotOrthonormal {
                deviation: residual,
                tolerance: tol::UNITARITY,
            });
        }
        let overlap = psi0.overlap(&psi1)?.norm();
        if overlap >= tol::NEAR_IDENTICAL_OVERLAP {
            return Err(Error::StatesNearIdentical { overlap });
        }
        Ok(Self {
            unitary,
            psi0,
            psi1,
            sigma,
            probe_init,
            probe_flag0,
            probe_flag1,
        })
    }

    /// Wraps an assembled machine for auditing: both flags are the machine's
    /// success probe state, which is also the probe's initial state.
    pub fn from_machine(machine: &CloningMachine) -> Self {
        let config = machine.config();
        Self {
            unitary: machine.unitary().clone(),
            psi0: machine.psi0().clone(),
            psi1: machine.psi1().clone(),
            sigma: config.sigma().clone(),
            probe_init: config.probe_success().clone(),
            probe_flag0: config.probe_success().clone(),
            probe_flag1: config.probe_success().clone(),
        }
    }

    /// Runs both designated evolutions and measures every quantity of the
    /// efficiency-bound chain.
    pub fn analyze(&self) -> Result<BoundAnalysis> {
        let probe_dim = self.probe_init.dim();
        let mut etas = [0.0_f64; 2];
        let mut residual_norms = [0.0_f64; 2];
        let mut violation = 0.0_f64;
        for (index, (psi, flag)) in [
            (&self.psi0, &self.probe_flag0),
            (&self.psi1, &self.probe_flag1),
        ]
        .into_iter()
        .enumerate()
        {
            let input = psi.tensor(&self.sigma).tensor(&self.probe_init);
            let output = self.unitary.mul_vec(input.amplitudes())?;
            let ideal = psi.tensor(psi).tensor(flag);
            let coefficient = ideal.amplitudes().inner(&output)?;
            etas[index] = coefficient.norm_sqr().min(1.0);
            let residual = output.sub(&ideal.amplitudes().scaled(coefficient))?;
            let norm = residual.norm();
            residual_norms[index] = norm;
            if norm > tol::STATE_NORM {
                let direction = residual.scaled(Complex64::new(1.0 / norm, 0.0));
                for flag_state in [&self.probe_flag0, &self.probe_flag1] {
                    let contracted =
                        contract_probe(&direction, probe_dim, flag_state.amplitudes())?;
                    violation = violation.max(contracted.norm());
                }
            }
        }

        let overlap = self.psi0.overlap(&self.psi1)?;
        let flag_overlap = self.probe_flag0.overlap(&self.probe_flag1)?;
        let root = (etas[0] * etas[1]).sqrt();
        let lhs = (overlap - overlap * overlap * flag_overlap.scale(root)).re;
        let rhs = ((1.0 - etas[0]).max(0.0) * (1.0 - etas[1]).max(0.0)).sqrt();
        let sr = overlap.re;
        let kr = flag_overlap.re;
        let mean_eta = (etas[0] + etas[1]) / 2.0;
        let mean_eta_bound = (1.0 - sr) / (1.0 - sr * sr * kr);
        let universal_eta_bound = 1.0 / (1.0 + sr);
        let saturated = (mean_eta_bound - universal_eta_bound).abs() <= tol::SATURATION;
        Ok(BoundAnalysis {
            eta0: etas[0],
            eta1: etas[1],
            flag_overlap,
            residual0: residual_norms[0],
            residual1: residual_norms[1],
            orthogonality_violation: violation,
            overlap_constraint_lhs: lhs,
            overlap_constraint_rhs: rhs,
            mean_eta,
            mean_eta_bound,
            universal_eta_bound,
            saturated,
        })
    }
}

/// Contracts the trailing probe factor of a joint vector against a flag
/// state, leaving the AB component `<flag|_P v>`.
fn contract_probe(
    vector: &ComplexVector,
    probe_dim: usize,
    flag: &ComplexVector,
) -> Result<ComplexVector> {
    if probe_dim == 0 || vector.dim() % probe_dim != 0 {
        return Err(Error::DimensionMismatch {
            context: "probe contraction",
            expected: probe_dim.max(1),
            got: vector.dim(),
        });
    }
    if flag.dim() != probe_dim {
        return Err(Error::DimensionMismatch {
            context: "probe flag state",
            expected: probe_dim,
            got: flag.dim(),
        });
    }
    let rest_dim = vector.dim() / probe_dim;
    let mut out = vec![Complex64::new(0.0, 0.0); rest_dim];
    for (rest, slot) in out.iter_mut().enumerate() {
        let mut acc = Complex64::new(0.0, 0.0);
        for digit in 0..probe_dim {
            acc += flag.entry(digit).conj() * vector.entry(rest * probe_dim + digit);
        }
        *slot = acc;
    }
    ComplexVector::new(out)
}
