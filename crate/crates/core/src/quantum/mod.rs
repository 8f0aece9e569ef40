//! Dense state-vector simulation.

mod circuit;
mod dist;
mod gate;
mod state;

pub use circuit::{run, Circuit, CircuitFile, GateRecord};
pub use dist::{CdfSampler, ProbDist, SUM_TOL};
pub use gate::{unitarity_deviation, Gate, Matrix2, Matrix4, SingleQubitName, C64, UNITARITY_TOL};
pub use state::{Pauli, StateVector, NORM_TOL};

use crate::bits::BitString;
use crate::error::Result;

/// Largest supported qubit count (2^26 amplitudes ≈ 1 GiB).
pub const MAX_QUBITS: usize = 26;

/// Returns `U_g|ψ⟩`.
pub fn apply_gate(state: &StateVector, gate: &Gate) -> Result<StateVector> {
    let mut out = state.clone();
    out.apply(gate)?;
    Ok(out)
}

pub fn probabilities(state: &StateVector) -> ProbDist {
    state.probabilities()
}

pub fn sample(dist: &ProbDist, k: usize, seed: u64) -> Result<Vec<BitString>> {
    dist.sample(k, seed)
}
