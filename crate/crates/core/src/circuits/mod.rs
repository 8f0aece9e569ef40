//! Circuit ensembles: pseudo-random universal circuits and sparse IQP
//! circuits.

mod iqp;
mod random;

pub use iqp::{
    eval_f, gen_sparse_iqp, iqp_prob_dist, CouplingRule, DiagonalCircuit, PhaseRule, PhaseTable,
    SparseIqpSpec, ZTerm, ZzTerm,
};
pub use random::{cz_pattern, default_single_qubit_set, gen_random_universal, RandomCircuitSpec};
