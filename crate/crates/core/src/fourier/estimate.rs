//! Fourier components of IQP output distributions from the phase function.
//!
//! With `p(x) = |f̂(x)|²` the convolution theorem gives
//! `2^n·p̂(s) = 2^{−n} Σ_y f*(y)·f(y⊕s)`, which is a mean of unit-modulus
//! terms and so can be estimated by sampling `y` uniformly.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bits::BitString;
use crate::circuits::{DiagonalCircuit, PhaseTable};
use crate::error::{Error, Result};
use crate::rng;

/// Above this size `f` is evaluated term by term instead of tabulated.
const TABLE_MAX_QUBITS: usize = 22;

/// Sample budget for one Monte-Carlo component estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EstimatorBudget {
    /// Target additive error on `2^n·p̂(s)`.
    pub eta: f64,
    /// Allowed probability of exceeding `eta`.
    pub fail_prob: f64,
    /// Sample count `M`.
    pub samples: u64,
}

impl EstimatorBudget {
    /// Smallest `M` with `2·exp(−M·η²/2) ≤ fail_prob` (Hoeffding for
    /// samples in `[−1, 1]`).
    pub fn hoeffding(eta: f64, fail_prob: f64) -> Result<Self> {
        check_budget_params(eta, fail_prob)?;
        let samples = Self::min_samples(eta, fail_prob).ceil() as u64;
        Ok(Self {
            eta,
            fail_prob,
            samples: samples.max(1),
        })
    }

    /// Explicit `M`, which must meet the Hoeffding bound.
    pub fn with_samples(eta: f64, fail_prob: f64, samples: u64) -> Result<Self> {
        let b = Self {
            eta,
            fail_prob,
            samples,
        };
        b.validate()?;
        Ok(b)
    }

    pub fn min_samples(eta: f64, fail_prob: f64) -> f64 {
        2.0 / (eta * eta) * (2.0 / fail_prob).ln()
    }

    pub fn validate(&self) -> Result<()> {
        check_budget_params(self.eta, self.fail_prob)?;
        let need = Self::min_samples(self.eta, self.fail_prob);
        if (self.samples as f64) < need {
            return Err(Error::InvalidParameter(format!(
                "M = {} below Hoeffding requirement {need:.1}",
                self.samples
            )));
        }
        Ok(())
    }
}

fn check_budget_params(eta: f64, fail_prob: f64) -> Result<()> {
    if !(eta > 0.0) || !eta.is_finite() {
        return Err(Error::InvalidParameter(format!("eta = {eta}")));
    }
    if !(fail_prob > 0.0 && fail_prob < 1.0) {
        return Err(Error::InvalidParameter(format!("fail_prob = {fail_prob}")));
    }
    Ok(())
}

/// Evaluates `f` either from a dense table or term by term.
pub struct PhaseOracle<'a> {
    circuit: &'a DiagonalCircuit,
    table: Option<PhaseTable>,
}

impl<'a> PhaseOracle<'a> {
    pub fn new(circuit: &'a DiagonalCircuit) -> Result<Self> {
        circuit.validate()?;
        let table = if circuit.n <= TABLE_MAX_QUBITS {
            Some(circuit.phase_table()?)
        } else {
            None
        };
        Ok(Self { circuit, table })
    }

    pub fn n(&self) -> usize {
        self.circuit.n
    }

    #[inline]
    fn term(&self, y: u64, s: u64) -> f64 {
        match &self.table {
            Some(t) => (t.get(y as usize).conj() * t.get((y ^ s) as usize)).re,
            None => (self.circuit.phase(y ^ s) - self.circuit.phase(y)).cos(),
        }
    }

    /// `2^{−n} Σ_y Re[f*(y) f(y⊕s)]` by exhaustive summation.
    pub fn exact(&self, s: u64) -> Result<f64> {
        let n = self.n();
        if n > crate::quantum::MAX_QUBITS {
            return Err(Error::TooManyQubits {
                n,
                max: crate::quantum::MAX_QUBITS,
            });
        }
        if s == 0 {
            return Ok(1.0);
        }
        let len = 1u64 << n;
        let total: f64 = (0..len).map(|y| self.term(y, s)).sum();
        Ok(total / len as f64)
    }

    /// `(1/M) Σ_j Re[f*(y_j) f(y_j⊕s)]` with `y_j` uniform, from stream
    /// `(seed, stream)`.
    pub fn monte_carlo(&self, s: u64, samples: u64, seed: u64, stream: u64) -> f64 {
        if s == 0 {
            return 1.0;
        }
        let mask = if self.n() == 64 {
            u64::MAX
        } else {
            (1u64 << self.n()) - 1
        };
        let mut rng = rng::stream(seed, stream);
        let mut acc = 0.0;
        for _ in 0..samples {
            let y = rng.gen::<u64>() & mask;
            acc += self.term(y, s);
        }
        acc / samples as f64
    }
}

/// `2^n·p̂_IQP(s)` by exhaustive use of the convolution theorem.
pub fn exact_component_convolution(d: &DiagonalCircuit, s: BitString) -> Result<f64> {
    check_len(d, s)?;
    PhaseOracle::new(d)?.exact(s.value())
}

/// Monte-Carlo estimate of `2^n·p̂_IQP(s)` within `budget.eta` with
/// probability at least `1 − budget.fail_prob`.
pub fn mc_estimate_component(
    d: &DiagonalCircuit,
    s: BitString,
    budget: &EstimatorBudget,
    seed: u64,
) -> Result<f64> {
    check_len(d, s)?;
    budget.validate()?;
    Ok(PhaseOracle::new(d)?.monte_carlo(s.value(), budget.samples, seed, s.value()))
}

fn check_len(d: &DiagonalCircuit, s: BitString) -> Result<()> {
    if s.len() != d.n {
        return Err(Error::QubitCountMismatch {
            expected: d.n,
            actual: s.len(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::{gen_sparse_iqp, SparseIqpSpec};

    #[test]
    fn hoeffding_sample_count() {
        let b = EstimatorBudget::hoeffding(0.05, 0.01).unwrap();
        assert_eq!(b.samples, (800.0 * 200f64.ln()).ceil() as u64);
        assert!(EstimatorBudget::with_samples(0.05, 0.01, 100).is_err());
        assert!(EstimatorBudget::hoeffding(0.0, 0.01).is_err());
        assert!(EstimatorBudget::hoeffding(0.1, 1.0).is_err());
    }

    #[test]
    fn trivial_components_are_exactly_one() {
        let d = gen_sparse_iqp(&SparseIqpSpec::new(8, 2.0, 4)).unwrap();
        let budget = EstimatorBudget::hoeffding(0.3, 0.1).unwrap();
        let zero = BitString::new(0, 8).unwrap();
        assert_eq!(exact_component_convolution(&d, zero).unwrap(), 1.0);
        assert_eq!(mc_estimate_component(&d, zero, &budget, 1).unwrap(), 1.0);

        let empty = DiagonalCircuit::empty(8);
        for s in [1u64, 37, 255] {
            let s = BitString::new(s, 8).unwrap();
            assert_eq!(exact_component_convolution(&empty, s).unwrap(), 1.0);
            assert_eq!(mc_estimate_component(&empty, s, &budget, 3).unwrap(), 1.0);
        }
    }

    #[test]
    fn table_and_direct_paths_agree() {
        let d = gen_sparse_iqp(&SparseIqpSpec::new(10, 2.0, 6)).unwrap();
        let with_table = PhaseOracle::new(&d).unwrap();
        let direct = PhaseOracle {
            circuit: &d,
            table: None,
        };
        for s in [1u64, 5, 100, 1023] {
            assert!((with_table.exact(s).unwrap() - direct.exact(s).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_length_mismatch() {
        let d = DiagonalCircuit::empty(4);
        let s = BitString::new(1, 5).unwrap();
        assert!(exact_component_convolution(&d, s).is_err());
    }
}
