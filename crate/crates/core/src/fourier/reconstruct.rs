//! Low-weight Fourier reconstruction of a noisy IQP output distribution.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::estimate::{EstimatorBudget, PhaseOracle};
use super::transform::{iwht, weight_powers, Spectrum};
use crate::bits::{count_masks, masks_by_weight};
use crate::circuits::DiagonalCircuit;
use crate::error::{Error, Result};
use crate::quantum::ProbDist;

/// Upper bound on the number of components a reconstruction may enumerate.
pub const MAX_COMPONENTS: u128 = 1 << 22;

/// Reconstruction parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReconstructionConfig {
    /// Maximum Hamming weight kept.
    pub l: usize,
    /// `None` uses exact components (infinite sample budget).
    pub budget: Option<EstimatorBudget>,
    /// Collision bound `Σ p² ≤ β·2^{−n}`.
    pub beta: f64,
    /// Target ℓ1 distance.
    pub delta: f64,
    /// Per-qubit noise rate used to weight components.
    pub eps: f64,
}

impl ReconstructionConfig {
    pub fn validate(&self, n: usize) -> Result<()> {
        if self.l > n {
            return Err(Error::WeightTooLarge { l: self.l, n });
        }
        if !(self.beta >= 1.0) {
            return Err(Error::InvalidParameter(format!("beta = {} < 1", self.beta)));
        }
        super::transform::check_rate("eps", self.eps)?;
        if let Some(b) = &self.budget {
            b.validate()?;
        }
        Ok(())
    }
}

/// Output of [`low_weight_reconstruct`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Reconstruction {
    pub n: usize,
    pub l: usize,
    /// Masks used, ordered by (weight, value).
    pub masks: Vec<u64>,
    /// Estimated (or exact) `2^n·p̂(s)` for each mask, before noise weighting.
    pub raw: Vec<f64>,
    /// `ĉ(s) = (1−ε)^{|s|}·2^{−n}·raw(s)`.
    pub coeffs: Vec<f64>,
    /// `q(x) = Σ_{|s|≤l} ĉ(s)(−1)^{x·s}`, possibly negative.
    pub signed: Vec<f64>,
    /// `max(q, 0)` renormalised (uniform if nothing is positive).
    pub clipped: ProbDist,
    /// Total phase-function samples drawn (0 for exact components).
    pub samples_used: u64,
}

impl Reconstruction {
    /// Spectrum of `q` with zeros outside the kept weights.
    pub fn spectrum(&self) -> Spectrum {
        let mut v = vec![0.0; 1 << self.n];
        for (&s, &c) in self.masks.iter().zip(&self.coeffs) {
            v[s as usize] = c;
        }
        Spectrum::new(v).expect("power-of-two length")
    }

    /// `Σ_x |q(x) − p(x)|`.
    pub fn l1_to(&self, p: &ProbDist) -> f64 {
        p.l1_distance(&self.signed)
    }
}

/// Approximates the noisy output of `d` from its components with weight
/// at most `cfg.l`. Component `i` (in (weight, value) order) is estimated
/// from stream `(seed, i)`, so output does not depend on the thread count.
pub fn low_weight_reconstruct(
    d: &DiagonalCircuit,
    cfg: &ReconstructionConfig,
    seed: u64,
) -> Result<Reconstruction> {
    let n = d.n;
    cfg.validate(n)?;
    if n > crate::quantum::MAX_QUBITS {
        return Err(Error::TooManyQubits {
            n,
            max: crate::quantum::MAX_QUBITS,
        });
    }
    let count = count_masks(n, 0, cfg.l);
    if count > MAX_COMPONENTS {
        return Err(Error::TooManyComponents {
            count,
            limit: MAX_COMPONENTS,
        });
    }
    let masks = masks_by_weight(n, 0, cfg.l);
    let oracle = PhaseOracle::new(d)?;
    let raw: Vec<f64> = masks
        .par_iter()
        .enumerate()
        .map(|(i, &s)| match &cfg.budget {
            None => oracle.exact(s),
            Some(b) => Ok(oracle.monte_carlo(s, b.samples, seed, i as u64)),
        })
        .collect::<Result<_>>()?;

    let decay = weight_powers(n, 1.0 - cfg.eps);
    let scale = 1.0 / (1u64 << n) as f64;
    let coeffs: Vec<f64> = masks
        .iter()
        .zip(&raw)
        .map(|(&s, &r)| decay[s.count_ones() as usize] * scale * r)
        .collect();

    let mut full = vec![0.0; 1 << n];
    for (&s, &c) in masks.iter().zip(&coeffs) {
        full[s as usize] = c;
    }
    let signed = iwht(&Spectrum::new(full)?);
    let clipped = clip_renormalise(&signed);
    let samples_used = cfg
        .budget
        .map(|b| b.samples * (masks.len() as u64).saturating_sub(1))
        .unwrap_or(0);
    Ok(Reconstruction {
        n,
        l: cfg.l,
        masks,
        raw,
        coeffs,
        signed,
        clipped,
        samples_used,
    })
}

fn clip_renormalise(q: &[f64]) -> ProbDist {
    let pos: Vec<f64> = q.iter().map(|v| v.max(0.0)).collect();
    let total: f64 = pos.iter().sum();
    let n = q.len().trailing_zeros() as usize;
    if total > 0.0 {
        ProbDist::new(pos.iter().map(|v| v / total).collect()).expect("renormalised")
    } else {
        ProbDist::uniform(n)
    }
}

/// `min(n, ⌈ln(β/δ)/ε⌉)`, taking the constant inside the big-O as 1.
pub fn choose_l(beta: f64, delta: f64, eps: f64, n: usize) -> Result<usize> {
    if !(delta > 0.0) {
        return Err(Error::InvalidParameter(format!("delta = {delta} must be > 0")));
    }
    if !(beta >= delta) {
        return Err(Error::InvalidParameter(format!(
            "beta = {beta} must be ≥ delta = {delta}"
        )));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidParameter(format!("eps = {eps} must lie in (0, 1)")));
    }
    let l = ((beta / delta).ln() / eps).ceil();
    Ok((l.max(0.0) as usize).min(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::{gen_sparse_iqp, iqp_prob_dist, SparseIqpSpec};

    fn cfg(l: usize, eps: f64) -> ReconstructionConfig {
        ReconstructionConfig {
            l,
            budget: None,
            beta: 2.0,
            delta: 0.1,
            eps,
        }
    }

    #[test]
    fn full_weight_exact_recovers_distribution() {
        let d = gen_sparse_iqp(&SparseIqpSpec::new(6, 3.0, 2)).unwrap();
        let p = iqp_prob_dist(&d).unwrap();
        let r = low_weight_reconstruct(&d, &cfg(6, 0.0), 0).unwrap();
        for (a, b) in r.signed.iter().zip(p.probs()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn weight_zero_is_uniform() {
        let d = gen_sparse_iqp(&SparseIqpSpec::new(5, 3.0, 2)).unwrap();
        let r = low_weight_reconstruct(&d, &cfg(0, 0.2), 0).unwrap();
        assert!(r.signed.iter().all(|v| (v - 1.0 / 32.0).abs() < 1e-15));
        assert_eq!(r.clipped, ProbDist::uniform(5));
    }

    #[test]
    fn rejects_excess_weight() {
        let d = DiagonalCircuit::empty(4);
        assert!(matches!(
            low_weight_reconstruct(&d, &cfg(5, 0.1), 0),
            Err(Error::WeightTooLarge { l: 5, n: 4 })
        ));
    }

    #[test]
    fn choose_l_values() {
        assert_eq!(choose_l(0.5, 0.5, 0.1, 30).unwrap(), 0);
        assert_eq!(choose_l(2.0, 0.2, 0.1, 30).unwrap(), 24);
        assert_eq!(choose_l(2.0, 0.2, 0.001, 12).unwrap(), 12);
        assert!(choose_l(2.0, 0.0, 0.1, 12).is_err());
        assert!(choose_l(2.0, -1.0, 0.1, 12).is_err());
    }

    #[test]
    fn monte_carlo_is_thread_independent() {
        let d = gen_sparse_iqp(&SparseIqpSpec::new(8, 3.0, 2)).unwrap();
        let c = ReconstructionConfig {
            budget: Some(EstimatorBudget::hoeffding(0.2, 0.05).unwrap()),
            ..cfg(2, 0.1)
        };
        let a = low_weight_reconstruct(&d, &c, 4).unwrap();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap();
        let b = pool.install(|| low_weight_reconstruct(&d, &c, 4).unwrap());
        assert_eq!(a, b);
    }
}
