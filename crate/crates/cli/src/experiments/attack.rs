use serde::{Deserialize, Serialize};
use spectralab::circuits::{gen_sparse_iqp, iqp_prob_dist};
use spectralab::fourier::{
    choose_l, iwht, low_weight_reconstruct, spectral_correlation, wht, ReconstructionConfig, Spectrum,
};
use spectralab::noise::premeasurement_depolarize;
use spectralab::rng::derive_seed;
use spectralab::stats::{collision_beta, l1_to_uniform};

use crate::config::{instance_seeds, AttackParams};
use crate::error::CliResult;

const ESTIMATOR_SALT: u64 = 0x6573_7469;

/// `|2^n·p̂(s)|` below this counts as a vanishing component.
const NONZERO_TOL: f64 = 1e-10;

/// Distances of the exact reconstruction truncated at weight `l`. Only the
/// ℓ2 column is guaranteed non-increasing in `l`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruncationPoint {
    pub l: usize,
    pub l1_to_noisy: f64,
    pub l2_to_noisy: f64,
}

/// Reconstruction from Monte-Carlo component estimates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McAttack {
    pub eta: f64,
    pub fail_prob: f64,
    pub samples_per_component: u64,
    pub total_samples: u64,
    pub l1_to_noisy: f64,
    /// Same distance after clipping negatives and renormalising.
    pub l1_clipped_to_noisy: f64,
    /// Pearson correlation with the exact noisy spectrum over `1 ≤ |s| ≤ l`.
    pub correlation: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AttackReport {
    pub n: usize,
    pub gamma: f64,
    pub seed: u64,
    pub eps: f64,
    pub l: usize,
    pub beta: f64,
    pub delta: f64,
    /// Masks with `|s| ≤ l`, including `s = 0`.
    pub components: usize,
    /// Masks with `1 ≤ |s| ≤ l` whose exact component does not vanish.
    pub nonzero_components: usize,
    pub l1_uniform_to_noisy: f64,
    pub exact_l1_to_noisy: f64,
    pub exact_sweep: Vec<TruncationPoint>,
    pub monte_carlo: McAttack,
}

/// Low-weight reconstruction of one noisy IQP output, with exact and with
/// Monte-Carlo components, scored against the exact noisy distribution.
pub fn cmd_attack(p: &AttackParams, seeds: &[u64]) -> CliResult<AttackReport> {
    let seed = instance_seeds(seeds, 1)?[0];
    let d = gen_sparse_iqp(&p.iqp_spec(seed))?;
    let ideal = iqp_prob_dist(&d)?;
    let noisy = premeasurement_depolarize(&ideal, p.eps)?;
    let noisy_spec = wht(&noisy);
    let beta = p.beta.unwrap_or_else(|| collision_beta(&ideal));
    let l = match p.l {
        Some(l) => l,
        None => choose_l(beta, p.delta, p.eps, p.n)?,
    };
    let base = ReconstructionConfig {
        l,
        budget: None,
        beta,
        delta: p.delta,
        eps: p.eps,
    };

    let exact = low_weight_reconstruct(&d, &base, seed)?;
    let full = exact.spectrum();
    let exact_sweep = (0..=l)
        .map(|k| {
            let q = iwht(&truncate(&full, k)?);
            Ok(TruncationPoint {
                l: k,
                l1_to_noisy: noisy.l1_distance(&q),
                l2_to_noisy: noisy.probs().iter().zip(&q).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt(),
            })
        })
        .collect::<spectralab::Result<_>>()?;

    let budget = p.budget()?;
    let mc_cfg = ReconstructionConfig {
        budget: Some(budget),
        ..base
    };
    let mc = low_weight_reconstruct(&d, &mc_cfg, derive_seed(seed, ESTIMATOR_SALT))?;
    let correlation = if l >= 1 {
        Some(spectral_correlation(&mc.spectrum(), &noisy_spec, 1, l)?)
    } else {
        None
    };
    let big_n = noisy.len() as f64;
    let nonzero_components = exact
        .masks
        .iter()
        .filter(|&&s| s != 0 && (big_n * noisy_spec.get(s as usize)).abs() > NONZERO_TOL)
        .count();

    Ok(AttackReport {
        n: p.n,
        gamma: p.gamma,
        seed,
        eps: p.eps,
        l,
        beta,
        delta: p.delta,
        components: exact.masks.len(),
        nonzero_components,
        l1_uniform_to_noisy: l1_to_uniform(&noisy),
        exact_l1_to_noisy: exact.l1_to(&noisy),
        exact_sweep,
        monte_carlo: McAttack {
            eta: budget.eta,
            fail_prob: budget.fail_prob,
            samples_per_component: budget.samples,
            total_samples: mc.samples_used,
            l1_to_noisy: mc.l1_to(&noisy),
            l1_clipped_to_noisy: noisy.l1_distance(mc.clipped.probs()),
            correlation,
        },
    })
}

fn truncate(spec: &Spectrum, l: usize) -> spectralab::Result<Spectrum> {
    let v = spec
        .coeffs()
        .iter()
        .enumerate()
        .map(|(s, &c)| if s.count_ones() as usize <= l { c } else { 0.0 })
        .collect();
    Spectrum::new(v)
}
