use serde::{Deserialize, Serialize};
use spectralab::circuits::{gen_random_universal, RandomCircuitSpec};
use spectralab::noise::{alpha_pred, run_trajectories, AlphaPrediction, NoiseModel};
use spectralab::quantum::ProbDist;
use spectralab::rng::derive_seed;
use spectralab::stats::xeb;

use crate::config::{instance_seeds, Sampler, XebParams};
use crate::error::CliResult;

const TRAJECTORY_SALT: u64 = 0x7472_616a;
const SAMPLE_SALT: u64 = 0x7361_6d70;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct XebReport {
    pub n: usize,
    pub seed: u64,
    pub gates: usize,
    pub two_qubit_gates: usize,
    pub noise: NoiseModel,
    pub sampler: Sampler,
    pub trajectories: usize,
    pub samples: usize,
    pub cross_entropy: f64,
    pub alpha_hat: f64,
    pub std_err: f64,
    pub alpha_pred: AlphaPrediction,
    pub no_error_fraction: f64,
    pub no_error_std_err: f64,
}

/// Samples from the trajectory-averaged output of one noisy random circuit
/// (or a baseline sampler) and scores them against the ideal output.
pub fn cmd_xeb(p: &XebParams, seeds: &[u64]) -> CliResult<XebReport> {
    let seed = instance_seeds(seeds, 1)?[0];
    let c = gen_random_universal(&RandomCircuitSpec::new(p.rows, p.cols, p.depth, seed))?;
    let nm = p.noise_model()?;
    let traj = run_trajectories(&c, &nm, p.trajectories, derive_seed(seed, TRAJECTORY_SALT))?;
    let ideal = c.run()?.probabilities();
    let source = match p.sampler {
        Sampler::Noisy => traj.avg_dist.clone(),
        Sampler::Ideal => ideal.clone(),
        Sampler::Uniform => ProbDist::uniform(c.n()),
    };
    let samples = source.sample(p.samples, derive_seed(seed, SAMPLE_SALT))?;
    let r = xeb(&samples, &ideal)?;
    Ok(XebReport {
        n: c.n(),
        seed,
        gates: c.gate_count(),
        two_qubit_gates: c.two_qubit_count(),
        noise: nm,
        sampler: p.sampler,
        trajectories: p.trajectories,
        samples: p.samples,
        cross_entropy: r.cross_entropy,
        alpha_hat: r.alpha_hat,
        std_err: r.std_err,
        alpha_pred: alpha_pred(&c, &nm)?,
        no_error_fraction: traj.no_error_fraction,
        no_error_std_err: traj.no_error_std_err(),
    })
}
