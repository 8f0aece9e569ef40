//! Experiment configuration: one JSON document per run.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use spectralab::circuits::{CouplingRule, PhaseRule, RandomCircuitSpec, SparseIqpSpec};
use spectralab::fourier::EstimatorBudget;
use spectralab::noise::{NoiseModel, DEFAULT_TRAJECTORIES};
use spectralab::rng::derive_seed;

use crate::error::{CliError, CliResult};

/// Error rates swept for the noisy-spectrum figures.
pub const DEFAULT_EPS_SWEEP: [f64; 10] = [0.0, 0.0001, 0.0002, 0.0005, 0.001, 0.002, 0.005, 0.01, 0.02, 0.05];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    #[serde(flatten)]
    pub params: Params,
    /// One master seed, or exactly one seed per instance.
    #[serde(default = "default_seeds")]
    pub seeds: Vec<u64>,
    #[serde(default)]
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub threads: Option<usize>,
}

fn default_seeds() -> Vec<u64> {
    vec![0]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "experiment", rename_all = "snake_case")]
pub enum Params {
    Fig1(Fig1Params),
    Fig2Fig3(Fig23Params),
    Attack(AttackParams),
    Xeb(XebParams),
}

impl Params {
    pub fn name(&self) -> &'static str {
        match self {
            Params::Fig1(_) => "fig1",
            Params::Fig2Fig3(_) => "fig2_fig3",
            Params::Attack(_) => "attack",
            Params::Xeb(_) => "xeb",
        }
    }

    fn instances(&self) -> usize {
        match self {
            Params::Fig1(p) => p.instances,
            Params::Fig2Fig3(p) => p.instances,
            Params::Attack(_) | Params::Xeb(_) => 1,
        }
    }
}

/// Entropy histograms of sparse IQP circuits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Fig1Params {
    pub n: usize,
    pub gammas: Vec<f64>,
    pub instances: usize,
    pub phase_rule: PhaseRule,
    pub coupling_rule: CouplingRule,
}

impl Default for Fig1Params {
    fn default() -> Self {
        Self {
            n: 20,
            gammas: vec![0.5, 1.0, 2.0, 4.0],
            instances: 100,
            phase_rule: PhaseRule::default(),
            coupling_rule: CouplingRule::default(),
        }
    }
}

/// Noisy Fourier spectra of random universal circuits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Fig23Params {
    pub rows: usize,
    pub cols: usize,
    pub depth: usize,
    /// Two-qubit error rates.
    pub eps: Vec<f64>,
    /// Single-qubit rate as a fraction of the two-qubit rate.
    pub single_qubit_ratio: f64,
    pub eps_meas: f64,
    pub instances: usize,
    pub trajectories: usize,
    /// Masks per weight written to the scatter file.
    pub masks_per_weight: usize,
}

impl Default for Fig23Params {
    fn default() -> Self {
        Self {
            rows: 4,
            cols: 3,
            depth: 40,
            eps: DEFAULT_EPS_SWEEP.to_vec(),
            single_qubit_ratio: 0.1,
            eps_meas: 0.0,
            instances: 10,
            trajectories: DEFAULT_TRAJECTORIES,
            masks_per_weight: 10,
        }
    }
}

impl Fig23Params {
    /// Five-by-four grid at the full figure size.
    pub fn full_scale() -> Self {
        Self {
            rows: 5,
            cols: 4,
            ..Self::default()
        }
    }

    pub fn noise_model(&self, eps: f64) -> spectralab::Result<NoiseModel> {
        NoiseModel::new(eps * self.single_qubit_ratio, eps, self.eps_meas)
    }
}

/// Low-weight reconstruction attack on one noisy IQP instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct AttackParams {
    pub n: usize,
    pub gamma: f64,
    pub phase_rule: PhaseRule,
    pub coupling_rule: CouplingRule,
    /// Per-qubit depolarizing rate before measurement.
    pub eps: f64,
    /// Maximum weight; chosen from `beta`, `delta`, `eps` when absent.
    pub l: Option<usize>,
    pub eta: f64,
    pub fail_prob: f64,
    /// Overrides the Hoeffding sample count (must still meet it).
    pub samples: Option<u64>,
    /// Collision bound; measured from the ideal output when absent.
    pub beta: Option<f64>,
    pub delta: f64,
}

impl Default for AttackParams {
    fn default() -> Self {
        Self {
            n: 12,
            gamma: 4.0,
            phase_rule: PhaseRule::UniformContinuous,
            coupling_rule: CouplingRule::UniformContinuous,
            eps: 0.1,
            l: Some(4),
            eta: 0.25,
            fail_prob: 0.01,
            samples: None,
            beta: None,
            delta: 0.1,
        }
    }
}

impl AttackParams {
    pub fn budget(&self) -> spectralab::Result<EstimatorBudget> {
        match self.samples {
            Some(m) => EstimatorBudget::with_samples(self.eta, self.fail_prob, m),
            None => EstimatorBudget::hoeffding(self.eta, self.fail_prob),
        }
    }

    pub fn iqp_spec(&self, seed: u64) -> SparseIqpSpec {
        SparseIqpSpec {
            n: self.n,
            gamma: self.gamma,
            seed,
            phase_rule: self.phase_rule,
            coupling_rule: self.coupling_rule,
        }
    }
}

/// Where XEB samples come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Sampler {
    /// Trajectory-averaged noisy output.
    #[default]
    Noisy,
    Ideal,
    Uniform,
}

/// Cross-entropy fidelity estimate for one noisy random circuit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct XebParams {
    pub rows: usize,
    pub cols: usize,
    pub depth: usize,
    pub eps1: f64,
    pub eps2: f64,
    pub eps_meas: f64,
    pub trajectories: usize,
    pub samples: usize,
    pub sampler: Sampler,
}

impl Default for XebParams {
    fn default() -> Self {
        Self {
            rows: 4,
            cols: 3,
            depth: 40,
            eps1: 0.0005,
            eps2: 0.005,
            eps_meas: 0.0,
            trajectories: DEFAULT_TRAJECTORIES,
            samples: 100_000,
            sampler: Sampler::Noisy,
        }
    }
}

impl XebParams {
    pub fn noise_model(&self) -> spectralab::Result<NoiseModel> {
        NoiseModel::new(self.eps1, self.eps2, self.eps_meas)
    }
}

impl ExperimentConfig {
    pub fn new(params: Params) -> Self {
        Self {
            params,
            seeds: default_seeds(),
            out: None,
            threads: None,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seeds = vec![seed];
        self
    }

    pub fn load(path: impl AsRef<Path>) -> CliResult<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> CliResult<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> CliResult<()> {
        if self.seeds.is_empty() {
            return Err(CliError::Config("seed list is empty".into()));
        }
        if self.threads == Some(0) {
            return Err(CliError::Config("threads must be ≥ 1".into()));
        }
        instance_seeds(&self.seeds, self.params.instances())?;
        match &self.params {
            Params::Fig1(p) => {
                if p.gammas.is_empty() || p.instances == 0 {
                    return Err(CliError::Config("fig1 needs γ values and instances".into()));
                }
                for &g in &p.gammas {
                    let mut spec = SparseIqpSpec::new(p.n, g, 0);
                    spec.phase_rule = p.phase_rule;
                    spec.coupling_rule = p.coupling_rule;
                    spec.validate()?;
                }
            }
            Params::Fig2Fig3(p) => {
                RandomCircuitSpec::new(p.rows, p.cols, p.depth, 0).validate()?;
                if p.eps.is_empty() || p.instances == 0 || p.trajectories == 0 {
                    return Err(CliError::Config("fig2_fig3 needs ε values, instances and K".into()));
                }
                for &e in &p.eps {
                    p.noise_model(e)?;
                }
            }
            Params::Attack(p) => {
                p.iqp_spec(0).validate()?;
                p.budget()?;
                if let Some(l) = p.l {
                    if l > p.n {
                        return Err(spectralab::Error::WeightTooLarge { l, n: p.n }.into());
                    }
                }
                if !(p.eps >= 0.0 && p.eps <= 1.0) {
                    return Err(spectralab::Error::RateOutOfRange {
                        name: "eps",
                        value: p.eps,
                    }
                    .into());
                }
            }
            Params::Xeb(p) => {
                RandomCircuitSpec::new(p.rows, p.cols, p.depth, 0).validate()?;
                p.noise_model()?;
                if p.samples == 0 {
                    return Err(spectralab::Error::ZeroSamples.into());
                }
                if p.trajectories == 0 {
                    return Err(CliError::Config("trajectory count must be ≥ 1".into()));
                }
            }
        }
        Ok(())
    }
}

/// Seeds for `count` instances: the list itself when it has one entry per
/// instance, otherwise streams derived from a single master seed.
pub fn instance_seeds(seeds: &[u64], count: usize) -> CliResult<Vec<u64>> {
    match seeds.len() {
        0 => Err(CliError::Config("seed list is empty".into())),
        1 if count != 1 => Ok((0..count as u64).map(|i| derive_seed(seeds[0], i)).collect()),
        k if k == count => Ok(seeds.to_vec()),
        k => Err(CliError::Config(format!(
            "{k} seeds given for {count} instances (use one master seed or one per instance)"
        ))),
    }
}
