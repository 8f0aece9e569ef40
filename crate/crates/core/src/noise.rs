//! Noise channels: Pauli-trajectory simulation of per-gate depolarizing
//! noise, exact per-qubit depolarizing before measurement, and the
//! global-depolarizing mixture `α·p + (1−α)/N`.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fourier::transform::check_rate;
use crate::quantum::{Circuit, Gate, Pauli, ProbDist, StateVector};
use crate::rng;

/// Trajectory count used for figure reproduction.
pub const DEFAULT_TRAJECTORIES: usize = 2000;

/// Trajectories reduced sequentially inside one task.
const BLOCK: usize = 32;

/// Memory ceiling for cached ideal prefix states.
const CHECKPOINT_BYTES: usize = 256 << 20;

/// Depolarizing error rates.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct NoiseModel {
    /// Single-qubit gate error rate.
    pub eps1: f64,
    /// Two-qubit gate error rate.
    pub eps2: f64,
    /// Per-qubit depolarizing rate applied just before measurement.
    #[serde(default)]
    pub eps_meas: f64,
}

impl NoiseModel {
    pub fn new(eps1: f64, eps2: f64, eps_meas: f64) -> Result<Self> {
        let nm = Self {
            eps1,
            eps2,
            eps_meas,
        };
        nm.validate()?;
        Ok(nm)
    }

    pub fn noiseless() -> Self {
        Self::default()
    }

    pub fn validate(&self) -> Result<()> {
        check_rate("eps1", self.eps1)?;
        check_rate("eps2", self.eps2)?;
        check_rate("eps_meas", self.eps_meas)
    }

    /// Error rate attached to `gate`.
    pub fn gate_rate(&self, gate: &Gate) -> f64 {
        if gate.arity() == 1 {
            self.eps1
        } else {
            self.eps2
        }
    }

    pub fn is_noiseless(&self) -> bool {
        self.eps1 == 0.0 && self.eps2 == 0.0 && self.eps_meas == 0.0
    }
}

/// Applies `M_ε = (1−ε)·I + (ε/2)·J` independently to every qubit's
/// outcome, where `J` maps both outcomes to their sum.
pub fn premeasurement_depolarize(dist: &ProbDist, eps: f64) -> Result<ProbDist> {
    check_rate("eps", eps)?;
    let mut p = dist.probs().to_vec();
    let keep = 1.0 - eps / 2.0;
    let flip = eps / 2.0;
    for q in 0..dist.n() {
        let stride = 1usize << q;
        for chunk in p.chunks_mut(2 * stride) {
            let (lo, hi) = chunk.split_at_mut(stride);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = keep * x + flip * y;
                *b = flip * x + keep * y;
            }
        }
    }
    Ok(ProbDist::new(p).expect("stochastic map preserves normalisation"))
}

/// `α·p(x) + (1−α)/N`.
pub fn ansatz_dist(ideal: &ProbDist, alpha: f64) -> Result<ProbDist> {
    check_rate("alpha", alpha)?;
    let floor = (1.0 - alpha) / ideal.len() as f64;
    let probs = ideal.probs().iter().map(|p| alpha * p + floor).collect();
    Ok(ProbDist::new(probs).expect("convex mixture of distributions"))
}

/// Predicted no-error probability of a circuit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphaPrediction {
    /// `Π_g (1 − ε_g)`.
    pub product: f64,
    /// `exp(−Σ_g ε_g)`.
    pub exponential: f64,
}

pub fn alpha_pred(c: &Circuit, nm: &NoiseModel) -> Result<AlphaPrediction> {
    nm.validate()?;
    let mut product = 1.0;
    let mut total = 0.0;
    for g in c.gates() {
        let e = nm.gate_rate(g);
        product *= 1.0 - e;
        total += e;
    }
    Ok(AlphaPrediction {
        product,
        exponential: (-total).exp(),
    })
}

/// Outcome of a trajectory run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryResult {
    pub avg_dist: ProbDist,
    /// Fraction of trajectories in which no Pauli was inserted.
    pub no_error_fraction: f64,
    pub error_free: usize,
    #[serde(rename = "K")]
    pub trajectories: usize,
    pub seed: u64,
    pub noise: NoiseModel,
}

impl TrajectoryResult {
    /// Binomial standard error of `no_error_fraction`.
    pub fn no_error_std_err(&self) -> f64 {
        let f = self.no_error_fraction;
        (f * (1.0 - f) / self.trajectories as f64).sqrt()
    }
}

/// Pauli insertion after one gate.
#[derive(Debug, Clone, Copy)]
struct ErrorEvent {
    gate: usize,
    /// Index into the 3 (one-qubit) or 15 (two-qubit) non-identity Paulis.
    which: usize,
}

/// Draws the error events of trajectory `index`. Exactly one uniform draw
/// per gate, plus one Pauli choice per inserted error.
fn draw_errors(rates: &[f64], seed: u64, index: u64, arity: &[usize]) -> Vec<ErrorEvent> {
    let mut rng = rng::stream(seed, index);
    let mut events = Vec::new();
    for (gate, &eps) in rates.iter().enumerate() {
        let u: f64 = rng.gen();
        if u < eps {
            let options = if arity[gate] == 1 { 3 } else { 15 };
            events.push(ErrorEvent {
                gate,
                which: rng.gen_range(0..options),
            });
        }
    }
    events
}

fn apply_error(state: &mut StateVector, gate: &Gate, which: usize) {
    let qs = gate.qubits();
    if qs.len() == 1 {
        state.apply_pauli(qs[0], Pauli::ALL[which + 1]);
    } else {
        let code = which + 1;
        state.apply_pauli(qs[0], Pauli::ALL[code % 4]);
        state.apply_pauli(qs[1], Pauli::ALL[code / 4]);
    }
}

/// Ideal states after every `stride`-th gate prefix.
struct Checkpoints {
    stride: usize,
    states: Vec<StateVector>,
}

impl Checkpoints {
    fn build(c: &Circuit) -> Result<Self> {
        let m = c.gate_count();
        let state_bytes = (16usize << c.n()).max(1);
        let max_states = (CHECKPOINT_BYTES / state_bytes).max(1);
        let stride = m.div_ceil(max_states).max(1);
        let mut states = Vec::with_capacity(m / stride + 1);
        let mut s = StateVector::zero(c.n())?;
        states.push(s.clone());
        for (i, g) in c.gates().iter().enumerate() {
            s.apply_unchecked(g);
            if (i + 1) % stride == 0 {
                states.push(s.clone());
            }
        }
        Ok(Self { stride, states })
    }

    /// Ideal state after the first `len` gates.
    fn prefix(&self, c: &Circuit, len: usize) -> StateVector {
        let k = (len / self.stride).min(self.states.len() - 1);
        let mut s = self.states[k].clone();
        for g in &c.gates()[k * self.stride..len] {
            s.apply_unchecked(g);
        }
        s
    }
}

/// Monte-Carlo average over `k` Pauli trajectories.
///
/// After each gate a uniformly random non-identity Pauli on the gate's
/// qubits is inserted with that gate's error rate. Trajectory `t` draws from
/// stream `(seed, t)` and partial sums are reduced in index order, so the
/// result does not depend on the thread count. `eps_meas`, when nonzero, is
/// applied exactly to the averaged distribution.
pub fn run_trajectories(
    c: &Circuit,
    nm: &NoiseModel,
    k: usize,
    seed: u64,
) -> Result<TrajectoryResult> {
    if k == 0 {
        return Err(Error::ZeroSamples);
    }
    nm.validate()?;
    c.validate()?;
    let rates: Vec<f64> = c.gates().iter().map(|g| nm.gate_rate(g)).collect();
    let arity: Vec<usize> = c.gates().iter().map(Gate::arity).collect();
    let checkpoints = Checkpoints::build(c)?;
    let ideal = checkpoints.prefix(c, c.gate_count()).probabilities();
    let len = ideal.len();

    let blocks = k.div_ceil(BLOCK);
    let group = (rayon::current_num_threads() * 2).max(1);
    let mut error_sum = vec![0.0f64; len];
    let mut error_free = 0usize;

    let run_block = |b: usize| -> (Vec<f64>, usize) {
        let mut acc = vec![0.0f64; len];
        let mut clean = 0usize;
        for t in b * BLOCK..((b + 1) * BLOCK).min(k) {
            let events = draw_errors(&rates, seed, t as u64, &arity);
            if events.is_empty() {
                clean += 1;
                continue;
            }
            let first = events[0].gate;
            let mut state = checkpoints.prefix(c, first + 1);
            let mut next = 0;
            for gi in first..c.gate_count() {
                if gi > first {
                    state.apply_unchecked(&c.gates()[gi]);
                }
                while next < events.len() && events[next].gate == gi {
                    apply_error(&mut state, &c.gates()[gi], events[next].which);
                    next += 1;
                }
            }
            for (a, amp) in acc.iter_mut().zip(state.amplitudes()) {
                *a += amp.norm_sqr();
            }
        }
        (acc, clean)
    };

    let mut b0 = 0;
    while b0 < blocks {
        let b1 = (b0 + group).min(blocks);
        let parts: Vec<(Vec<f64>, usize)> = (b0..b1).into_par_iter().map(run_block).collect();
        for (acc, clean) in parts {
            error_free += clean;
            for (s, a) in error_sum.iter_mut().zip(&acc) {
                *s += a;
            }
        }
        b0 = b1;
    }

    let inv = 1.0 / k as f64;
    let clean = error_free as f64;
    let mut avg_dist = if error_free == k {
        ideal
    } else {
        let probs: Vec<f64> = error_sum
            .iter()
            .zip(ideal.probs())
            .map(|(e, p)| (e + clean * p) * inv)
            .collect();
        ProbDist::new(probs)?
    };
    if nm.eps_meas > 0.0 {
        avg_dist = premeasurement_depolarize(&avg_dist, nm.eps_meas)?;
    }
    Ok(TrajectoryResult {
        avg_dist,
        no_error_fraction: clean * inv,
        error_free,
        trajectories: k,
        seed,
        noise: *nm,
    })
}
