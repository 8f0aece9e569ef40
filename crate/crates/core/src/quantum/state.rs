use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use super::dist::ProbDist;
use super::gate::{Gate, Matrix2, Matrix4, C64};
use super::MAX_QUBITS;
use crate::error::{Error, Result};

/// Tolerance on `|‖ψ‖² − 1|` for accepting a state.
pub const NORM_TOL: f64 = 1e-10;

/// Amplitude count above which kernels split work across rayon tasks.
const PAR_MIN_LEN: usize = 1 << 14;

/// Single-qubit Pauli operators used for error insertion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];
}

/// Dense pure state on `n` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<C64>,
}

impl StateVector {
    /// `|0…0⟩`.
    pub fn zero(n: usize) -> Result<Self> {
        check_n(n)?;
        let mut amps = vec![C64::new(0.0, 0.0); 1 << n];
        amps[0] = C64::new(1.0, 0.0);
        Ok(Self { n, amps })
    }

    pub fn from_amplitudes(amps: Vec<C64>) -> Result<Self> {
        let n = log2_len(amps.len())?;
        check_n(n)?;
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidParameter(format!(
                "state norm² {norm} differs from 1"
            )));
        }
        Ok(Self { n, amps })
    }

    /// Haar-random state: i.i.d. complex Gaussian amplitudes, normalised.
    pub fn haar_random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self> {
        check_n(n)?;
        let mut amps: Vec<C64> = (0..1usize << n)
            .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        amps.iter_mut().for_each(|a| *a /= norm);
        Ok(Self { n, amps })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `probs[x] = |amps[x]|²`.
    pub fn probabilities(&self) -> ProbDist {
        let probs = if self.amps.len() >= PAR_MIN_LEN {
            self.amps.par_iter().map(|a| a.norm_sqr()).collect()
        } else {
            self.amps.iter().map(|a| a.norm_sqr()).collect()
        };
        ProbDist::from_vec_unchecked(self.n, probs)
    }

    /// Validates `gate` against this state and applies it.
    pub fn apply(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.n)?;
        self.apply_unchecked(gate);
        Ok(())
    }

    /// Applies a gate already validated for this qubit count.
    pub fn apply_unchecked(&mut self, gate: &Gate) {
        match gate {
            Gate::Single { target, matrix, .. } => apply_single(&mut self.amps, *target, matrix),
            Gate::ControlledPhase { a, b, theta } => {
                apply_controlled_phase(&mut self.amps, *a, *b, *theta)
            }
            Gate::Two { q0, q1, matrix } => apply_two(&mut self.amps, *q0, *q1, matrix),
        }
    }

    /// Applies a Pauli operator on qubit `q` (permutation plus phases).
    pub fn apply_pauli(&mut self, q: usize, p: Pauli) {
        match p {
            Pauli::I => {}
            Pauli::X => for_each_pair(&mut self.amps, q, |a, b| std::mem::swap(a, b)),
            Pauli::Z => for_each_pair(&mut self.amps, q, |_, b| *b = -*b),
            Pauli::Y => for_each_pair(&mut self.amps, q, |a, b| {
                let (x, y) = (*a, *b);
                *a = C64::new(y.im, -y.re);
                *b = C64::new(-x.im, x.re);
            }),
        }
    }
}

fn check_n(n: usize) -> Result<()> {
    if n > MAX_QUBITS {
        Err(Error::TooManyQubits { n, max: MAX_QUBITS })
    } else {
        Ok(())
    }
}

pub(crate) fn log2_len(len: usize) -> Result<usize> {
    if len == 0 || !len.is_power_of_two() {
        return Err(Error::InvalidParameter(format!(
            "length {len} is not a power of two"
        )));
    }
    Ok(len.trailing_zeros() as usize)
}

/// Calls `f(lo, hi)` on every amplitude pair differing only in bit `q`.
/// Each pair is visited by exactly one task.
fn for_each_pair<F>(amps: &mut [C64], q: usize, f: F)
where
    F: Fn(&mut C64, &mut C64) + Sync + Send,
{
    let stride = 1usize << q;
    let block = stride << 1;
    let blocks = amps.len() / block;
    let pair_block = |chunk: &mut [C64]| {
        let (lo, hi) = chunk.split_at_mut(stride);
        lo.iter_mut().zip(hi.iter_mut()).for_each(|(a, b)| f(a, b));
    };
    if amps.len() < PAR_MIN_LEN {
        amps.chunks_mut(block).for_each(pair_block);
    } else if blocks >= 64 {
        amps.par_chunks_mut(block).for_each(pair_block);
    } else {
        for chunk in amps.chunks_mut(block) {
            let (lo, hi) = chunk.split_at_mut(stride);
            lo.par_iter_mut()
                .zip(hi.par_iter_mut())
                .for_each(|(a, b)| f(a, b));
        }
    }
}

fn apply_single(amps: &mut [C64], q: usize, m: &Matrix2) {
    let [[m00, m01], [m10, m11]] = *m;
    for_each_pair(amps, q, |a, b| {
        let (x, y) = (*a, *b);
        *a = m00 * x + m01 * y;
        *b = m10 * x + m11 * y;
    });
}

fn apply_controlled_phase(amps: &mut [C64], a: usize, b: usize, theta: f64) {
    let both = (1usize << a) | (1usize << b);
    let phase = C64::from_polar(1.0, theta);
    let exact_cz = theta == std::f64::consts::PI;
    let kernel = |(i, amp): (usize, &mut C64)| {
        if i & both == both {
            if exact_cz {
                *amp = -*amp;
            } else {
                *amp *= phase;
            }
        }
    };
    if amps.len() >= PAR_MIN_LEN {
        amps.par_iter_mut().enumerate().for_each(kernel);
    } else {
        amps.iter_mut().enumerate().for_each(kernel);
    }
}

fn apply_two(amps: &mut [C64], q0: usize, q1: usize, m: &Matrix4) {
    let m0 = 1usize << q0;
    let m1 = 1usize << q1;
    for base in 0..amps.len() {
        if base & (m0 | m1) != 0 {
            continue;
        }
        let idx = [base, base | m0, base | m1, base | m0 | m1];
        let v = idx.map(|i| amps[i]);
        for (r, &i) in idx.iter().enumerate() {
            amps[i] = m[r][0] * v[0] + m[r][1] * v[1] + m[r][2] * v[2] + m[r][3] * v[3];
        }
    }
}
