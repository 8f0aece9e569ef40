use rand::Rng;
use serde::{Deserialize, Serialize};

use super::state::log2_len;
use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::rng;

/// Tolerance on `|Σp − 1|` for accepting a distribution.
pub const SUM_TOL: f64 = 1e-9;

/// Output distribution over `2^n` bit-strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbDist {
    n: usize,
    probs: Vec<f64>,
}

impl ProbDist {
    /// Checks non-negativity and normalisation.
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        let n = log2_len(probs.len())?;
        if let Some((i, p)) = probs.iter().enumerate().find(|(_, p)| !(**p >= 0.0)) {
            return Err(Error::InvalidParameter(format!(
                "probability {p} at index {i} is negative or NaN"
            )));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > SUM_TOL {
            return Err(Error::InvalidParameter(format!(
                "probabilities sum to {total}"
            )));
        }
        Ok(Self { n, probs })
    }

    pub(crate) fn from_vec_unchecked(n: usize, probs: Vec<f64>) -> Self {
        debug_assert_eq!(probs.len(), 1 << n);
        Self { n, probs }
    }

    pub fn uniform(n: usize) -> Self {
        let len = 1usize << n;
        Self {
            n,
            probs: vec![1.0 / len as f64; len],
        }
    }

    pub fn point_mass(n: usize, x: usize) -> Result<Self> {
        let len = 1usize << n;
        if x >= len {
            return Err(Error::InvalidParameter(format!("index {x} >= {len}")));
        }
        let mut probs = vec![0.0; len];
        probs[x] = 1.0;
        Ok(Self { n, probs })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.probs.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    #[inline]
    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.probs
    }

    #[inline]
    pub fn get(&self, x: usize) -> f64 {
        self.probs[x]
    }

    /// `Σ_x |p(x) − q(x)|`.
    pub fn l1_distance(&self, other: &[f64]) -> f64 {
        self.probs
            .iter()
            .zip(other)
            .map(|(a, b)| (a - b).abs())
            .sum()
    }

    /// `k` i.i.d. draws by inversion of the cumulative distribution.
    pub fn sample(&self, k: usize, seed: u64) -> Result<Vec<BitString>> {
        if k == 0 {
            return Err(Error::ZeroSamples);
        }
        let sampler = CdfSampler::new(self);
        let mut rng = rng::seeded(seed);
        Ok((0..k)
            .map(|_| {
                let x = sampler.draw(&mut rng);
                BitString::new(x as u64, self.n).expect("index below 2^n")
            })
            .collect())
    }
}

/// Precomputed cumulative array; `O(log N)` per draw.
#[derive(Debug, Clone)]
pub struct CdfSampler {
    cdf: Vec<f64>,
}

impl CdfSampler {
    pub fn new(dist: &ProbDist) -> Self {
        let mut acc = 0.0;
        let cdf = dist
            .probs
            .iter()
            .map(|p| {
                acc += p;
                acc
            })
            .collect();
        Self { cdf }
    }

    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let total = *self.cdf.last().expect("non-empty distribution");
        let u: f64 = rng.gen::<f64>() * total;
        // First index whose cumulative mass exceeds u; zero-probability
        // entries are never selected.
        let i = self.cdf.partition_point(|&c| c <= u);
        i.min(self.cdf.len() - 1)
    }
}
