//! Goodness-of-fit helpers: one-sample Kolmogorov–Smirnov and Pearson χ².

use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{Error, Result};

/// One-sample KS result.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KsResult {
    pub statistic: f64,
    pub p_value: f64,
    pub n: usize,
}

/// KS statistic of `samples` against `cdf`, with the asymptotic
/// Kolmogorov p-value (Stephens' small-sample correction).
pub fn ks_test<F: Fn(f64) -> f64>(samples: &[f64], cdf: F) -> Result<KsResult> {
    if samples.is_empty() {
        return Err(Error::InsufficientData("KS test needs samples".into()));
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(|a, b| a.total_cmp(b));
    let n = sorted.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x);
        let lo = i as f64 / n;
        let hi = (i + 1) as f64 / n;
        d = d.max((f - lo).abs()).max((hi - f).abs());
    }
    let sqrt_n = n.sqrt();
    let lambda = (sqrt_n + 0.12 + 0.11 / sqrt_n) * d;
    Ok(KsResult {
        statistic: d,
        p_value: kolmogorov_survival(lambda),
        n: sorted.len(),
    })
}

/// `Q(λ) = 2 Σ_{k≥1} (−1)^{k−1} e^{−2k²λ²}`.
pub fn kolmogorov_survival(lambda: f64) -> f64 {
    if lambda < 1e-3 {
        return 1.0;
    }
    let mut sum = 0.0;
    for k in 1..=200 {
        let kf = k as f64;
        let term = (-2.0 * kf * kf * lambda * lambda).exp();
        sum += if k % 2 == 1 { term } else { -term };
        if term < 1e-16 {
            break;
        }
    }
    (2.0 * sum).clamp(0.0, 1.0)
}

/// Pearson χ² result.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiSquareResult {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
}

/// χ² of observed counts against expected bin probabilities.
pub fn chi_square_test(observed: &[u64], expected_probs: &[f64]) -> Result<ChiSquareResult> {
    if observed.len() != expected_probs.len() || observed.len() < 2 {
        return Err(Error::InsufficientData("χ² needs ≥ 2 matching bins".into()));
    }
    let total: u64 = observed.iter().sum();
    let mass: f64 = expected_probs.iter().sum();
    let mut stat = 0.0;
    for (&o, &p) in observed.iter().zip(expected_probs) {
        let e = total as f64 * p / mass;
        if e <= 0.0 {
            return Err(Error::InsufficientData("empty expected bin".into()));
        }
        stat += (o as f64 - e).powi(2) / e;
    }
    let dof = observed.len() - 1;
    let dist = ChiSquared::new(dof as f64).map_err(|e| Error::InvalidParameter(e.to_string()))?;
    Ok(ChiSquareResult {
        statistic: stat,
        dof,
        p_value: 1.0 - dist.cdf(stat),
    })
}
