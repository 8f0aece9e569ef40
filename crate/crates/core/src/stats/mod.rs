//! Porter-Thomas references, cross-entropy benchmarking and distribution
//! tests for Fourier components of random states.

mod ks;

pub use ks::{chi_square_test, kolmogorov_survival, ks_test, ChiSquareResult, KsResult};

use rand::Rng;
use serde::{Deserialize, Serialize};
use statrs::distribution::{Beta, ContinuousCDF};
use statrs::function::{erf::erf, gamma::ln_gamma};

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::fourier::Spectrum;
use crate::quantum::{ProbDist, StateVector};
use crate::rng;

/// Euler–Mascheroni constant γ_E.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Minimum pooled components for [`fourier_gaussian_test`].
pub const MIN_GAUSSIAN_POOL: usize = 10_000;

/// KS acceptance threshold.
pub const KS_ALPHA: f64 = 0.01;

/// Porter-Thomas reference values for `N = 2^n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PtReference {
    pub n: usize,
    /// `ln N + γ_E − 1` nats.
    pub entropy_ref: f64,
    pub euler_gamma: f64,
    /// `Σ_x |p(x) − 1/N| → 2/e`.
    pub l1_to_uniform_ref: f64,
    /// `E[Σ p²] = 2/N`.
    pub second_moment_ref: f64,
    /// Standard deviation `N^{−3/2}` of `p̂(s)`, `s ≠ 0`.
    pub fourier_std_ref: f64,
}

impl PtReference {
    pub fn new(n: usize) -> Self {
        let big_n = (n as f64).exp2();
        Self {
            n,
            entropy_ref: big_n.ln() + EULER_GAMMA - 1.0,
            euler_gamma: EULER_GAMMA,
            l1_to_uniform_ref: 2.0 / std::f64::consts::E,
            second_moment_ref: 2.0 / big_n,
            fourier_std_ref: big_n.powf(-1.5),
        }
    }

    /// Cross entropy of samples uncorrelated with the ideal output.
    pub fn uncorrelated_cross_entropy(&self) -> f64 {
        self.entropy_ref + 1.0
    }
}

/// One line of a machine-readable test report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub statistic: f64,
    pub reference: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    /// `|statistic − reference| ≤ tolerance`.
    pub fn within(name: impl Into<String>, statistic: f64, reference: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            statistic,
            reference,
            tolerance,
            pass: (statistic - reference).abs() <= tolerance,
        }
    }

    /// `statistic > threshold` (threshold stored in `reference`).
    pub fn above(name: impl Into<String>, statistic: f64, threshold: f64) -> Self {
        Self {
            name: name.into(),
            statistic,
            reference: threshold,
            tolerance: 0.0,
            pass: statistic > threshold,
        }
    }

    /// `statistic < threshold`.
    pub fn below(name: impl Into<String>, statistic: f64, threshold: f64) -> Self {
        Self {
            name: name.into(),
            statistic,
            reference: threshold,
            tolerance: 0.0,
            pass: statistic < threshold,
        }
    }
}

/// Output distribution of a Haar-random state.
pub fn sample_haar_probdist(n: usize, seed: u64) -> Result<ProbDist> {
    let mut rng = rng::seeded(seed);
    Ok(StateVector::haar_random(n, &mut rng)?.probabilities())
}

/// Shannon entropy in nats, `0·ln 0 = 0`.
pub fn entropy(dist: &ProbDist) -> f64 {
    -dist
        .probs()
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| p * p.ln())
        .sum::<f64>()
}

/// `N·Σ p²`.
pub fn collision_beta(dist: &ProbDist) -> f64 {
    dist.len() as f64 * dist.probs().iter().map(|p| p * p).sum::<f64>()
}

/// `Σ_x |p(x) − 1/N|`.
pub fn l1_to_uniform(dist: &ProbDist) -> f64 {
    let u = 1.0 / dist.len() as f64;
    dist.probs().iter().map(|p| (p - u).abs()).sum()
}

/// Sample mean and unbiased standard deviation.
pub fn mean_std(xs: &[f64]) -> (f64, f64) {
    let k = xs.len() as f64;
    if xs.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let mean = xs.iter().sum::<f64>() / k;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (k - 1.0);
    (mean, var.sqrt())
}

/// Pearson correlation coefficient.
pub fn pearson(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(Error::InsufficientData(format!(
            "correlation needs two equal-length series of ≥ 2 points ({} vs {})",
            xs.len(),
            ys.len()
        )));
    }
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::InsufficientData("zero variance series".into()));
    }
    Ok(sxy / (sxx * syy).sqrt())
}

/// Cross-entropy benchmarking estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct XebResult {
    /// `(1/k) Σ ln(1/p_ideal(x_j))` in nats.
    pub cross_entropy: f64,
    /// `ln N + γ_E − cross_entropy`.
    pub alpha_hat: f64,
    pub k: usize,
    /// Standard error of `alpha_hat`.
    pub std_err: f64,
}

/// Fidelity estimate from samples scored against the ideal distribution.
/// No finite-`k` bias correction is applied.
pub fn xeb(samples: &[BitString], ideal: &ProbDist) -> Result<XebResult> {
    if samples.is_empty() {
        return Err(Error::ZeroSamples);
    }
    let mut scores = Vec::with_capacity(samples.len());
    for s in samples {
        if s.len() != ideal.n() {
            return Err(Error::QubitCountMismatch {
                expected: ideal.n(),
                actual: s.len(),
            });
        }
        let p = ideal.get(s.index());
        if !(p > 0.0) {
            return Err(Error::ZeroProbabilitySample { index: s.value() });
        }
        scores.push(-p.ln());
    }
    let (ce, sd) = mean_std(&scores);
    let k = samples.len();
    let std_err = if k > 1 { sd / (k as f64).sqrt() } else { f64::INFINITY };
    let reference = PtReference::new(ideal.n());
    Ok(XebResult {
        cross_entropy: ce,
        alpha_hat: reference.uncorrelated_cross_entropy() - ce,
        k,
        std_err,
    })
}

/// Pooled Fourier-component statistics against `Normal(0, N^{−3/2})`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FourierGaussianReport {
    pub n: usize,
    pub pool: usize,
    pub mean: f64,
    pub std: f64,
    pub reference_std: f64,
    pub ks_statistic: f64,
    pub ks_p_value: f64,
    /// False when the pool has (numerically) zero spread, e.g. uniform input.
    pub pt_like: bool,
    pub checks: Vec<Check>,
}

/// Pools `p̂(s)`, `s ≠ 0`, over all spectra and compares with the Gaussian
/// Porter-Thomas law.
pub fn fourier_gaussian_test(spectra: &[Spectrum]) -> Result<FourierGaussianReport> {
    let n = spectra
        .first()
        .ok_or_else(|| Error::InsufficientData("no spectra".into()))?
        .n();
    let mut pool = Vec::new();
    for s in spectra {
        if s.n() != n {
            return Err(Error::QubitCountMismatch {
                expected: n,
                actual: s.n(),
            });
        }
        pool.extend_from_slice(&s.coeffs()[1..]);
    }
    if pool.len() < MIN_GAUSSIAN_POOL {
        return Err(Error::InsufficientData(format!(
            "{} pooled components, need {MIN_GAUSSIAN_POOL}",
            pool.len()
        )));
    }
    let reference = PtReference::new(n);
    let sigma = reference.fourier_std_ref;
    let (mean, std) = mean_std(&pool);
    let pt_like = std > 1e-6 * sigma;
    let (ks_statistic, ks_p_value) = if pt_like {
        let r = ks_test(&pool, |x| 0.5 * (1.0 + erf(x / (sigma * std::f64::consts::SQRT_2))))?;
        (r.statistic, r.p_value)
    } else {
        (1.0, 0.0)
    };
    let mean_tol = 3.0 * sigma / (pool.len() as f64).sqrt();
    let checks = vec![
        Check::within("fourier_mean", mean, 0.0, mean_tol),
        Check::within("fourier_std", std, sigma, 0.05 * sigma),
        Check::above("fourier_ks_p", ks_p_value, KS_ALPHA),
    ];
    Ok(FourierGaussianReport {
        n,
        pool: pool.len(),
        mean,
        std,
        reference_std: sigma,
        ks_statistic,
        ks_p_value,
        pt_like,
        checks,
    })
}

/// Statistics of `u = Σ_{x: x·s odd} p(x)` over Haar states.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BipartitionReport {
    pub n: usize,
    pub trials: usize,
    pub mean: f64,
    pub variance: f64,
    pub reference_mean: f64,
    /// `1/(4(N+1))`, the variance of `Beta(N/2, N/2)`.
    pub reference_variance: f64,
    /// Standard error of the mean under the reference law.
    pub mean_sigma: f64,
    pub ks_statistic: f64,
    pub ks_p_value: f64,
    pub samples: Vec<f64>,
}

/// Odd-parity half-sum `u` for mask `s ≠ 0`.
pub fn bipartition_sum(dist: &ProbDist, s: u64) -> f64 {
    dist.probs()
        .iter()
        .enumerate()
        .filter(|(x, _)| crate::bits::parity(*x as u64 & s))
        .map(|(_, p)| p)
        .sum()
}

/// Draws `trials` (Haar state, mask) pairs and tests `u` against
/// `Beta(N/2, N/2)`.
pub fn bipartition_sum_test(n: usize, trials: usize, seed: u64) -> Result<BipartitionReport> {
    if n < 4 {
        return Err(Error::InvalidParameter(format!("bipartition test needs n ≥ 4, got {n}")));
    }
    if trials < 2 {
        return Err(Error::InsufficientData("need at least two trials".into()));
    }
    let big_n = 1u64 << n;
    let samples: Vec<f64> = (0..trials)
        .map(|t| {
            let mut r = rng::stream(seed, t as u64);
            let state = StateVector::haar_random(n, &mut r)?;
            let s = r.gen_range(1..big_n);
            Ok(bipartition_sum(&state.probabilities(), s))
        })
        .collect::<Result<_>>()?;
    let (mean, sd) = mean_std(&samples);
    let a = big_n as f64 / 2.0;
    let beta = Beta::new(a, a).map_err(|e| Error::InvalidParameter(e.to_string()))?;
    let ks = ks_test(&samples, |u| beta.cdf(u.clamp(0.0, 1.0)))?;
    let reference_variance = 1.0 / (4.0 * (big_n as f64 + 1.0));
    Ok(BipartitionReport {
        n,
        trials,
        mean,
        variance: sd * sd,
        reference_mean: 0.5,
        reference_variance,
        mean_sigma: (reference_variance / trials as f64).sqrt(),
        ks_statistic: ks.statistic,
        ks_p_value: ks.p_value,
        samples,
    })
}

/// Density `Pr_S(u) = (N−1)!/((N/2−1)!)² · (1−u)^{N/2−1} u^{N/2−1}` evaluated
/// in log space.
pub fn bipartition_density(n: usize, u: f64) -> f64 {
    if !(0.0..=1.0).contains(&u) {
        return 0.0;
    }
    let big_n = (n as f64).exp2();
    let half = big_n / 2.0;
    if u == 0.0 || u == 1.0 {
        return if half > 1.0 { 0.0 } else { 1.0 };
    }
    let log_norm = ln_gamma(big_n) - 2.0 * ln_gamma(half);
    (log_norm + (half - 1.0) * ((1.0 - u).ln() + u.ln())).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::wht;

    #[test]
    fn reference_values() {
        let r = PtReference::new(12);
        assert!((r.entropy_ref - 7.894_982).abs() < 1e-5);
        assert!((r.l1_to_uniform_ref - 0.735_758_9).abs() < 1e-6);
        assert!(r.entropy_ref < 12.0 * std::f64::consts::LN_2);
        assert!((PtReference::new(16).entropy_ref - 10.6675).abs() < 1e-4);
    }

    #[test]
    fn entropy_extremes() {
        assert!((entropy(&ProbDist::uniform(10)) - 10.0 * std::f64::consts::LN_2).abs() < 1e-12);
        assert_eq!(entropy(&ProbDist::point_mass(4, 3).unwrap()), 0.0);
    }

    #[test]
    fn collision_extremes() {
        assert!((collision_beta(&ProbDist::uniform(6)) - 1.0).abs() < 1e-12);
        assert_eq!(collision_beta(&ProbDist::point_mass(6, 1).unwrap()), 64.0);
    }

    #[test]
    fn xeb_rejects_zero_probability_samples() {
        let ideal = ProbDist::point_mass(2, 0).unwrap();
        let s = vec![BitString::new(0, 2).unwrap(), BitString::new(3, 2).unwrap()];
        assert!(matches!(
            xeb(&s, &ideal),
            Err(Error::ZeroProbabilitySample { index: 3 })
        ));
        assert!(matches!(xeb(&[], &ideal), Err(Error::ZeroSamples)));
    }

    #[test]
    fn pearson_identity_and_errors() {
        let a = [1.0, 2.0, 4.0, 3.0];
        assert!((pearson(&a, &a).unwrap() - 1.0).abs() < 1e-15);
        let neg: Vec<f64> = a.iter().map(|x| -x).collect();
        assert!((pearson(&a, &neg).unwrap() + 1.0).abs() < 1e-15);
        assert!(pearson(&a, &[1.0; 4]).is_err());
    }

    #[test]
    fn gaussian_test_flags_uniform_input() {
        let spectra: Vec<Spectrum> = (0..5).map(|_| wht(&ProbDist::uniform(12))).collect();
        let r = fourier_gaussian_test(&spectra).unwrap();
        assert_eq!(r.std, 0.0);
        assert!(!r.pt_like);
        assert!(r.checks.iter().any(|c| !c.pass));
    }

    #[test]
    fn gaussian_test_requires_pool() {
        let spectra = vec![wht(&ProbDist::uniform(8))];
        assert!(matches!(
            fourier_gaussian_test(&spectra),
            Err(Error::InsufficientData(_))
        ));
    }

    #[test]
    fn bipartition_density_integrates_to_one() {
        for n in [4, 6, 8] {
            let m = 20_000;
            let h = 1.0 / m as f64;
            let total: f64 = (0..m).map(|i| bipartition_density(n, (i as f64 + 0.5) * h) * h).sum();
            assert!((total - 1.0).abs() < 1e-6, "n={n}: {total}");
        }
    }

    #[test]
    fn bipartition_sum_counts_odd_parity_half() {
        let d = ProbDist::new((1..=8).map(|v| v as f64 / 36.0).collect()).unwrap();
        // s = 0b001: odd indices 1,3,5,7 carry 2+4+6+8.
        assert!((bipartition_sum(&d, 1) - 20.0 / 36.0).abs() < 1e-15);
    }
}
