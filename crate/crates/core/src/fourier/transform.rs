use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::ops::{Add, Sub};
use std::path::Path;

use crate::error::{Error, Result};
use crate::quantum::ProbDist;

const PAR_MIN_LEN: usize = 1 << 15;

/// Unnormalised in-place Walsh–Hadamard butterfly:
/// `data[s] ← Σ_x data[x]·(−1)^{x·s}`.
///
/// Every butterfly touches a disjoint pair, so the parallel path produces
/// bit-identical output to the sequential one.
pub fn fwht_in_place<T>(data: &mut [T])
where
    T: Copy + Add<Output = T> + Sub<Output = T> + Send + Sync,
{
    let len = data.len();
    assert!(len.is_power_of_two(), "length must be a power of two");
    let butterfly = |chunk: &mut [T], h: usize| {
        let (lo, hi) = chunk.split_at_mut(h);
        for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
            let (x, y) = (*a, *b);
            *a = x + y;
            *b = x - y;
        }
    };
    let mut h = 1;
    while h < len {
        if len < PAR_MIN_LEN {
            data.chunks_mut(2 * h).for_each(|c| butterfly(c, h));
        } else if len / (2 * h) >= 64 {
            data.par_chunks_mut(2 * h).for_each(|c| butterfly(c, h));
        } else {
            for chunk in data.chunks_mut(2 * h) {
                let (lo, hi) = chunk.split_at_mut(h);
                lo.par_iter_mut().zip(hi.par_iter_mut()).for_each(|(a, b)| {
                    let (x, y) = (*a, *b);
                    *a = x + y;
                    *b = x - y;
                });
            }
        }
        h <<= 1;
    }
}

/// Walsh–Fourier coefficients `p̂(s)` of a distribution on `n` bits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    n: usize,
    coeffs: Vec<f64>,
}

impl Spectrum {
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() || !coeffs.len().is_power_of_two() {
            return Err(Error::InvalidParameter(format!(
                "spectrum length {} is not a power of two",
                coeffs.len()
            )));
        }
        let n = coeffs.len().trailing_zeros() as usize;
        Ok(Self { n, coeffs })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    #[inline]
    pub fn get(&self, s: usize) -> f64 {
        self.coeffs[s]
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.coeffs
    }

    /// `p̂(s) / 2^{−3n/2}`, the scale of Porter-Thomas fluctuations.
    pub fn rescaled(&self, s: usize) -> f64 {
        self.coeffs[s] * pt_rescale_factor(self.n)
    }

    /// CSV with columns `s_bits, weight, coeff, rescaled_coeff`, ordered by s.
    pub fn write_csv<W: std::io::Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["s_bits", "weight", "coeff", "rescaled_coeff"])?;
        for (s, &c) in self.coeffs.iter().enumerate() {
            let bits = crate::bits::BitString::new(s as u64, self.n)?;
            out.write_record([
                bits.to_bit_string(),
                bits.weight().to_string(),
                format!("{c:e}"),
                format!("{:e}", self.rescaled(s)),
            ])?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn save_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        self.write_csv(std::fs::File::create(path)?)
    }
}

/// `2^{3n/2}`.
pub fn pt_rescale_factor(n: usize) -> f64 {
    (1.5 * n as f64).exp2()
}

/// `p̂(s) = 2^{−n} Σ_x p(x)(−1)^{x·s}` by the O(N log N) butterfly.
pub fn wht(dist: &ProbDist) -> Spectrum {
    wht_slice(dist.probs())
}

/// Same transform applied to an arbitrary real vector (e.g. a signed
/// reconstruction).
pub fn wht_slice(values: &[f64]) -> Spectrum {
    let mut coeffs = values.to_vec();
    fwht_in_place(&mut coeffs);
    let scale = 1.0 / coeffs.len() as f64;
    coeffs.iter_mut().for_each(|c| *c *= scale);
    let n = coeffs.len().trailing_zeros() as usize;
    Spectrum { n, coeffs }
}

/// `f(x) = Σ_s p̂(s)(−1)^{x·s}`. Output may be negative if the spectrum
/// was modified.
pub fn iwht(spec: &Spectrum) -> Vec<f64> {
    let mut v = spec.coeffs.clone();
    fwht_in_place(&mut v);
    v
}

/// `p̂(s) ← (1−ε)^{|s|} p̂(s)`.
pub fn decay_spectrum(spec: &Spectrum, eps: f64) -> Result<Spectrum> {
    check_rate("eps", eps)?;
    let factors = weight_powers(spec.n, 1.0 - eps);
    let coeffs = spec
        .coeffs
        .iter()
        .enumerate()
        .map(|(s, c)| c * factors[s.count_ones() as usize])
        .collect();
    Ok(Spectrum { n: spec.n, coeffs })
}

/// `[base^0, base^1, …, base^n]`, with `0^0 = 1`.
pub(crate) fn weight_powers(n: usize, base: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = 1.0;
    for _ in 0..=n {
        out.push(acc);
        acc *= base;
    }
    out
}

pub(crate) fn check_rate(name: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::RateOutOfRange { name, value })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_has_only_dc_component() {
        let n = 5;
        let s = wht(&ProbDist::uniform(n));
        assert!((s.get(0) - 1.0 / 32.0).abs() < 1e-15);
        assert!(s.coeffs()[1..].iter().all(|c| c.abs() < 1e-15));
    }

    #[test]
    fn point_mass_at_zero_is_flat() {
        let s = wht(&ProbDist::point_mass(2, 0).unwrap());
        assert!(s.coeffs().iter().all(|c| (c - 0.25).abs() < 1e-15));
    }

    #[test]
    fn truncated_point_mass_spectrum() {
        let mut s = wht(&ProbDist::point_mass(2, 0).unwrap()).into_vec();
        s[3] = 0.0; // drop the single weight-2 component
        let q = iwht(&Spectrum::new(s).unwrap());
        let expected = [0.75, 0.25, 0.25, -0.25];
        for (a, b) in q.iter().zip(expected) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn decay_extremes() {
        let p = ProbDist::new(vec![0.1, 0.2, 0.3, 0.4]).unwrap();
        let s = wht(&p);
        assert_eq!(decay_spectrum(&s, 0.0).unwrap(), s);
        let gone = decay_spectrum(&s, 1.0).unwrap();
        assert_eq!(gone.get(0), s.get(0));
        assert!(gone.coeffs()[1..].iter().all(|&c| c == 0.0));
        assert!(decay_spectrum(&s, 1.5).is_err());
    }

    #[test]
    fn parallel_butterfly_is_bit_identical() {
        let len = 1 << 16;
        let v: Vec<f64> = (0..len).map(|i| ((i * 7919) % 1013) as f64 / 1013.0).collect();
        let mut par = v.clone();
        fwht_in_place(&mut par);
        let mut seq = v;
        let mut h = 1;
        while h < len {
            for chunk in seq.chunks_mut(2 * h) {
                let (lo, hi) = chunk.split_at_mut(h);
                for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                    let (x, y) = (*a, *b);
                    *a = x + y;
                    *b = x - y;
                }
            }
            h <<= 1;
        }
        assert_eq!(par, seq);
    }
}
