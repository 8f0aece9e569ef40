//! Walsh–Fourier spectra, component estimation and low-weight
//! reconstruction.

mod estimate;
mod reconstruct;
pub(crate) mod transform;

pub use estimate::{exact_component_convolution, mc_estimate_component, EstimatorBudget, PhaseOracle};
pub use reconstruct::{choose_l, low_weight_reconstruct, Reconstruction, ReconstructionConfig, MAX_COMPONENTS};
pub use transform::{decay_spectrum, fwht_in_place, iwht, pt_rescale_factor, wht, wht_slice, Spectrum};

use crate::error::{Error, Result};
use crate::stats::pearson;

/// Pearson correlation of `a[s]` against `b[s]` over `s ≠ 0` with
/// `lo ≤ |s| ≤ hi`.
pub fn spectral_correlation(a: &Spectrum, b: &Spectrum, lo: usize, hi: usize) -> Result<f64> {
    if a.n() != b.n() {
        return Err(Error::QubitCountMismatch {
            expected: a.n(),
            actual: b.n(),
        });
    }
    let (xs, ys): (Vec<f64>, Vec<f64>) = (1..a.coeffs().len())
        .filter(|s| {
            let w = s.count_ones() as usize;
            w >= lo && w <= hi
        })
        .map(|s| (a.get(s), b.get(s)))
        .unzip();
    if xs.is_empty() {
        return Err(Error::EmptyWeightRange { lo, hi });
    }
    pearson(&xs, &ys)
}
