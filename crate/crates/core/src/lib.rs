//! Spectral analysis of noisy chaotic quantum circuits.
//!
//! The crate simulates pseudo-random universal and IQP circuits on a dense
//! state vector, applies depolarizing noise, and studies the Walsh–Fourier
//! spectrum of the resulting output distributions: how it compares with
//! Porter-Thomas statistics, how noise flattens it, and whether estimating
//! a polynomial number of low-weight components beats guessing the
//! uniform distribution.
//!
//! Bit convention: basis index `x` stores qubit 0 in its least-significant
//! bit.

pub mod bits;
pub mod circuits;
pub mod error;
pub mod fourier;
pub mod noise;
pub mod quantum;
pub mod rng;
pub mod stats;

pub use bits::BitString;
pub use error::{Error, Result};
