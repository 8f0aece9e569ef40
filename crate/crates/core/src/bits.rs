//! Bit-string indices and Hamming-weight utilities.
//!
//! Index `x` encodes qubit 0 as its least-significant bit everywhere in this
//! crate.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A computational basis label on `n` qubits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BitString {
    value: u64,
    n: usize,
}

impl BitString {
    pub fn new(value: u64, n: usize) -> Result<Self> {
        if n > 63 {
            return Err(Error::InvalidParameter(format!("bit-string length {n} > 63")));
        }
        if value >> n != 0 {
            return Err(Error::InvalidParameter(format!(
                "value {value} does not fit in {n} bits"
            )));
        }
        Ok(Self { value, n })
    }

    #[inline]
    pub fn value(self) -> u64 {
        self.value
    }

    #[inline]
    pub fn index(self) -> usize {
        self.value as usize
    }

    #[inline]
    pub fn len(self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.n == 0
    }

    /// Hamming weight `|s|`.
    #[inline]
    pub fn weight(self) -> usize {
        self.value.count_ones() as usize
    }

    #[inline]
    pub fn bit(self, q: usize) -> bool {
        (self.value >> q) & 1 == 1
    }

    /// Parity of `x · s`.
    #[inline]
    pub fn dot_parity(self, other: BitString) -> bool {
        parity(self.value & other.value)
    }

    /// Bits rendered most-significant first, qubit 0 rightmost.
    pub fn to_bit_string(self) -> String {
        (0..self.n)
            .rev()
            .map(|q| if self.bit(q) { '1' } else { '0' })
            .collect()
    }
}

impl std::fmt::Display for BitString {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_bit_string())
    }
}

#[inline]
pub fn parity(x: u64) -> bool {
    x.count_ones() & 1 == 1
}

/// `(-1)^{popcount(x)}` as a float.
#[inline]
pub fn character(x: u64) -> f64 {
    if parity(x) {
        -1.0
    } else {
        1.0
    }
}

/// Binomial coefficient, exact in `u128` for the sizes used here.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Number of masks with weight in `lo..=hi`.
pub fn count_masks(n: usize, lo: usize, hi: usize) -> u128 {
    (lo..=hi.min(n)).map(|k| binomial(n, k)).sum()
}

/// All masks of exactly weight `k` on `n` bits, in increasing numeric order.
pub fn masks_of_weight(n: usize, k: usize) -> Vec<u64> {
    if k > n {
        return Vec::new();
    }
    if k == 0 {
        return vec![0];
    }
    let mut out = Vec::with_capacity(binomial(n, k) as usize);
    // Gosper's hack enumerates same-weight integers in increasing order.
    let mut v: u64 = (1u64 << k) - 1;
    let limit = 1u64 << n;
    while v < limit {
        out.push(v);
        let c = v & v.wrapping_neg();
        let r = v + c;
        v = (((r ^ v) >> 2) / c) | r;
    }
    out
}

/// Masks with weight in `lo..=hi`, ordered by (weight, value).
pub fn masks_by_weight(n: usize, lo: usize, hi: usize) -> Vec<u64> {
    (lo..=hi.min(n))
        .flat_map(|k| masks_of_weight(n, k))
        .collect()
}
