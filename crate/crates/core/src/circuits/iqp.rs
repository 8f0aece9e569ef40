//! Diagonal (IQP) circuits `U = H^{⊗n} D H^{⊗n}` and their phase function
//! `f(y) = ⟨y|D|y⟩`.

use rand::Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_4, PI, TAU};
use std::path::Path;

use crate::error::{Error, Result};
use crate::fourier::fwht_in_place;
use crate::quantum::{Circuit, Gate, ProbDist, C64, MAX_QUBITS};
use crate::rng;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZTerm {
    pub q: usize,
    pub angle: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZzTerm {
    pub i: usize,
    pub j: usize,
    pub angle: f64,
}

/// Diagonal circuit with phase
/// `φ(y) = Σ_{z terms, y_q = 1} angle + Σ_{zz terms, y_i = y_j = 1} angle`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagonalCircuit {
    pub n: usize,
    #[serde(default)]
    pub z: Vec<ZTerm>,
    #[serde(default)]
    pub zz: Vec<ZzTerm>,
}

impl DiagonalCircuit {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            z: Vec::new(),
            zz: Vec::new(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n > 63 {
            return Err(Error::InvalidParameter(format!("n = {} > 63", self.n)));
        }
        for t in &self.z {
            if t.q >= self.n {
                return Err(Error::QubitOutOfRange { qubit: t.q, n: self.n });
            }
        }
        for t in &self.zz {
            for q in [t.i, t.j] {
                if q >= self.n {
                    return Err(Error::QubitOutOfRange { qubit: q, n: self.n });
                }
            }
            if t.i == t.j {
                return Err(Error::DuplicateQubit(t.i));
            }
        }
        Ok(())
    }

    pub fn term_count(&self) -> usize {
        self.z.len() + self.zz.len()
    }

    /// Phase angle `φ(y)`; `f(y) = e^{iφ(y)}`.
    pub fn phase(&self, y: u64) -> f64 {
        let mut acc = 0.0;
        for t in &self.z {
            if (y >> t.q) & 1 == 1 {
                acc += t.angle;
            }
        }
        for t in &self.zz {
            if (y >> t.i) & 1 == 1 && (y >> t.j) & 1 == 1 {
                acc += t.angle;
            }
        }
        acc
    }

    /// `f(y) = ⟨y|D|y⟩`, cost O(#terms).
    pub fn eval_f(&self, y: u64) -> C64 {
        C64::from_polar(1.0, self.phase(y))
    }

    /// `f(y)` for every `y`, built incrementally by peeling the lowest set
    /// bit: `φ(y) = φ(y') + θ_q + Σ_{j ∈ y'} θ_{qj}` with `y = y' + 2^q`.
    pub fn phase_table(&self) -> Result<PhaseTable> {
        self.validate()?;
        if self.n > MAX_QUBITS {
            return Err(Error::TooManyQubits {
                n: self.n,
                max: MAX_QUBITS,
            });
        }
        let n = self.n;
        let mut single = vec![0.0; n];
        for t in &self.z {
            single[t.q] += t.angle;
        }
        let mut neighbours: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
        for t in &self.zz {
            neighbours[t.i].push((t.j, t.angle));
            neighbours[t.j].push((t.i, t.angle));
        }
        let len = 1usize << n;
        let mut phases = vec![0.0f64; len];
        for y in 1..len {
            let q = y.trailing_zeros() as usize;
            let rest = y & (y - 1);
            let mut p = phases[rest] + single[q];
            for &(j, a) in &neighbours[q] {
                if (rest >> j) & 1 == 1 {
                    p += a;
                }
            }
            phases[y] = p;
        }
        let values = phases.into_iter().map(|p| C64::from_polar(1.0, p)).collect();
        Ok(PhaseTable { n, values })
    }

    /// Equivalent gate circuit `H^{⊗n} D H^{⊗n}` for the simulator.
    pub fn to_circuit(&self) -> Result<Circuit> {
        self.validate()?;
        let mut c = Circuit::new(self.n);
        for q in 0..self.n {
            c.push(Gate::h(q))?;
        }
        for t in &self.z {
            c.push(Gate::phase(t.q, t.angle))?;
        }
        for t in &self.zz {
            c.push(Gate::cphase(t.i, t.j, t.angle))?;
        }
        for q in 0..self.n {
            c.push(Gate::h(q))?;
        }
        c.set_depth(3);
        Ok(c)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let d: Self = serde_json::from_str(text)?;
        d.validate()?;
        Ok(d)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }
}

/// `f(y) = ⟨y|D|y⟩`.
pub fn eval_f(d: &DiagonalCircuit, y: crate::bits::BitString) -> C64 {
    d.eval_f(y.value())
}

/// Dense table of `f(y)` for all `y`.
#[derive(Debug, Clone)]
pub struct PhaseTable {
    n: usize,
    values: Vec<C64>,
}

impl PhaseTable {
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, y: usize) -> C64 {
        self.values[y]
    }

    #[inline]
    pub fn values(&self) -> &[C64] {
        &self.values
    }
}

/// `p(x) = |2^{−n} Σ_y f(y)(−1)^{x·y}|²` via the fast transform.
pub fn iqp_prob_dist(d: &DiagonalCircuit) -> Result<ProbDist> {
    let table = d.phase_table()?;
    let mut f = table.values;
    fwht_in_place(&mut f);
    let scale = 1.0 / f.len() as f64;
    let probs: Vec<f64> = f.iter().map(|a| (a * scale).norm_sqr()).collect();
    Ok(ProbDist::new(probs).expect("Parseval keeps the IQP output normalised"))
}

/// Angle distribution for the per-qubit Z rotations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum PhaseRule {
    /// No single-qubit terms.
    None,
    /// `kπ/4` with `k` uniform in `0..8`.
    #[default]
    UniformEighths,
    /// Uniform in `[0, 2π)`.
    UniformContinuous,
}

/// Angle of the controlled-phase gate placed on each selected pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum CouplingRule {
    /// Controlled-Z (angle π).
    #[default]
    Cz,
    /// Uniform in `[0, 2π)`.
    UniformContinuous,
}

/// Sparse IQP ensemble: each pair coupled with probability
/// `min(1, γ·ln(n)/n)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SparseIqpSpec {
    pub n: usize,
    pub gamma: f64,
    pub seed: u64,
    #[serde(default)]
    pub phase_rule: PhaseRule,
    #[serde(default)]
    pub coupling_rule: CouplingRule,
}

impl SparseIqpSpec {
    pub fn new(n: usize, gamma: f64, seed: u64) -> Self {
        Self {
            n,
            gamma,
            seed,
            phase_rule: PhaseRule::default(),
            coupling_rule: CouplingRule::default(),
        }
    }

    pub fn edge_probability(&self) -> f64 {
        (self.gamma * (self.n as f64).ln() / self.n as f64).min(1.0)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 || self.n > 63 {
            return Err(Error::InvalidParameter(format!(
                "sparse IQP needs 2 ≤ n ≤ 63, got {}",
                self.n
            )));
        }
        if !(self.gamma >= 0.0) || !self.gamma.is_finite() {
            return Err(Error::InvalidParameter(format!("gamma = {}", self.gamma)));
        }
        Ok(())
    }
}

/// Draws one sparse IQP instance; deterministic in `spec.seed`.
pub fn gen_sparse_iqp(spec: &SparseIqpSpec) -> Result<DiagonalCircuit> {
    spec.validate()?;
    let mut rng = rng::seeded(spec.seed);
    let n = spec.n;
    let mut z = Vec::new();
    for q in 0..n {
        let angle = match spec.phase_rule {
            PhaseRule::None => continue,
            PhaseRule::UniformEighths => rng.gen_range(0..8u32) as f64 * FRAC_PI_4,
            PhaseRule::UniformContinuous => rng.gen::<f64>() * TAU,
        };
        z.push(ZTerm { q, angle });
    }
    let p = spec.edge_probability();
    let mut zz = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen::<f64>() < p {
                let angle = match spec.coupling_rule {
                    CouplingRule::Cz => PI,
                    CouplingRule::UniformContinuous => rng.gen::<f64>() * TAU,
                };
                zz.push(ZzTerm { i, j, angle });
            }
        }
    }
    Ok(DiagonalCircuit { n, z, zz })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_diagonal_is_identity() {
        let d = DiagonalCircuit::empty(3);
        for y in 0..8 {
            assert_eq!(d.eval_f(y), C64::new(1.0, 0.0));
        }
        let p = iqp_prob_dist(&d).unwrap();
        assert_eq!(p.probs()[0], 1.0);
        assert!(p.probs()[1..].iter().all(|&v| v == 0.0));
    }

    #[test]
    fn single_cz_sign_pattern_and_distribution() {
        let d = DiagonalCircuit {
            n: 2,
            z: vec![],
            zz: vec![ZzTerm { i: 0, j: 1, angle: PI }],
        };
        let f: Vec<C64> = (0..4).map(|y| d.eval_f(y)).collect();
        let want = [1.0, 1.0, 1.0, -1.0];
        for (a, b) in f.iter().zip(want) {
            assert!((a - C64::new(b, 0.0)).norm() < 1e-15);
        }
        let p = iqp_prob_dist(&d).unwrap();
        for v in p.probs() {
            assert!((v - 0.25).abs() < 1e-15);
        }
    }

    #[test]
    fn gamma_zero_has_no_couplings() {
        let d = gen_sparse_iqp(&SparseIqpSpec::new(20, 0.0, 3)).unwrap();
        assert!(d.zz.is_empty());
        assert_eq!(d.z.len(), 20);
    }

    #[test]
    fn saturated_gamma_couples_every_pair() {
        let d = gen_sparse_iqp(&SparseIqpSpec::new(20, 100.0, 3)).unwrap();
        assert_eq!(d.zz.len(), 190);
        assert!(d.zz.iter().all(|t| t.angle == PI));
    }

    #[test]
    fn phase_table_matches_pointwise() {
        let mut spec = SparseIqpSpec::new(9, 3.0, 8);
        spec.coupling_rule = CouplingRule::UniformContinuous;
        let d = gen_sparse_iqp(&spec).unwrap();
        let t = d.phase_table().unwrap();
        for y in 0..512u64 {
            assert!((t.get(y as usize) - d.eval_f(y)).norm() < 1e-12);
        }
    }

    #[test]
    fn json_round_trip_and_validation() {
        let d = gen_sparse_iqp(&SparseIqpSpec::new(6, 2.0, 1)).unwrap();
        assert_eq!(DiagonalCircuit::from_json(&d.to_json().unwrap()).unwrap(), d);
        let bad = r#"{"n":2,"z":[],"zz":[{"i":0,"j":0,"angle":1.0}]}"#;
        assert!(DiagonalCircuit::from_json(bad).is_err());
    }
}
