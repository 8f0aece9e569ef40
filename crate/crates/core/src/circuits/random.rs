//! Pseudo-random universal circuits on a 2D lattice.
//!
//! Layout per clock cycle: one CZ layer from an 8-pattern cycle of lattice
//! edge activations, plus single-qubit gates on qubits that left a CZ in
//! the previous cycle and are idle in this one. The first non-Hadamard
//! gate on each qubit is a T; afterwards a gate is drawn uniformly from the
//! set excluding the one applied last on that qubit.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quantum::{Circuit, Gate, SingleQubitName};
use crate::rng;

/// Parameters of one random-universal instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RandomCircuitSpec {
    pub rows: usize,
    pub cols: usize,
    /// Number of CZ clock cycles after the initial Hadamard layer.
    pub depth: usize,
    pub seed: u64,
    #[serde(default = "default_single_qubit_set", with = "gate_names")]
    pub single_qubit_set: Vec<SingleQubitName>,
}

pub fn default_single_qubit_set() -> Vec<SingleQubitName> {
    vec![
        SingleQubitName::SqrtX,
        SingleQubitName::SqrtY,
        SingleQubitName::T,
    ]
}

impl RandomCircuitSpec {
    pub fn new(rows: usize, cols: usize, depth: usize, seed: u64) -> Self {
        Self {
            rows,
            cols,
            depth,
            seed,
            single_qubit_set: default_single_qubit_set(),
        }
    }

    pub fn n(&self) -> usize {
        self.rows * self.cols
    }

    pub fn validate(&self) -> Result<()> {
        if self.rows == 0 || self.cols == 0 {
            return Err(Error::InvalidParameter("lattice dimensions must be ≥ 1".into()));
        }
        if self.depth == 0 {
            return Err(Error::InvalidParameter("depth must be ≥ 1".into()));
        }
        if self.single_qubit_set.len() < 2
            || self.single_qubit_set.contains(&SingleQubitName::Custom)
        {
            return Err(Error::InvalidParameter(
                "single-qubit set needs at least two named gates".into(),
            ));
        }
        Ok(())
    }
}

/// CZ edges of pattern `index mod 8` on a `rows × cols` lattice.
///
/// Horizontal edges `(r,c)–(r,c+1)` are split into four classes by
/// `(2r + c) mod 4`, vertical edges `(r,c)–(r+1,c)` by `(r + 2c) mod 4`;
/// the cycle interleaves them as H0 V1 H1 V0 H2 V3 H3 V2.
pub fn cz_pattern(rows: usize, cols: usize, index: usize) -> Vec<(usize, usize)> {
    const ORDER: [usize; 8] = [0, 3, 2, 1, 4, 7, 6, 5];
    let internal = ORDER[index % 8];
    let dir_row = internal % 2;
    let dir_col = 1 - dir_row;
    let shift = (internal >> 1) % 4;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let (r2, c2) = (r + dir_row, c + dir_col);
            if r2 >= rows || c2 >= cols {
                continue;
            }
            if (r * (2 - dir_row) + c * (2 - dir_col)) % 4 != shift {
                continue;
            }
            edges.push((r * cols + c, r2 * cols + c2));
        }
    }
    edges
}

/// Generates the circuit for `spec`; deterministic in `spec.seed`.
pub fn gen_random_universal(spec: &RandomCircuitSpec) -> Result<Circuit> {
    spec.validate()?;
    let n = spec.n();
    let mut rng = rng::seeded(spec.seed);
    let mut circuit = Circuit::new(n);
    for q in 0..n {
        circuit.push(Gate::h(q))?;
    }

    let has_t = spec.single_qubit_set.contains(&SingleQubitName::T);
    let mut last: Vec<Option<SingleQubitName>> = vec![None; n];
    let mut prev_cz = vec![false; n];
    let mut pattern = 0usize;

    for _ in 0..spec.depth {
        // Skip patterns with no edge on this lattice (small or 1D grids).
        let mut edges = Vec::new();
        for _ in 0..8 {
            edges = cz_pattern(spec.rows, spec.cols, pattern);
            pattern += 1;
            if !edges.is_empty() {
                break;
            }
        }
        let mut in_cz = vec![false; n];
        for &(a, b) in &edges {
            in_cz[a] = true;
            in_cz[b] = true;
        }

        for q in 0..n {
            if in_cz[q] || !prev_cz[q] {
                continue;
            }
            let name = match last[q] {
                None if has_t => SingleQubitName::T,
                prev => {
                    let options: Vec<SingleQubitName> = spec
                        .single_qubit_set
                        .iter()
                        .copied()
                        .filter(|g| Some(*g) != prev)
                        .collect();
                    options[rng.gen_range(0..options.len())]
                }
            };
            circuit.push(Gate::named(name, q))?;
            last[q] = Some(name);
        }
        for &(a, b) in &edges {
            circuit.push(Gate::cz(a, b))?;
        }
        prev_cz = in_cz;
    }
    circuit.set_depth(spec.depth + 1);
    Ok(circuit)
}

mod gate_names {
    use crate::quantum::SingleQubitName;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[SingleQubitName], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|g| g.as_str()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<SingleQubitName>, D::Error> {
        let names = Vec::<String>::deserialize(d)?;
        names
            .iter()
            .map(|s| {
                SingleQubitName::parse(s).ok_or_else(|| D::Error::custom(format!("unknown gate {s}")))
            })
            .collect()
    }
}
