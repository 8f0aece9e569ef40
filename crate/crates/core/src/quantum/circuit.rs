use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::path::Path;

use super::gate::{Gate, Matrix2, Matrix4, SingleQubitName, C64};
use super::state::StateVector;
use crate::error::{Error, Result};

/// Ordered gate list on `n` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    n: usize,
    gates: Vec<Gate>,
    depth: usize,
}

impl Circuit {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            gates: Vec::new(),
            depth: 0,
        }
    }

    pub fn from_gates(n: usize, gates: Vec<Gate>, depth: usize) -> Result<Self> {
        let c = Self { n, gates, depth };
        c.validate()?;
        Ok(c)
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.n)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn set_depth(&mut self, depth: usize) {
        self.depth = depth;
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    /// Number of layers (clock cycles) the generator laid out.
    #[inline]
    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Gate count `m`.
    #[inline]
    pub fn gate_count(&self) -> usize {
        self.gates.len()
    }

    pub fn two_qubit_count(&self) -> usize {
        self.gates.iter().filter(|g| g.arity() == 2).count()
    }

    pub fn validate(&self) -> Result<()> {
        self.gates.iter().try_for_each(|g| g.validate(self.n))
    }

    /// Executes the circuit on `|0…0⟩`.
    pub fn run(&self) -> Result<StateVector> {
        self.validate()?;
        let mut state = StateVector::zero(self.n)?;
        for g in &self.gates {
            state.apply_unchecked(g);
        }
        Ok(state)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&CircuitFile::from(self))?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: CircuitFile = serde_json::from_str(text)?;
        file.try_into()
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }
}

/// Executes `c` and returns the final state.
pub fn run(c: &Circuit) -> Result<StateVector> {
    c.run()
}

/// On-disk circuit description.
///
/// Gate kinds: `h`, `x`, `y`, `z`, `sqrt_x`, `sqrt_y`, `t` (no params);
/// `cz` (no params); `cphase` (`[theta]`); `unitary1` (8 floats, row-major
/// re/im pairs of a 2×2 matrix); `unitary2` (32 floats, 4×4 matrix whose
/// basis index is `bit(qubits[0]) + 2·bit(qubits[1])`).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CircuitFile {
    pub n: usize,
    #[serde(default)]
    pub depth: usize,
    pub gates: Vec<GateRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GateRecord {
    pub kind: String,
    pub qubits: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub params: Vec<f64>,
}

impl From<&Gate> for GateRecord {
    fn from(g: &Gate) -> Self {
        match g {
            Gate::Single {
                name,
                target,
                matrix,
            } => GateRecord {
                kind: name.as_str().to_string(),
                qubits: vec![*target],
                params: if *name == SingleQubitName::Custom {
                    matrix.iter().flatten().flat_map(|z| [z.re, z.im]).collect()
                } else {
                    Vec::new()
                },
            },
            Gate::ControlledPhase { a, b, theta } if *theta == PI => GateRecord {
                kind: "cz".into(),
                qubits: vec![*a, *b],
                params: Vec::new(),
            },
            Gate::ControlledPhase { a, b, theta } => GateRecord {
                kind: "cphase".into(),
                qubits: vec![*a, *b],
                params: vec![*theta],
            },
            Gate::Two { q0, q1, matrix } => GateRecord {
                kind: "unitary2".into(),
                qubits: vec![*q0, *q1],
                params: matrix.iter().flatten().flat_map(|z| [z.re, z.im]).collect(),
            },
        }
    }
}

impl TryFrom<&GateRecord> for Gate {
    type Error = Error;

    fn try_from(r: &GateRecord) -> Result<Gate> {
        let want = |q: usize, p: usize| -> Result<()> {
            if r.qubits.len() != q || r.params.len() != p {
                Err(Error::MalformedGate(format!(
                    "{} expects {q} qubit(s) and {p} param(s), got {} and {}",
                    r.kind,
                    r.qubits.len(),
                    r.params.len()
                )))
            } else {
                Ok(())
            }
        };
        let complexes = |p: &[f64]| -> Vec<C64> {
            p.chunks(2).map(|c| C64::new(c[0], c[1])).collect()
        };
        match r.kind.as_str() {
            "cz" => {
                want(2, 0)?;
                Ok(Gate::cz(r.qubits[0], r.qubits[1]))
            }
            "cphase" => {
                want(2, 1)?;
                Ok(Gate::cphase(r.qubits[0], r.qubits[1], r.params[0]))
            }
            "unitary1" => {
                want(1, 8)?;
                let z = complexes(&r.params);
                let m: Matrix2 = [[z[0], z[1]], [z[2], z[3]]];
                Gate::single(r.qubits[0], m)
            }
            "unitary2" => {
                want(2, 32)?;
                let z = complexes(&r.params);
                let mut m: Matrix4 = [[C64::new(0.0, 0.0); 4]; 4];
                for (i, row) in m.iter_mut().enumerate() {
                    row.copy_from_slice(&z[4 * i..4 * i + 4]);
                }
                Gate::two(r.qubits[0], r.qubits[1], m)
            }
            other => match SingleQubitName::parse(other) {
                Some(name) => {
                    want(1, 0)?;
                    Ok(Gate::named(name, r.qubits[0]))
                }
                None => Err(Error::MalformedGate(format!("unknown gate kind {other:?}"))),
            },
        }
    }
}

impl From<&Circuit> for CircuitFile {
    fn from(c: &Circuit) -> Self {
        CircuitFile {
            n: c.n,
            depth: c.depth,
            gates: c.gates.iter().map(GateRecord::from).collect(),
        }
    }
}

impl TryFrom<CircuitFile> for Circuit {
    type Error = Error;

    fn try_from(f: CircuitFile) -> Result<Circuit> {
        let gates = f
            .gates
            .iter()
            .map(Gate::try_from)
            .collect::<Result<Vec<_>>>()?;
        Circuit::from_gates(f.n, gates, f.depth)
    }
}
