use num_complex::Complex64;
use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, PI};

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type Matrix2 = [[C64; 2]; 2];
pub type Matrix4 = [[C64; 4]; 4];

/// Tolerance on `‖U†U − I‖_max` for accepting a gate matrix.
pub const UNITARITY_TOL: f64 = 1e-10;

const fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Names of the single-qubit gates with a fixed matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SingleQubitName {
    H,
    X,
    Y,
    Z,
    /// `X^{1/2}`
    SqrtX,
    /// `Y^{1/2}`
    SqrtY,
    T,
    /// Anything given by an explicit matrix.
    Custom,
}

impl SingleQubitName {
    pub fn matrix(self) -> Option<Matrix2> {
        let h = FRAC_1_SQRT_2;
        Some(match self {
            Self::H => [[c(h, 0.0), c(h, 0.0)], [c(h, 0.0), c(-h, 0.0)]],
            Self::X => [[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]],
            Self::Y => [[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]],
            Self::Z => [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(-1.0, 0.0)]],
            Self::SqrtX => [[c(0.5, 0.5), c(0.5, -0.5)], [c(0.5, -0.5), c(0.5, 0.5)]],
            Self::SqrtY => [[c(0.5, 0.5), c(-0.5, -0.5)], [c(0.5, 0.5), c(0.5, 0.5)]],
            Self::T => [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), C64::from_polar(1.0, FRAC_PI_4)]],
            Self::Custom => return None,
        })
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::H => "h",
            Self::X => "x",
            Self::Y => "y",
            Self::Z => "z",
            Self::SqrtX => "sqrt_x",
            Self::SqrtY => "sqrt_y",
            Self::T => "t",
            Self::Custom => "unitary1",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "h" => Self::H,
            "x" => Self::X,
            "y" => Self::Y,
            "z" => Self::Z,
            "sqrt_x" => Self::SqrtX,
            "sqrt_y" => Self::SqrtY,
            "t" => Self::T,
            "unitary1" => Self::Custom,
            _ => return None,
        })
    }
}

/// A gate with its matrix stored explicitly.
#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    Single {
        name: SingleQubitName,
        target: usize,
        matrix: Matrix2,
    },
    /// `diag(1, 1, 1, e^{iθ})` on qubits `a`, `b`.
    ControlledPhase { a: usize, b: usize, theta: f64 },
    /// Generic two-qubit unitary. Local basis index is `bit(q0) + 2·bit(q1)`.
    Two { q0: usize, q1: usize, matrix: Matrix4 },
}

impl Gate {
    pub fn named(name: SingleQubitName, target: usize) -> Self {
        let matrix = name
            .matrix()
            .expect("named gate must not be Custom; use Gate::single");
        Gate::Single {
            name,
            target,
            matrix,
        }
    }

    pub fn h(q: usize) -> Self {
        Self::named(SingleQubitName::H, q)
    }

    pub fn x(q: usize) -> Self {
        Self::named(SingleQubitName::X, q)
    }

    pub fn sqrt_x(q: usize) -> Self {
        Self::named(SingleQubitName::SqrtX, q)
    }

    pub fn sqrt_y(q: usize) -> Self {
        Self::named(SingleQubitName::SqrtY, q)
    }

    pub fn t(q: usize) -> Self {
        Self::named(SingleQubitName::T, q)
    }

    pub fn cz(a: usize, b: usize) -> Self {
        Gate::ControlledPhase { a, b, theta: PI }
    }

    pub fn cphase(a: usize, b: usize, theta: f64) -> Self {
        Gate::ControlledPhase { a, b, theta }
    }

    /// `Rz`-style phase `diag(1, e^{iθ})`.
    pub fn phase(q: usize, theta: f64) -> Self {
        Gate::Single {
            name: SingleQubitName::Custom,
            target: q,
            matrix: [
                [c(1.0, 0.0), c(0.0, 0.0)],
                [c(0.0, 0.0), C64::from_polar(1.0, theta)],
            ],
        }
    }

    /// Single-qubit gate from an explicit matrix, checked for unitarity.
    pub fn single(target: usize, matrix: Matrix2) -> Result<Self> {
        check_unitary(&flatten2(&matrix), 2)?;
        Ok(Gate::Single {
            name: SingleQubitName::Custom,
            target,
            matrix,
        })
    }

    pub fn two(q0: usize, q1: usize, matrix: Matrix4) -> Result<Self> {
        check_unitary(&flatten4(&matrix), 4)?;
        Ok(Gate::Two { q0, q1, matrix })
    }

    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::Single { target, .. } => vec![target],
            Gate::ControlledPhase { a, b, .. } => vec![a, b],
            Gate::Two { q0, q1, .. } => vec![q0, q1],
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            Gate::Single { .. } => 1,
            _ => 2,
        }
    }

    /// Checks qubit indices against `n` and the matrix for unitarity.
    pub fn validate(&self, n: usize) -> Result<()> {
        let qs = self.qubits();
        for &q in &qs {
            if q >= n {
                return Err(Error::QubitOutOfRange { qubit: q, n });
            }
        }
        if qs.len() == 2 && qs[0] == qs[1] {
            return Err(Error::DuplicateQubit(qs[0]));
        }
        match self {
            Gate::Single { matrix, .. } => check_unitary(&flatten2(matrix), 2),
            Gate::ControlledPhase { theta, .. } => {
                if theta.is_finite() {
                    Ok(())
                } else {
                    Err(Error::NonUnitary {
                        deviation: f64::INFINITY,
                    })
                }
            }
            Gate::Two { matrix, .. } => check_unitary(&flatten4(matrix), 4),
        }
    }
}

fn flatten2(m: &Matrix2) -> Vec<C64> {
    m.iter().flatten().copied().collect()
}

fn flatten4(m: &Matrix4) -> Vec<C64> {
    m.iter().flatten().copied().collect()
}

/// Max-entry deviation of `U†U` from the identity.
pub fn unitarity_deviation(m: &[C64], dim: usize) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..dim {
        for j in 0..dim {
            let mut acc = C64::new(0.0, 0.0);
            for k in 0..dim {
                acc += m[k * dim + i].conj() * m[k * dim + j];
            }
            let target = if i == j { 1.0 } else { 0.0 };
            let dev = (acc - target).norm();
            if dev.is_nan() {
                return f64::INFINITY;
            }
            worst = worst.max(dev);
        }
    }
    worst
}

fn check_unitary(m: &[C64], dim: usize) -> Result<()> {
    let deviation = unitarity_deviation(m, dim);
    if deviation > UNITARITY_TOL {
        Err(Error::NonUnitary { deviation })
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_gates_are_unitary() {
        use SingleQubitName::*;
        for name in [H, X, Y, Z, SqrtX, SqrtY, T] {
            Gate::named(name, 0).validate(1).unwrap();
            assert_eq!(SingleQubitName::parse(name.as_str()), Some(name));
        }
    }

    #[test]
    fn rejects_bad_gates() {
        assert!(matches!(
            Gate::h(3).validate(3),
            Err(Error::QubitOutOfRange { qubit: 3, n: 3 })
        ));
        assert!(matches!(
            Gate::cz(1, 1).validate(3),
            Err(Error::DuplicateQubit(1))
        ));
        let bad = [[c(1.0, 0.0), c(1.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]];
        assert!(matches!(Gate::single(0, bad), Err(Error::NonUnitary { .. })));
    }
}
