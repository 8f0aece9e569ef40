//! Dense-matrix helpers shared by the oracle tests.
#![allow(dead_code)]

use num_complex::Complex64 as C64;
use rand::Rng;
use spectralab::quantum::{Gate, Matrix2, Matrix4};

/// Gram–Schmidt on complex Gaussian columns.
pub fn random_unitary<R: Rng>(dim: usize, rng: &mut R) -> Vec<Vec<C64>> {
    let mut cols: Vec<Vec<C64>> = Vec::new();
    while cols.len() < dim {
        let mut v: Vec<C64> = (0..dim)
            .map(|_| C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
            .collect();
        for c in &cols {
            let dot: C64 = c.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (x, y) in v.iter_mut().zip(c) {
                *x -= dot * y;
            }
        }
        let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            cols.push(v.into_iter().map(|x| x / norm).collect());
        }
    }
    (0..dim).map(|r| (0..dim).map(|c| cols[c][r]).collect()).collect()
}

pub fn random_gate<R: Rng>(n: usize, rng: &mut R) -> Gate {
    let q = rng.gen_range(0..n);
    let other = |rng: &mut R| loop {
        let p = rng.gen_range(0..n);
        if p != q {
            break p;
        }
    };
    match rng.gen_range(0..if n > 1 { 6 } else { 3 }) {
        0 => Gate::h(q),
        1 => Gate::t(q),
        2 => {
            let u = random_unitary(2, rng);
            let m: Matrix2 = [[u[0][0], u[0][1]], [u[1][0], u[1][1]]];
            Gate::single(q, m).unwrap()
        }
        3 => Gate::cz(q, other(rng)),
        4 => Gate::cphase(q, other(rng), rng.gen_range(0.0..6.3)),
        _ => {
            let u = random_unitary(4, rng);
            let mut m: Matrix4 = [[C64::new(0.0, 0.0); 4]; 4];
            for (r, row) in m.iter_mut().enumerate() {
                for (c, v) in row.iter_mut().enumerate() {
                    *v = u[r][c];
                }
            }
            Gate::two(q, other(rng), m).unwrap()
        }
    }
}

/// Full `2^n × 2^n` matrix of `g`, built entry by entry.
pub fn dense(g: &Gate, n: usize) -> Vec<Vec<C64>> {
    let dim = 1usize << n;
    let bit = |x: usize, q: usize| (x >> q) & 1;
    let mut u = vec![vec![C64::new(0.0, 0.0); dim]; dim];
    for (row, urow) in u.iter_mut().enumerate() {
        for (col, v) in urow.iter_mut().enumerate() {
            *v = match g {
                Gate::Single { target, matrix, .. } => {
                    if (row ^ col) & !(1 << target) != 0 {
                        continue;
                    }
                    matrix[bit(row, *target)][bit(col, *target)]
                }
                Gate::ControlledPhase { a, b, theta } => {
                    if row != col {
                        continue;
                    }
                    if bit(row, *a) == 1 && bit(row, *b) == 1 {
                        C64::from_polar(1.0, *theta)
                    } else {
                        C64::new(1.0, 0.0)
                    }
                }
                Gate::Two { q0, q1, matrix } => {
                    if (row ^ col) & !((1 << q0) | (1 << q1)) != 0 {
                        continue;
                    }
                    let r = bit(row, *q0) + 2 * bit(row, *q1);
                    let c = bit(col, *q0) + 2 * bit(col, *q1);
                    matrix[r][c]
                }
            };
        }
    }
    u
}

pub fn mat_vec(u: &[Vec<C64>], v: &[C64]) -> Vec<C64> {
    u.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}


pub type Dense = Vec<Vec<C64>>;

pub fn mat_mul(a: &[Vec<C64>], b: &[Vec<C64>]) -> Dense {
    let dim = a.len();
    (0..dim)
        .map(|r| (0..dim).map(|c| (0..dim).map(|k| a[r][k] * b[k][c]).sum()).collect())
        .collect()
}

pub fn adjoint(a: &[Vec<C64>]) -> Dense {
    let dim = a.len();
    (0..dim).map(|r| (0..dim).map(|c| a[c][r].conj()).collect()).collect()
}

/// `U ρ U†`.
pub fn conjugate(u: &[Vec<C64>], rho: &[Vec<C64>]) -> Dense {
    mat_mul(&mat_mul(u, rho), &adjoint(u))
}
