//! Diagnostic quadratics `f(x) = 1/2 x^T A x` with a known gradient Lipschitz constant.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Objective, ProblemError, ProblemInstance};
use crate::linalg;

/// Symmetric matrix descriptor.
#[derive(Debug, Clone, PartialEq)]
pub enum QuadraticMatrix {
    Identity(usize),
    Diagonal(Vec<f64>),
    /// Symmetric tridiagonal: `diag` has length n, `off` length n - 1.
    Tridiagonal {
        diag: Vec<f64>,
        off: Vec<f64>,
    },
    /// Row-major n x n.
    Dense {
        n: usize,
        data: Vec<f64>,
    },
}

impl QuadraticMatrix {
    /// The `[-1, 2, -1]` second-difference matrix.
    pub fn second_difference(n: usize) -> Self {
        QuadraticMatrix::Tridiagonal {
            diag: vec![2.0; n],
            off: vec![-1.0; n.saturating_sub(1)],
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            QuadraticMatrix::Identity(n) => *n,
            QuadraticMatrix::Diagonal(d) => d.len(),
            QuadraticMatrix::Tridiagonal { diag, .. } => diag.len(),
            QuadraticMatrix::Dense { n, .. } => *n,
        }
    }

    pub fn matvec(&self, x: &[f64], out: &mut [f64]) {
        match self {
            QuadraticMatrix::Identity(_) => out.copy_from_slice(x),
            QuadraticMatrix::Diagonal(d) => {
                for ((o, di), xi) in out.iter_mut().zip(d).zip(x) {
                    *o = di * xi;
                }
            }
            QuadraticMatrix::Tridiagonal { diag, off } => {
                let n = diag.len();
                for i in 0..n {
                    let mut v = diag[i] * x[i];
                    if i > 0 {
                        v += off[i - 1] * x[i - 1];
                    }
                    if i + 1 < n {
                        v += off[i] * x[i + 1];
                    }
                    out[i] = v;
                }
            }
            QuadraticMatrix::Dense { n, data } => {
                for (i, o) in out.iter_mut().enumerate() {
                    *o = linalg::dot(&data[i * n..(i + 1) * n], x);
                }
            }
        }
    }
}

struct Quadratic {
    a: QuadraticMatrix,
}

impl Objective for Quadratic {
    fn value(&self, x: &[f64]) -> f64 {
        let mut ax = vec![0.0; x.len()];
        self.a.matvec(x, &mut ax);
        0.5 * linalg::dot(x, &ax)
    }

    fn gradient(&self, x: &[f64], g: &mut [f64]) {
        self.a.matvec(x, g);
    }
}

/// `1/2 x^T A x` started from `start`. The minimizer is the origin.
pub fn quadratic(name: &str, a: QuadraticMatrix, start: Vec<f64>) -> ProblemInstance {
    assert_eq!(a.dim(), start.len(), "start length must match the matrix");
    let n = start.len();
    ProblemInstance::new(name, start, Arc::new(Quadratic { a })).with_minimizer(vec![0.0; n])
}

const POWER_MAX_STEPS: usize = 10_000;
const POWER_REL_TOL: f64 = 1e-10;

/// Largest eigenvalue of a symmetric positive semidefinite `a`, which is the gradient
/// Lipschitz constant of `1/2 x^T A x`.
///
/// Power iteration from a seeded random vector. The Rayleigh quotient increases
/// towards the eigenvalue with geometrically shrinking increments `delta_k`, so with
/// `q = delta_k / delta_{k-1}` the remaining error is about `delta_k q / (1 - q)`; the
/// iteration stops when that falls below `1e-10 * lambda`, or when the increments reach
/// rounding level.
pub fn lipschitz_of_quadratic(a: &QuadraticMatrix) -> Result<f64, ProblemError> {
    let n = a.dim();
    match a {
        QuadraticMatrix::Identity(_) => return Ok(1.0),
        QuadraticMatrix::Diagonal(d) => return Ok(d.iter().fold(0.0, |m, v| m.max(v.abs()))),
        _ => {}
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut v: Vec<f64> = (0..n).map(|_| rng.gen_range(0.5..1.5)).collect();
    let nv = linalg::norm(&v);
    v.iter_mut().for_each(|x| *x /= nv);
    let mut av = vec![0.0; n];
    let mut prev = f64::NAN;
    let mut prev_delta = f64::NAN;
    for _ in 0..POWER_MAX_STEPS {
        a.matvec(&v, &mut av);
        let lambda = linalg::dot(&v, &av);
        let nav = linalg::norm(&av);
        if nav == 0.0 {
            return Ok(0.0);
        }
        let delta = (lambda - prev).abs();
        let q = delta / prev_delta;
        let tail = if q < 1.0 {
            delta * q / (1.0 - q)
        } else {
            f64::INFINITY
        };
        let scale = lambda.abs();
        if delta <= 4.0 * f64::EPSILON * scale || tail <= POWER_REL_TOL * scale {
            return Ok(lambda);
        }
        prev = lambda;
        prev_delta = delta;
        for (vi, avi) in v.iter_mut().zip(&av) {
            *vi = avi / nav;
        }
    }
    Err(ProblemError::NonConvergence(POWER_MAX_STEPS))
}
