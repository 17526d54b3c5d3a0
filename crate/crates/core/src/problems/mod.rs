//! Objective interface, evaluation counting and the analytic test-problem catalog.
//!
//! A [`ProblemInstance`] is immutable and cheap to clone (the objective sits behind an
//! `Arc`), so the same instance can be handed to many threads. Every solver run wraps it
//! in its own [`CountedProblem`], which is where function and gradient evaluations are
//! tallied.

mod catalog;
mod quadratic;

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg;

pub use catalog::{catalog, catalog_dims, desk_suite, lookup, names};
pub use quadratic::{lipschitz_of_quadratic, quadratic, QuadraticMatrix};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProblemError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("non-finite input vector")]
    NonFiniteInput,
    #[error("objective produced a non-finite value")]
    NonFiniteOutput,
    #[error("problem {0:?} is not in the catalog")]
    NotInCatalog(String),
    #[error("problem {name} does not support dimension {dim}: {reason}")]
    InvalidDimension {
        name: String,
        dim: usize,
        reason: &'static str,
    },
    #[error("power iteration did not converge after {0} steps")]
    NonConvergence(usize),
}

/// A smooth objective with an analytic gradient.
///
/// Implementations must be deterministic: the same `x` gives bit-identical output.
pub trait Objective: Send + Sync {
    fn value(&self, x: &[f64]) -> f64;

    /// Writes the gradient at `x` into `g` (same length as `x`).
    fn gradient(&self, x: &[f64], g: &mut [f64]);
}

/// A named objective with fixed dimension and standard starting point.
#[derive(Clone)]
pub struct ProblemInstance {
    pub name: String,
    pub dim: usize,
    pub start: Vec<f64>,
    /// A global minimizer, when known in closed form.
    pub minimizer: Option<Vec<f64>>,
    objective: Arc<dyn Objective>,
}

impl fmt::Debug for ProblemInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProblemInstance")
            .field("name", &self.name)
            .field("dim", &self.dim)
            .finish_non_exhaustive()
    }
}

impl ProblemInstance {
    pub fn new(name: impl Into<String>, start: Vec<f64>, objective: Arc<dyn Objective>) -> Self {
        let dim = start.len();
        assert!(dim >= 1, "problem dimension must be at least 1");
        ProblemInstance {
            name: name.into(),
            dim,
            start,
            minimizer: None,
            objective,
        }
    }

    pub fn with_minimizer(mut self, xstar: Vec<f64>) -> Self {
        assert_eq!(xstar.len(), self.dim);
        self.minimizer = Some(xstar);
        self
    }

    /// `NAME` and `DIM` joined, e.g. `TRIDIA/50`.
    pub fn key(&self) -> String {
        format!("{}/{}", self.name, self.dim)
    }

    fn check_input(&self, x: &[f64]) -> Result<(), ProblemError> {
        if x.len() != self.dim {
            return Err(ProblemError::DimensionMismatch {
                expected: self.dim,
                found: x.len(),
            });
        }
        if !linalg::all_finite(x) {
            return Err(ProblemError::NonFiniteInput);
        }
        Ok(())
    }

    /// Uncounted objective value.
    pub fn value(&self, x: &[f64]) -> Result<f64, ProblemError> {
        self.check_input(x)?;
        let f = self.objective.value(x);
        if f.is_finite() {
            Ok(f)
        } else {
            Err(ProblemError::NonFiniteOutput)
        }
    }

    /// Uncounted analytic gradient.
    pub fn gradient(&self, x: &[f64]) -> Result<Vec<f64>, ProblemError> {
        self.check_input(x)?;
        let mut g = vec![0.0; self.dim];
        self.objective.gradient(x, &mut g);
        if linalg::all_finite(&g) {
            Ok(g)
        } else {
            Err(ProblemError::NonFiniteOutput)
        }
    }

    /// Central-difference gradient `(f(x + h_i e_i) - f(x - h_i e_i)) / (2 h_i)`.
    ///
    /// With `h = None` each coordinate uses `cbrt(eps) * (1 + |x_i|)`. Oracle only: no
    /// evaluation counter is touched.
    pub fn fd_gradient(&self, x: &[f64], h: Option<f64>) -> Result<Vec<f64>, ProblemError> {
        self.check_input(x)?;
        if let Some(h) = h {
            assert!(h > 0.0, "finite-difference step must be positive");
        }
        let mut xp = x.to_vec();
        let mut out = Vec::with_capacity(self.dim);
        for i in 0..self.dim {
            let hi = h.unwrap_or_else(|| f64::EPSILON.cbrt() * (1.0 + x[i].abs()));
            xp[i] = x[i] + hi;
            let fp = self.objective.value(&xp);
            xp[i] = x[i] - hi;
            let fm = self.objective.value(&xp);
            xp[i] = x[i];
            let gi = (fp - fm) / (2.0 * hi);
            if !gi.is_finite() {
                return Err(ProblemError::NonFiniteOutput);
            }
            out.push(gi);
        }
        Ok(out)
    }
}

/// Function and gradient evaluation tallies for one run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalCounter {
    pub f_evals: u64,
    pub g_evals: u64,
}

/// Per-run, counter-wrapped view of a [`ProblemInstance`].
#[derive(Debug)]
pub struct CountedProblem<'a> {
    instance: &'a ProblemInstance,
    counter: EvalCounter,
}

impl<'a> CountedProblem<'a> {
    pub fn new(instance: &'a ProblemInstance) -> Self {
        CountedProblem {
            instance,
            counter: EvalCounter::default(),
        }
    }

    pub fn instance(&self) -> &'a ProblemInstance {
        self.instance
    }

    pub fn dim(&self) -> usize {
        self.instance.dim
    }

    pub fn counter(&self) -> EvalCounter {
        self.counter
    }

    /// `f(x)`. Counts one function evaluation whenever the objective is actually
    /// called, including when it returns a non-finite value.
    pub fn evaluate(&mut self, x: &[f64]) -> Result<f64, ProblemError> {
        self.instance.check_input(x)?;
        self.counter.f_evals += 1;
        let f = self.instance.objective.value(x);
        if f.is_finite() {
            Ok(f)
        } else {
            Err(ProblemError::NonFiniteOutput)
        }
    }

    /// `grad f(x)`, counting one gradient evaluation.
    pub fn gradient(&mut self, x: &[f64]) -> Result<Vec<f64>, ProblemError> {
        self.instance.check_input(x)?;
        self.counter.g_evals += 1;
        let mut g = vec![0.0; self.instance.dim];
        self.instance.objective.gradient(x, &mut g);
        if linalg::all_finite(&g) {
            Ok(g)
        } else {
            Err(ProblemError::NonFiniteOutput)
        }
    }
}

/// Relative tolerance used by gradient checks.
pub const GRADIENT_CHECK_TOL: f64 = 1e-6;

/// Outcome of comparing the analytic gradient against [`ProblemInstance::fd_gradient`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GradientCheck {
    pub name: String,
    pub dim: usize,
    pub points: usize,
    /// Largest `|g - g_fd| / (1 + |g_fd|)` over all checked points.
    pub max_rel_error: f64,
    pub passed: bool,
}

/// Checks the gradient at the start point and at `random_points` seeded points drawn
/// uniformly from `[start - 1, start + 1]` per coordinate.
pub fn check_gradient(p: &ProblemInstance, seed: u64, random_points: usize) -> GradientCheck {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = vec![p.start.clone()];
    for _ in 0..random_points {
        points.push(
            p.start
                .iter()
                .map(|s| s + rng.gen_range(-1.0..=1.0))
                .collect(),
        );
    }
    let mut worst = 0.0f64;
    for x in &points {
        let err = match (p.gradient(x), p.fd_gradient(x, None)) {
            (Ok(g), Ok(fd)) => linalg::norm(&linalg::sub(&g, &fd)) / (1.0 + linalg::norm(&fd)),
            _ => f64::INFINITY,
        };
        // NaN-safe max
        if !(err <= worst) {
            worst = err;
        }
    }
    GradientCheck {
        name: p.name.clone(),
        dim: p.dim,
        points: points.len(),
        max_rel_error: worst,
        passed: worst <= GRADIENT_CHECK_TOL,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    struct SumSquares;

    impl Objective for SumSquares {
        fn value(&self, x: &[f64]) -> f64 {
            x.iter().map(|v| v * v).sum()
        }
        fn gradient(&self, x: &[f64], g: &mut [f64]) {
            for (gi, xi) in g.iter_mut().zip(x) {
                *gi = 2.0 * xi;
            }
        }
    }

    struct Quartic;

    impl Objective for Quartic {
        fn value(&self, x: &[f64]) -> f64 {
            x[0].powi(4)
        }
        fn gradient(&self, x: &[f64], g: &mut [f64]) {
            g[0] = 4.0 * x[0].powi(3);
        }
    }

    fn sum_squares(n: usize) -> ProblemInstance {
        ProblemInstance::new("SUMSQ", vec![1.0; n], Arc::new(SumSquares))
    }

    #[test]
    fn evaluate_and_gradient_count() {
        let p = sum_squares(2);
        let mut c = CountedProblem::new(&p);
        assert_eq!(c.evaluate(&[1.0, 2.0]).unwrap(), 5.0);
        assert_eq!(c.gradient(&[1.0, 2.0]).unwrap(), vec![2.0, 4.0]);
        assert_eq!(c.evaluate(&[0.0, 0.0]).unwrap(), 0.0);
        assert_eq!(
            c.counter(),
            EvalCounter {
                f_evals: 2,
                g_evals: 1
            }
        );
    }

    #[test]
    fn input_validation() {
        let p = sum_squares(2);
        let mut c = CountedProblem::new(&p);
        assert_eq!(
            c.evaluate(&[1.0]),
            Err(ProblemError::DimensionMismatch {
                expected: 2,
                found: 1
            })
        );
        assert_eq!(
            c.gradient(&[1.0, f64::NAN]),
            Err(ProblemError::NonFiniteInput)
        );
        // rejected inputs never reach the objective
        assert_eq!(c.counter(), EvalCounter::default());
        assert_eq!(
            c.evaluate(&[1e200, 0.0]),
            Err(ProblemError::NonFiniteOutput)
        );
        assert_eq!(c.counter().f_evals, 1);
    }

    #[test]
    fn fd_gradient_examples() {
        let p = sum_squares(2);
        let fd = p.fd_gradient(&[1.0, 2.0], Some(1e-5)).unwrap();
        assert!((fd[0] - 2.0).abs() < 1e-9 && (fd[1] - 4.0).abs() < 1e-9);

        let q = ProblemInstance::new("QUARTIC", vec![2.0], Arc::new(Quartic));
        let fd = q.fd_gradient(&[2.0], Some(1e-4)).unwrap();
        assert!((fd[0] - 32.0).abs() / 32.0 < 1e-6);
    }

    #[test]
    fn fd_gradient_does_not_count() {
        let p = sum_squares(3);
        let c = CountedProblem::new(&p);
        p.fd_gradient(&[0.5, 0.5, 0.5], None).unwrap();
        assert_eq!(c.counter(), EvalCounter::default());
    }

    #[test]
    fn gradient_check_detects_corruption() {
        struct Broken;
        impl Objective for Broken {
            fn value(&self, x: &[f64]) -> f64 {
                x.iter().map(|v| v * v).sum()
            }
            fn gradient(&self, x: &[f64], g: &mut [f64]) {
                for (gi, xi) in g.iter_mut().zip(x) {
                    *gi = 2.1 * xi;
                }
            }
        }
        let good = check_gradient(&sum_squares(4), 7, 5);
        assert!(good.passed);
        assert_eq!(good.points, 6);
        let bad = ProblemInstance::new("BROKEN", vec![1.0; 4], Arc::new(Broken));
        assert!(!check_gradient(&bad, 7, 5).passed);
    }
}
