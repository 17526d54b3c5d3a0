//! Armijo backtracking with a Barzilai-Borwein initial trial step.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg;
use crate::problems::{CountedProblem, ProblemError};

/// `eps / 10` for binary64, the smallest steplength tried before giving up.
pub const DEFAULT_STEP_FLOOR: f64 = f64::EPSILON / 10.0;

/// Curvature guard on `s^T y` below which the initial step falls back to 1.
pub const DEFAULT_BB_GUARD: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LineSearchError {
    #[error("direction is not a descent direction (d^T g = {0:e})")]
    NotDescent(f64),
    #[error("steplength {alpha:e} fell below the floor {floor:e}")]
    StepFloorReached { alpha: f64, floor: f64 },
    #[error(transparent)]
    Problem(#[from] ProblemError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LineSearchConfig {
    /// Armijo slope fraction.
    pub c1: f64,
    /// Backtracking factor.
    pub rho: f64,
    pub step_floor: f64,
    pub bb_guard: f64,
}

impl Default for LineSearchConfig {
    fn default() -> Self {
        LineSearchConfig {
            c1: 1e-4,
            rho: 0.5,
            step_floor: DEFAULT_STEP_FLOOR,
            bb_guard: DEFAULT_BB_GUARD,
        }
    }
}

impl LineSearchConfig {
    pub fn validate(&self) -> Result<(), String> {
        if !(self.c1 > 0.0 && self.c1 < 1.0) {
            return Err(format!("c1 must lie in (0, 1), got {}", self.c1));
        }
        if !(self.rho > 0.0 && self.rho < 1.0) {
            return Err(format!("rho must lie in (0, 1), got {}", self.rho));
        }
        if !(self.step_floor > 0.0) {
            return Err(format!(
                "step_floor must be positive, got {}",
                self.step_floor
            ));
        }
        if !(self.bb_guard > 0.0) {
            return Err(format!("bb_guard must be positive, got {}", self.bb_guard));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LineSearchOutcome {
    pub alpha: f64,
    /// Number of rejected trials; `alpha = alpha_bar * rho^backtracks`.
    pub backtracks: u32,
    pub f_new: f64,
    /// The accepted trial point `x + alpha d`.
    pub x_new: Vec<f64>,
}

/// Initial trial step: `s^T s / s^T y` when `s^T y > guard`, otherwise 1.
///
/// With no history (first iteration) the step is 1.
pub fn initial_step(
    s_prev: Option<&[f64]>,
    y_prev: Option<&[f64]>,
    guard: f64,
) -> Result<f64, ProblemError> {
    match (s_prev, y_prev) {
        (Some(s), Some(y)) => {
            if s.len() != y.len() {
                return Err(ProblemError::DimensionMismatch {
                    expected: s.len(),
                    found: y.len(),
                });
            }
            let sy = linalg::dot(s, y);
            if sy > guard {
                let a = linalg::norm_sq(s) / sy;
                // sy > guard > 0 keeps this positive unless s^T s underflows
                Ok(if a > 0.0 && a.is_finite() { a } else { 1.0 })
            } else {
                Ok(1.0)
            }
        }
        (None, None) => Ok(1.0),
        (Some(s), None) | (None, Some(s)) => Err(ProblemError::DimensionMismatch {
            expected: s.len(),
            found: 0,
        }),
    }
}

/// `f(x + alpha d) <= f(x) + c1 alpha d^T g`, ties accepted.
#[inline]
pub fn armijo_holds(f_trial: f64, f_x: f64, c1: f64, alpha: f64, dg: f64) -> bool {
    f_trial <= f_x + c1 * alpha * dg
}

/// Largest `alpha_bar * rho^i`, `i = 0, 1, ...`, satisfying the Armijo condition.
///
/// Each trial costs one counted function evaluation. A trial whose objective value is
/// not finite is rejected like any other. Fails with `StepFloorReached` once the trial
/// step drops below `cfg.step_floor` without acceptance.
pub fn armijo_backtrack(
    p: &mut CountedProblem<'_>,
    x: &[f64],
    f_x: f64,
    g: &[f64],
    d: &[f64],
    alpha_bar: f64,
    cfg: &LineSearchConfig,
) -> Result<LineSearchOutcome, LineSearchError> {
    let dg = linalg::dot(d, g);
    if !(dg < 0.0) {
        return Err(LineSearchError::NotDescent(dg));
    }
    let mut alpha = alpha_bar;
    let mut backtracks = 0u32;
    loop {
        if alpha < cfg.step_floor {
            return Err(LineSearchError::StepFloorReached {
                alpha,
                floor: cfg.step_floor,
            });
        }
        let trial = linalg::step(x, alpha, d);
        match p.evaluate(&trial) {
            Ok(f_trial) if armijo_holds(f_trial, f_x, cfg.c1, alpha, dg) => {
                return Ok(LineSearchOutcome {
                    alpha,
                    backtracks,
                    f_new: f_trial,
                    x_new: trial,
                });
            }
            Ok(_) | Err(ProblemError::NonFiniteOutput) => {}
            Err(e) => return Err(e.into()),
        }
        alpha *= cfg.rho;
        backtracks += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::{Objective, ProblemInstance};
    use std::sync::Arc;

    struct Square;

    impl Objective for Square {
        fn value(&self, x: &[f64]) -> f64 {
            x[0] * x[0]
        }
        fn gradient(&self, x: &[f64], g: &mut [f64]) {
            g[0] = 2.0 * x[0];
        }
    }

    fn square() -> ProblemInstance {
        ProblemInstance::new("SQUARE", vec![1.0], Arc::new(Square))
    }

    #[test]
    fn initial_step_examples() {
        assert_eq!(initial_step(None, None, 1e-8).unwrap(), 1.0);
        assert_eq!(
            initial_step(Some(&[1.0, 0.0]), Some(&[2.0, 0.0]), 1e-8).unwrap(),
            0.5
        );
        assert_eq!(
            initial_step(Some(&[1.0, 0.0]), Some(&[-1.0, 0.0]), 1e-8).unwrap(),
            1.0
        );
        assert!(initial_step(Some(&[1.0]), Some(&[1.0, 2.0]), 1e-8).is_err());
        assert!(initial_step(Some(&[1.0]), None, 1e-8).is_err());
    }

    #[test]
    fn guard_boundary_falls_back() {
        // s^T y == guard is not strictly above it
        assert_eq!(
            initial_step(Some(&[1e-4]), Some(&[1e-4]), 1e-8).unwrap(),
            1.0
        );
    }

    #[test]
    fn backtrack_once_on_square() {
        let p = square();
        let mut c = CountedProblem::new(&p);
        let cfg = LineSearchConfig::default();
        let out = armijo_backtrack(&mut c, &[1.0], 1.0, &[2.0], &[-2.0], 1.0, &cfg).unwrap();
        assert_eq!(out.alpha, 0.5);
        assert_eq!(out.backtracks, 1);
        assert_eq!(out.f_new, 0.0);
        assert_eq!(c.counter().f_evals, 2);
    }

    #[test]
    fn accept_first_trial_on_square() {
        let p = square();
        let mut c = CountedProblem::new(&p);
        let cfg = LineSearchConfig::default();
        let out = armijo_backtrack(&mut c, &[1.0], 1.0, &[2.0], &[-1.0], 1.0, &cfg).unwrap();
        assert_eq!((out.alpha, out.backtracks), (1.0, 0));
        assert_eq!(c.counter().f_evals, 1);
    }

    #[test]
    fn ascent_direction_rejected() {
        let p = square();
        let mut c = CountedProblem::new(&p);
        let cfg = LineSearchConfig::default();
        let r = armijo_backtrack(&mut c, &[1.0], 1.0, &[2.0], &[2.0], 1.0, &cfg);
        assert_eq!(r, Err(LineSearchError::NotDescent(4.0)));
        assert_eq!(c.counter().f_evals, 0);
    }

    #[test]
    fn step_floor() {
        // f_x below every attainable value, so no trial is ever accepted
        let p = square();
        let mut c = CountedProblem::new(&p);
        let cfg = LineSearchConfig::default();
        let r = armijo_backtrack(&mut c, &[1.0], -1.0, &[2.0], &[-2.0], 1.0, &cfg);
        assert!(matches!(r, Err(LineSearchError::StepFloorReached { .. })));
        // 1, 1/2, ..., 2^-55 are tried; 2^-56 < eps/10 stops the search
        assert_eq!(c.counter().f_evals, 56);
    }

    #[test]
    fn overflow_is_a_rejection() {
        struct Blowup;
        impl Objective for Blowup {
            fn value(&self, x: &[f64]) -> f64 {
                if x[0] < -10.0 {
                    f64::INFINITY
                } else {
                    x[0] * x[0]
                }
            }
            fn gradient(&self, x: &[f64], g: &mut [f64]) {
                g[0] = 2.0 * x[0];
            }
        }
        let p = ProblemInstance::new("BLOWUP", vec![1.0], Arc::new(Blowup));
        let mut c = CountedProblem::new(&p);
        let cfg = LineSearchConfig::default();
        let out = armijo_backtrack(&mut c, &[1.0], 1.0, &[2.0], &[-2.0], 64.0, &cfg).unwrap();
        // 64, 32, 16, 8 overflow or fail; 0.5 is the first accepted trial
        assert_eq!(out.alpha, 0.5);
        assert_eq!(c.counter().f_evals as u32, out.backtracks + 1);
    }
}
