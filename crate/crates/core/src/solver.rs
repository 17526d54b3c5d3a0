//! The CG driver: direction, Armijo step, update, repeat until the gradient is small.

use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::directions::{self, DirectionError, DirectionParams, DirectionState, History, MethodId};
use crate::linalg;
use crate::linesearch::{
    self, LineSearchConfig, LineSearchError, DEFAULT_BB_GUARD, DEFAULT_STEP_FLOOR,
};
use crate::problems::{CountedProblem, ProblemInstance};

/// Relative slack allowed when checking the steplength floor on a trace.
pub const LEMMA1_REL_SLACK: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolverError {
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverConfig {
    pub method: MethodId,
    /// Weight of the previous direction in `NEW`; `0` reduces it to steepest descent.
    pub tau: f64,
    pub rho: f64,
    pub c1: f64,
    /// Stop once `|g_k| <= eps_scale * |g_0|`.
    pub eps_scale: f64,
    pub max_iters: usize,
    pub step_floor: f64,
    pub bb_guard: f64,
    pub hz_eta: f64,
    pub record_trace: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            method: MethodId::New,
            tau: 0.002,
            rho: 0.5,
            c1: 1e-4,
            eps_scale: 1e-6,
            max_iters: 4000,
            step_floor: DEFAULT_STEP_FLOOR,
            bb_guard: DEFAULT_BB_GUARD,
            hz_eta: 0.01,
            record_trace: false,
        }
    }
}

impl SolverConfig {
    pub fn with_method(method: MethodId) -> Self {
        SolverConfig {
            method,
            ..SolverConfig::default()
        }
    }

    pub fn validate(&self) -> Result<(), SolverError> {
        if !(self.tau >= 0.0 && self.tau < 1.0) {
            return Err(SolverError::InvalidConfig(format!(
                "tau must lie in [0, 1), got {}",
                self.tau
            )));
        }
        if !(self.eps_scale > 0.0) {
            return Err(SolverError::InvalidConfig(format!(
                "eps_scale must be positive, got {}",
                self.eps_scale
            )));
        }
        if self.max_iters == 0 {
            return Err(SolverError::InvalidConfig(
                "max_iters must be positive".into(),
            ));
        }
        if !(self.hz_eta > 0.0) {
            return Err(SolverError::InvalidConfig(format!(
                "hz_eta must be positive, got {}",
                self.hz_eta
            )));
        }
        self.line_search()
            .validate()
            .map_err(SolverError::InvalidConfig)
    }

    pub fn line_search(&self) -> LineSearchConfig {
        LineSearchConfig {
            c1: self.c1,
            rho: self.rho,
            step_floor: self.step_floor,
            bb_guard: self.bb_guard,
        }
    }

    pub fn direction_params(&self) -> DirectionParams {
        DirectionParams {
            tau: self.tau,
            hz_eta: self.hz_eta,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Converged,
    IterationLimit,
    StepFloor,
    NumericalFailure,
}

impl Status {
    pub fn is_success(self) -> bool {
        self == Status::Converged
    }
}

/// One accepted step.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterationRecord {
    pub k: usize,
    pub f: f64,
    pub gnorm: f64,
    pub dnorm: f64,
    pub dg: f64,
    pub beta: f64,
    pub alpha: f64,
    pub alpha_bar: f64,
    pub backtracks: u32,
    pub restarted: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub status: Status,
    pub iters: usize,
    pub f_evals: u64,
    pub g_evals: u64,
    pub final_f: f64,
    pub final_gnorm: f64,
    /// Seconds.
    pub wall_time: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<IterationRecord>>,
}

impl RunResult {
    /// Equality ignoring `wall_time`.
    pub fn same_outcome(&self, other: &RunResult) -> bool {
        RunResult {
            wall_time: 0.0,
            ..self.clone()
        } == RunResult {
            wall_time: 0.0,
            ..other.clone()
        }
    }
}

/// Minimizes `p` from its standard start point.
pub fn minimize(p: &ProblemInstance, cfg: &SolverConfig) -> Result<RunResult, SolverError> {
    cfg.validate()?;
    let started = Instant::now();
    let mut counted = CountedProblem::new(p);
    let (status, iters, final_f, final_gnorm, trace) = iterate(&mut counted, &p.start, cfg);
    let counter = counted.counter();
    Ok(RunResult {
        status,
        iters,
        f_evals: counter.f_evals,
        g_evals: counter.g_evals,
        final_f,
        final_gnorm,
        wall_time: started.elapsed().as_secs_f64(),
        trace,
    })
}

type Outcome = (Status, usize, f64, f64, Option<Vec<IterationRecord>>);

fn iterate(p: &mut CountedProblem<'_>, x0: &[f64], cfg: &SolverConfig) -> Outcome {
    let mut trace = cfg.record_trace.then(Vec::new);
    let mut x = x0.to_vec();
    let (mut f, mut g) = match (p.evaluate(&x), p.gradient(&x)) {
        (Ok(f), Ok(g)) => (f, g),
        (f, _) => {
            let f = f.unwrap_or(f64::NAN);
            return (Status::NumericalFailure, 0, f, f64::NAN, trace);
        }
    };
    let mut gnorm = linalg::norm(&g);
    let tol = cfg.eps_scale * gnorm;
    let ls_cfg = cfg.line_search();
    let dir_params = cfg.direction_params();

    // (g_prev, d_prev, s_prev, y_prev)
    type Memory = (Vec<f64>, Vec<f64>, Vec<f64>, Vec<f64>);
    let mut prev: Option<Memory> = None;
    let mut k = 0usize;
    loop {
        if gnorm <= tol {
            return (Status::Converged, k, f, gnorm, trace);
        }
        if k >= cfg.max_iters {
            return (Status::IterationLimit, k, f, gnorm, trace);
        }

        let state = DirectionState {
            g_curr: &g,
            history: prev.as_ref().map(|(gp, dp, _, yp)| History {
                g_prev: gp,
                d_prev: dp,
                y_prev: yp,
            }),
        };
        let step = match directions::direction(cfg.method, &state, &dir_params) {
            Ok(step) => step,
            Err(DirectionError::DegenerateCurvature(_)) => directions::DirectionStep {
                d: linalg::neg(&g),
                beta: 0.0,
                restarted: true,
            },
            Err(_) => return (Status::NumericalFailure, k, f, gnorm, trace),
        };
        let d = step.d;

        let alpha_bar = match prev.as_ref() {
            Some((_, _, s, y)) => linesearch::initial_step(Some(s), Some(y), cfg.bb_guard),
            None => linesearch::initial_step(None, None, cfg.bb_guard),
        }
        .expect("history vectors share the problem dimension");

        let ls = match linesearch::armijo_backtrack(p, &x, f, &g, &d, alpha_bar, &ls_cfg) {
            Ok(ls) => ls,
            Err(LineSearchError::StepFloorReached { .. }) => {
                return (Status::StepFloor, k, f, gnorm, trace)
            }
            Err(_) => return (Status::NumericalFailure, k, f, gnorm, trace),
        };

        if let Some(t) = trace.as_mut() {
            t.push(IterationRecord {
                k,
                f,
                gnorm,
                dnorm: linalg::norm(&d),
                dg: linalg::dot(&d, &g),
                beta: step.beta,
                alpha: ls.alpha,
                alpha_bar,
                backtracks: ls.backtracks,
                restarted: step.restarted,
            });
        }

        let g_new = match p.gradient(&ls.x_new) {
            Ok(g) => g,
            Err(_) => return (Status::NumericalFailure, k + 1, ls.f_new, f64::NAN, trace),
        };
        let s = linalg::sub(&ls.x_new, &x);
        let y = linalg::sub(&g_new, &g);
        let g_prev = std::mem::replace(&mut g, g_new);
        x = ls.x_new;
        f = ls.f_new;
        gnorm = linalg::norm(&g);
        prev = Some((g_prev, d, s, y));
        k += 1;
    }
}

/// Run diagnostics computed from a recorded trace.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoryReport {
    /// `min_k -d_k^T g_k / |g_k|^2`.
    pub min_descent_ratio: f64,
    /// `max_k |d_k| / |g_k|`.
    pub max_dirnorm_ratio: f64,
    /// `sum_{j <= k} |g_j|^4 / |d_j|^2`.
    pub zoutendijk_partial_sums: Vec<f64>,
    /// Whether every step satisfies `alpha_k >= C_k |g_k|^2 / |d_k|^2`; only with `L`.
    pub lemma1_ok: bool,
    /// `min_k alpha_k / (C_k |g_k|^2 / |d_k|^2)`, present with `L`.
    pub lemma1_min_ratio: Option<f64>,
    pub lipschitz_l: Option<f64>,
}

/// Evaluates the descent, direction-norm, Zoutendijk and steplength-floor diagnostics.
///
/// The floor uses `C_k = min(alpha_bar_k (1 - tau)^2, rho (1 - c1)(1 - tau) / L)` with the
/// iteration's own initial step, and allows a relative slack of [`LEMMA1_REL_SLACK`].
pub fn theory_report(
    trace: &[IterationRecord],
    cfg: &SolverConfig,
    lipschitz: Option<f64>,
) -> TheoryReport {
    assert!(!trace.is_empty(), "theory_report needs a nonempty trace");
    let mut min_descent = f64::INFINITY;
    let mut max_dirnorm = 0.0f64;
    let mut partial = Vec::with_capacity(trace.len());
    let mut sum = 0.0;
    let mut lemma_min = f64::INFINITY;
    for r in trace {
        let gg = r.gnorm * r.gnorm;
        min_descent = min_descent.min(-r.dg / gg);
        max_dirnorm = max_dirnorm.max(r.dnorm / r.gnorm);
        sum += gg * gg / (r.dnorm * r.dnorm);
        partial.push(sum);
        if let Some(l) = lipschitz {
            let c = (r.alpha_bar * (1.0 - cfg.tau).powi(2))
                .min(cfg.rho * (1.0 - cfg.c1) * (1.0 - cfg.tau) / l);
            let bound = c * gg / (r.dnorm * r.dnorm);
            lemma_min = lemma_min.min(r.alpha / bound);
        }
    }
    let lemma1_min_ratio = lipschitz.map(|_| lemma_min);
    TheoryReport {
        min_descent_ratio: min_descent,
        max_dirnorm_ratio: max_dirnorm,
        zoutendijk_partial_sums: partial,
        lemma1_ok: lemma1_min_ratio.is_some_and(|r| r >= 1.0 - LEMMA1_REL_SLACK),
        lemma1_min_ratio,
        lipschitz_l: lipschitz,
    }
}
