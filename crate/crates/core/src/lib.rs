//! Nonlinear conjugate-gradient-like minimization with guaranteed sufficient descent.
//!
//! The crate provides four direction rules sharing one Armijo backtracking driver:
//!
//! * `NEW`: `d_k = -g_k + tau * |g_k| / |d_{k-1}| * d_{k-1}`, a direction that satisfies
//!   `d_k^T g_k <= -(1 - tau) |g_k|^2` whatever line search is used;
//! * `FR`: Fletcher-Reeves;
//! * `MFR`: the modified Fletcher-Reeves direction with `d_k^T g_k = -|g_k|^2`;
//! * `HZ`: the Hager-Zhang `CG_DESCENT` parameter with its lower truncation.
//!
//! Around the solver sit an analytic unconstrained test-problem catalog with evaluation
//! counters ([`problems`]), run diagnostics that check the descent, norm, step-floor and
//! Zoutendijk properties on recorded traces ([`solver::theory_report`]), and a
//! Dolan-More performance-profile harness ([`bench`]).
//!
//! ```
//! use sdcg::{minimize, problems, MethodId, SolverConfig, Status};
//!
//! let p = problems::lookup("TRIDIA", 50).unwrap();
//! let cfg = SolverConfig { method: MethodId::New, ..SolverConfig::default() };
//! let run = minimize(&p, &cfg).unwrap();
//! assert_eq!(run.status, Status::Converged);
//! ```

// Negated comparisons are used on purpose so that NaN takes the failure branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bench;
pub mod directions;
pub mod linalg;
pub mod linesearch;
pub mod problems;
pub mod solver;

pub use bench::{
    performance_profile, run_suite, win_fractions, CostMatrix, Metric, ProfileCurve, SolverSpec,
    SuiteOptions, SuiteReport,
};
pub use directions::{direction, DirectionState, MethodId};
pub use linesearch::{armijo_backtrack, initial_step, LineSearchConfig, LineSearchOutcome};
pub use problems::{CountedProblem, EvalCounter, Objective, ProblemInstance};
pub use solver::{
    minimize, theory_report, IterationRecord, RunResult, SolverConfig, Status, TheoryReport,
};
