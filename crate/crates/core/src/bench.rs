//! Solver-by-problem benchmark grids and Dolan-More performance profiles.
//!
//! [`run_suite`] executes every (problem, solver) pair once and builds one
//! [`CostMatrix`] per [`Metric`]. With the `parallel` feature (on by default) jobs are
//! spread over a rayon pool of the requested size; `parallelism <= 1`, or a build
//! without the feature, runs them sequentially. Iteration and evaluation counts do not
//! depend on the schedule.
//!
//! For a cost matrix `t[p][s]` the profile of solver `s` is
//! `rho_s(tau) = |{p : t[p][s] / min_s' t[p][s'] <= tau}| / |P|`, with failed runs given
//! an infinite ratio.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::problems::ProblemInstance;
use crate::solver::{minimize, RunResult, SolverConfig, SolverError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProfileError {
    #[error("cost matrix has no successful run")]
    EmptyMatrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Metric {
    #[serde(rename = "f_evals")]
    FEvals,
    #[serde(rename = "iters")]
    Iters,
    #[serde(rename = "time")]
    Time,
}

impl Metric {
    pub const ALL: [Metric; 3] = [Metric::FEvals, Metric::Iters, Metric::Time];

    /// Short name used in output file names.
    pub fn file_stem(self) -> &'static str {
        match self {
            Metric::FEvals => "fevals",
            Metric::Iters => "iters",
            Metric::Time => "time",
        }
    }
}

/// A labelled solver configuration. The label names the CSV column and profile curve.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverSpec {
    pub label: String,
    pub config: SolverConfig,
}

impl From<SolverConfig> for SolverSpec {
    fn from(config: SolverConfig) -> Self {
        SolverSpec {
            label: config.method.token().to_string(),
            config,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProblemKey {
    pub name: String,
    pub dim: usize,
}

/// Costs indexed `[problem][solver]`; `None` marks a failed run.
#[derive(Debug, Clone, PartialEq)]
pub struct CostMatrix {
    pub metric: Metric,
    pub solvers: Vec<String>,
    pub problems: Vec<ProblemKey>,
    pub costs: Vec<Vec<Option<f64>>>,
}

impl CostMatrix {
    /// CSV with header `problem,dim,<SOLVER>...`; failed cells are written as `inf`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("problem,dim");
        for s in &self.solvers {
            out.push(',');
            out.push_str(s);
        }
        out.push('\n');
        for (key, row) in self.problems.iter().zip(&self.costs) {
            let _ = write!(out, "{},{}", key.name, key.dim);
            for cell in row {
                match cell {
                    Some(c) => {
                        let _ = write!(out, ",{c}");
                    }
                    None => out.push_str(",inf"),
                }
            }
            out.push('\n');
        }
        out
    }

    pub fn solved_count(&self, solver: usize) -> usize {
        self.costs
            .iter()
            .filter(|row| row[solver].is_some())
            .count()
    }

    /// Per-problem performance ratios, `[problem][solver]`, `+inf` for failures and for
    /// every solver on a problem nobody solved.
    pub fn ratios(&self) -> Vec<Vec<f64>> {
        self.costs
            .iter()
            .map(|row| {
                let best = row.iter().flatten().copied().fold(f64::INFINITY, f64::min);
                row.iter()
                    .map(|c| match c {
                        Some(c) if best.is_finite() => c / best,
                        _ => f64::INFINITY,
                    })
                    .collect()
            })
            .collect()
    }

    fn check(&self) -> Result<(), ProfileError> {
        let any = self.costs.iter().any(|row| row.iter().any(Option::is_some));
        if self.solvers.is_empty() || self.problems.is_empty() || !any {
            Err(ProfileError::EmptyMatrix)
        } else {
            Ok(())
        }
    }
}

/// Step function `(t, fraction)` sampled at every breakpoint and grid point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileCurve {
    pub solver: String,
    pub points: Vec<(f64, f64)>,
}

impl ProfileCurve {
    /// Value of the step function at `t` (right-continuous).
    pub fn at(&self, t: f64) -> f64 {
        let i = self.points.partition_point(|&(ti, _)| ti <= t);
        if i == 0 {
            0.0
        } else {
            self.points[i - 1].1
        }
    }
}

/// `2^(i/8)` for `i = 0..=40`, a logarithmic grid over `[1, 32]`.
pub fn default_t_grid() -> Vec<f64> {
    (0..=40).map(|i| 2f64.powf(i as f64 / 8.0)).collect()
}

/// Dolan-More profiles of every solver in `m`, evaluated on `t_grid` (values below 1
/// are ignored) together with every finite ratio.
pub fn performance_profile(
    m: &CostMatrix,
    t_grid: &[f64],
) -> Result<Vec<ProfileCurve>, ProfileError> {
    m.check()?;
    let ratios = m.ratios();
    let np = m.problems.len() as f64;

    let mut ts: Vec<f64> = t_grid.iter().copied().filter(|t| *t >= 1.0).collect();
    ts.extend(ratios.iter().flatten().copied().filter(|r| r.is_finite()));
    ts.sort_by(f64::total_cmp);
    ts.dedup();

    Ok(m.solvers
        .iter()
        .enumerate()
        .map(|(s, label)| {
            let mut rs: Vec<f64> = ratios.iter().map(|row| row[s]).collect();
            rs.sort_by(f64::total_cmp);
            let points = ts
                .iter()
                .map(|&t| (t, rs.partition_point(|&r| r <= t) as f64 / np))
                .collect();
            ProfileCurve {
                solver: label.clone(),
                points,
            }
        })
        .collect())
}

/// `rho_s(1)`: the fraction of problems on which each solver is (jointly) cheapest.
pub fn win_fractions(m: &CostMatrix) -> Result<Vec<(String, f64)>, ProfileError> {
    m.check()?;
    let ratios = m.ratios();
    let np = m.problems.len() as f64;
    Ok(m.solvers
        .iter()
        .enumerate()
        .map(|(s, label)| {
            let wins = ratios.iter().filter(|row| row[s] <= 1.0).count();
            (label.clone(), wins as f64 / np)
        })
        .collect())
}

/// Profile curves as `solver,t,fraction` CSV.
pub fn profiles_to_csv(curves: &[ProfileCurve]) -> String {
    let mut out = String::from("solver,t,fraction\n");
    for c in curves {
        for (t, frac) in &c.points {
            let _ = writeln!(out, "{},{t},{frac}", c.solver);
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteOptions {
    /// Worker count; `<= 1` runs sequentially.
    pub parallelism: usize,
    /// Runs per job used for the wall-time median; counts come from the first run.
    pub time_repeats: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            parallelism: 1,
            time_repeats: 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteRun {
    pub problem: String,
    pub dim: usize,
    pub solver: String,
    pub result: RunResult,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    /// Problem-major: all solvers for problem 0, then problem 1, ...
    pub runs: Vec<SuiteRun>,
    pub f_evals: CostMatrix,
    pub iters: CostMatrix,
    pub time: CostMatrix,
}

impl SuiteReport {
    pub fn matrix(&self, metric: Metric) -> &CostMatrix {
        match metric {
            Metric::FEvals => &self.f_evals,
            Metric::Iters => &self.iters,
            Metric::Time => &self.time,
        }
    }
}

/// Runs every solver on every problem.
///
/// Failed runs (any status other than `Converged`) become `None` cells in all three
/// matrices. Iteration costs are floored at 1 and time costs at 1 ns so that ratios stay
/// defined for problems solved at the starting point.
pub fn run_suite(
    problems: &[ProblemInstance],
    solvers: &[SolverSpec],
    opts: &SuiteOptions,
) -> Result<SuiteReport, SolverError> {
    for s in solvers {
        s.config.validate()?;
    }
    let ns = solvers.len();
    let jobs = problems.len() * ns;
    let repeats = opts.time_repeats.max(1);

    let outcomes: Vec<(RunResult, f64)> = execute(jobs, opts.parallelism, |j| {
        let (p, s) = (&problems[j / ns], &solvers[j % ns].config);
        let first = minimize(p, s).expect("validated config");
        let mut times = vec![first.wall_time];
        for _ in 1..repeats {
            times.push(minimize(p, s).expect("validated config").wall_time);
        }
        times.sort_by(f64::total_cmp);
        let median = times[times.len() / 2];
        (first, median)
    });

    let keys: Vec<ProblemKey> = problems
        .iter()
        .map(|p| ProblemKey {
            name: p.name.clone(),
            dim: p.dim,
        })
        .collect();
    let labels: Vec<String> = solvers.iter().map(|s| s.label.clone()).collect();
    let matrix = |metric: Metric| CostMatrix {
        metric,
        solvers: labels.clone(),
        problems: keys.clone(),
        costs: outcomes
            .chunks(ns.max(1))
            .map(|row| {
                row.iter()
                    .map(|(r, t)| {
                        r.status.is_success().then(|| match metric {
                            Metric::FEvals => r.f_evals as f64,
                            Metric::Iters => r.iters.max(1) as f64,
                            Metric::Time => t.max(1e-9),
                        })
                    })
                    .collect()
            })
            .collect(),
    };
    let (f_evals, iters, time) = (
        matrix(Metric::FEvals),
        matrix(Metric::Iters),
        matrix(Metric::Time),
    );

    let runs = outcomes
        .into_iter()
        .enumerate()
        .map(|(j, (result, _))| SuiteRun {
            problem: problems[j / ns].name.clone(),
            dim: problems[j / ns].dim,
            solver: solvers[j % ns].label.clone(),
            result,
        })
        .collect();
    Ok(SuiteReport {
        runs,
        f_evals,
        iters,
        time,
    })
}

#[cfg(feature = "parallel")]
fn execute<T, F>(jobs: usize, parallelism: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    if parallelism > 1 {
        if let Ok(pool) = rayon::ThreadPoolBuilder::new()
            .num_threads(parallelism)
            .build()
        {
            return pool.install(|| (0..jobs).into_par_iter().map(&f).collect());
        }
    }
    (0..jobs).map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn execute<T, F>(jobs: usize, _parallelism: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..jobs).map(f).collect()
}
