use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context, Result};
use sdcg::bench::{default_t_grid, profiles_to_csv, ProfileError, SuiteReport};
use sdcg::problems::{check_gradient, ProblemInstance};
use sdcg::{
    minimize, performance_profile, run_suite, win_fractions, CostMatrix, MethodId, Metric,
    ProfileCurve, SolverConfig, SolverSpec, Status, SuiteOptions,
};
use serde_json::{Map, Value};

use crate::config::{resolve_single, Cli, Command, FileConfig, RunArgs};
use crate::exit;

const METRICS: [Metric; 3] = [Metric::FEvals, Metric::Iters, Metric::Time];

pub(crate) fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let file = cli.file_config()?;
    let cfg = cli.solver_config(&file)?;
    if cli.print_config {
        writeln!(out, "{}", serde_json::to_string_pretty(&cfg)?)?;
        return Ok(exit::OK);
    }
    let Some(command) = &cli.command else {
        bail!("no command given; see --help");
    };
    match command {
        Command::Solve {
            problem,
            dim,
            trace,
        } => solve(problem, *dim, *trace, cfg, out),
        Command::Suite {
            filter,
            run,
            methods,
        } => {
            let problems = filter.select()?;
            if methods.is_empty() {
                bail!("at least one method is required");
            }
            let specs: Vec<SolverSpec> = dedup(methods)
                .into_iter()
                .map(|m| SolverSpec::from(SolverConfig { method: m, ..cfg }))
                .collect();
            suite(&problems, &specs, run, &file, out)
        }
        Command::SweepTau { filter, run, taus } => {
            let problems = filter.select()?;
            sweep_tau(&problems, taus, cfg, run, &file, out)
        }
        Command::CheckGradients {
            filter,
            seed,
            points,
        } => {
            let problems = filter.select()?;
            let seed = seed.or(file.seed).unwrap_or(0);
            Ok(check_gradients_report(&problems, seed, *points, out, err))
        }
        Command::ListProblems { filter } => {
            let mut problems = filter.select()?;
            problems.sort_by(|a, b| (&a.name, a.dim).cmp(&(&b.name, b.dim)));
            for p in problems {
                writeln!(out, "{}\t{}", p.name, p.dim)?;
            }
            Ok(exit::OK)
        }
    }
}

fn dedup(methods: &[MethodId]) -> Vec<MethodId> {
    let mut seen = Vec::new();
    for &m in methods {
        if !seen.contains(&m) {
            seen.push(m);
        }
    }
    seen
}

fn solve(
    problem: &str,
    dim: Option<usize>,
    trace: bool,
    mut cfg: SolverConfig,
    out: &mut dyn Write,
) -> Result<i32> {
    let p = resolve_single(problem, dim)?;
    cfg.record_trace = trace;
    let run = minimize(&p, &cfg)?;
    let mut doc = Map::new();
    doc.insert("problem".into(), Value::from(p.name.clone()));
    doc.insert("dim".into(), Value::from(p.dim));
    doc.insert("method".into(), Value::from(cfg.method.token()));
    if let Value::Object(fields) = serde_json::to_value(&run)? {
        doc.extend(fields);
    }
    writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
    Ok(if run.status == Status::Converged {
        exit::OK
    } else {
        exit::FAILURE
    })
}

fn run_options(run: &RunArgs, file: &FileConfig) -> SuiteOptions {
    SuiteOptions {
        parallelism: run.parallelism(file),
        time_repeats: run.time_repeats(file),
    }
}

fn prepare_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<()> {
    let path = dir.join(name);
    fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))
}

/// Profiles when no solver succeeded anywhere: zero at every grid point.
fn flat_curves(solvers: &[String], grid: &[f64]) -> Vec<ProfileCurve> {
    solvers
        .iter()
        .map(|s| ProfileCurve {
            solver: s.clone(),
            points: grid.iter().map(|&t| (t, 0.0)).collect(),
        })
        .collect()
}

fn wins_or_zero(m: &CostMatrix) -> Result<Vec<(String, f64)>> {
    match win_fractions(m) {
        Err(ProfileError::EmptyMatrix) => Ok(m.solvers.iter().map(|s| (s.clone(), 0.0)).collect()),
        other => Ok(other?),
    }
}

/// Writes cost matrices, profile curves, per-run results and f-eval win fractions.
fn write_suite(dir: &Path, report: &SuiteReport) -> Result<()> {
    let runs = serde_json::to_string_pretty(&report.runs)?;
    write_file(dir, "runs.json", &(runs + "\n"))?;
    let grid = default_t_grid();
    for metric in METRICS {
        let m = report.matrix(metric);
        let stem = metric.file_stem();
        write_file(dir, &format!("cost_{stem}.csv"), &m.to_csv())?;
        let curves = match performance_profile(m, &grid) {
            Err(ProfileError::EmptyMatrix) => flat_curves(&m.solvers, &grid),
            other => other?,
        };
        write_file(
            dir,
            &format!("profile_{stem}.csv"),
            &profiles_to_csv(&curves),
        )?;
    }
    let wins: Map<String, Value> = wins_or_zero(&report.f_evals)?
        .into_iter()
        .map(|(label, frac)| (label, Value::from(frac)))
        .collect();
    write_file(
        dir,
        "wins.json",
        &(serde_json::to_string_pretty(&wins)? + "\n"),
    )
}

fn suite(
    problems: &[ProblemInstance],
    specs: &[SolverSpec],
    run: &RunArgs,
    file: &FileConfig,
    out: &mut dyn Write,
) -> Result<i32> {
    let dir = run.output_dir(file);
    prepare_dir(&dir)?;
    let report = run_suite(problems, specs, &run_options(run, file))?;
    write_suite(&dir, &report)?;
    for (s, label) in report.f_evals.solvers.iter().enumerate() {
        writeln!(
            out,
            "{label}\tsolved {}/{}",
            report.f_evals.solved_count(s),
            problems.len()
        )?;
    }
    writeln!(out, "wrote {}", dir.display())?;
    Ok(exit::OK)
}

/// One NEW suite per tau, all evaluated together so `wins_vs_self` compares the tau
/// values against each other on function evaluations.
fn sweep_tau(
    problems: &[ProblemInstance],
    taus: &[f64],
    cfg: SolverConfig,
    run: &RunArgs,
    file: &FileConfig,
    out: &mut dyn Write,
) -> Result<i32> {
    if taus.is_empty() {
        bail!("at least one tau value is required");
    }
    let dir = run.output_dir(file);
    prepare_dir(&dir)?;
    let specs = taus
        .iter()
        .map(|&tau| {
            let config = SolverConfig {
                method: MethodId::New,
                tau,
                ..cfg
            };
            config.validate()?;
            Ok(SolverSpec {
                label: format!("{tau}"),
                config,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let report = run_suite(problems, &specs, &run_options(run, file))?;
    let m = &report.f_evals;
    let wins = wins_or_zero(m)?;
    let mut csv = String::from("tau,solved,total_fevals,wins_vs_self\n");
    for (s, tau) in taus.iter().enumerate() {
        let total: f64 = m.costs.iter().filter_map(|row| row[s]).sum();
        csv.push_str(&format!(
            "{tau},{},{total},{}\n",
            m.solved_count(s),
            wins[s].1
        ));
    }
    write_file(&dir, "sweep_tau.csv", &csv)?;
    write!(out, "{csv}")?;
    Ok(exit::OK)
}

/// Prints one `NAME<TAB>DIM<TAB>max_rel_error<TAB>PASS|FAIL` line per problem and returns
/// exit 0 if all pass, 2 otherwise (failures named on `err`).
pub fn check_gradients_report(
    problems: &[ProblemInstance],
    seed: u64,
    points: usize,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32 {
    let mut failed = Vec::new();
    for p in problems {
        let c = check_gradient(p, seed, points);
        let verdict = if c.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(
            out,
            "{}\t{}\t{:.3e}\t{verdict}",
            c.name, c.dim, c.max_rel_error
        );
        if !c.passed {
            failed.push(p.key());
        }
    }
    if failed.is_empty() {
        exit::OK
    } else {
        let _ = writeln!(err, "gradient check failed: {}", failed.join(", "));
        exit::FAILURE
    }
}
