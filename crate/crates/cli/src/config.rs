use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use glob::{MatchOptions, Pattern};
use sdcg::{problems, MethodId, ProblemInstance, SolverConfig};
use serde::Deserialize;

/// Environment variable naming the default output directory.
pub const OUTPUT_DIR_ENV: &str = "SDCG_OUTPUT_DIR";
pub const DEFAULT_OUTPUT_DIR: &str = "sdcg-out";

/// Sufficient-descent CG solver and benchmark harness.
#[derive(Debug, Parser)]
#[command(name = "sdcg", version)]
pub struct Cli {
    /// TOML file with solver and harness settings (overridden by flags).
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Print the effective solver configuration as JSON and exit.
    #[arg(long)]
    pub print_config: bool,

    #[command(flatten)]
    pub solver: SolverArgs,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve a single problem and print the run result as JSON.
    Solve {
        /// Problem name (or a glob matching exactly one catalog entry).
        #[arg(long)]
        problem: String,
        #[arg(long)]
        dim: Option<usize>,
        /// Record and print the per-iteration trace.
        #[arg(long)]
        trace: bool,
    },
    /// Run every method on every selected problem and write costs and profiles.
    Suite {
        #[command(flatten)]
        filter: FilterArgs,
        #[command(flatten)]
        run: RunArgs,
        /// Methods to compare.
        #[arg(long, value_delimiter = ',', default_value = "NEW,FR,MFR,HZ")]
        methods: Vec<MethodId>,
    },
    /// Run the NEW method over a grid of tau values.
    SweepTau {
        #[command(flatten)]
        filter: FilterArgs,
        #[command(flatten)]
        run: RunArgs,
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "0,0.001,0.002,0.003,0.004,0.005,0.01,0.02,0.03,0.04,0.05,0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9"
        )]
        taus: Vec<f64>,
    },
    /// Compare analytic gradients against central differences.
    CheckGradients {
        #[command(flatten)]
        filter: FilterArgs,
        /// Seed for the random check points.
        #[arg(long)]
        seed: Option<u64>,
        /// Random points per problem, in addition to the start point.
        #[arg(long, default_value_t = 5)]
        points: usize,
    },
    /// List catalog problems as NAME<TAB>DIM.
    ListProblems {
        #[command(flatten)]
        filter: FilterArgs,
    },
}

/// Solver overrides accepted by every command.
#[derive(Debug, Clone, Default, Args)]
pub struct SolverArgs {
    #[arg(long, global = true)]
    pub method: Option<MethodId>,
    #[arg(long, global = true)]
    pub tau: Option<f64>,
    #[arg(long, global = true)]
    pub rho: Option<f64>,
    #[arg(long, global = true)]
    pub c1: Option<f64>,
    #[arg(long, global = true)]
    pub eps_scale: Option<f64>,
    #[arg(long, global = true)]
    pub max_iters: Option<usize>,
    #[arg(long, global = true)]
    pub step_floor: Option<f64>,
    #[arg(long, global = true)]
    pub bb_guard: Option<f64>,
    #[arg(long, global = true)]
    pub hz_eta: Option<f64>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct FilterArgs {
    /// Glob over problem names, case-insensitive.
    #[arg(long, default_value = "*")]
    pub problems: String,
    #[arg(long)]
    pub min_dim: Option<usize>,
    #[arg(long)]
    pub max_dim: Option<usize>,
    /// Use the 20-problem desk suite instead of the full catalog.
    #[arg(long)]
    pub desk: bool,
}

#[derive(Debug, Clone, Default, Args)]
pub struct RunArgs {
    /// Output directory [default: $SDCG_OUTPUT_DIR or ./sdcg-out].
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub parallelism: Option<usize>,
    /// Repeated runs per job for the wall-time median.
    #[arg(long)]
    pub time_repeats: Option<usize>,
}

/// Optional TOML configuration. Every field may be omitted.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FileConfig {
    pub solver: FileSolver,
    pub parallelism: Option<usize>,
    pub time_repeats: Option<usize>,
    pub output_dir: Option<PathBuf>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FileSolver {
    pub method: Option<MethodId>,
    pub tau: Option<f64>,
    pub rho: Option<f64>,
    pub c1: Option<f64>,
    pub eps_scale: Option<f64>,
    pub max_iters: Option<usize>,
    pub step_floor: Option<f64>,
    pub bb_guard: Option<f64>,
    pub hz_eta: Option<f64>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }
}

macro_rules! overlay {
    ($cfg:ident, $src:expr, $($field:ident),*) => {
        $( if let Some(v) = $src.$field { $cfg.$field = v; } )*
    };
}

impl Cli {
    pub fn file_config(&self) -> Result<FileConfig> {
        match &self.config {
            Some(p) => FileConfig::load(p),
            None => Ok(FileConfig::default()),
        }
    }

    /// Built-in defaults, then the config file, then flags.
    pub fn solver_config(&self, file: &FileConfig) -> Result<SolverConfig> {
        let mut cfg = SolverConfig::default();
        overlay!(
            cfg,
            file.solver,
            method,
            tau,
            rho,
            c1,
            eps_scale,
            max_iters,
            step_floor,
            bb_guard,
            hz_eta
        );
        overlay!(
            cfg,
            self.solver,
            method,
            tau,
            rho,
            c1,
            eps_scale,
            max_iters,
            step_floor,
            bb_guard,
            hz_eta
        );
        cfg.validate()?;
        Ok(cfg)
    }
}

impl RunArgs {
    pub fn output_dir(&self, file: &FileConfig) -> PathBuf {
        self.out
            .clone()
            .or_else(|| file.output_dir.clone())
            .or_else(|| std::env::var_os(OUTPUT_DIR_ENV).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from(DEFAULT_OUTPUT_DIR))
    }

    pub fn parallelism(&self, file: &FileConfig) -> usize {
        self.parallelism.or(file.parallelism).unwrap_or(1)
    }

    pub fn time_repeats(&self, file: &FileConfig) -> usize {
        self.time_repeats.or(file.time_repeats).unwrap_or(3)
    }
}

impl FilterArgs {
    pub fn select(&self) -> Result<Vec<ProblemInstance>> {
        let pattern = Pattern::new(&self.problems)
            .with_context(|| format!("invalid problem glob {:?}", self.problems))?;
        let opts = MatchOptions {
            case_sensitive: false,
            ..MatchOptions::default()
        };
        let pool = if self.desk {
            problems::desk_suite()
        } else {
            problems::catalog()
        };
        let selected: Vec<_> = pool
            .into_iter()
            .filter(|p| pattern.matches_with(&p.name, opts))
            .filter(|p| self.min_dim.is_none_or(|m| p.dim >= m))
            .filter(|p| self.max_dim.is_none_or(|m| p.dim <= m))
            .collect();
        if selected.is_empty() {
            bail!("no problem matches the filter");
        }
        Ok(selected)
    }
}

/// Resolves `solve --problem NAME [--dim N]` to exactly one instance.
///
/// A literal name with an explicit dimension is built directly, so dimensions outside
/// the default catalog are allowed.
pub fn resolve_single(problem: &str, dim: Option<usize>) -> Result<ProblemInstance> {
    let is_glob = problem.contains(['*', '?', '[']);
    if let (false, Some(n)) = (is_glob, dim) {
        return Ok(problems::lookup(problem, n)?);
    }
    let filter = FilterArgs {
        problems: problem.to_string(),
        min_dim: dim,
        max_dim: dim,
        desk: false,
    };
    let mut found = match filter.select() {
        Ok(found) => found,
        Err(_) if !is_glob => {
            // distinguish an unknown name from an empty filter
            problems::lookup(problem, 1)?;
            bail!("problem {problem} has no catalog entry matching the requested dimension")
        }
        Err(e) => return Err(e),
    };
    if found.len() != 1 {
        let keys: Vec<_> = found.iter().map(|p| p.key()).collect();
        bail!(
            "{problem:?} matches {} problems ({}); pass --dim to pick one",
            found.len(),
            keys.join(", ")
        );
    }
    Ok(found.remove(0))
}
