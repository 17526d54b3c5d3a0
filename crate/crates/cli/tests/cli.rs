use std::fs;
use std::path::Path;
use std::process::Command as Process;
use std::sync::Arc;

use sdcg::problems::{Objective, ProblemInstance};
use sdcg_cli::{check_gradients_report, exit, run};
use serde_json::Value;

fn sdcg(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("sdcg").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn read(dir: &Path, name: &str) -> String {
    fs::read_to_string(dir.join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

#[test]
fn print_config_shows_defaults() {
    let (code, out, _) = sdcg(&["--print-config"]);
    assert_eq!(code, exit::OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["method"], "NEW");
    assert_eq!(v["tau"], 0.002);
    assert_eq!(v["rho"], 0.5);
    assert_eq!(v["c1"], 1e-4);
    assert_eq!(v["eps_scale"], 1e-6);
    assert_eq!(v["max_iters"], 4000);
}

#[test]
fn flags_override_file_which_overrides_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sdcg.toml");
    fs::write(&cfg, "[solver]\ntau = 0.01\nrho = 0.25\nmethod = \"HZ\"\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    let (code, out, _) = sdcg(&["--config", cfg, "--tau", "0.05", "--print-config"]);
    assert_eq!(code, exit::OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["tau"], 0.05);
    assert_eq!(v["rho"], 0.25);
    assert_eq!(v["method"], "HZ");
    assert_eq!(v["c1"], 1e-4);
}

#[test]
fn unknown_flags_and_keys_are_rejected() {
    assert_eq!(sdcg(&["--nonsense"]).0, exit::USAGE);
    assert_eq!(
        sdcg(&["solve", "--problem", "TRIDIA", "--colour"]).0,
        exit::USAGE
    );
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    fs::write(&cfg, "[solver]\ntua = 0.01\n").unwrap();
    let (code, _, err) = sdcg(&["--config", cfg.to_str().unwrap(), "--print-config"]);
    assert_eq!(code, exit::USAGE);
    assert!(err.contains("tua"), "{err}");
    assert_eq!(sdcg(&["--tau", "1.5", "--print-config"]).0, exit::USAGE);
}

#[test]
fn solve_converges_on_tridia() {
    let (code, out, _) = sdcg(&[
        "solve",
        "--problem",
        "TRIDIA",
        "--dim",
        "50",
        "--method",
        "NEW",
    ]);
    assert_eq!(code, exit::OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["status"], "Converged");
    assert_eq!(
        v["g_evals"].as_u64().unwrap(),
        v["iters"].as_u64().unwrap() + 1
    );
    assert!(v.get("trace").is_none());
}

#[test]
fn solve_with_trace() {
    let (code, out, _) = sdcg(&["solve", "--problem", "tridia", "--dim", "50", "--trace"]);
    assert_eq!(code, exit::OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(
        v["trace"].as_array().unwrap().len() as u64,
        v["iters"].as_u64().unwrap()
    );
}

#[test]
fn solve_errors() {
    let (code, out, err) = sdcg(&["solve", "--problem", "NOSUCH"]);
    assert_eq!(code, exit::USAGE);
    assert!(out.is_empty());
    assert!(err.contains("NOSUCH"));
    // two catalog dimensions and no --dim
    let (code, _, err) = sdcg(&["solve", "--problem", "TRIDIA"]);
    assert_eq!(code, exit::USAGE);
    assert!(err.contains("--dim"), "{err}");
    assert_eq!(
        sdcg(&["solve", "--problem", "WOODS", "--dim", "7"]).0,
        exit::USAGE
    );
}

#[test]
fn solve_iteration_limit_exits_2() {
    let (code, out, _) = sdcg(&[
        "solve",
        "--problem",
        "SROSENBR",
        "--dim",
        "100",
        "--method",
        "FR",
        "--max-iters",
        "1",
    ]);
    assert_eq!(code, exit::FAILURE);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["status"], "IterationLimit");
    assert_eq!(v["iters"], 1);
}

#[test]
fn suite_writes_all_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    let (code, _, err) = sdcg(&[
        "suite",
        "--problems",
        "[ST]*",
        "--max-dim",
        "50",
        "--out",
        out.to_str().unwrap(),
        "--time-repeats",
        "1",
    ]);
    assert_eq!(code, exit::OK, "{err}");
    for metric in ["fevals", "iters", "time"] {
        let cost = read(&out, &format!("cost_{metric}.csv"));
        assert!(cost.starts_with("problem,dim,NEW,FR,MFR,HZ\n"));
        let profile = read(&out, &format!("profile_{metric}.csv"));
        let mut solvers: Vec<_> = profile
            .lines()
            .skip(1)
            .map(|l| l.split(',').next().unwrap())
            .collect();
        solvers.dedup();
        assert_eq!(solvers, ["NEW", "FR", "MFR", "HZ"]);
    }
    let runs: Value = serde_json::from_str(&read(&out, "runs.json")).unwrap();
    let problems = read(&out, "cost_iters.csv").lines().count() - 1;
    assert_eq!(runs.as_array().unwrap().len(), problems * 4);
    let wins: Value = serde_json::from_str(&read(&out, "wins.json")).unwrap();
    let keys: Vec<_> = wins.as_object().unwrap().keys().cloned().collect();
    assert_eq!(keys, ["NEW", "FR", "MFR", "HZ"]);
}

#[test]
fn single_problem_single_method_wins_everything() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let (code, _, _) = sdcg(&[
        "suite",
        "--problems",
        "TRIDIA",
        "--max-dim",
        "50",
        "--methods",
        "NEW",
        "--out",
        out,
    ]);
    assert_eq!(code, exit::OK);
    let wins: Value = serde_json::from_str(&read(dir.path(), "wins.json")).unwrap();
    assert_eq!(wins, serde_json::json!({ "NEW": 1.0 }));
}

#[test]
fn suite_with_failed_cells_still_exits_0() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let (code, _, _) = sdcg(&[
        "suite",
        "--problems",
        "SROSENBR",
        "--max-dim",
        "50",
        "--max-iters",
        "1",
        "--out",
        out,
    ]);
    assert_eq!(code, exit::OK);
    assert_eq!(
        read(dir.path(), "cost_fevals.csv"),
        "problem,dim,NEW,FR,MFR,HZ\nSROSENBR,50,inf,inf,inf,inf\n"
    );
    let profile = read(dir.path(), "profile_fevals.csv");
    assert!(profile.lines().skip(1).all(|l| l.ends_with(",0")));
    let wins: Value = serde_json::from_str(&read(dir.path(), "wins.json")).unwrap();
    assert_eq!(
        wins,
        serde_json::json!({ "NEW": 0.0, "FR": 0.0, "MFR": 0.0, "HZ": 0.0 })
    );
}

#[test]
fn suite_unwritable_output_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "").unwrap();
    let out = blocker.join("sub");
    let (code, _, err) = sdcg(&[
        "suite",
        "--problems",
        "TRIDIA",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, exit::USAGE);
    assert!(err.starts_with("error:"));
}

#[test]
fn suite_repeat_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let go = |name: &str, par: &str| {
        let out = dir.path().join(name);
        let (code, _, _) = sdcg(&[
            "suite",
            "--problems",
            "*D*",
            "--max-dim",
            "100",
            "--out",
            out.to_str().unwrap(),
            "--parallelism",
            par,
            "--time-repeats",
            "1",
        ]);
        assert_eq!(code, exit::OK);
        (read(&out, "cost_fevals.csv"), read(&out, "cost_iters.csv"))
    };
    let a = go("a", "1");
    assert_eq!(a, go("b", "1"));
    assert_eq!(a, go("c", "4"));
}

#[test]
fn output_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let status = Process::new(env!("CARGO_BIN_EXE_sdcg"))
        .args([
            "suite",
            "--problems",
            "TRIDIA",
            "--max-dim",
            "50",
            "--methods",
            "FR",
        ])
        .env("SDCG_OUTPUT_DIR", dir.path())
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert!(status.status.success());
    assert!(dir.path().join("cost_fevals.csv").exists());
    assert!(!dir.path().join("sdcg-out").exists());
}

#[test]
fn sweep_tau_two_values() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let (code, stdout, _) = sdcg(&[
        "sweep-tau",
        "--taus",
        "0.002,0.5",
        "--problems",
        "TRIDIA",
        "--out",
        out,
    ]);
    assert_eq!(code, exit::OK);
    let csv = read(dir.path(), "sweep_tau.csv");
    assert_eq!(csv, stdout);
    let rows: Vec<_> = csv.lines().collect();
    assert_eq!(rows[0], "tau,solved,total_fevals,wins_vs_self");
    assert_eq!(rows.len(), 3);
    assert!(rows[1].starts_with("0.002,2,"));
}

#[test]
fn small_tau_solves_at_least_as_many_as_large_tau() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let (code, stdout, _) = sdcg(&[
        "sweep-tau",
        "--taus",
        "0.002,0.9",
        "--out",
        out,
        "--time-repeats",
        "1",
    ]);
    assert_eq!(code, exit::OK);
    let solved: Vec<usize> = stdout
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert!(solved[0] >= solved[1], "{stdout}");
}

#[test]
fn check_gradients_clean_and_deterministic() {
    let (code, a, _) = sdcg(&["check-gradients", "--seed", "11"]);
    assert_eq!(code, exit::OK);
    assert!(a.lines().all(|l| l.ends_with("\tPASS")));
    let (_, b, _) = sdcg(&["check-gradients", "--seed", "11"]);
    assert_eq!(a, b);
    assert_eq!(
        a.lines().count(),
        sdcg(&["list-problems"]).1.lines().count()
    );
}

struct Corrupted;

impl Objective for Corrupted {
    fn value(&self, x: &[f64]) -> f64 {
        x.iter().map(|v| v * v).sum()
    }
    fn gradient(&self, x: &[f64], g: &mut [f64]) {
        for (gi, xi) in g.iter_mut().zip(x) {
            *gi = 2.0 * xi;
        }
        g[0] += 1e-3;
    }
}

#[test]
fn check_gradients_names_corrupted_problem() {
    let mut problems = sdcg::problems::catalog();
    problems.truncate(3);
    problems.push(ProblemInstance::new(
        "CORRUPT",
        vec![1.0; 5],
        Arc::new(Corrupted),
    ));
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = check_gradients_report(&problems, 3, 5, &mut out, &mut err);
    assert_eq!(code, exit::FAILURE);
    let err = String::from_utf8(err).unwrap();
    assert!(err.contains("CORRUPT/5"), "{err}");
    assert!(String::from_utf8(out).unwrap().contains("CORRUPT\t5\t"));
}

#[test]
fn list_problems_sorted_and_filtered() {
    let (code, out, _) = sdcg(&["list-problems"]);
    assert_eq!(code, exit::OK);
    let rows: Vec<(String, usize)> = out
        .lines()
        .map(|l| {
            let (n, d) = l.split_once('\t').unwrap();
            (n.to_string(), d.parse().unwrap())
        })
        .collect();
    let mut sorted = rows.clone();
    sorted.sort();
    assert_eq!(rows, sorted);
    assert!(rows.len() >= 20);

    let (_, desk, _) = sdcg(&["list-problems", "--desk"]);
    assert_eq!(desk.lines().count(), 20);
    let (_, woods, _) = sdcg(&["list-problems", "--problems", "wood?"]);
    assert_eq!(woods, "WOODS\t100\n");
    assert_eq!(
        sdcg(&["list-problems", "--problems", "ZZZ*"]).0,
        exit::USAGE
    );
}
