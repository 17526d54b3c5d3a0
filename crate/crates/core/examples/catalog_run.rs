//! Runs every method on the default catalog and prints one line per run.
//!
//! cargo run --release -p sdcg --example catalog_run

use sdcg::{minimize, problems, theory_report, MethodId, SolverConfig};

fn main() {
    for p in problems::catalog() {
        for m in MethodId::ALL {
            let cfg = SolverConfig {
                method: m,
                record_trace: true,
                ..SolverConfig::default()
            };
            let r = minimize(&p, &cfg).unwrap();
            let (descent, dirnorm) = match r.trace.as_deref() {
                Some(t) if !t.is_empty() => {
                    let rep = theory_report(t, &cfg, None);
                    (rep.min_descent_ratio, rep.max_dirnorm_ratio)
                }
                _ => (f64::NAN, f64::NAN),
            };
            println!(
                "{:<9}{:>5} {:<4}{:<17?}{:>6} {:>7} {:>11.4e} {:>9.6} {:>9.4}  {:.3}s",
                p.name,
                p.dim,
                m.token(),
                r.status,
                r.iters,
                r.f_evals,
                r.final_f,
                descent,
                dirnorm,
                r.wall_time
            );
        }
    }
}
