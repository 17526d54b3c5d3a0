use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use sdcg::bench::{run_suite, SolverSpec, SuiteOptions};
use sdcg::{minimize, problems, MethodId, SolverConfig};

fn solvers() -> Vec<SolverSpec> {
    MethodId::ALL
        .into_iter()
        .map(|m| SolverSpec::from(SolverConfig::with_method(m)))
        .collect()
}

// Same grid at parallelism 1 (sequential path) and at the machine's thread count.
fn bench_suite(c: &mut Criterion) {
    let desk = problems::desk_suite();
    let specs = solvers();
    let threads = std::thread::available_parallelism().map_or(4, |n| n.get());
    let mut group = c.benchmark_group("desk_suite");
    group.sample_size(10);
    for parallelism in [1, threads] {
        let label = if parallelism == 1 {
            "sequential"
        } else {
            "rayon"
        };
        group.bench_with_input(
            BenchmarkId::new(label, parallelism),
            &parallelism,
            |b, &p| {
                let opts = SuiteOptions {
                    parallelism: p,
                    time_repeats: 1,
                };
                b.iter(|| run_suite(black_box(&desk), &specs, &opts).unwrap())
            },
        );
    }
    group.finish();
}

fn bench_single_solve(c: &mut Criterion) {
    let p = problems::lookup("TRIDIA", 100).unwrap();
    let mut group = c.benchmark_group("tridia_100");
    for m in MethodId::ALL {
        let cfg = SolverConfig::with_method(m);
        group.bench_function(m.token(), |b| {
            b.iter(|| minimize(black_box(&p), &cfg).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_suite, bench_single_solve);
criterion_main!(benches);
