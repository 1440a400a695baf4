use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dziobek::census::census;
use dziobek::dziobek::MassVector;
use dziobek::solver::{linear_grid, sweep, SolveOptions};
use dziobek::Execution;
use std::hint::black_box;

const MODES: [(&str, Execution); 2] = [("parallel", Execution::Parallel), ("sequential", Execution::Sequential)];

fn bench_census(c: &mut Criterion) {
    let mut group = c.benchmark_group("census");
    group.sample_size(10);
    let m = MassVector::new(0.5, 0.8).unwrap();
    let opts = SolveOptions::default();
    for resolution in [4, 6] {
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, resolution), &resolution, |b, &r| {
                b.iter(|| census(black_box(&m), r, &opts, exec))
            });
        }
    }
    group.finish();
}

fn bench_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    let alphas = linear_grid(0.2, 1.0, 0.1).unwrap();
    let betas = linear_grid(0.2, 2.0, 0.1).unwrap();
    let opts = SolveOptions::default();
    for (name, exec) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| sweep(black_box(&alphas), &betas, &opts, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_census, bench_sweep);
criterion_main!(benches);
