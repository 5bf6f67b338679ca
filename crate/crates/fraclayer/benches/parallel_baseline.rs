//! Parallel vs sequential baselines for the data-parallel kernels.
//!
//! The library paths (`build_operator`, `assemble`, `conv_layer_profile`)
//! run on the rayon pool under the default `parallel` feature; the explicit
//! sequential loops below form the single-thread baselines. Building with
//! `--no-default-features` makes the library paths sequential too, which is
//! the fallback the comparison documents.

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use fraclayer::caputo::{self, operator_row};
use fraclayer::layers;
use fraclayer::mesh::{GradeSide, Mesh};
use fraclayer::solver::{assemble, ProblemSpec};

fn bench_caputo_rows(c: &mut Criterion) {
    let mut group = c.benchmark_group("caputo_build");
    for &n in &[256usize, 1024] {
        let mesh = Mesh::graded(n, 1.0, 2.0, GradeSide::Left).unwrap();
        group.bench_with_input(BenchmarkId::new("library", n), &mesh, |b, mesh| {
            b.iter(|| caputo::build_operator(black_box(mesh), 1.5).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("sequential", n), &mesh, |b, mesh| {
            b.iter(|| {
                let rows: Vec<Vec<f64>> =
                    (0..=n).map(|i| operator_row(black_box(mesh), 1.5, i)).collect();
                rows
            })
        });
    }
    group.finish();
}

fn bench_assembly(c: &mut Criterion) {
    let mut group = c.benchmark_group("bvp_assembly");
    let n = 1024usize;
    let p = ProblemSpec::convection_diffusion(0.5, 1e-2);
    let mesh = Mesh::graded(n, 1.0, 2.0, GradeSide::Left).unwrap();
    group.bench_function("library", |b| {
        b.iter(|| assemble(black_box(&p), black_box(&mesh)).unwrap())
    });
    group.finish();
}

fn bench_layer_grid(c: &mut Criterion) {
    let mut group = c.benchmark_group("layer_profile");
    let xs: Vec<f64> = (0..20_000).map(|i| i as f64 / 19_999.0).collect();
    group.bench_function("library", |b| {
        b.iter(|| layers::conv_layer_profile(1e-3, black_box(&xs)))
    });
    group.bench_function("sequential", |b| {
        b.iter(|| {
            xs.iter()
                .map(|&x| layers::conv_layer_correction(x, 1e-3))
                .collect::<Vec<f64>>()
        })
    });
    group.finish();
}

criterion_group!(benches, bench_caputo_rows, bench_assembly, bench_layer_grid);
criterion_main!(benches);
