use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use wgmres::bounds::{best_curve_with, BoundMethod};
use wgmres::fov::fov_boundary_with;
use wgmres::linalg::{hermitian_eig_with, ComplexMatrix, InnerProduct};
use wgmres::{Exec, C64};

fn test_matrix(n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |i, j| {
        let x = (i * 7 + j * 13) as f64;
        C64::new((x * 0.37).sin(), (x * 0.11).cos() * 0.5)
    })
}

fn modes() -> Vec<(&'static str, Exec)> {
    let mut v = vec![("sequential", Exec::Sequential)];
    if cfg!(feature = "parallel") {
        v.push(("parallel", Exec::Parallel));
    }
    v
}

fn bench_matmul(c: &mut Criterion) {
    let a = test_matrix(160);
    let mut g = c.benchmark_group("matmul_160");
    for (name, exec) in modes() {
        g.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| a.matmul_with(&a, exec)));
    }
    g.finish();
}

fn bench_eig(c: &mut Criterion) {
    let a = test_matrix(120);
    let h = &a + &a.adjoint();
    let mut g = c.benchmark_group("hermitian_eig_120");
    g.sample_size(10);
    for (name, exec) in modes() {
        g.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| hermitian_eig_with(&h, exec).unwrap()));
    }
    g.finish();
}

fn bench_fov(c: &mut Criterion) {
    let a = test_matrix(60);
    let ip = InnerProduct::euclidean(60);
    let mut g = c.benchmark_group("fov_boundary_60x64");
    g.sample_size(10);
    for (name, exec) in modes() {
        g.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| fov_boundary_with(&a, &ip, 64, exec).unwrap()));
    }
    g.finish();
}

fn bench_bounds(c: &mut Criterion) {
    let mut g = c.benchmark_group("best_curve_k200");
    g.sample_size(10);
    for (name, exec) in modes() {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| best_curve_with(2.0, 4.0, 200, &BoundMethod::ALL, exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, bench_matmul, bench_eig, bench_fov, bench_bounds);
criterion_main!(benches);
