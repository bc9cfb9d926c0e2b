use std::hint::black_box;

use chiral_dicke::ed::{self, BasisSpec};
use chiral_dicke_bench::point;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn build(c: &mut Criterion) {
    let mut g = c.benchmark_group("ed/build");
    for n in [4u32, 8, 16] {
        let p = point(1.2, 0.6, 0.0, n);
        let b = BasisSpec::from_mean_field(&p).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(n), &b, |bench, b| {
            bench.iter(|| ed::build_hamiltonian(black_box(&p), b))
        });
    }
    g.finish();
}

fn lowest(c: &mut Criterion) {
    let mut g = c.benchmark_group("ed/lowest_eigenpair");
    g.sample_size(20);
    for n in [4u32, 8, 16] {
        let p = point(1.2, 0.6, 0.0, n);
        let mut b = BasisSpec::from_mean_field(&p).unwrap();
        let scan = ed::sector_scan(&p, &b, &b.sector_range().collect::<Vec<_>>()).unwrap();
        b = b.with_sector(scan.minimum().unwrap().0);
        let h = ed::build_hamiltonian(&p, &b).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(n), &h, |bench, h| {
            bench.iter(|| ed::lowest_eigenpair(black_box(&h.matrix)))
        });
    }
    g.finish();
}

fn ground_state(c: &mut Criterion) {
    let mut g = c.benchmark_group("ed/ground_state");
    g.sample_size(10);
    for n in [4u32, 8] {
        let p = point(1.2, 0.6, 0.0, n);
        let b = BasisSpec::from_mean_field(&p).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(n), &b, |bench, b| {
            bench.iter(|| ed::ground_state(black_box(&p), b))
        });
    }
    g.finish();
}

criterion_group!(benches, build, lowest, ground_state);
criterion_main!(benches);
