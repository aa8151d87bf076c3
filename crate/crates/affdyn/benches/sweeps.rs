use affdyn::degoracle::{iterate_degrees, PolyMap, DEFAULT_TERM_CAP};
use affdyn::par::Exec;
use affdyn::perron::perron_sweep;
use affdyn::thompson::free_product_check;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn perron(c: &mut Criterion) {
    let mut g = c.benchmark_group("perron_sweep");
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::new(name, "a<=20,|b|<=20"), |b| b.iter(|| perron_sweep(1..=20, -20..=20, exec)));
    }
    g.finish();
}

fn words(c: &mut Criterion) {
    let mut g = c.benchmark_group("free_product_check");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::new(name, 6), |b| b.iter(|| assert!(free_product_check(6, exec))));
    }
    g.finish();
}

fn degrees(c: &mut Criterion) {
    let f = PolyMap::parse("u*v, u^2*v^2+2*v^2-1").unwrap();
    let mut g = c.benchmark_group("iterate_degrees");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::new(name, 5), |b| b.iter(|| iterate_degrees(&f, 5, DEFAULT_TERM_CAP, exec).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, perron, words, degrees);
criterion_main!(benches);
