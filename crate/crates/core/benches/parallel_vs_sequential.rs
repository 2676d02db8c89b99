use std::hint::black_box;
use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use tightnb::catalog::catalog_get;
use tightnb::enumeration::{enumerate_all, minimal_representative, relaxed_search, DUAL_GRAPHS};
use tightnb::graph::{oracle_classification, OracleMode};
use tightnb::Exec;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumeration");
    g.sample_size(10).measurement_time(Duration::from_secs(40));
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::new("all_graphs", name), |b| {
            b.iter(|| black_box(enumerate_all(&DUAL_GRAPHS, exec).unwrap().total_classes))
        });
    }
    g.finish();
}

fn relaxed(c: &mut Criterion) {
    let mut g = c.benchmark_group("relaxed_search");
    g.sample_size(10).measurement_time(Duration::from_secs(60));
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::new("G(3,6)", name), |b| {
            b.iter(|| black_box(relaxed_search(3, exec).unwrap().nodes))
        });
    }
    g.finish();
}

fn minimality(c: &mut Criterion) {
    let n5 = catalog_get("N5").unwrap();
    let mut g = c.benchmark_group("minimality_sweep");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::new("N5", name), |b| {
            b.iter(|| black_box(minimal_representative(&n5, exec).unwrap().relabelings))
        });
    }
    g.finish();
}

fn graph_oracle(c: &mut Criterion) {
    let mut g = c.benchmark_group("graph_oracle");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::new("exhaustive_n7", name), |b| {
            b.iter(|| black_box(oracle_classification(7, OracleMode::Exhaustive, exec).unwrap().scanned))
        });
        g.bench_function(BenchmarkId::new("subdivision_n25", name), |b| {
            b.iter(|| black_box(oracle_classification(25, OracleMode::Subdivision, exec).unwrap().scanned))
        });
    }
    g.finish();
}

criterion_group!(benches, enumeration, relaxed, minimality, graph_oracle);
criterion_main!(benches);
