use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use groupdet_bench::sample_elements;
use groupdet_core::groupring::{det_characters, det_matrix_oracle, GroupId};
use std::hint::black_box;

fn determinants(c: &mut Criterion) {
    let mut g = c.benchmark_group("det");
    for group in GroupId::ALL {
        for (label, lo, hi) in [("small", -1, 1), ("wide", -9, 9)] {
            let xs = sample_elements(group, 64, lo, hi, 11);
            let id = format!("{group}/{label}");
            g.bench_with_input(BenchmarkId::new("characters", &id), &xs, |b, xs| {
                b.iter(|| {
                    for x in xs {
                        black_box(det_characters(black_box(x)));
                    }
                })
            });
            g.bench_with_input(BenchmarkId::new("bareiss", &id), &xs, |b, xs| {
                b.iter(|| {
                    for x in xs {
                        black_box(det_matrix_oracle(black_box(x)));
                    }
                })
            });
        }
    }
    g.finish();
}

criterion_group!(benches, determinants);
criterion_main!(benches);
