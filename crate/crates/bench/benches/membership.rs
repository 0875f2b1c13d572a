use criterion::{criterion_group, criterion_main, Criterion};
use groupdet_core::groupring::GroupId;
use groupdet_core::membership::decide;
use groupdet_core::witness::{witness_for, DEFAULT_BUDGET};
use num_bigint::BigInt;
use std::hint::black_box;

fn membership(c: &mut Criterion) {
    let values: Vec<BigInt> = (-5000i64..=5000).step_by(37).map(BigInt::from).collect();
    for group in GroupId::ALL {
        c.bench_function(&format!("decide/{group}"), |b| {
            b.iter(|| values.iter().filter(|d| decide(black_box(d), group).unwrap().in_set).count())
        });
    }
    let targets: Vec<BigInt> = [189i64, 756, 1999, -2187].into_iter().map(BigInt::from).collect();
    c.bench_function("witness/z18", |b| {
        b.iter(|| {
            targets
                .iter()
                .filter(|d| witness_for(black_box(d), GroupId::Z18, DEFAULT_BUDGET).is_ok())
                .count()
        })
    });
}

criterion_group!(benches, membership);
criterion_main!(benches);
