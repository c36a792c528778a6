//! Benchmarks for the exhaustive checks. Run with the default features for
//! the rayon-parallel core and with `--no-default-features` for the
//! sequential fallback; compare the two reports.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use fincat::fixtures;
use fincat::herm;
use fincat::involutive::T_on_category;

fn bench_functor_enumeration(c: &mut Criterion) {
    let s3 = fixtures::delooping_s3();
    c.bench_function("enumerate_functors S3->S3", |b| {
        b.iter(|| {
            let fs = fincat::enumerate_functors(black_box(&s3), black_box(&s3), 1 << 30).unwrap();
            black_box(fs.len())
        })
    });
}

fn bench_herm_m2(c: &mut Criterion) {
    let t = T_on_category(&fixtures::m2_f4_dagger());
    let h = herm::herm_completion(&t);
    c.bench_function("validate_dagger_axioms Herm(T M2(F4))", |b| {
        b.iter(|| black_box(&h).validate_dagger_axioms().unwrap())
    });
    c.bench_function("transfer_classes Herm(T M2(F4))", |b| {
        b.iter(|| black_box(&h).transfer_classes().classes.len())
    });
}

fn bench_category_validation(c: &mut Criterion) {
    let m2 = fixtures::m2_f4_dagger();
    c.bench_function("dagger validate M2(F4)", |b| {
        b.iter(|| {
            fincat::dagger::DaggerStructure::validate(
                black_box(m2.base().clone()),
                black_box(m2.dag_map().to_vec()),
            )
            .unwrap()
        })
    });
}

criterion_group!(
    benches,
    bench_functor_enumeration,
    bench_herm_m2,
    bench_category_validation
);
criterion_main!(benches);
