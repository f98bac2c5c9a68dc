use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use graded_morita::exact::generic_invertible_element;
use graded_morita::fixtures::{e2, e3, p3, regular};
use graded_morita::{
    build_canonical_context, build_graded_context, hom_graded, tensor_over, AlgebraOverC, Field, GradedBimodule,
};
use graded_morita_bench::{free_module, random_matrix, random_pencil};
use std::hint::black_box;

fn linear_algebra(c: &mut Criterion) {
    let mut group = c.benchmark_group("rref");
    for n in [4, 8, 12] {
        for field in [Field::Rational, Field::Prime(7)] {
            let m = random_matrix(field, n, 1);
            group.bench_with_input(BenchmarkId::new(field.to_string(), n), &m, |b, m| b.iter(|| black_box(m.rref())));
        }
    }
    group.finish();

    let mut group = c.benchmark_group("invertible_element");
    for (n, k) in [(3, 2), (4, 3), (6, 2)] {
        let basis = random_pencil(Field::Rational, n, k, 11);
        group.bench_with_input(BenchmarkId::from_parameter(format!("{n}x{n}, {k} vars")), &basis, |b, basis| {
            b.iter(|| black_box(generic_invertible_element(basis).unwrap()))
        });
    }
    group.finish();
}

fn modules(c: &mut Criterion) {
    let mut group = c.benchmark_group("hom_graded");
    for k in [1, 2, 4] {
        let p = free_module(k);
        group.bench_with_input(BenchmarkId::new("free", k), &p, |b, p| b.iter(|| black_box(hom_graded(p, p).unwrap())));
    }
    let p = p3();
    group.bench_function("P3", |b| b.iter(|| black_box(hom_graded(&p, &p).unwrap())));
    group.finish();

    let mut group = c.benchmark_group("tensor_over");
    for a in [e2(), e3()] {
        let reg = GradedBimodule::regular(&a);
        group.bench_with_input(BenchmarkId::from_parameter(format!("dim {}", a.dim())), &reg, |b, reg| {
            b.iter(|| black_box(tensor_over(reg, reg).unwrap()))
        });
    }
    group.finish();
}

fn contexts(c: &mut Criterion) {
    let mut group = c.benchmark_group("context");
    for a in [e2(), e3()] {
        let x = AlgebraOverC::over_centralizer(&a).unwrap();
        let p = regular(&a);
        group.bench_with_input(BenchmarkId::new("canonical", a.dim()), &p, |b, p| {
            b.iter(|| black_box(build_canonical_context(&x, p).unwrap()))
        });
    }
    let p = free_module(3);
    group.bench_function("graded/free 3", |b| b.iter(|| black_box(build_graded_context(&p).unwrap())));
    group.finish();
}

criterion_group!(benches, linear_algebra, modules, contexts);
criterion_main!(benches);
