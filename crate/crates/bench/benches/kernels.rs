use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dfsets_bench::{cycle, dense_matrix, ruled_skeleton, torsion_heavy};
use dfsets_core::gamma::{enumerate_epis_mod_aut, gamma_count};
use dfsets_core::jump::{omega_describe, xi_d};
use dfsets_core::space::toric_char_variety;
use dfsets_core::{hermite_normal_form, smith_normal_form, Bounds, FgAbGroup};
use std::hint::black_box;

fn normal_forms(c: &mut Criterion) {
    let mut g = c.benchmark_group("normal_forms");
    for n in [4, 8, 12] {
        let m = dense_matrix(n, n as u64);
        g.bench_with_input(BenchmarkId::new("hnf", n), &m, |b, m| b.iter(|| hermite_normal_form(black_box(m))));
        g.bench_with_input(BenchmarkId::new("snf", n), &m, |b, m| b.iter(|| smith_normal_form(black_box(m))));
    }
    g.finish();
}

fn gamma(c: &mut Criterion) {
    let h = FgAbGroup::free(6);
    let a = FgAbGroup::new(1, vec![2, 4]).unwrap();
    c.bench_function("gamma_count Z^6 -> Z+Z2+Z4", |b| b.iter(|| gamma_count(black_box(&h), black_box(&a))));
    let h = FgAbGroup::finite(vec![4, 4, 4]).unwrap();
    let a = FgAbGroup::finite(vec![2, 4]).unwrap();
    c.bench_function("epis mod aut Z4^3 -> Z2+Z4", |b| {
        b.iter(|| enumerate_epis_mod_aut(black_box(&h), black_box(&a), &Bounds::default()))
    });
}

fn xi(c: &mut Criterion) {
    let w = ruled_skeleton();
    c.bench_function("xi_2 ruled", |b| b.iter(|| xi_d(black_box(&w), 2, &Bounds::default())));
    let w = torsion_heavy(4);
    c.bench_function("xi_60 det order 60", |b| b.iter(|| xi_d(black_box(&w), 60, &Bounds::default())));
    let a = FgAbGroup::new(2, vec![2]).unwrap();
    let v = ruled_skeleton().into();
    c.bench_function("describe ruled", |b| b.iter(|| omega_describe(black_box(&v), &a, &Bounds::default())));
}

fn toric(c: &mut Criterion) {
    let mut g = c.benchmark_group("toric");
    for n in [6, 9, 12] {
        let l = cycle(n);
        g.bench_with_input(BenchmarkId::new("cycle", n), &l, |b, l| {
            b.iter(|| toric_char_variety(black_box(l), 1, &Bounds::default()))
        });
    }
    g.finish();
}

criterion_group!(benches, normal_forms, gamma, xi, toric);
criterion_main!(benches);
