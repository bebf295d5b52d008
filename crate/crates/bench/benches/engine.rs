use std::collections::HashMap;

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use divide_core::atlas::ORBIT_CAP;
use divide_core::enumerate::DEFAULT_CEILING;
use divide_core::{
    classify, code, determinant, discal_minor_leq, enumerate_divides, family_divide, inertia,
    riii_orbit, seifert_matrix_divide, verify_theorem, Bound, Divide, FamilySpec,
};

fn fam(name: &str) -> Divide {
    family_divide(&name.parse::<FamilySpec>().unwrap()).unwrap()
}

fn matrices(c: &mut Criterion) {
    let e = fam("E2,3,6");
    c.bench_function("seifert_matrix E2,3,6", |b| {
        b.iter(|| seifert_matrix_divide(black_box(&e)).unwrap())
    });
    let m = seifert_matrix_divide(&e).unwrap().entries;
    c.bench_function("determinant 12x12", |b| {
        b.iter(|| determinant(black_box(&m)))
    });
    c.bench_function("inertia 12x12", |b| {
        b.iter(|| inertia(black_box(&m)).unwrap())
    });
}

fn searches(c: &mut Criterion) {
    let f = fam("F2,5");
    c.bench_function("riii_orbit F2,5", |b| {
        b.iter(|| riii_orbit(black_box(&f), ORBIT_CAP).unwrap())
    });
    let e8 = fam("E8");
    c.bench_function("classify E8", |b| {
        b.iter(|| classify(black_box(&e8)).unwrap())
    });
    let big = fam("E2,2,3");
    let small = fam("E2,2,2");
    let gb = code(&big, &big.checkerboards().unwrap()[0]).unwrap();
    let gs = code(&small, &small.checkerboards().unwrap()[0]).unwrap();
    c.bench_function("discal_minor_leq E222 in E223", |b| {
        b.iter(|| discal_minor_leq(black_box(&gs), black_box(&gb)).unwrap())
    });
}

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumeration");
    g.sample_size(10);
    g.bench_function("enumerate 3 crossings", |b| {
        b.iter(|| enumerate_divides(Bound::Crossings(3), DEFAULT_CEILING).unwrap())
    });
    g.bench_function("verify 3 crossings", |b| {
        b.iter(|| verify_theorem(Bound::Crossings(3), DEFAULT_CEILING, &HashMap::new()).unwrap())
    });
    g.finish();
}

criterion_group!(benches, matrices, searches, enumeration);
criterion_main!(benches);
