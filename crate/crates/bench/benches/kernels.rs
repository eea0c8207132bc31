use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use magsat_core::fields::{
    field_from, permittivity, FieldUnit, PermittivityModel, PhysicalConstants,
};
use magsat_core::oracle::{shoot_ground, ShootingConfig};
use magsat_core::potential::{effective_potential_element, LllPotential};
use magsat_core::specfun::{digamma, hurwitz_zeta_sderiv_m1, tricomi_u};
use magsat_core::spectrum::{kp_solve, saturation_solve, SpectrumRequest};
use magsat_core::Charge;

const H: Charge = Charge::HYDROGEN;

fn special_functions(c: &mut Criterion) {
    let xs: Vec<f64> = (0..64)
        .map(|i| 1e-3 * 1e6f64.powf(i as f64 / 63.0))
        .collect();
    c.bench_function("tricomi_u(1/2, -3/2, x) x64", |b| {
        b.iter(|| {
            xs.iter()
                .map(|&x| tricomi_u(0.5, -1.5, black_box(x)).unwrap())
                .sum::<f64>()
        })
    });
    c.bench_function("digamma x64", |b| {
        b.iter(|| {
            xs.iter()
                .map(|&x| digamma(black_box(x)).unwrap())
                .sum::<f64>()
        })
    });
    c.bench_function("hurwitz zeta'(-1, q)", |b| {
        b.iter(|| hurwitz_zeta_sderiv_m1(black_box(1e-4)).unwrap())
    });
}

fn physics(c: &mut Criterion) {
    let k = PhysicalConstants::default();
    let f = field_from(1e8, FieldUnit::CalB, &k).unwrap();
    let eps = permittivity(&f, PermittivityModel::Full).unwrap();

    c.bench_function("permittivity full", |b| {
        b.iter(|| permittivity(black_box(&f), PermittivityModel::Full).unwrap())
    });
    let pot = LllPotential::new(0, &f, &eps, H).unwrap();
    c.bench_function("closed-form potential", |b| {
        b.iter(|| pot.eval(black_box(0.3)))
    });
    c.bench_function("quadrature potential element", |b| {
        b.iter(|| effective_potential_element(0, 0, 0, black_box(0.3), &f, &eps, H).unwrap())
    });

    let req = SpectrumRequest::new(f, 0, H, PermittivityModel::Full, 5).unwrap();
    c.bench_function("kp_solve 5 roots", |b| {
        b.iter(|| kp_solve(black_box(&req)).unwrap())
    });
    c.bench_function("saturation_solve", |b| {
        b.iter(|| saturation_solve(0, H, black_box(f64::INFINITY), &k).unwrap())
    });

    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    group.bench_function("shoot_ground calB=1e8", |b| {
        b.iter(|| shoot_ground(black_box(&req), &ShootingConfig::default()).unwrap())
    });
    group.finish();
}

criterion_group!(benches, special_functions, physics);
criterion_main!(benches);
