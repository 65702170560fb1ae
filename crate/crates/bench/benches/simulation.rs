use std::f64::consts::FRAC_PI_4;
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use ghzshare_core::feasibility::{p_samples, phi_samples, scan};
use ghzshare_core::lhvbound::{enumerate_hybrid, enumerate_local};
use ghzshare_core::luders::luders_update;
use ghzshare_core::qstate::{ghz, to_density};
use ghzshare_core::scenario::{genuine_case_values, standard_case_values, standard_sequence, CharlieCase};
use ghzshare_core::{Inequality, ScenarioKind};

fn channel(c: &mut Criterion) {
    let rho = to_density(&ghz(0.6).unwrap());
    let charlie = standard_sequence(CharlieCase::BothProjective).charlies[0].clone();
    c.bench_function("luders_update", |b| b.iter(|| luders_update(black_box(&rho), &charlie)));
}

fn scenarios(c: &mut Criterion) {
    c.bench_function("standard_case_values", |b| {
        b.iter(|| standard_case_values(black_box(FRAC_PI_4)).unwrap())
    });
    c.bench_function("genuine_case_values", |b| {
        b.iter(|| genuine_case_values(black_box(FRAC_PI_4), 0.8).unwrap())
    });
}

fn scans(c: &mut Criterion) {
    let phi = phi_samples(100);
    let p = p_samples(100);
    c.bench_function("scan_standard_100x100", |b| {
        b.iter(|| scan(ScenarioKind::Standard, &phi, &p, None).unwrap())
    });
}

fn bounds(c: &mut Criterion) {
    c.bench_function("enumerate_local_mermin", |b| {
        b.iter(|| enumerate_local(Inequality::Mermin))
    });
    c.bench_function("enumerate_hybrid_svetlichny", |b| b.iter(|| enumerate_hybrid(None)));
}

criterion_group!(benches, channel, scenarios, scans, bounds);
criterion_main!(benches);
