use criterion::{criterion_group, criterion_main, Criterion};
use lucid_core::discover::{discover, power_representation, DiscoverOptions};
use lucid_core::identity::{catalog, catalog_names, parse_identity};
use lucid_core::lucas::LucasKind;
use lucid_core::verify::verify;

fn verification(c: &mut Criterion) {
    let templates: Vec<_> = catalog_names().into_iter().map(|n| catalog(n).unwrap()).collect();
    c.bench_function("verify catalog", |b| {
        b.iter(|| templates.iter().all(|t| verify(t).unwrap().is_verified()))
    });
    let gf15 = catalog("GF.15").unwrap();
    c.bench_function("verify GF.15", |b| b.iter(|| verify(&gf15).unwrap()));
}

fn discovery(c: &mut Criterion) {
    let ansatz = parse_identity("U[3k] = c0*U[k+1]^3 + c1*U[k+1]^2*U[k] + c2*U[k+1]*U[k]^2 + c3*U[k]^3").unwrap();
    c.bench_function("discover triple", |b| b.iter(|| discover(&ansatz, &DiscoverOptions::default()).unwrap()));
    c.bench_function("power representation m=6", |b| b.iter(|| power_representation(6, LucasKind::U).unwrap()));
}

criterion_group!(benches, verification, discovery);
criterion_main!(benches);
