use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use quartic_core::atlas::{extremal_quartic, quasiprimitive_4line};
use quartic_core::cohomology::CurveCohomology;
use quartic_core::components::{connectedness_certificate, count_components, G8Convention};
use quartic_core::config::RunConfig;
use quartic_core::deform::{verify_extend, verify_thintothick};
use quartic_core::resolution::free_resolution;
use quartic_core::Ring;

fn groebner(c: &mut Criterion) {
    let ring = Ring::projective(32003);
    let mut group = c.benchmark_group("groebner");
    for (a, b, cc) in [(0, 0, 0), (1, 0, 1), (1, 1, 2)] {
        let ideal = quasiprimitive_4line(&ring, a, b, cc, 1).unwrap();
        let gens = quartic_core::Ideal::new(&ring, ideal.generators().to_vec());
        group.bench_with_input(BenchmarkId::new("quasiprimitive", format!("{a}-{b}-{cc}")), &gens, |bench, i| {
            bench.iter(|| quartic_core::Ideal::new(i.ring(), i.generators().to_vec()).groebner().polynomials().len())
        });
    }
    group.finish();
}

fn cohomology(c: &mut Criterion) {
    let ring = Ring::projective(32003);
    let mut group = c.benchmark_group("cohomology");
    for g in [-3, -10] {
        let ideal = extremal_quartic(&ring, g).unwrap();
        group.bench_with_input(BenchmarkId::new("spectrum-extremal", g), &ideal, |bench, i| {
            bench.iter(|| CurveCohomology::new(black_box(i)).unwrap().spectrum().unwrap())
        });
        group.bench_with_input(BenchmarkId::new("resolution-extremal", g), &ideal, |bench, i| {
            bench.iter(|| free_resolution(black_box(i)).unwrap().betti())
        });
    }
    group.finish();
}

fn certificates(c: &mut Criterion) {
    let cfg = RunConfig::default();
    let mut group = c.benchmark_group("certificates");
    group.sample_size(10);
    group.bench_function("thintothick-1-0-1", |b| b.iter(|| verify_thintothick(1, 0, 1, &cfg).unwrap().passed()));
    group.bench_function("extend-1-1", |b| b.iter(|| verify_extend(1, 1, &cfg).unwrap().passed()));
    group.bench_function("connectedness-g-6", |b| {
        b.iter(|| connectedness_certificate(-6, G8Convention::Inclusive, &cfg).unwrap().passed())
    });
    group.finish();
}

fn enumeration(c: &mut Criterion) {
    c.bench_function("count-components-g-1000", |b| {
        b.iter(|| count_components(black_box(-1000), G8Convention::Inclusive).unwrap())
    });
}

criterion_group!(benches, groebner, cohomology, certificates, enumeration);
criterion_main!(benches);
