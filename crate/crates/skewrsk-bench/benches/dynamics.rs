use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use skewrsk::gen;
use skewrsk::greene::mu_from_increasing;
use skewrsk::leading::upsilon;
use skewrsk::symfunc::{verify_identity, Bounds, Identity, IdentityParams};
use skewrsk::{run_dynamics, skew_rsk, stabilize_forward};

fn dynamics(c: &mut Criterion) {
    let mut g = c.benchmark_group("dynamics");
    for cells in [6, 12, 24] {
        let pair = gen::classical_pair(&mut gen::rng(7), 4, cells);
        g.bench_with_input(BenchmarkId::new("rsk", cells), &pair, |b, p| b.iter(|| skew_rsk(black_box(p))));
        g.bench_with_input(BenchmarkId::new("run_20", cells), &pair, |b, p| b.iter(|| run_dynamics(black_box(p), 20)));
        g.bench_with_input(BenchmarkId::new("stabilize", cells), &pair, |b, p| b.iter(|| stabilize_forward(black_box(p), None)));
        g.bench_with_input(BenchmarkId::new("upsilon", cells), &pair, |b, p| b.iter(|| upsilon(black_box(p), None)));
    }
    g.finish();
}

fn greene(c: &mut Criterion) {
    let mut g = c.benchmark_group("greene");
    for units in [4, 8, 12] {
        let m = gen::matrix(&mut gen::rng(3), 3, units, -2, 2);
        g.bench_with_input(BenchmarkId::new("mu_from_increasing", units), &m, |b, m| b.iter(|| mu_from_increasing(black_box(m), None)));
    }
    g.finish();
}

fn identities(c: &mut Criterion) {
    let mut g = c.benchmark_group("identities");
    g.sample_size(10);
    let bounds = Bounds { xy: 3, q: 4, z: 8 };
    for id in [Identity::Cauchy, Identity::LittlewoodZ] {
        g.bench_function(id.name(), |b| {
            b.iter(|| verify_identity(id, IdentityParams { n: 2, k: None, z: None }, bounds, None).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, dynamics, greene, identities);
criterion_main!(benches);
