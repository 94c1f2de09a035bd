use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use paramod_bench::{lattices, pol, vectors};
use paramod_core::gspaces::reduce_to_standard;
use paramod_core::invariants::divisors;
use paramod_core::orbits_lines::{canon_lev, canon_pol, enumerate_lev, enumerate_pol};

const TYPES: &[&[u64]] = &[&[1, 2], &[1, 2, 6], &[1, 2, 6, 30]];

fn bench_lines(c: &mut Criterion) {
    let mut group = c.benchmark_group("lines");
    for e in TYPES {
        let p = pol(e);
        let vs = vectors(&p, 64, 1000, 1);
        group.bench_with_input(BenchmarkId::new("divisors", &p), &vs, |b, vs| {
            b.iter(|| vs.iter().map(|v| divisors(black_box(v), &p).unwrap()).count())
        });
        group.bench_with_input(BenchmarkId::new("canon_pol", &p), &vs, |b, vs| {
            b.iter(|| vs.iter().map(|v| canon_pol(black_box(v), &p).unwrap()).count())
        });
        group.bench_with_input(BenchmarkId::new("canon_lev", &p), &vs, |b, vs| {
            b.iter(|| vs.iter().map(|v| canon_lev(black_box(v), &p).unwrap()).count())
        });
    }
    group.finish();
}

fn bench_enumeration(c: &mut Criterion) {
    let p = pol(&[1, 4, 24]);
    c.bench_function("enumerate_pol (1,4,24)", |b| b.iter(|| enumerate_pol(black_box(&p)).len()));
    c.bench_function("enumerate_lev (1,4,24)", |b| b.iter(|| enumerate_lev(black_box(&p)).len()));
}

fn bench_gspaces(c: &mut Criterion) {
    let mut group = c.benchmark_group("reduce_to_standard");
    for e in TYPES {
        let p = pol(e);
        let ls = lattices(&p, 16, 20);
        group.bench_with_input(BenchmarkId::from_parameter(&p), &ls, |b, ls| {
            b.iter(|| ls.iter().map(|l| reduce_to_standard(black_box(l)).unwrap()).count())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_lines, bench_enumeration, bench_gspaces);
criterion_main!(benches);
