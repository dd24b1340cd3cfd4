use criterion::{black_box, criterion_group, criterion_main, BatchSize, BenchmarkId, Criterion};
use fimod::apps::{arnold_table, coinvariant_table, MultiIndex};
use fimod::complexes::{check_inductive, complex_homology, verify_chain_homotopy, ColimitMode};
use fimod::fi::{clear_slice_cache, evaluate_slice_uncached};
use fimod::RingSpec;
use fimod_bench::{free, presentations};

fn slices(c: &mut Criterion) {
    let mut g = c.benchmark_group("slice");
    for ring in [RingSpec::Rational, RingSpec::Prime(3), RingSpec::Integer] {
        let ps = presentations(ring);
        g.bench_with_input(BenchmarkId::new("random-n5", ring), &ps, |b, ps| {
            b.iter(|| ps.iter().map(|p| evaluate_slice_uncached(p, 5).rank()).sum::<usize>())
        });
    }
    g.finish();
}

fn complexes(c: &mut Criterion) {
    let ps = presentations(RingSpec::Prime(5));
    c.bench_function("homotopy/random-a2-n4", |b| {
        b.iter(|| ps.iter().all(|p| verify_chain_homotopy(p, 2, 4).unwrap().passed()))
    });
    c.bench_function("homology/random-n5", |b| {
        b.iter_batched(
            clear_slice_cache,
            |_| ps.iter().map(|p| complex_homology(p, 5, &[0, 1]).unwrap().groups.len()).sum::<usize>(),
            BatchSize::PerIteration,
        )
    });
    let m2 = free(RingSpec::Rational, &[2]);
    let mut g = c.benchmark_group("inductive");
    for mode in [ColimitMode::Full, ColimitMode::FinalLayers] {
        g.bench_with_input(BenchmarkId::new(format!("{mode:?}"), 7), &mode, |b, &mode| {
            b.iter_batched(clear_slice_cache, |_| check_inductive(black_box(&m2), 2, 7, mode).unwrap().passed(), BatchSize::PerIteration)
        });
    }
    g.finish();
}

fn applications(c: &mut Criterion) {
    let j2 = MultiIndex::new(vec![2]).unwrap();
    c.bench_function("coinvariant/J2-n1..8", |b| b.iter(|| coinvariant_table(&j2, 1..=8, RingSpec::Rational).unwrap()));
    c.bench_function("arnold/m2-n3..8", |b| b.iter(|| arnold_table(2, 3..=8, RingSpec::Rational).unwrap()));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = slices, complexes, applications
}
criterion_main!(benches);
