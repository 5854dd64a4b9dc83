use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use bnsynth_bench::{sample_configuration, sample_network};
use bnsynth_core::{attractors, is_reachable, smallest_trap_space};

fn bench_closure(c: &mut Criterion) {
    let mut group = c.benchmark_group("smallest_trap_space");
    for n in [12usize, 25, 50] {
        let (_, f) = sample_network(n, 5, 11);
        let x = sample_configuration(n, 0xfeed);
        group.bench_function(format!("n{n}"), |b| {
            b.iter(|| smallest_trap_space(black_box(&f), black_box(&x)).unwrap())
        });
    }
    group.finish();
}

fn bench_reachability(c: &mut Criterion) {
    let mut group = c.benchmark_group("is_reachable");
    for n in [12usize, 25, 50] {
        let (_, f) = sample_network(n, 5, 13);
        let x = sample_configuration(n, 0xdead);
        let y = sample_configuration(n, 0xbeef);
        group.bench_function(format!("n{n}"), |b| {
            b.iter(|| is_reachable(black_box(&f), black_box(&x), black_box(&y)).unwrap())
        });
    }
    group.finish();
}

fn bench_attractors(c: &mut Criterion) {
    let mut group = c.benchmark_group("attractors");
    group.sample_size(20);
    for n in [8usize, 12] {
        let (_, f) = sample_network(n, 4, 17);
        group.bench_function(format!("n{n}"), |b| {
            b.iter(|| attractors(black_box(&f)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_closure, bench_reachability, bench_attractors);
criterion_main!(benches);
