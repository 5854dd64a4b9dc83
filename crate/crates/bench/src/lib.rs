//! Shared helpers for the benchmark targets: deterministic random
//! networks drawn from the canonical candidate streams.

use bnsynth_core::instances::{gen_scale_free, GeneratorParams};
use bnsynth_core::{enumerate_local_candidates, BooleanNetwork, ClauseBound, Configuration, InfluenceGraph};

/// Deterministic pseudo-random network over a generated scale-free graph.
pub fn sample_network(n: usize, d_max: usize, seed: u64) -> (InfluenceGraph, BooleanNetwork) {
    let graph = gen_scale_free(&GeneratorParams::new(n, d_max, seed)).unwrap();
    let mut state = seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(1);
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let locals = (0..n)
        .map(|node| {
            let bound = ClauseBound::Limit(2);
            let count = enumerate_local_candidates(&graph, node, bound).unwrap().count();
            let pick = (next() % count as u64) as usize;
            enumerate_local_candidates(&graph, node, bound).unwrap().nth(pick).unwrap()
        })
        .collect();
    (graph.clone(), BooleanNetwork::new(locals).unwrap())
}

pub fn sample_configuration(n: usize, seed: u64) -> Configuration {
    Configuration::new((0..n).map(|i| (seed >> (i % 64)) & 1 == 1).collect())
}
