//! Seeded random generation shared by the property and acceptance tests:
//! networks are drawn uniformly from the canonical candidate streams of a
//! random influence graph, so every generated network is canonical by
//! construction and the seed pins the whole instance.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use bnsynth_core::synthesis::{Observation, SynthesisProblem};
use bnsynth_core::{enumerate_local_candidates, BooleanNetwork, ClauseBound, InfluenceGraph};

pub fn rng_from(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, max_indeg: usize) -> InfluenceGraph {
    let mut g = InfluenceGraph::empty(n);
    for target in 0..n {
        let d = rng.random_range(0..=max_indeg.min(n));
        let mut sources: Vec<usize> = (0..n).collect();
        for _ in 0..d {
            let k = rng.random_range(0..sources.len());
            let source = sources.swap_remove(k);
            g.add_edge(source, target, rng.random_bool(0.5));
        }
    }
    g
}

pub fn random_network(rng: &mut ChaCha8Rng, graph: &InfluenceGraph, bound: ClauseBound) -> BooleanNetwork {
    let n = graph.dimension();
    let mut locals = Vec::with_capacity(n);
    for node in 0..n {
        let count = enumerate_local_candidates(graph, node, bound).unwrap().count();
        let pick = rng.random_range(0..count);
        let dnf = enumerate_local_candidates(graph, node, bound)
            .unwrap()
            .nth(pick)
            .unwrap();
        locals.push(dnf);
    }
    BooleanNetwork::new(locals).unwrap()
}

pub fn random_configuration(rng: &mut ChaCha8Rng, n: usize) -> bnsynth_core::Configuration {
    bnsynth_core::Configuration::new((0..n).map(|_| rng.random_bool(0.5)).collect())
}

/// Random problem with partial observations and mixed PR/NR/FP/TP
/// constraints, sized for the exhaustive oracle.
pub fn random_problem(rng: &mut ChaCha8Rng, n: usize, max_indeg: usize) -> SynthesisProblem {
    let graph = random_graph(rng, n, max_indeg);
    let p = rng.random_range(2..=3);
    let mut observations = Vec::with_capacity(p);
    for m in 0..p {
        let mut pairs = Vec::new();
        for i in 0..n {
            // Bind most components to keep the oracle's completion space
            // within budget.
            if rng.random_bool(0.7) {
                pairs.push((i, rng.random_bool(0.5)));
            }
        }
        observations.push(Observation::new(format!("o{m}"), pairs).unwrap());
    }
    let mut pr = Vec::new();
    let mut nr = Vec::new();
    let mut fp = Vec::new();
    let mut tp = Vec::new();
    for a in 0..p {
        for b in 0..p {
            if a != b && rng.random_bool(0.25) {
                pr.push((a, b));
            } else if a != b && rng.random_bool(0.15) {
                nr.push((a, b));
            }
        }
    }
    for m in 0..p {
        if rng.random_bool(0.4) {
            fp.push(m);
        } else if rng.random_bool(0.4) {
            tp.push((m, rng.random_range(0..n)));
        }
    }
    SynthesisProblem::new(graph, observations, pr, nr, fp, tp).unwrap()
}
