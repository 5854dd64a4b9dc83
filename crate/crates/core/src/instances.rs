//! Benchmark instance generation: seeded scale-free influence graphs and
//! the generic two-stage differentiation property, plus a one-shot bench
//! runner reporting satisfiability and search statistics as JSON.

use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bn::InfluenceGraph;
use crate::candidates::ClauseBound;
use crate::error::{Error, Result};
use crate::synthesis::{synthesize, Mode, Observation, SynthesisOptions, SynthesisProblem};

/// Parameters of the random graph generator; the same seed always yields
/// the same graph.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct GeneratorParams {
    pub n: usize,
    pub d_max: usize,
    pub seed: u64,
    /// Probability that a generated edge is activating.
    pub sign_bias: f64,
}

impl GeneratorParams {
    pub fn new(n: usize, d_max: usize, seed: u64) -> Self {
        GeneratorParams {
            n,
            d_max,
            seed,
            sign_bias: 0.5,
        }
    }
}

/// Scale-free directed graph by preferential attachment on in-degree:
/// each new node sends one to three edges to existing nodes picked with
/// probability proportional to in-degree + 1 (capped at `d_max`), and
/// receives one edge from a uniformly random predecessor. Older and
/// popular nodes accumulate in-edges, giving the heavy-tailed in-degree
/// profile of gene and signalling networks.
pub fn gen_scale_free(params: &GeneratorParams) -> Result<InfluenceGraph> {
    let GeneratorParams { n, d_max, seed, sign_bias } = *params;
    if n < 2 {
        return Err(Error::InvalidParameter(format!("n = {n}, need at least 2 nodes")));
    }
    if d_max < 1 || d_max > n {
        return Err(Error::InvalidParameter(format!("d_max = {d_max} outside 1..={n}")));
    }
    if !(0.0..=1.0).contains(&sign_bias) {
        return Err(Error::InvalidParameter(format!("sign_bias = {sign_bias} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = InfluenceGraph::empty(n);
    let mut indeg = vec![0usize; n];
    let has_pair = |g: &InfluenceGraph, a: usize, b: usize| {
        g.has_edge(a, b, true) || g.has_edge(a, b, false)
    };
    for u in 1..n {
        let out = 1 + rng.random_range(0..3usize);
        for _ in 0..out.min(u) {
            let total: usize = (0..u)
                .filter(|&t| indeg[t] < d_max && !has_pair(&g, u, t))
                .map(|t| indeg[t] + 1)
                .sum();
            if total == 0 {
                break;
            }
            let mut r = rng.random_range(0..total);
            for t in 0..u {
                if indeg[t] >= d_max || has_pair(&g, u, t) {
                    continue;
                }
                let w = indeg[t] + 1;
                if r < w {
                    g.add_edge(u, t, rng.random_bool(sign_bias));
                    indeg[t] += 1;
                    break;
                }
                r -= w;
            }
        }
        // Every node gets regulated by some predecessor.
        if indeg[u] < d_max {
            let s = rng.random_range(0..u);
            if !has_pair(&g, s, u) {
                g.add_edge(s, u, rng.random_bool(sign_bias));
                indeg[u] += 1;
            }
        }
    }
    Ok(g)
}

/// The two-stage differentiation property: five empty observations where
/// observation 1 reaches 2 and 3, observation 2 reaches 4 and 5 but not
/// 3, and observations 3, 4, 5 are pairwise-distinct fixpoints.
pub fn differentiation_property(graph: &InfluenceGraph) -> SynthesisProblem {
    let observations = (1..=5)
        .map(|k| Observation::new(k.to_string(), []).expect("empty observation"))
        .collect();
    SynthesisProblem::new(
        graph.clone(),
        observations,
        vec![(0, 1), (0, 2), (1, 3), (1, 4)],
        vec![(1, 2)],
        vec![2, 3, 4],
        vec![],
    )
    .expect("constraint skeleton is well-formed")
    .with_distinct(vec![vec![2, 3, 4]])
    .expect("distinct group is well-formed")
}

/// Constraint families of the differentiation property.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConstraintKind {
    Pr,
    Nr,
    Fp,
    Tp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BenchStatus {
    Sat,
    Unsat,
    Timeout,
}

/// One bench run, serialized as the report format.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BenchReport {
    pub instance: String,
    pub params: GeneratorParams,
    pub constraints: Vec<ConstraintKind>,
    pub k: String,
    pub status: BenchStatus,
    pub wall_seconds: f64,
    pub solutions_found: u64,
    pub constraint_state_cells: u64,
    pub candidates_tried: u64,
}

/// Generates the instance, keeps the selected constraint families of the
/// differentiation property, and runs a first-solution search under the
/// time budget. A timeout is reported as data, not as an error.
pub fn bench_run(
    params: &GeneratorParams,
    constraints: &[ConstraintKind],
    k: ClauseBound,
    budget: std::time::Duration,
) -> Result<BenchReport> {
    let graph = gen_scale_free(params)?;
    let full = differentiation_property(&graph);
    let problem = SynthesisProblem::new(
        graph,
        full.observations().to_vec(),
        if constraints.contains(&ConstraintKind::Pr) { full.pr().to_vec() } else { vec![] },
        if constraints.contains(&ConstraintKind::Nr) { full.nr().to_vec() } else { vec![] },
        if constraints.contains(&ConstraintKind::Fp) { full.fp().to_vec() } else { vec![] },
        if constraints.contains(&ConstraintKind::Tp) { full.tp().to_vec() } else { vec![] },
    )?
    .with_distinct(if constraints.contains(&ConstraintKind::Fp) {
        full.distinct().to_vec()
    } else {
        vec![]
    })?
    .with_default_bound(k);

    let options = SynthesisOptions {
        mode: Mode::First,
        deadline: Some(Instant::now() + budget),
        ..SynthesisOptions::default()
    };
    let start = Instant::now();
    let (status, solutions, candidates) = match synthesize(&problem, &options) {
        Ok(outcome) => (
            if outcome.count > 0 { BenchStatus::Sat } else { BenchStatus::Unsat },
            outcome.count,
            outcome.stats.candidates_tried,
        ),
        Err(Error::Capacity { .. }) => (BenchStatus::Timeout, 0, 0),
        Err(e) => return Err(e),
    };
    Ok(BenchReport {
        instance: format!("scale-free-n{}-d{}-s{}", params.n, params.d_max, params.seed),
        params: *params,
        constraints: constraints.to_vec(),
        k: match k {
            ClauseBound::Max => "max".to_string(),
            ClauseBound::Limit(v) => v.to_string(),
        },
        status,
        wall_seconds: start.elapsed().as_secs_f64(),
        solutions_found: solutions,
        constraint_state_cells: problem.constraint_state_cells(),
        candidates_tried: candidates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_respects_contract() {
        let params = GeneratorParams::new(10, 3, 7);
        let g = gen_scale_free(&params).unwrap();
        assert_eq!(g.dimension(), 10);
        for i in 0..10 {
            assert!(g.in_degree(i) <= 3, "node {i} exceeds d_max");
        }
        let g2 = gen_scale_free(&params).unwrap();
        assert_eq!(g, g2);
    }

    #[test]
    fn generator_matches_large_regime() {
        let params = GeneratorParams::new(50, 15, 1);
        let g = gen_scale_free(&params).unwrap();
        assert!((0..50).all(|i| g.in_degree(i) <= 15));
    }

    #[test]
    fn generator_rejects_bad_params() {
        assert!(gen_scale_free(&GeneratorParams::new(1, 1, 0)).is_err());
        assert!(gen_scale_free(&GeneratorParams::new(5, 0, 0)).is_err());
        assert!(gen_scale_free(&GeneratorParams::new(5, 6, 0)).is_err());
    }

    #[test]
    fn differentiation_property_shape() {
        let g = gen_scale_free(&GeneratorParams::new(6, 2, 3)).unwrap();
        let p = differentiation_property(&g);
        assert_eq!(p.observations().len(), 5);
        assert_eq!(p.pr().len(), 4);
        assert_eq!(p.nr().len(), 1);
        assert_eq!(p.fp().len(), 3);
        assert!(p.tp().is_empty());
        assert!(p.observations().iter().all(|o| o.values().is_empty()));
    }
}
