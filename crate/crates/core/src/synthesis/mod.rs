//! Complete, non-redundant synthesis of canonical locally-monotonic
//! Boolean networks from an influence graph and dynamical constraints.
//!
//! A problem fixes an influence graph G, partial observations, sets of
//! positive/negative reachability pairs, fixpoint observations and
//! trap-space fixation pairs, plus a clause bound. A network f is a
//! solution when G(f) ⊆ G and one joint completion of the observations
//! satisfies every constraint simultaneously. Candidates are canonical,
//! so the enumeration is non-redundant by construction: two emitted
//! networks always differ on some configuration.

mod motif;
mod search;
mod witness;

use std::collections::BTreeMap;
use std::time::Instant;

use crate::bn::{BooleanNetwork, Configuration, Hypercube, InfluenceGraph, NodeIdx};
use crate::candidates::{candidate_count_for, ClauseBound};
use crate::error::{Error, Result};
use crate::semantics::{is_fixpoint, is_reachable, smallest_trap_space};

pub(crate) use witness::WitnessSearch;

/// A named partial observation of a configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Observation {
    name: String,
    values: BTreeMap<NodeIdx, bool>,
}

impl Observation {
    /// Builds an observation from (component, value) pairs; a component
    /// bound to both values is rejected.
    pub fn new(name: impl Into<String>, pairs: impl IntoIterator<Item = (NodeIdx, bool)>) -> Result<Self> {
        let name = name.into();
        let mut values = BTreeMap::new();
        for (i, v) in pairs {
            match values.insert(i, v) {
                Some(old) if old != v => {
                    return Err(Error::validation(
                        "contradictory_observation",
                        format!("observations.{name}"),
                        format!("component {} bound to both values", i + 1),
                    ));
                }
                _ => {}
            }
        }
        Ok(Observation { name, values })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn values(&self) -> &BTreeMap<NodeIdx, bool> {
        &self.values
    }

    /// The observation as a hypercube: observed components fixed, the
    /// rest free.
    pub fn cube(&self, n: usize) -> Hypercube {
        let mut h = Hypercube::free(n);
        for (&i, &v) in &self.values {
            h.set(i, crate::bn::Cell::from_bool(v));
        }
        h
    }

    /// Whether `x` extends this observation.
    pub fn matched_by(&self, x: &Configuration) -> bool {
        self.values.iter().all(|(&i, &v)| x.get(i) == v)
    }
}

/// The synthesis problem: graph, observations and constraint sets.
#[derive(Debug, Clone)]
pub struct SynthesisProblem {
    graph: InfluenceGraph,
    observations: Vec<Observation>,
    pr: Vec<(usize, usize)>,
    nr: Vec<(usize, usize)>,
    fp: Vec<usize>,
    tp: Vec<(usize, NodeIdx)>,
    distinct: Vec<Vec<usize>>,
    default_bound: ClauseBound,
    node_bounds: BTreeMap<NodeIdx, ClauseBound>,
}

impl SynthesisProblem {
    pub fn new(
        graph: InfluenceGraph,
        observations: Vec<Observation>,
        pr: Vec<(usize, usize)>,
        nr: Vec<(usize, usize)>,
        fp: Vec<usize>,
        tp: Vec<(usize, NodeIdx)>,
    ) -> Result<Self> {
        let p = observations.len();
        let n = graph.dimension();
        let check_obs = |m: usize, what: &str| -> Result<()> {
            if m >= p {
                return Err(Error::validation(
                    "unknown_observation",
                    what.to_string(),
                    format!("observation index {m} out of range (have {p})"),
                ));
            }
            Ok(())
        };
        for &(a, b) in &pr {
            check_obs(a, "constraints.reach")?;
            check_obs(b, "constraints.reach")?;
        }
        for &(a, b) in &nr {
            check_obs(a, "constraints.nonreach")?;
            check_obs(b, "constraints.nonreach")?;
        }
        for &m in &fp {
            check_obs(m, "constraints.fixpoint")?;
        }
        for &(m, i) in &tp {
            check_obs(m, "constraints.trap")?;
            if i >= n {
                return Err(Error::IndexOutOfRange { index: i + 1, n });
            }
        }
        for o in &observations {
            if let Some((&i, _)) = o.values.last_key_value() {
                if i >= n {
                    return Err(Error::IndexOutOfRange { index: i + 1, n });
                }
            }
        }
        Ok(SynthesisProblem {
            graph,
            observations,
            pr,
            nr,
            fp,
            tp,
            distinct: Vec::new(),
            default_bound: ClauseBound::Max,
            node_bounds: BTreeMap::new(),
        })
    }

    pub fn with_distinct(mut self, groups: Vec<Vec<usize>>) -> Result<Self> {
        for g in &groups {
            for &m in g {
                if m >= self.observations.len() {
                    return Err(Error::validation(
                        "unknown_observation",
                        "options.distinct",
                        format!("observation index {m} out of range"),
                    ));
                }
            }
        }
        self.distinct = groups;
        Ok(self)
    }

    pub fn with_default_bound(mut self, bound: ClauseBound) -> Self {
        self.default_bound = bound;
        self
    }

    pub fn with_node_bound(mut self, node: NodeIdx, bound: ClauseBound) -> Self {
        self.node_bounds.insert(node, bound);
        self
    }

    pub fn graph(&self) -> &InfluenceGraph {
        &self.graph
    }

    pub fn dimension(&self) -> usize {
        self.graph.dimension()
    }

    pub fn observations(&self) -> &[Observation] {
        &self.observations
    }

    pub fn observation_index(&self, name: &str) -> Option<usize> {
        self.observations.iter().position(|o| o.name() == name)
    }

    pub fn pr(&self) -> &[(usize, usize)] {
        &self.pr
    }

    pub fn nr(&self) -> &[(usize, usize)] {
        &self.nr
    }

    pub fn fp(&self) -> &[usize] {
        &self.fp
    }

    pub fn tp(&self) -> &[(usize, NodeIdx)] {
        &self.tp
    }

    pub fn distinct(&self) -> &[Vec<usize>] {
        &self.distinct
    }

    pub fn bound_for(&self, node: NodeIdx) -> ClauseBound {
        self.node_bounds.get(&node).copied().unwrap_or(self.default_bound)
    }

    pub fn default_bound(&self) -> ClauseBound {
        self.default_bound
    }

    /// Problem with a different global clause bound, keeping per-node
    /// overrides.
    pub fn rebound(&self, bound: ClauseBound) -> Self {
        let mut p = self.clone();
        p.default_bound = bound;
        p
    }

    /// Size of the candidate space: the product over nodes of the local
    /// candidate counts (the Dedekind product for single-sign in-edges
    /// and an unbounded clause count).
    pub fn candidate_space_size(&self) -> Result<u128> {
        let mut acc: u128 = 1;
        for i in 0..self.dimension() {
            acc = acc.saturating_mul(candidate_count_for(&self.graph, i, self.bound_for(i))? as u128);
        }
        Ok(acc)
    }

    /// Static footprint of the constraint state, in hypercube cells: one
    /// n-cell meta-configuration per reachability, fixpoint and trap
    /// constraint, n of them per non-reachability (one per lock
    /// iteration), plus one configuration per observation.
    pub fn constraint_state_cells(&self) -> u64 {
        let n = self.dimension() as u64;
        let p = self.observations.len() as u64;
        n * self.pr.len() as u64
            + n * n * self.nr.len() as u64
            + n * self.fp.len() as u64
            + n * self.tp.len() as u64
            + n * p
    }
}

/// What [`synthesize`] is asked to produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Every solution, exactly once.
    Enumerate,
    /// The exact number of solutions, without materializing them.
    Count,
    /// Stop at the first solution found (satisfiability check).
    First,
}

#[derive(Debug, Clone)]
pub struct SynthesisOptions {
    pub mode: Mode,
    /// In enumerate mode, stop after this many solutions.
    pub limit: Option<u64>,
    /// Worker count; the solution set and count are worker-independent,
    /// the emission order is guaranteed only with one worker or `sorted`.
    pub jobs: usize,
    /// Sort emitted solutions by their per-node candidate indices.
    pub sorted: bool,
    /// Attach the witness configurations to emitted solutions.
    pub with_witness: bool,
    /// Wall-clock budget; exceeding it aborts with a capacity error.
    pub deadline: Option<Instant>,
}

impl Default for SynthesisOptions {
    fn default() -> Self {
        SynthesisOptions {
            mode: Mode::Enumerate,
            limit: None,
            jobs: 1,
            sorted: false,
            with_witness: true,
            deadline: None,
        }
    }
}

/// One synthesized network, with the witness completion that certified it
/// and its per-node candidate indices (the lexicographic emission key).
#[derive(Debug, Clone)]
pub struct Solution {
    pub network: BooleanNetwork,
    pub witness: Option<Vec<Configuration>>,
    pub indices: Vec<u64>,
}

/// Search counters, reported alongside results and in capacity errors.
#[derive(Debug, Clone, Copy, Default)]
pub struct SearchStats {
    pub candidates_tried: u64,
    pub leaves_checked: u64,
    pub completions_tried: u64,
    pub reach_checks: u64,
    pub solutions_found: u64,
    pub constraint_state_cells: u64,
}

impl SearchStats {
    pub(crate) fn absorb(&mut self, other: &SearchStats) {
        self.candidates_tried += other.candidates_tried;
        self.leaves_checked += other.leaves_checked;
        self.completions_tried += other.completions_tried;
        self.reach_checks += other.reach_checks;
        self.solutions_found += other.solutions_found;
    }
}

#[derive(Debug)]
pub struct SynthesisOutcome {
    pub solutions: Vec<Solution>,
    pub count: u64,
    pub stats: SearchStats,
}

/// Enumerates, counts, or finds one canonical network f with G(f) ⊆ G
/// satisfying the problem. Single-worker emission order is lexicographic
/// over the per-node candidate indices.
pub fn synthesize(problem: &SynthesisProblem, options: &SynthesisOptions) -> Result<SynthesisOutcome> {
    search::run(problem, options)
}

/// Searches one joint completion of the observations under which `f`
/// satisfies every constraint; `None` when no completion exists.
pub fn check_problem(f: &BooleanNetwork, problem: &SynthesisProblem) -> Result<Option<Vec<Configuration>>> {
    if f.dimension() != problem.dimension() {
        return Err(Error::DimensionMismatch {
            expected: problem.dimension(),
            found: f.dimension(),
        });
    }
    let mut stats = SearchStats::default();
    let ws = WitnessSearch::new(problem);
    ws.find(f, None, &mut stats, None)
}

/// Recomputes everything certifying a solution: canonicity of each local
/// function, G(f) ⊆ G, witness extension of every observation, and every
/// PR/NR/FP/TP and distinctness constraint.
pub fn verify_solution(problem: &SynthesisProblem, solution: &Solution) -> bool {
    let f = &solution.network;
    let Some(witness) = &solution.witness else {
        return false;
    };
    if f.dimension() != problem.dimension() || witness.len() != problem.observations.len() {
        return false;
    }
    if f.locals().iter().any(|dnf| !crate::bn::is_canonical(dnf.clauses())) {
        return false;
    }
    match f.influence_graph().is_subgraph_of(&problem.graph) {
        Ok(true) => {}
        _ => return false,
    }
    for (o, x) in problem.observations.iter().zip(witness) {
        if x.dimension() != f.dimension() || !o.matched_by(x) {
            return false;
        }
    }
    for &(a, b) in &problem.pr {
        if !is_reachable(f, &witness[a], &witness[b]).unwrap_or(false) {
            return false;
        }
    }
    for &(a, b) in &problem.nr {
        if is_reachable(f, &witness[a], &witness[b]).unwrap_or(true) {
            return false;
        }
    }
    for &m in &problem.fp {
        if !is_fixpoint(f, &witness[m]).unwrap_or(false) {
            return false;
        }
    }
    // One closure per observation covers all its trap pairs.
    let mut tp_obs: Vec<usize> = problem.tp.iter().map(|&(m, _)| m).collect();
    tp_obs.sort_unstable();
    tp_obs.dedup();
    for m in tp_obs {
        let Ok(t) = smallest_trap_space(f, &witness[m]) else {
            return false;
        };
        for &(m2, i) in &problem.tp {
            if m2 == m && t.get(i).is_free() {
                return false;
            }
        }
    }
    for group in &problem.distinct {
        for (k, &a) in group.iter().enumerate() {
            for &b in &group[k + 1..] {
                if witness[a] == witness[b] {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bn::{Clause, SignedLiteral};
    use crate::candidates::ClauseBound;

    fn lit_fn(var: NodeIdx, positive: bool) -> MonotoneDnf {
        MonotoneDnf::new(vec![Clause::new(vec![SignedLiteral::new(var, positive)]).unwrap()]).unwrap()
    }

    /// n = 2, edges 1→2 (+) and 2→1 (+), observations A = 11 and B = 00,
    /// both fixpoints.
    fn tiny_problem() -> SynthesisProblem {
        let mut g = InfluenceGraph::empty(2);
        g.add_edge(0, 1, true);
        g.add_edge(1, 0, true);
        SynthesisProblem::new(
            g,
            vec![
                Observation::new("A", [(0, true), (1, true)]).unwrap(),
                Observation::new("B", [(0, false), (1, false)]).unwrap(),
            ],
            vec![],
            vec![],
            vec![0, 1],
            vec![],
        )
        .unwrap()
    }

    use crate::bn::MonotoneDnf;

    #[test]
    fn check_problem_tiny_examples() {
        let problem = tiny_problem();
        let f = BooleanNetwork::new(vec![lit_fn(1, true), lit_fn(0, true)]).unwrap();
        let witness = check_problem(&f, &problem).unwrap().unwrap();
        assert_eq!(witness[0].to_string(), "11");
        assert_eq!(witness[1].to_string(), "00");

        let f_bad = BooleanNetwork::new(vec![MonotoneDnf::Const(true), lit_fn(0, true)]).unwrap();
        assert!(check_problem(&f_bad, &problem).unwrap().is_none());
    }

    #[test]
    fn check_problem_empty_constraints_uses_observations() {
        let mut g = InfluenceGraph::empty(2);
        g.add_edge(0, 1, true);
        let problem = SynthesisProblem::new(
            g,
            vec![Observation::new("A", [(0, true), (1, false)]).unwrap()],
            vec![],
            vec![],
            vec![],
            vec![],
        )
        .unwrap();
        let f = BooleanNetwork::new(vec![MonotoneDnf::Const(true), lit_fn(0, true)]).unwrap();
        let witness = check_problem(&f, &problem).unwrap().unwrap();
        assert_eq!(witness[0].to_string(), "10");
    }

    #[test]
    fn synthesize_tiny_instance_exactly_one_solution() {
        let problem = tiny_problem();
        let outcome = synthesize(&problem, &SynthesisOptions::default()).unwrap();
        assert_eq!(outcome.count, 1);
        let expected = BooleanNetwork::new(vec![lit_fn(1, true), lit_fn(0, true)]).unwrap();
        assert_eq!(outcome.solutions[0].network, expected);
        assert!(verify_solution(&problem, &outcome.solutions[0]));
    }

    #[test]
    fn synthesize_unsat_single_node() {
        let g = InfluenceGraph::empty(1);
        let problem = SynthesisProblem::new(
            g,
            vec![
                Observation::new("P", [(0, true)]).unwrap(),
                Observation::new("Q", [(0, false)]).unwrap(),
            ],
            vec![],
            vec![],
            vec![0, 1],
            vec![],
        )
        .unwrap();
        let outcome = synthesize(&problem, &SynthesisOptions { mode: Mode::Count, ..Default::default() }).unwrap();
        assert_eq!(outcome.count, 0);
        let first = synthesize(&problem, &SynthesisOptions { mode: Mode::First, ..Default::default() }).unwrap();
        assert!(first.solutions.is_empty());
    }

    #[test]
    fn verify_solution_rejects_tampering() {
        let problem = tiny_problem();
        let outcome = synthesize(&problem, &SynthesisOptions::default()).unwrap();
        let good = &outcome.solutions[0];
        assert!(verify_solution(&problem, good));

        // Flip one observed witness bit.
        let mut bad = good.clone();
        if let Some(w) = &mut bad.witness {
            let v = w[0].get(0);
            w[0].set(0, !v);
        }
        assert!(!verify_solution(&problem, &bad));

        // Replace a local function with a constant: B = 00 stays a
        // fixpoint but A = 11 does not.
        let mut bad = good.clone();
        bad.network = BooleanNetwork::new(vec![MonotoneDnf::Const(false), lit_fn(0, true)]).unwrap();
        assert!(!verify_solution(&problem, &bad));
    }

    #[test]
    fn candidate_space_size_is_dedekind_product() {
        let problem = tiny_problem();
        // Two nodes with one positive input each: 3 * 3.
        assert_eq!(problem.candidate_space_size().unwrap(), 9);
        assert_eq!(
            problem.rebound(ClauseBound::Limit(0)).candidate_space_size().unwrap(),
            4
        );
    }

    #[test]
    fn constraint_state_cells_accounts_nr_quadratically() {
        let g = InfluenceGraph::empty(4);
        let obs = vec![
            Observation::new("a", []).unwrap(),
            Observation::new("b", []).unwrap(),
        ];
        let base = SynthesisProblem::new(g.clone(), obs.clone(), vec![(0, 1)], vec![], vec![0], vec![]).unwrap();
        let with_nr = SynthesisProblem::new(g, obs, vec![(0, 1)], vec![(1, 0)], vec![0], vec![]).unwrap();
        assert_eq!(
            with_nr.constraint_state_cells() - base.constraint_state_cells(),
            16
        );
    }
}
