//! Constructive seeding for satisfiability runs on benchmark-shaped
//! problems (every observation empty).
//!
//! Branching dynamics need degrees of freedom that survive the most
//! permissive closure: a 2-cycle whose sign product is positive gives a
//! bistable pair (two pair-local fixpoints plus an unstable state from
//! which both are reachable, while the fixpoint values freeze the pair).
//! Building a network from up to two vertex-disjoint such cycles with
//! every other node constant, and assigning each observation a pair-state
//! tuple, covers the differentiation-style constraint patterns. Every
//! emitted solution is certified by [`verify_solution`] first; failure to
//! construct just falls back to the complete search.

use super::{Solution, SynthesisProblem};
use crate::bn::{BooleanNetwork, Clause, Configuration, MonotoneDnf, NodeIdx, SignedLiteral};
use crate::candidates::{enumerate_local_candidates, ClauseBound};

#[derive(Debug, Clone, Copy)]
struct CyclePair {
    a: NodeIdx,
    b: NodeIdx,
    /// Sign of both edges (a→b and b→a share it in a positive cycle).
    positive: bool,
}

impl CyclePair {
    /// Pair-local states: two fixpoints and one unstable state.
    fn states(&self) -> [(bool, bool); 3] {
        if self.positive {
            [(false, false), (true, true), (false, true)]
        } else {
            [(false, true), (true, false), (false, false)]
        }
    }
}

/// Pair state index: 0 and 1 are the fixpoints, 2 the unstable state.
type StateIdx = usize;

const MAX_COMBOS: usize = 100_000;

pub(super) fn try_construct(problem: &SynthesisProblem) -> Option<Solution> {
    if !problem.observations().iter().all(|o| o.values().is_empty()) {
        return None;
    }
    let n = problem.dimension();
    let p = problem.observations().len();
    if p == 0 {
        // Any compatible network works; take the all-false constants.
        let f = BooleanNetwork::new(vec![MonotoneDnf::Const(false); n]).ok()?;
        let solution = Solution {
            witness: Some(Vec::new()),
            indices: vec![0; n],
            network: f,
        };
        return super::verify_solution(problem, &solution).then_some(solution);
    }

    let pairs = positive_two_cycles(problem);
    let mut attempts = 0usize;

    // Ladder: constants only, one bistable pair, two disjoint pairs.
    if let Some(s) = try_with_pairs(problem, &[], &mut attempts) {
        return Some(s);
    }
    for (k, &p1) in pairs.iter().enumerate().take(32) {
        if let Some(s) = try_with_pairs(problem, &[p1], &mut attempts) {
            return Some(s);
        }
        for &p2 in pairs.iter().skip(k + 1).take(32) {
            if p2.a == p1.a || p2.a == p1.b || p2.b == p1.a || p2.b == p1.b {
                continue;
            }
            if let Some(s) = try_with_pairs(problem, &[p1, p2], &mut attempts) {
                return Some(s);
            }
            if attempts > MAX_COMBOS {
                return None;
            }
        }
    }
    None
}

fn positive_two_cycles(problem: &SynthesisProblem) -> Vec<CyclePair> {
    let g = problem.graph();
    let n = g.dimension();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for positive in [true, false] {
                if g.has_edge(a, b, positive) && g.has_edge(b, a, positive) {
                    // Literal functions need one clause available.
                    let room = |node: NodeIdx| !matches!(problem.bound_for(node), ClauseBound::Limit(0));
                    if room(a) && room(b) {
                        out.push(CyclePair { a, b, positive });
                    }
                }
            }
        }
    }
    out
}

fn try_with_pairs(problem: &SynthesisProblem, pairs: &[CyclePair], attempts: &mut usize) -> Option<Solution> {
    let n = problem.dimension();
    let p = problem.observations().len();
    let mut locals: Vec<MonotoneDnf> = vec![MonotoneDnf::Const(false); n];
    for pair in pairs {
        // Edge a→b drives f_b, and symmetrically.
        locals[pair.b] = literal_fn(pair.a, pair.positive);
        locals[pair.a] = literal_fn(pair.b, pair.positive);
    }
    let network = BooleanNetwork::new(locals).ok()?;

    let is_fp_obs: Vec<bool> = (0..p).map(|m| problem.fp().contains(&m)).collect();
    let choices: Vec<StateIdx> = if pairs.is_empty() { vec![0] } else { vec![0, 1, 2] };
    // Odometer over per-(observation, pair) state assignments.
    let slots = p * pairs.len().max(1);
    let mut digits = vec![0usize; slots];
    loop {
        *attempts += 1;
        if *attempts > MAX_COMBOS {
            return None;
        }
        if pairs.is_empty() {
            let assignment: Vec<Vec<StateIdx>> = vec![Vec::new(); p];
            if let Some(s) = finish(problem, &network, pairs, &assignment) {
                return Some(s);
            }
            return None;
        }
        let assignment: Vec<Vec<StateIdx>> = (0..p)
            .map(|m| digits[m * pairs.len()..(m + 1) * pairs.len()].to_vec())
            .collect();
        let valid = (0..p).all(|m| {
            // Fixpoint observations must sit on pair fixpoints.
            !is_fp_obs[m] || assignment[m].iter().all(|&s| s < 2)
        });
        if valid && precheck(problem, pairs, &assignment) {
            if let Some(s) = finish(problem, &network, pairs, &assignment) {
                return Some(s);
            }
        }
        // Advance odometer.
        let mut k = 0;
        loop {
            if k == slots {
                return None;
            }
            digits[k] += 1;
            if digits[k] < choices.len() {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}

fn literal_fn(var: NodeIdx, positive: bool) -> MonotoneDnf {
    MonotoneDnf::new(vec![Clause::new(vec![SignedLiteral::new(var, positive)]).unwrap()]).unwrap()
}

/// Exact reachability shape of the construction: from a state, pairs at a
/// fixpoint value are frozen and unstable pairs are fully free, so m
/// reaches m' iff every frozen pair keeps its value.
fn precheck(problem: &SynthesisProblem, pairs: &[CyclePair], assignment: &[Vec<StateIdx>]) -> bool {
    let frozen_agree = |m: usize, m2: usize| {
        (0..pairs.len()).all(|k| assignment[m][k] == 2 || assignment[m][k] == assignment[m2][k])
    };
    for &(a, b) in problem.pr() {
        if !frozen_agree(a, b) {
            return false;
        }
    }
    for &(a, b) in problem.nr() {
        if frozen_agree(a, b) {
            return false;
        }
    }
    for group in problem.distinct() {
        for (i, &a) in group.iter().enumerate() {
            for &b in &group[i + 1..] {
                if assignment[a] == assignment[b] {
                    return false;
                }
            }
        }
    }
    // A trap-pinned component must not sit inside an unstable pair.
    for &(m, i) in problem.tp() {
        for (k, pair) in pairs.iter().enumerate() {
            if assignment[m][k] == 2 && (pair.a == i || pair.b == i) {
                return false;
            }
        }
    }
    true
}

fn finish(
    problem: &SynthesisProblem,
    network: &BooleanNetwork,
    pairs: &[CyclePair],
    assignment: &[Vec<StateIdx>],
) -> Option<Solution> {
    let n = problem.dimension();
    let witness: Vec<Configuration> = assignment
        .iter()
        .map(|states| {
            let mut bits = vec![false; n];
            for (k, pair) in pairs.iter().enumerate() {
                let (va, vb) = pair.states()[states[k]];
                bits[pair.a] = va;
                bits[pair.b] = vb;
            }
            Configuration::new(bits)
        })
        .collect();
    let indices = (0..n)
        .map(|i| candidate_index(problem, i, network.local(i)))
        .collect::<Option<Vec<u64>>>()?;
    let solution = Solution {
        network: network.clone(),
        witness: Some(witness),
        indices,
    };
    super::verify_solution(problem, &solution).then_some(solution)
}

/// Position of a constant or single-literal function in the node's
/// candidate stream; those all appear within the first 2 + 2d items.
fn candidate_index(problem: &SynthesisProblem, node: NodeIdx, dnf: &MonotoneDnf) -> Option<u64> {
    let iter = enumerate_local_candidates(problem.graph(), node, problem.bound_for(node)).ok()?;
    iter.take(2 + 130)
        .position(|c| &c == dnf)
        .map(|i| i as u64)
}
