//! Complete, non-redundant enumeration of canonical local functions.
//!
//! For a node of the influence graph, the candidate space is every
//! canonical [`MonotoneDnf`] over the node's signed in-edges with at most
//! `k` clauses: constants first, then candidates by clause count, then by
//! the canonical clause order. With an unbounded clause count the stream
//! size for d single-sign inputs is the Dedekind number of d.
//!
//! The stream is lazy: candidate spaces grow like Dedekind numbers, and
//! the synthesis search must be able to walk prefixes of very large
//! spaces (e.g. d = 15 with a small clause bound) without materializing
//! anything.

use crate::bn::{Clause, InfluenceGraph, MonotoneDnf, NodeIdx, SignedLiteral};
use crate::error::{Error, Result};

/// Per-node bound on the number of DNF clauses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClauseBound {
    /// The Sperner bound binom(d, d/2): every locally-monotonic function
    /// over the allowed inputs is reachable.
    Max,
    Limit(usize),
}

impl ClauseBound {
    fn resolve(self, d: usize) -> u128 {
        let sperner = binomial(d as u128, (d / 2) as u128);
        match self {
            ClauseBound::Max => sperner,
            ClauseBound::Limit(k) => sperner.min(k as u128),
        }
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n - k.min(n));
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Sign choices an in-edge set allows for one variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum SignOpts {
    Pos,
    Neg,
    Both,
}

impl SignOpts {
    fn first(self) -> bool {
        !matches!(self, SignOpts::Neg)
    }
}

/// The signed inputs available to one node, sorted by variable index.
#[derive(Debug, Clone)]
pub struct AllowedInputs {
    vars: Vec<NodeIdx>,
    opts: Vec<SignOpts>,
}

impl AllowedInputs {
    pub fn for_node(graph: &InfluenceGraph, node: NodeIdx) -> Result<Self> {
        let edges = graph.in_edges(node);
        let mut vars: Vec<NodeIdx> = edges.iter().map(|l| l.var).collect();
        vars.dedup();
        if vars.len() > 64 {
            return Err(Error::Capacity {
                operation: "enumerate_local_candidates",
                message: format!("in-degree {} exceeds the supported 64", vars.len()),
            });
        }
        let opts = vars
            .iter()
            .map(|&v| {
                let pos = edges.iter().any(|l| l.var == v && l.positive);
                let neg = edges.iter().any(|l| l.var == v && !l.positive);
                match (pos, neg) {
                    (true, true) => SignOpts::Both,
                    (true, false) => SignOpts::Pos,
                    _ => SignOpts::Neg,
                }
            })
            .collect();
        Ok(AllowedInputs { vars, opts })
    }

    /// Synthetic input set with `d` positive-only variables 0..d.
    pub fn positive(d: usize) -> Self {
        AllowedInputs {
            vars: (0..d).collect(),
            opts: vec![SignOpts::Pos; d],
        }
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }
}

/// Position of one clause in the total clause order: the chosen input
/// positions (increasing) with one sign per position. Clauses are ordered
/// by size, then variable sequence, then sign sequence (positive first).
#[derive(Debug, Clone)]
struct ClauseCursor {
    subset: Vec<usize>,
    signs: Vec<bool>,
}

impl ClauseCursor {
    fn first(inputs: &AllowedInputs) -> Option<Self> {
        if inputs.arity() == 0 {
            return None;
        }
        Some(ClauseCursor {
            subset: vec![0],
            signs: vec![inputs.opts[0].first()],
        })
    }

    /// Moves to the next clause in the total order; false when exhausted.
    fn advance(&mut self, inputs: &AllowedInputs) -> bool {
        // Sign patterns count up with positive as 0, rightmost digit least
        // significant; fixed-sign positions are skipped.
        for i in (0..self.subset.len()).rev() {
            if inputs.opts[self.subset[i]] == SignOpts::Both && self.signs[i] {
                self.signs[i] = false;
                for j in i + 1..self.subset.len() {
                    self.signs[j] = inputs.opts[self.subset[j]].first();
                }
                return true;
            }
        }
        let d = inputs.arity();
        let s = self.subset.len();
        // Lexicographic successor of the variable subset at the same size.
        for i in (0..s).rev() {
            if self.subset[i] < d - (s - i) {
                self.subset[i] += 1;
                for j in i + 1..s {
                    self.subset[j] = self.subset[j - 1] + 1;
                }
                self.reset_signs(inputs);
                return true;
            }
        }
        if s + 1 <= d {
            self.subset = (0..s + 1).collect();
            self.reset_signs(inputs);
            return true;
        }
        false
    }

    fn reset_signs(&mut self, inputs: &AllowedInputs) {
        self.signs = self
            .subset
            .iter()
            .map(|&p| inputs.opts[p].first())
            .collect();
    }

    fn mask(&self) -> u64 {
        self.subset.iter().fold(0u64, |m, &p| m | 1 << p)
    }

    fn clause(&self, inputs: &AllowedInputs) -> Clause {
        Clause::new(
            self.subset
                .iter()
                .zip(&self.signs)
                .map(|(&p, &s)| SignedLiteral::new(inputs.vars[p], s))
                .collect(),
        )
        .expect("cursor clauses are nonempty with distinct variables")
    }
}

struct StackEntry {
    cursor: ClauseCursor,
    mask: u64,
    newly_signed: Vec<usize>,
}

enum Stage {
    ConstFalse,
    ConstTrue,
    Level,
    Done,
}

/// Lazy stream over the canonical candidate functions of one node.
pub struct CandidateIter {
    inputs: AllowedInputs,
    max_len: u128,
    target: u128,
    stage: Stage,
    stack: Vec<StackEntry>,
    sign_map: Vec<Option<bool>>,
    advancing: bool,
}

/// All canonical locally-monotonic functions over the signed in-edges of
/// `node`, each exactly once, in the canonical candidate order. A variable
/// carrying both edge signs may be used with either sign, but with a
/// single sign per candidate.
pub fn enumerate_local_candidates(
    graph: &InfluenceGraph,
    node: NodeIdx,
    bound: ClauseBound,
) -> Result<CandidateIter> {
    Ok(CandidateIter::new(AllowedInputs::for_node(graph, node)?, bound))
}

impl CandidateIter {
    pub fn new(inputs: AllowedInputs, bound: ClauseBound) -> Self {
        let max_len = bound.resolve(inputs.arity());
        let d = inputs.arity();
        CandidateIter {
            sign_map: vec![None; d],
            inputs,
            max_len,
            target: 0,
            stage: Stage::ConstFalse,
            stack: Vec::new(),
            advancing: false,
        }
    }

    fn push_if_valid(&mut self, cursor: ClauseCursor) -> bool {
        let mask = cursor.mask();
        // Antichain: earlier clauses are smaller or equal in size, so only
        // the earlier-subset-of-later direction can occur; signs agree on
        // shared variables because both sides match the sign map.
        if self.stack.iter().any(|e| e.mask & mask == e.mask) {
            return false;
        }
        let mut newly_signed = Vec::new();
        for (i, &p) in cursor.subset.iter().enumerate() {
            match self.sign_map[p] {
                Some(s) if s != cursor.signs[i] => {
                    for &q in &newly_signed {
                        self.sign_map[q] = None;
                    }
                    return false;
                }
                Some(_) => {}
                None => {
                    self.sign_map[p] = Some(cursor.signs[i]);
                    newly_signed.push(p);
                }
            }
        }
        self.stack.push(StackEntry {
            cursor,
            mask,
            newly_signed,
        });
        true
    }

    fn pop_entry(&mut self) -> Option<ClauseCursor> {
        let e = self.stack.pop()?;
        for &q in &e.newly_signed {
            self.sign_map[q] = None;
        }
        Some(e.cursor)
    }

    /// Next complete clause list at the current target length.
    fn next_at_level(&mut self) -> Option<Vec<Clause>> {
        loop {
            if !self.advancing && self.stack.len() as u128 == self.target {
                self.advancing = true;
                return Some(self.stack.iter().map(|e| e.cursor.clause(&self.inputs)).collect());
            }
            if self.advancing {
                let Some(mut cursor) = self.pop_entry() else {
                    return None;
                };
                loop {
                    if !cursor.advance(&self.inputs) {
                        break;
                    }
                    if self.push_if_valid(cursor.clone()) {
                        self.advancing = false;
                        break;
                    }
                }
            } else {
                // Extend with the successor of the deepest clause.
                let mut cursor = match self.stack.last() {
                    None => match ClauseCursor::first(&self.inputs) {
                        Some(c) => c,
                        None => return None,
                    },
                    Some(top) => {
                        let mut c = top.cursor.clone();
                        if !c.advance(&self.inputs) {
                            self.advancing = true;
                            continue;
                        }
                        c
                    }
                };
                loop {
                    if self.push_if_valid(cursor.clone()) {
                        break;
                    }
                    if !cursor.advance(&self.inputs) {
                        self.advancing = true;
                        break;
                    }
                }
            }
        }
    }
}

impl Iterator for CandidateIter {
    type Item = MonotoneDnf;

    fn next(&mut self) -> Option<MonotoneDnf> {
        loop {
            match self.stage {
                Stage::ConstFalse => {
                    self.stage = Stage::ConstTrue;
                    return Some(MonotoneDnf::Const(false));
                }
                Stage::ConstTrue => {
                    self.stage = if self.max_len >= 1 && self.inputs.arity() > 0 {
                        self.target = 1;
                        self.advancing = false;
                        Stage::Level
                    } else {
                        Stage::Done
                    };
                    return Some(MonotoneDnf::Const(true));
                }
                Stage::Level => match self.next_at_level() {
                    Some(clauses) => return Some(MonotoneDnf::Clauses(clauses)),
                    None => {
                        if self.target < self.max_len {
                            self.target += 1;
                            self.stack.clear();
                            self.sign_map.fill(None);
                            self.advancing = false;
                        } else {
                            self.stage = Stage::Done;
                        }
                    }
                },
                Stage::Done => return None,
            }
        }
    }
}

/// Number of candidates for a node with `d` positive in-edges under the
/// clause bound, computed by running the enumeration.
pub fn candidate_count(d: usize, bound: ClauseBound) -> u64 {
    CandidateIter::new(AllowedInputs::positive(d), bound).count() as u64
}

/// Candidate-space size of one node of an influence graph (accounts for
/// variables carrying both edge signs).
pub fn candidate_count_for(graph: &InfluenceGraph, node: NodeIdx, bound: ClauseBound) -> Result<u64> {
    Ok(enumerate_local_candidates(graph, node, bound)?.count() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bn::Configuration;

    fn render(dnf: &MonotoneDnf) -> String {
        match dnf {
            MonotoneDnf::Const(v) => (*v as u8).to_string(),
            MonotoneDnf::Clauses(cs) => cs
                .iter()
                .map(|c| {
                    c.literals()
                        .iter()
                        .map(|l| format!("{}{}", if l.positive { "" } else { "!" }, (b'a' + l.var as u8) as char))
                        .collect::<Vec<_>>()
                        .join("&")
                })
                .collect::<Vec<_>>()
                .join("|"),
        }
    }

    #[test]
    fn two_positive_inputs_with_two_clauses() {
        let mut g = InfluenceGraph::empty(3);
        g.add_edge(0, 2, true);
        g.add_edge(1, 2, true);
        let cands: Vec<String> = enumerate_local_candidates(&g, 2, ClauseBound::Limit(2))
            .unwrap()
            .map(|c| render(&c))
            .collect();
        assert_eq!(cands, vec!["0", "1", "a", "b", "a&b", "a|b"]);
    }

    #[test]
    fn both_sign_edge_yields_four() {
        let mut g = InfluenceGraph::empty(2);
        g.add_edge(0, 1, true);
        g.add_edge(0, 1, false);
        let cands: Vec<String> = enumerate_local_candidates(&g, 1, ClauseBound::Max)
            .unwrap()
            .map(|c| render(&c))
            .collect();
        assert_eq!(cands, vec!["0", "1", "a", "!a"]);
    }

    #[test]
    fn no_inputs_yields_constants() {
        let g = InfluenceGraph::empty(1);
        let cands: Vec<MonotoneDnf> = enumerate_local_candidates(&g, 0, ClauseBound::Max)
            .unwrap()
            .collect();
        assert_eq!(cands, vec![MonotoneDnf::Const(false), MonotoneDnf::Const(true)]);
    }

    #[test]
    fn dedekind_prefix_counts() {
        for (d, expected) in [(0, 2), (1, 3), (2, 6), (3, 20), (4, 168)] {
            assert_eq!(candidate_count(d, ClauseBound::Max), expected, "d = {d}");
        }
    }

    #[test]
    fn clause_bound_drops_candidates() {
        assert_eq!(candidate_count(2, ClauseBound::Limit(1)), 5);
        assert_eq!(candidate_count(3, ClauseBound::Limit(0)), 2);
    }

    #[test]
    fn candidates_are_canonical_and_distinct_as_functions() {
        // d = 4: compare against truth tables, all pairwise distinct.
        let mut tables = std::collections::HashSet::new();
        let mut count = 0u32;
        for cand in CandidateIter::new(AllowedInputs::positive(4), ClauseBound::Max) {
            assert!(crate::bn::is_canonical(cand.clauses()));
            let mut table = 0u16;
            for word in 0..16u64 {
                if cand.eval(&Configuration::from_word(word, 4)).unwrap() {
                    table |= 1 << word;
                }
            }
            assert!(tables.insert(table), "duplicate truth table");
            count += 1;
        }
        assert_eq!(count, 168);
    }
}
