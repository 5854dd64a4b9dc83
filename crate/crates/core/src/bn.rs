//! Data model: configurations, hypercubes, signed influence graphs and
//! canonical locally-monotonic Boolean networks.
//!
//! Local functions are kept in a canonical antichain DNF: each variable
//! occurs with a single sign, no clause subsumes another, and clauses are
//! ordered by size then lexicographically. Two canonical values are equal
//! exactly when they denote the same Boolean function, which is what makes
//! non-redundant enumeration possible.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// 0-based component index. External interfaces (files, CLI) are 1-based
/// or name-based; the mapping happens at the format boundary.
pub type NodeIdx = usize;

/// State of one component in a hypercube.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cell {
    Zero,
    One,
    Free,
}

impl Cell {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Cell::One
        } else {
            Cell::Zero
        }
    }

    pub fn as_bool(self) -> Option<bool> {
        match self {
            Cell::Zero => Some(false),
            Cell::One => Some(true),
            Cell::Free => None,
        }
    }

    pub fn is_free(self) -> bool {
        self == Cell::Free
    }
}

/// A full Boolean state of the network.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    bits: Vec<bool>,
}

impl Configuration {
    pub fn new(bits: Vec<bool>) -> Self {
        Configuration { bits }
    }

    pub fn dimension(&self) -> usize {
        self.bits.len()
    }

    pub fn get(&self, i: NodeIdx) -> bool {
        self.bits[i]
    }

    pub fn set(&mut self, i: NodeIdx, v: bool) {
        self.bits[i] = v;
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Configuration from the low `n` bits of `word` (bit i = component i).
    pub fn from_word(word: u64, n: usize) -> Self {
        Configuration {
            bits: (0..n).map(|i| word >> i & 1 == 1).collect(),
        }
    }
}

/// Δ(x,y): set of components on which two configurations differ.
pub fn config_diff(x: &Configuration, y: &Configuration) -> Result<BTreeSet<NodeIdx>> {
    if x.dimension() != y.dimension() {
        return Err(Error::DimensionMismatch {
            expected: x.dimension(),
            found: y.dimension(),
        });
    }
    Ok(x.bits
        .iter()
        .zip(&y.bits)
        .enumerate()
        .filter(|(_, (a, b))| a != b)
        .map(|(i, _)| i)
        .collect())
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for Configuration {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                _ => {
                    return Err(Error::validation(
                        "bad_configuration",
                        s,
                        format!("unexpected character {c:?}, expected 0 or 1"),
                    ))
                }
            }
        }
        Ok(Configuration { bits })
    }
}

/// A meta-configuration: per-component value in {0, 1, free}. Denotes the
/// set of configurations agreeing with it on all fixed cells.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hypercube {
    cells: Vec<Cell>,
}

impl Hypercube {
    pub fn new(cells: Vec<Cell>) -> Self {
        Hypercube { cells }
    }

    pub fn from_configuration(x: &Configuration) -> Self {
        Hypercube {
            cells: x.bits.iter().map(|&b| Cell::from_bool(b)).collect(),
        }
    }

    /// Fully free hypercube of dimension `n`.
    pub fn free(n: usize) -> Self {
        Hypercube {
            cells: vec![Cell::Free; n],
        }
    }

    pub fn dimension(&self) -> usize {
        self.cells.len()
    }

    pub fn get(&self, i: NodeIdx) -> Cell {
        self.cells[i]
    }

    pub fn set(&mut self, i: NodeIdx, c: Cell) {
        self.cells[i] = c;
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn free_count(&self) -> usize {
        self.cells.iter().filter(|c| c.is_free()).count()
    }

    /// Number of configurations in `c(h)`: 2^(free cells).
    pub fn configuration_count(&self) -> u128 {
        1u128 << self.free_count()
    }

    pub fn contains(&self, x: &Configuration) -> bool {
        self.cells.len() == x.dimension()
            && self
                .cells
                .iter()
                .zip(x.bits())
                .all(|(c, &b)| c.as_bool().is_none_or(|v| v == b))
    }

    /// Def. 2 order: `self` is smaller than `other` iff every cell fixed in
    /// `other` is fixed to the same value in `self` (so c(self) ⊆ c(other)).
    pub fn is_smaller_than(&self, other: &Hypercube) -> bool {
        self.cells.len() == other.cells.len()
            && self
                .cells
                .iter()
                .zip(&other.cells)
                .all(|(a, b)| b.as_bool().is_none_or(|v| a.as_bool() == Some(v)))
    }

    /// Iterate over c(h) in increasing binary order of the free cells.
    pub fn configurations(&self) -> impl Iterator<Item = Configuration> + '_ {
        let free: Vec<usize> = (0..self.cells.len())
            .filter(|&i| self.cells[i].is_free())
            .collect();
        let base: Vec<bool> = self
            .cells
            .iter()
            .map(|c| c.as_bool().unwrap_or(false))
            .collect();
        let total: u64 = 1u64 << free.len();
        (0..total).map(move |word| {
            let mut bits = base.clone();
            for (k, &i) in free.iter().enumerate() {
                bits[i] = word >> k & 1 == 1;
            }
            Configuration::new(bits)
        })
    }
}

impl fmt::Display for Hypercube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &c in &self.cells {
            f.write_str(match c {
                Cell::Zero => "0",
                Cell::One => "1",
                Cell::Free => "*",
            })?;
        }
        Ok(())
    }
}

impl FromStr for Hypercube {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut cells = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => cells.push(Cell::Zero),
                '1' => cells.push(Cell::One),
                '*' => cells.push(Cell::Free),
                _ => {
                    return Err(Error::validation(
                        "bad_hypercube",
                        s,
                        format!("unexpected character {c:?}, expected 0, 1 or *"),
                    ))
                }
            }
        }
        Ok(Hypercube { cells })
    }
}

/// A signed occurrence of a variable in a clause.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignedLiteral {
    pub var: NodeIdx,
    pub positive: bool,
}

impl SignedLiteral {
    pub fn new(var: NodeIdx, positive: bool) -> Self {
        SignedLiteral { var, positive }
    }

    pub fn satisfied_by(&self, bit: bool) -> bool {
        bit == self.positive
    }
}

impl PartialOrd for SignedLiteral {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SignedLiteral {
    // Variable index first; positive sorts before negative. The sign
    // tie-break only matters across candidates sharing a variable set.
    fn cmp(&self, other: &Self) -> Ordering {
        self.var
            .cmp(&other.var)
            .then_with(|| other.positive.cmp(&self.positive))
    }
}

/// A conjunction of literals: nonempty, at most one literal per variable,
/// kept sorted by variable index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Clause {
    literals: Vec<SignedLiteral>,
}

impl Clause {
    pub fn new(mut literals: Vec<SignedLiteral>) -> Result<Self> {
        if literals.is_empty() {
            return Err(Error::validation("empty_clause", "clause", "a clause must contain at least one literal"));
        }
        literals.sort();
        for w in literals.windows(2) {
            if w[0].var == w[1].var {
                return Err(Error::validation(
                    "duplicate_variable",
                    "clause",
                    format!("variable {} occurs twice in one clause", w[0].var + 1),
                ));
            }
        }
        Ok(Clause { literals })
    }

    pub fn literals(&self) -> &[SignedLiteral] {
        &self.literals
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    /// Literal-set inclusion. Both sides are sorted by variable.
    pub fn subset_of(&self, other: &Clause) -> bool {
        let mut it = other.literals.iter();
        'outer: for lit in &self.literals {
            for cand in it.by_ref() {
                match cand.var.cmp(&lit.var) {
                    Ordering::Less => continue,
                    Ordering::Equal => {
                        if cand.positive == lit.positive {
                            continue 'outer;
                        }
                        return false;
                    }
                    Ordering::Greater => return false,
                }
            }
            return false;
        }
        true
    }

    pub fn satisfied_by(&self, bits: &[bool]) -> bool {
        self.literals.iter().all(|l| l.satisfied_by(bits[l.var]))
    }
}

/// Canonical clause order: size, then the sorted variable-index sequences
/// lexicographically, then the sign sequences (positive first).
pub fn clause_cmp(a: &Clause, b: &Clause) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| {
        for (la, lb) in a.literals().iter().zip(b.literals()) {
            match la.var.cmp(&lb.var) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        for (la, lb) in a.literals().iter().zip(b.literals()) {
            match lb.positive.cmp(&la.positive) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    })
}

/// The local function of one component: an explicit constant, or a
/// canonical antichain of clauses.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MonotoneDnf {
    Const(bool),
    Clauses(Vec<Clause>),
}

impl MonotoneDnf {
    /// Builds a clause-form function, rejecting lists that are not in
    /// canonical form (see [`is_canonical`]).
    pub fn new(clauses: Vec<Clause>) -> Result<Self> {
        if clauses.is_empty() {
            return Err(Error::validation(
                "empty_dnf",
                "function",
                "constant functions must use the explicit constant form",
            ));
        }
        if !is_canonical(&clauses) {
            return Err(Error::validation(
                "noncanonical",
                "function",
                "clause list violates monotonicity, antichain or ordering",
            ));
        }
        Ok(MonotoneDnf::Clauses(clauses))
    }

    pub fn constant(v: bool) -> Self {
        MonotoneDnf::Const(v)
    }

    pub fn clauses(&self) -> &[Clause] {
        match self {
            MonotoneDnf::Const(_) => &[],
            MonotoneDnf::Clauses(cs) => cs,
        }
    }

    /// Largest referenced variable index, if any.
    pub fn max_var(&self) -> Option<NodeIdx> {
        self.clauses()
            .iter()
            .flat_map(|c| c.literals())
            .map(|l| l.var)
            .max()
    }

    /// Evaluates the function on a full configuration.
    pub fn eval(&self, x: &Configuration) -> Result<bool> {
        if let Some(v) = self.max_var() {
            if v >= x.dimension() {
                return Err(Error::IndexOutOfRange {
                    index: v + 1,
                    n: x.dimension(),
                });
            }
        }
        Ok(self.eval_in(x.bits()))
    }

    /// Evaluation over a bit slice; callers guarantee the dimension.
    pub fn eval_in(&self, bits: &[bool]) -> bool {
        match self {
            MonotoneDnf::Const(v) => *v,
            MonotoneDnf::Clauses(cs) => cs.iter().any(|c| c.satisfied_by(bits)),
        }
    }
}

/// Checks the three canonicity invariants on a raw clause list: one sign
/// per variable across all clauses, no subset relation between clauses,
/// and the clause ordering (non-decreasing sizes, equal sizes strictly
/// increasing in the canonical clause order).
pub fn is_canonical(clauses: &[Clause]) -> bool {
    let mut signs: Vec<(NodeIdx, bool)> = Vec::new();
    for c in clauses {
        for l in c.literals() {
            match signs.iter().find(|(v, _)| *v == l.var) {
                Some((_, s)) if *s != l.positive => return false,
                Some(_) => {}
                None => signs.push((l.var, l.positive)),
            }
        }
    }
    for (i, a) in clauses.iter().enumerate() {
        for b in &clauses[i + 1..] {
            if a.subset_of(b) || b.subset_of(a) {
                return false;
            }
        }
    }
    for w in clauses.windows(2) {
        if clause_cmp(&w[0], &w[1]) != Ordering::Less {
            return false;
        }
    }
    true
}

/// A Boolean network: one local function per component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleanNetwork {
    locals: Vec<MonotoneDnf>,
}

impl BooleanNetwork {
    pub fn new(locals: Vec<MonotoneDnf>) -> Result<Self> {
        let n = locals.len();
        for (i, dnf) in locals.iter().enumerate() {
            if let Some(v) = dnf.max_var() {
                if v >= n {
                    return Err(Error::validation(
                        "unknown_node",
                        format!("functions[{}]", i + 1),
                        format!("variable {} exceeds dimension {n}", v + 1),
                    ));
                }
            }
        }
        Ok(BooleanNetwork { locals })
    }

    pub fn dimension(&self) -> usize {
        self.locals.len()
    }

    pub fn local(&self, i: NodeIdx) -> &MonotoneDnf {
        &self.locals[i]
    }

    pub fn locals(&self) -> &[MonotoneDnf] {
        &self.locals
    }

    /// Applies `f` to a configuration componentwise.
    pub fn apply(&self, x: &Configuration) -> Result<Configuration> {
        if x.dimension() != self.dimension() {
            return Err(Error::DimensionMismatch {
                expected: self.dimension(),
                found: x.dimension(),
            });
        }
        Ok(Configuration::new(
            self.locals.iter().map(|f| f.eval_in(x.bits())).collect(),
        ))
    }

    /// The influence graph G(f). For canonical functions the semantic
    /// definition coincides with the syntactic literal occurrences:
    /// antichains are irredundant, so every literal is essential.
    pub fn influence_graph(&self) -> InfluenceGraph {
        let mut g = InfluenceGraph::empty(self.dimension());
        for (i, dnf) in self.locals.iter().enumerate() {
            for clause in dnf.clauses() {
                for lit in clause.literals() {
                    g.add_edge(lit.var, i, lit.positive);
                }
            }
        }
        g
    }
}

/// Signed directed graph over the network components; a pair of nodes may
/// carry both an activating and an inhibiting edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfluenceGraph {
    n: usize,
    e_plus: BTreeSet<(NodeIdx, NodeIdx)>,
    e_minus: BTreeSet<(NodeIdx, NodeIdx)>,
}

impl InfluenceGraph {
    pub fn empty(n: usize) -> Self {
        InfluenceGraph {
            n,
            e_plus: BTreeSet::new(),
            e_minus: BTreeSet::new(),
        }
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    /// Adds edge source → target with the given sign.
    pub fn add_edge(&mut self, source: NodeIdx, target: NodeIdx, positive: bool) {
        assert!(source < self.n && target < self.n, "edge endpoint out of range");
        if positive {
            self.e_plus.insert((source, target));
        } else {
            self.e_minus.insert((source, target));
        }
    }

    pub fn has_edge(&self, source: NodeIdx, target: NodeIdx, positive: bool) -> bool {
        let e = (source, target);
        if positive {
            self.e_plus.contains(&e)
        } else {
            self.e_minus.contains(&e)
        }
    }

    pub fn positive_edges(&self) -> impl Iterator<Item = (NodeIdx, NodeIdx)> + '_ {
        self.e_plus.iter().copied()
    }

    pub fn negative_edges(&self) -> impl Iterator<Item = (NodeIdx, NodeIdx)> + '_ {
        self.e_minus.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.e_plus.len() + self.e_minus.len()
    }

    /// Signed in-edges of `target`, sorted by source index.
    pub fn in_edges(&self, target: NodeIdx) -> Vec<SignedLiteral> {
        let mut out = Vec::new();
        for &(j, i) in &self.e_plus {
            if i == target {
                out.push(SignedLiteral::new(j, true));
            }
        }
        for &(j, i) in &self.e_minus {
            if i == target {
                out.push(SignedLiteral::new(j, false));
            }
        }
        out.sort();
        out
    }

    pub fn in_degree(&self, target: NodeIdx) -> usize {
        self.e_plus.iter().filter(|&&(_, i)| i == target).count()
            + self.e_minus.iter().filter(|&&(_, i)| i == target).count()
    }

    /// Subgraph relation: both signed edge sets included.
    pub fn is_subgraph_of(&self, other: &InfluenceGraph) -> Result<bool> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: other.n,
                found: self.n,
            });
        }
        Ok(self.e_plus.is_subset(&other.e_plus) && self.e_minus.is_subset(&other.e_minus))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn lit(var: NodeIdx, positive: bool) -> SignedLiteral {
        SignedLiteral::new(var, positive)
    }

    fn clause(lits: &[(NodeIdx, bool)]) -> Clause {
        Clause::new(lits.iter().map(|&(v, p)| lit(v, p)).collect()).unwrap()
    }

    /// The worked three-node example: f1 = !x2, f2 = !x1, f3 = !x1 & x2.
    pub(crate) fn fig1() -> BooleanNetwork {
        BooleanNetwork::new(vec![
            MonotoneDnf::new(vec![clause(&[(1, false)])]).unwrap(),
            MonotoneDnf::new(vec![clause(&[(0, false)])]).unwrap(),
            MonotoneDnf::new(vec![clause(&[(0, false), (1, true)])]).unwrap(),
        ])
        .unwrap()
    }

    fn cfg(s: &str) -> Configuration {
        s.parse().unwrap()
    }

    #[test]
    fn eval_local_on_fig1() {
        let f = fig1();
        assert!(f.local(2).eval(&cfg("010")).unwrap());
        assert!(MonotoneDnf::constant(true).eval(&cfg("000")).unwrap());
        assert_eq!(f.apply(&cfg("000")).unwrap(), cfg("110"));
    }

    #[test]
    fn eval_reports_out_of_range_variable() {
        let dnf = MonotoneDnf::new(vec![clause(&[(2, true)])]).unwrap();
        assert!(matches!(
            dnf.eval(&cfg("00")),
            Err(Error::IndexOutOfRange { index: 3, n: 2 })
        ));
    }

    #[test]
    fn config_diff_examples() {
        let d = config_diff(&cfg("010"), &cfg("100")).unwrap();
        assert_eq!(d.into_iter().collect::<Vec<_>>(), vec![0, 1]);
        assert!(config_diff(&cfg("010"), &cfg("010")).unwrap().is_empty());
        assert_eq!(config_diff(&cfg("000"), &cfg("111")).unwrap().len(), 3);
        assert!(config_diff(&cfg("00"), &cfg("000")).is_err());
    }

    #[test]
    fn canonicity_examples() {
        // [{c}, {!a, b}] with a < b < c: sizes 1 then 2.
        assert!(is_canonical(&[clause(&[(2, true)]), clause(&[(0, false), (1, true)])]));
        // Subset relation.
        assert!(!is_canonical(&[clause(&[(0, true)]), clause(&[(0, true), (1, true)])]));
        // Lexicographic order violated.
        assert!(!is_canonical(&[clause(&[(1, true)]), clause(&[(0, true)])]));
        // Sign inconsistency across clauses.
        assert!(!is_canonical(&[clause(&[(0, true)]), clause(&[(0, false), (1, true)])]));
        // Duplicate clause.
        assert!(!is_canonical(&[clause(&[(0, true)]), clause(&[(0, true)])]));
    }

    #[test]
    fn influence_graph_of_fig1() {
        let g = fig1().influence_graph();
        assert_eq!(
            g.negative_edges().collect::<Vec<_>>(),
            vec![(0, 1), (0, 2), (1, 0)]
        );
        assert_eq!(g.positive_edges().collect::<Vec<_>>(), vec![(1, 2)]);

        let constant = BooleanNetwork::new(vec![
            MonotoneDnf::constant(false),
            MonotoneDnf::constant(true),
        ])
        .unwrap();
        assert_eq!(constant.influence_graph().edge_count(), 0);
    }

    #[test]
    fn subgraph_relation() {
        let g = fig1().influence_graph();
        let mut bigger = g.clone();
        bigger.add_edge(2, 0, true);
        assert!(g.is_subgraph_of(&bigger).unwrap());
        assert!(!bigger.is_subgraph_of(&g).unwrap());
        assert!(g.is_subgraph_of(&g).unwrap());

        // Sign matters.
        let mut a = InfluenceGraph::empty(2);
        a.add_edge(0, 1, true);
        let mut b = InfluenceGraph::empty(2);
        b.add_edge(0, 1, false);
        assert!(!a.is_subgraph_of(&b).unwrap());
    }

    #[test]
    fn hypercube_basics() {
        let h: Hypercube = "1*0".parse().unwrap();
        assert_eq!(h.to_string(), "1*0");
        assert_eq!(h.configuration_count(), 2);
        assert!(h.contains(&cfg("100")));
        assert!(h.contains(&cfg("110")));
        assert!(!h.contains(&cfg("101")));
        let full: Hypercube = "***".parse().unwrap();
        assert!(h.is_smaller_than(&full));
        assert!(!full.is_smaller_than(&h));
        assert_eq!(
            h.configurations().map(|c| c.to_string()).collect::<Vec<_>>(),
            vec!["100", "110"]
        );
    }

    #[test]
    fn clause_order_is_size_then_lex() {
        let a = clause(&[(0, true)]);
        let b = clause(&[(1, true)]);
        let ab = clause(&[(0, true), (1, true)]);
        assert_eq!(clause_cmp(&a, &b), Ordering::Less);
        assert_eq!(clause_cmp(&b, &ab), Ordering::Less);
        let na = clause(&[(0, false)]);
        // Positive sorts before negative on the same variable set.
        assert_eq!(clause_cmp(&a, &na), Ordering::Less);
    }
}
