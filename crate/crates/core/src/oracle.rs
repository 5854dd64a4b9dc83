//! Brute-force reference implementations, the project's ground truth for
//! validating the optimized semantics and the synthesis engine on small
//! instances.
//!
//! Nothing here shares evaluation or closure code with the main engine:
//! local functions are expanded into explicit truth tables, closures are
//! recomputed by full rescans over enumerated configuration sets, and
//! reachability quantifies over all 2^n lock sets exactly as defined.
//! Oracles refuse inputs beyond their budget instead of degrading.

use crate::bn::{BooleanNetwork, Configuration, Hypercube, NodeIdx};
use crate::candidates::enumerate_local_candidates;
use crate::error::{Error, Result};
use crate::synthesis::SynthesisProblem;

/// Hard limits for the brute-force paths.
#[derive(Debug, Clone, Copy)]
pub struct OracleBudget {
    pub max_dimension: usize,
    pub max_candidates: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_dimension: 10,
            max_candidates: 1_000_000,
        }
    }
}

fn budget_dim(n: usize, budget: &OracleBudget, operation: &'static str) -> Result<()> {
    if n > budget.max_dimension {
        return Err(Error::Capacity {
            operation,
            message: format!("dimension {n} exceeds the oracle budget {}", budget.max_dimension),
        });
    }
    Ok(())
}

/// Truth tables of all local functions: bit x of `tables[i]` is f_i(x),
/// with configurations read as little-endian words.
struct Tables {
    n: usize,
    tables: Vec<Vec<u64>>,
}

impl Tables {
    fn build(f: &BooleanNetwork) -> Self {
        let n = f.dimension();
        let size = 1usize << n;
        let words = size.div_ceil(64);
        let mut tables = vec![vec![0u64; words]; n];
        let mut bits = vec![false; n];
        for x in 0..size {
            for (i, b) in bits.iter_mut().enumerate() {
                *b = x >> i & 1 == 1;
            }
            for i in 0..n {
                if f.local(i).eval_in(&bits) {
                    tables[i][x / 64] |= 1 << (x % 64);
                }
            }
        }
        Tables { n, tables }
    }

    fn value(&self, i: NodeIdx, x: usize) -> bool {
        self.tables[i][x / 64] >> (x % 64) & 1 == 1
    }
}

/// Cells as u8: 0, 1, 2 = free.
const FREE: u8 = 2;

fn word_matches(x: usize, h: &[u8]) -> bool {
    h.iter().enumerate().all(|(i, &c)| c == FREE || (x >> i & 1) as u8 == c)
}

/// Naive closure under lock set `locks` (bitmask): full rescans until no
/// cell can be freed, freeing decided by enumerating the current cube.
fn naive_closure(t: &Tables, x: usize, locks: u64) -> Vec<u8> {
    let n = t.n;
    let mut h: Vec<u8> = (0..n).map(|i| (x >> i & 1) as u8).collect();
    loop {
        let mut changed = false;
        for i in 0..n {
            if locks >> i & 1 == 1 || h[i] == FREE {
                continue;
            }
            let exists_opposite = (0..1usize << n)
                .any(|z| word_matches(z, &h) && t.value(i, z) != (h[i] == 1));
            if exists_opposite {
                h[i] = FREE;
                changed = true;
            }
        }
        if !changed {
            return h;
        }
    }
}

fn config_word(x: &Configuration) -> usize {
    x.bits().iter().enumerate().fold(0, |w, (i, &b)| w | (b as usize) << i)
}

/// Reachability by the definition: some lock set L yields a smallest
/// L-constrained trap space w containing x with (1) y in c(w) and (2) for
/// every unlocked component agreeing in x and y but free in w, some
/// configuration of c(w) maps it to its target value.
pub fn reach_oracle_all_l(
    f: &BooleanNetwork,
    x: &Configuration,
    y: &Configuration,
    budget: &OracleBudget,
) -> Result<bool> {
    let n = f.dimension();
    budget_dim(n, budget, "reach_oracle_all_l")?;
    if x.dimension() != n || y.dimension() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: x.dimension().max(y.dimension()),
        });
    }
    let t = Tables::build(f);
    let xw = config_word(x);
    for locks in 0..(1u64 << n) {
        let w = naive_closure(&t, xw, locks);
        let cond1 = (0..n).all(|i| w[i] == FREE || (w[i] == 1) == y.get(i));
        if !cond1 {
            continue;
        }
        let cond2 = (0..n).all(|i| {
            if locks >> i & 1 == 1 || x.get(i) != y.get(i) || w[i] != FREE {
                return true;
            }
            (0..1usize << n).any(|z| word_matches(z, &w) && t.value(i, z) == y.get(i))
        });
        if cond2 {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Minimal trap spaces by scanning all 3^n hypercubes and checking
/// closure under f by enumeration, then keeping the minimal ones.
pub fn trap_spaces_oracle(f: &BooleanNetwork, budget: &OracleBudget) -> Result<Vec<Hypercube>> {
    let n = f.dimension();
    budget_dim(n, budget, "trap_spaces_oracle")?;
    let t = Tables::build(f);
    let mut traps: Vec<Vec<u8>> = Vec::new();
    let mut h = vec![0u8; n];
    'scan: loop {
        let is_trap = (0..1usize << n).all(|z| {
            if !word_matches(z, &h) {
                return true;
            }
            let mut img = 0usize;
            for i in 0..n {
                img |= (t.value(i, z) as usize) << i;
            }
            word_matches(img, &h)
        });
        if is_trap {
            traps.push(h.clone());
        }
        // Base-3 odometer over cells.
        for i in 0..n {
            if h[i] < 2 {
                h[i] += 1;
                continue 'scan;
            }
            h[i] = 0;
        }
        break;
    }
    let smaller = |a: &[u8], b: &[u8]| (0..n).all(|i| b[i] == FREE || a[i] == b[i]);
    let minimal: Vec<Vec<u8>> = traps
        .iter()
        .filter(|t1| !traps.iter().any(|t2| t2 != *t1 && smaller(t2, t1)))
        .cloned()
        .collect();
    let mut out: Vec<Hypercube> = minimal
        .into_iter()
        .map(|cells| {
            Hypercube::new(
                cells
                    .into_iter()
                    .map(|c| match c {
                        0 => crate::bn::Cell::Zero,
                        1 => crate::bn::Cell::One,
                        _ => crate::bn::Cell::Free,
                    })
                    .collect(),
            )
        })
        .collect();
    out.sort_by(|a, b| a.cells().cmp(b.cells()));
    Ok(out)
}

/// Exhaustive synthesis: materializes the full Cartesian product of
/// per-node canonical candidates and keeps the networks for which some
/// joint completion of the observations passes every constraint, with
/// reachability decided by [`reach_oracle_all_l`] and trap checks by
/// enumerated closures.
pub fn synth_oracle(problem: &SynthesisProblem, budget: &OracleBudget) -> Result<Vec<BooleanNetwork>> {
    let n = problem.dimension();
    budget_dim(n, budget, "synth_oracle")?;
    let mut domains = Vec::with_capacity(n);
    let mut space: u128 = 1;
    for i in 0..n {
        let cands: Vec<_> =
            enumerate_local_candidates(problem.graph(), i, problem.bound_for(i))?.collect();
        space = space.saturating_mul(cands.len() as u128);
        domains.push(cands);
    }
    if space > budget.max_candidates as u128 {
        return Err(Error::Capacity {
            operation: "synth_oracle",
            message: format!("candidate space {space} exceeds the budget {}", budget.max_candidates),
        });
    }

    let mut found = Vec::new();
    let mut choice = vec![0usize; n];
    'product: loop {
        let locals: Vec<_> = (0..n).map(|i| domains[i][choice[i]].clone()).collect();
        let f = BooleanNetwork::new(locals)?;
        if oracle_satisfiable(&f, problem)? {
            found.push(f);
        }
        for i in 0..n {
            choice[i] += 1;
            if choice[i] < domains[i].len() {
                continue 'product;
            }
            choice[i] = 0;
        }
        break;
    }
    Ok(found)
}

/// Joint completion check by enumeration over all free observation bits.
fn oracle_satisfiable(f: &BooleanNetwork, problem: &SynthesisProblem) -> Result<bool> {
    let n = f.dimension();
    let t = Tables::build(f);
    let obs = problem.observations();
    let free: Vec<Vec<NodeIdx>> = obs
        .iter()
        .map(|o| (0..n).filter(|i| !o.values().contains_key(i)).collect())
        .collect();
    let total_free: u32 = free.iter().map(|v| v.len() as u32).sum();
    if total_free > 24 {
        return Err(Error::Capacity {
            operation: "synth_oracle",
            message: format!("{total_free} unobserved bits exceed the completion budget"),
        });
    }
    let budget = OracleBudget::default();
    let mut words: Vec<usize> = obs
        .iter()
        .map(|o| o.values().iter().fold(0, |w, (&i, &v)| w | (v as usize) << i))
        .collect();

    let mut counter = vec![0u64; obs.len()];
    'completions: loop {
        for (m, f_bits) in free.iter().enumerate() {
            let mut w = words[m] & !f_bits.iter().fold(0usize, |acc, &i| acc | 1 << i);
            for (k, &i) in f_bits.iter().enumerate() {
                if counter[m] >> k & 1 == 1 {
                    w |= 1 << i;
                }
            }
            words[m] = w;
        }
        if oracle_check_all(&t, f, problem, &words, &budget)? {
            return Ok(true);
        }
        for m in 0..obs.len() {
            counter[m] += 1;
            if counter[m] < 1 << free[m].len() {
                continue 'completions;
            }
            counter[m] = 0;
        }
        break;
    }
    Ok(false)
}

fn oracle_check_all(
    t: &Tables,
    f: &BooleanNetwork,
    problem: &SynthesisProblem,
    words: &[usize],
    budget: &OracleBudget,
) -> Result<bool> {
    let n = t.n;
    for &m in problem.fp() {
        let x = words[m];
        for i in 0..n {
            if t.value(i, x) != (x >> i & 1 == 1) {
                return Ok(false);
            }
        }
    }
    for &(m, i) in problem.tp() {
        let w = naive_closure(t, words[m], 0);
        if w[i] == FREE {
            return Ok(false);
        }
    }
    for group in problem.distinct() {
        for (k, &a) in group.iter().enumerate() {
            for &b in &group[k + 1..] {
                if words[a] == words[b] {
                    return Ok(false);
                }
            }
        }
    }
    for &(a, b) in problem.pr() {
        let x = Configuration::from_word(words[a] as u64, n);
        let y = Configuration::from_word(words[b] as u64, n);
        if !reach_oracle_all_l(f, &x, &y, budget)? {
            return Ok(false);
        }
    }
    for &(a, b) in problem.nr() {
        let x = Configuration::from_word(words[a] as u64, n);
        let y = Configuration::from_word(words[b] as u64, n);
        if reach_oracle_all_l(f, &x, &y, budget)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bn::{Clause, MonotoneDnf, SignedLiteral};

    fn clause(lits: &[(NodeIdx, bool)]) -> Clause {
        Clause::new(lits.iter().map(|&(v, p)| SignedLiteral::new(v, p)).collect()).unwrap()
    }

    fn fig1() -> BooleanNetwork {
        BooleanNetwork::new(vec![
            MonotoneDnf::new(vec![clause(&[(1, false)])]).unwrap(),
            MonotoneDnf::new(vec![clause(&[(0, false)])]).unwrap(),
            MonotoneDnf::new(vec![clause(&[(0, false), (1, true)])]).unwrap(),
        ])
        .unwrap()
    }

    fn net_g() -> BooleanNetwork {
        BooleanNetwork::new(vec![
            MonotoneDnf::constant(true),
            MonotoneDnf::new(vec![clause(&[(0, true), (2, true)])]).unwrap(),
            MonotoneDnf::new(vec![clause(&[(1, false)])]).unwrap(),
        ])
        .unwrap()
    }

    fn cfg(s: &str) -> Configuration {
        s.parse().unwrap()
    }

    #[test]
    fn reach_oracle_examples() {
        let b = OracleBudget::default();
        assert!(reach_oracle_all_l(&fig1(), &cfg("000"), &cfg("111"), &b).unwrap());
        assert!(!reach_oracle_all_l(&net_g(), &cfg("001"), &cfg("010"), &b).unwrap());
        assert!(reach_oracle_all_l(&fig1(), &cfg("010"), &cfg("010"), &b).unwrap());
    }

    #[test]
    fn trap_oracle_examples() {
        let b = OracleBudget::default();
        let spaces: Vec<String> = trap_spaces_oracle(&fig1(), &b)
            .unwrap()
            .iter()
            .map(|h| h.to_string())
            .collect();
        assert_eq!(spaces, vec!["011", "100"]);
        let spaces: Vec<String> = trap_spaces_oracle(&net_g(), &b)
            .unwrap()
            .iter()
            .map(|h| h.to_string())
            .collect();
        assert_eq!(spaces, vec!["1**"]);
        // Constant network: the unique fixpoint.
        let c = BooleanNetwork::new(vec![MonotoneDnf::constant(true), MonotoneDnf::constant(false)]).unwrap();
        let spaces: Vec<String> = trap_spaces_oracle(&c, &b)
            .unwrap()
            .iter()
            .map(|h| h.to_string())
            .collect();
        assert_eq!(spaces, vec!["10"]);
    }

    #[test]
    fn oracle_budget_is_enforced() {
        let mut locals = Vec::new();
        for _ in 0..12 {
            locals.push(MonotoneDnf::constant(false));
        }
        let f = BooleanNetwork::new(locals).unwrap();
        let b = OracleBudget::default();
        assert!(matches!(
            trap_spaces_oracle(&f, &b),
            Err(Error::Capacity { .. })
        ));
    }
}
