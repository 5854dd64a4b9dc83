//! Exact most-permissive-semantics engine.
//!
//! Everything here reduces to one primitive: the three-valued evaluation of
//! a canonical monotone DNF over a hypercube, which is exact without
//! enumerating the hypercube because each variable carries a single sign.
//! On top of it sit the constrained trap-space closures, the reachability
//! decision via lock iterations, and attractors as minimal trap spaces.

use crate::bn::{BooleanNetwork, Cell, Configuration, Hypercube, MonotoneDnf, NodeIdx};
use crate::error::{Error, Result};

/// Values a local function can take over a hypercube.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PossibleValues {
    pub can_be_0: bool,
    pub can_be_1: bool,
}

impl PossibleValues {
    pub fn admits(&self, v: bool) -> bool {
        if v {
            self.can_be_1
        } else {
            self.can_be_0
        }
    }

    /// The single admitted value, if the evaluation is determined.
    pub fn determined(&self) -> Option<bool> {
        match (self.can_be_0, self.can_be_1) {
            (true, false) => Some(false),
            (false, true) => Some(true),
            _ => None,
        }
    }
}

/// The set L of locked components of a constrained trap space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LockSet {
    locked: Vec<bool>,
}

impl LockSet {
    pub fn empty(n: usize) -> Self {
        LockSet {
            locked: vec![false; n],
        }
    }

    pub fn from_indices(n: usize, indices: &[NodeIdx]) -> Result<Self> {
        let mut locked = vec![false; n];
        for &i in indices {
            if i >= n {
                return Err(Error::IndexOutOfRange { index: i + 1, n });
            }
            locked[i] = true;
        }
        Ok(LockSet { locked })
    }

    pub fn dimension(&self) -> usize {
        self.locked.len()
    }

    pub fn contains(&self, i: NodeIdx) -> bool {
        self.locked[i]
    }

    pub fn insert(&mut self, i: NodeIdx) {
        self.locked[i] = true;
    }

    pub fn indices(&self) -> impl Iterator<Item = NodeIdx> + '_ {
        (0..self.locked.len()).filter(|&i| self.locked[i])
    }
}

/// Three-valued evaluation of `dnf` over `h`: `can_be_1` iff some
/// configuration of c(h) satisfies the function, `can_be_0` symmetrically.
///
/// A clause is possibly true iff every literal is satisfied or free; the
/// function is possibly false iff every clause has a falsified or free
/// literal. Both directions are exact for single-sign-per-variable DNF:
/// free variables can be set to satisfy one clause, or against their
/// unique sign to falsify every clause at once.
pub fn eval_on_hypercube(dnf: &MonotoneDnf, h: &Hypercube) -> Result<PossibleValues> {
    if let Some(v) = dnf.max_var() {
        if v >= h.dimension() {
            return Err(Error::IndexOutOfRange {
                index: v + 1,
                n: h.dimension(),
            });
        }
    }
    Ok(eval_on_cells(dnf, h.cells()))
}

pub(crate) fn eval_on_cells(dnf: &MonotoneDnf, cells: &[Cell]) -> PossibleValues {
    match dnf {
        MonotoneDnf::Const(v) => PossibleValues {
            can_be_0: !v,
            can_be_1: *v,
        },
        MonotoneDnf::Clauses(clauses) => {
            let mut can_be_1 = false;
            let mut can_be_0 = true;
            for clause in clauses {
                let mut all_sat_or_free = true;
                let mut some_false_or_free = false;
                for lit in clause.literals() {
                    match cells[lit.var].as_bool() {
                        None => some_false_or_free = true,
                        Some(b) if lit.satisfied_by(b) => {}
                        Some(_) => {
                            all_sat_or_free = false;
                            some_false_or_free = true;
                        }
                    }
                }
                can_be_1 |= all_sat_or_free;
                // A clause true on all of c(h) pins the function to 1.
                can_be_0 &= some_false_or_free;
            }
            PossibleValues { can_be_0, can_be_1 }
        }
    }
}

fn check_dims(f: &BooleanNetwork, x: &Configuration) -> Result<()> {
    if x.dimension() != f.dimension() {
        return Err(Error::DimensionMismatch {
            expected: f.dimension(),
            found: x.dimension(),
        });
    }
    Ok(())
}

/// Reusable per-network state for the closure machinery: the dependency
/// lists that drive the work-list. Callers running many semantic queries
/// against one network (the synthesis leaf checks) build this once.
pub struct NetworkContext {
    /// dependents[j] = components whose function mentions j.
    dependents: Vec<Vec<NodeIdx>>,
}

impl NetworkContext {
    pub fn new(f: &BooleanNetwork) -> Self {
        let n = f.dimension();
        let mut dependents: Vec<Vec<NodeIdx>> = vec![Vec::new(); n];
        for i in 0..n {
            for clause in f.local(i).clauses() {
                for lit in clause.literals() {
                    if !dependents[lit.var].contains(&i) {
                        dependents[lit.var].push(i);
                    }
                }
            }
        }
        NetworkContext { dependents }
    }

    /// Work-list closure: repeatedly frees any cell outside `locks` whose
    /// function admits the opposite value over the current hypercube.
    /// Freeing is one-way, so the iteration performs at most n freeing
    /// events; the step function is inflationary and monotone, making the
    /// least fixpoint independent of scheduling.
    pub(crate) fn close(&self, f: &BooleanNetwork, h: &mut Hypercube, locks: &LockSet) {
        let n = f.dimension();
        let mut queued = vec![false; n];
        let mut queue: Vec<NodeIdx> = Vec::with_capacity(n);
        for i in 0..n {
            if !locks.contains(i) && !h.get(i).is_free() {
                queued[i] = true;
                queue.push(i);
            }
        }
        while let Some(i) = queue.pop() {
            queued[i] = false;
            let Some(v) = h.get(i).as_bool() else { continue };
            if eval_on_cells(f.local(i), h.cells()).admits(!v) {
                h.set(i, Cell::Free);
                for &j in &self.dependents[i] {
                    if !queued[j] && !locks.contains(j) && !h.get(j).is_free() {
                        queued[j] = true;
                        queue.push(j);
                    }
                }
            }
        }
    }

    pub fn smallest_constrained_trap_space(
        &self,
        f: &BooleanNetwork,
        x: &Configuration,
        locks: &LockSet,
    ) -> Result<Hypercube> {
        check_dims(f, x)?;
        if locks.dimension() != f.dimension() {
            return Err(Error::DimensionMismatch {
                expected: f.dimension(),
                found: locks.dimension(),
            });
        }
        let mut h = Hypercube::from_configuration(x);
        self.close(f, &mut h, locks);
        Ok(h)
    }

    pub fn smallest_trap_space(&self, f: &BooleanNetwork, x: &Configuration) -> Result<Hypercube> {
        self.smallest_constrained_trap_space(f, x, &LockSet::empty(f.dimension()))
    }

    /// Whether the smallest trap space containing `x` keeps every watched
    /// component fixed; aborts the closure as soon as one is freed.
    pub fn trap_keeps_fixed(
        &self,
        f: &BooleanNetwork,
        x: &Configuration,
        watched: &[NodeIdx],
    ) -> Result<bool> {
        check_dims(f, x)?;
        let n = f.dimension();
        let mut h = Hypercube::from_configuration(x);
        let mut queued = vec![false; n];
        let mut queue: Vec<NodeIdx> = (0..n).collect();
        queued.fill(true);
        while let Some(i) = queue.pop() {
            queued[i] = false;
            let Some(v) = h.get(i).as_bool() else { continue };
            if eval_on_cells(f.local(i), h.cells()).admits(!v) {
                if watched.contains(&i) {
                    return Ok(false);
                }
                h.set(i, Cell::Free);
                for &j in &self.dependents[i] {
                    if !queued[j] && !h.get(j).is_free() {
                        queued[j] = true;
                        queue.push(j);
                    }
                }
            }
        }
        Ok(true)
    }

    pub fn is_reachable(&self, f: &BooleanNetwork, x: &Configuration, y: &Configuration) -> Result<bool> {
        check_dims(f, x)?;
        check_dims(f, y)?;
        let n = f.dimension();
        let mut locks = LockSet::empty(n);
        loop {
            let w = self.smallest_constrained_trap_space(f, x, &locks)?;
            let mut grew = false;
            for i in 0..n {
                if locks.contains(i) || x.get(i) != y.get(i) {
                    continue;
                }
                let pv = eval_on_cells(f.local(i), w.cells());
                if pv.admits(!y.get(i)) && !pv.admits(y.get(i)) {
                    locks.insert(i);
                    grew = true;
                }
            }
            if !grew {
                return Ok(w.contains(y));
            }
        }
    }
}

pub(crate) fn close_hypercube(f: &BooleanNetwork, h: &mut Hypercube, locks: &LockSet) {
    NetworkContext::new(f).close(f, h, locks);
}

/// Least L-constrained trap space containing `x` (the closure of the
/// extension operator applied to x).
pub fn smallest_constrained_trap_space(
    f: &BooleanNetwork,
    x: &Configuration,
    locks: &LockSet,
) -> Result<Hypercube> {
    check_dims(f, x)?;
    if locks.dimension() != f.dimension() {
        return Err(Error::DimensionMismatch {
            expected: f.dimension(),
            found: locks.dimension(),
        });
    }
    let mut h = Hypercube::from_configuration(x);
    close_hypercube(f, &mut h, locks);
    Ok(h)
}

/// Least trap space containing `x`; the L = ∅ case of the closure.
pub fn smallest_trap_space(f: &BooleanNetwork, x: &Configuration) -> Result<Hypercube> {
    smallest_constrained_trap_space(f, x, &LockSet::empty(f.dimension()))
}

/// Most permissive reachability, decided by the lock iteration: starting
/// from L = ∅, compute the smallest L-constrained trap space w containing
/// x and lock every component i ∉ L with x_i = y_i whose function admits
/// ¬y_i but never y_i over w. The lock set grows monotonically, so the
/// iteration stabilizes within n rounds; y is reachable iff it lies in the
/// final hypercube.
pub fn is_reachable(f: &BooleanNetwork, x: &Configuration, y: &Configuration) -> Result<bool> {
    NetworkContext::new(f).is_reachable(f, x, y)
}

/// f(x) = x, componentwise.
pub fn is_fixpoint(f: &BooleanNetwork, x: &Configuration) -> Result<bool> {
    check_dims(f, x)?;
    Ok((0..f.dimension()).all(|i| f.local(i).eval_in(x.bits()) == x.get(i)))
}

/// Whether the smallest trap space containing `x` keeps component `i`
/// fixed (containment forces the fixed value to be x_i).
pub fn trap_component_fixed(f: &BooleanNetwork, x: &Configuration, i: NodeIdx) -> Result<bool> {
    if i >= f.dimension() {
        return Err(Error::IndexOutOfRange {
            index: i + 1,
            n: f.dimension(),
        });
    }
    Ok(!smallest_trap_space(f, x)?.get(i).is_free())
}

/// Default dimension cap for [`attractors`].
pub const DEFAULT_ATTRACTOR_CAP: usize = 16;

/// The attractors of `f`: its minimal trap spaces. Singleton hypercubes
/// are exactly the fixpoints.
pub fn attractors(f: &BooleanNetwork) -> Result<Vec<Hypercube>> {
    attractors_with_cap(f, DEFAULT_ATTRACTOR_CAP)
}

/// Minimal trap spaces, computed from the closures of all 2^n
/// configurations: every minimal trap space is the closure of each of its
/// configurations, so the minimal elements of the closure set are exactly
/// the minimal trap spaces. Fails explicitly beyond the dimension cap
/// rather than degrading.
pub fn attractors_with_cap(f: &BooleanNetwork, cap: usize) -> Result<Vec<Hypercube>> {
    let n = f.dimension();
    if n > cap {
        return Err(Error::Capacity {
            operation: "attractors",
            message: format!("dimension {n} exceeds the cap {cap}"),
        });
    }
    let ctx = NetworkContext::new(f);
    let empty = LockSet::empty(n);
    let mut candidates: Vec<Hypercube> = Vec::new();
    for word in 0..(1u64 << n) {
        let x = Configuration::from_word(word, n);
        let mut h = Hypercube::from_configuration(&x);
        ctx.close(f, &mut h, &empty);
        if !candidates.contains(&h) {
            candidates.push(h);
        }
    }
    // A candidate is a minimal trap space iff no other candidate is
    // strictly smaller; any witness trap space contains the closure of
    // each of its configurations, which is itself a candidate.
    candidates.sort_by_key(|h| h.free_count());
    let mut minimal: Vec<Hypercube> = Vec::new();
    'outer: for h in candidates {
        for m in &minimal {
            if m.is_smaller_than(&h) {
                continue 'outer;
            }
        }
        minimal.push(h);
    }
    minimal.sort_by(|a, b| a.cells().cmp(b.cells()));
    Ok(minimal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bn::{Clause, SignedLiteral};

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

    /// g1 = 1, g2 = x1 & x3, g3 = !x2.
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

    fn cube(s: &str) -> Hypercube {
        s.parse().unwrap()
    }

    fn locks(n: usize, idx: &[NodeIdx]) -> LockSet {
        LockSet::from_indices(n, idx).unwrap()
    }

    #[test]
    fn eval_on_hypercube_examples() {
        let f = fig1();
        let pv = eval_on_hypercube(f.local(2), &cube("01*")).unwrap();
        assert_eq!(pv, PossibleValues { can_be_0: false, can_be_1: true });
        let pv = eval_on_hypercube(f.local(2), &cube("***")).unwrap();
        assert_eq!(pv, PossibleValues { can_be_0: true, can_be_1: true });
        let pv = eval_on_hypercube(&MonotoneDnf::constant(true), &cube("**")).unwrap();
        assert_eq!(pv, PossibleValues { can_be_0: false, can_be_1: true });
        assert_eq!(pv.determined(), Some(true));
    }

    #[test]
    fn constrained_closures() {
        let f = fig1();
        let w = smallest_constrained_trap_space(&f, &cfg("110"), &locks(3, &[0])).unwrap();
        assert_eq!(w.to_string(), "1*0");
        let w = smallest_constrained_trap_space(&f, &cfg("010"), &locks(3, &[])).unwrap();
        assert_eq!(w.to_string(), "01*");
        let w = smallest_constrained_trap_space(&f, &cfg("100"), &locks(3, &[0])).unwrap();
        assert_eq!(w.to_string(), "100");
        let g = net_g();
        let w = smallest_constrained_trap_space(&g, &cfg("011"), &locks(3, &[0])).unwrap();
        assert_eq!(w.to_string(), "0**");
    }

    #[test]
    fn smallest_trap_spaces() {
        let f = fig1();
        assert_eq!(smallest_trap_space(&f, &cfg("010")).unwrap().to_string(), "01*");
        assert_eq!(smallest_trap_space(&f, &cfg("011")).unwrap().to_string(), "011");
        assert_eq!(smallest_trap_space(&f, &cfg("000")).unwrap().to_string(), "***");
    }

    #[test]
    fn reachability_examples() {
        let f = fig1();
        assert!(is_reachable(&f, &cfg("000"), &cfg("111")).unwrap());
        assert!(is_reachable(&f, &cfg("110"), &cfg("000")).unwrap());
        assert!(is_reachable(&f, &cfg("000"), &cfg("110")).unwrap());
        assert!(!is_reachable(&f, &cfg("010"), &cfg("100")).unwrap());
        let g = net_g();
        assert!(is_reachable(&g, &cfg("011"), &cfg("000")).unwrap());
        assert!(!is_reachable(&g, &cfg("001"), &cfg("010")).unwrap());
        // Reflexivity.
        assert!(is_reachable(&f, &cfg("101"), &cfg("101")).unwrap());
    }

    #[test]
    fn fixpoint_examples() {
        let f = fig1();
        assert!(is_fixpoint(&f, &cfg("011")).unwrap());
        assert!(!is_fixpoint(&f, &cfg("000")).unwrap());
        assert!(!is_fixpoint(&net_g(), &cfg("111")).unwrap());
    }

    #[test]
    fn trap_component_fixed_examples() {
        let f = fig1();
        assert!(trap_component_fixed(&f, &cfg("011"), 0).unwrap());
        assert!(!trap_component_fixed(&f, &cfg("000"), 2).unwrap());
        assert!(trap_component_fixed(&net_g(), &cfg("111"), 0).unwrap());
        assert!(trap_component_fixed(&f, &cfg("000"), 3).is_err());
    }

    #[test]
    fn attractor_examples() {
        let f = fig1();
        let a: Vec<String> = attractors(&f).unwrap().iter().map(|h| h.to_string()).collect();
        assert_eq!(a, vec!["011", "100"]);

        let g = net_g();
        let a: Vec<String> = attractors(&g).unwrap().iter().map(|h| h.to_string()).collect();
        assert_eq!(a, vec!["1**"]);

        // Identity network of dimension 2: every configuration is a fixpoint.
        let id2 = BooleanNetwork::new(vec![
            MonotoneDnf::new(vec![clause(&[(0, true)])]).unwrap(),
            MonotoneDnf::new(vec![clause(&[(1, true)])]).unwrap(),
        ])
        .unwrap();
        let a: Vec<String> = attractors(&id2).unwrap().iter().map(|h| h.to_string()).collect();
        assert_eq!(a, vec!["00", "01", "10", "11"]);
    }

    #[test]
    fn attractors_respect_cap() {
        let f = fig1();
        assert!(matches!(
            attractors_with_cap(&f, 2),
            Err(Error::Capacity { .. })
        ));
    }
}
