//! Witness completion: finding one joint extension of the partial
//! observations under which a fixed network satisfies every constraint.
//!
//! The search backtracks over the unobserved components of one
//! observation at a time, driven by a three-valued necessary-condition
//! propagator: wherever a component is bound by a fixpoint constraint (or
//! is the component of a trap-space fixation), `f_i(x) = x_i` must be
//! possible over the current cube, and when the evaluation is determined
//! the witness bit is forced. Exact checks (fixpoint, trap closure,
//! reachability, distinctness) run as soon as their participants are
//! fully assigned, costliest last.

use std::time::Instant;

use super::{SearchStats, SynthesisProblem};
use crate::bn::{BooleanNetwork, Cell, Configuration, Hypercube, MonotoneDnf, NodeIdx};
use crate::error::{Error, Result};
use crate::semantics::{eval_on_cells, NetworkContext};

pub(crate) struct WitnessSearch<'p> {
    problem: &'p SynthesisProblem,
    n: usize,
    base_cubes: Vec<Hypercube>,
    /// Per observation, the components i whose value must satisfy
    /// f_i(x) = x_i: every component for fixpoint observations, the fixed
    /// components for trap-space pairs (a freed component would have to
    /// flip at the first closure step).
    pub(crate) constrained: Vec<Vec<NodeIdx>>,
}

impl<'p> WitnessSearch<'p> {
    pub(crate) fn new(problem: &'p SynthesisProblem) -> Self {
        let n = problem.dimension();
        let p = problem.observations().len();
        let base_cubes = problem.observations().iter().map(|o| o.cube(n)).collect();
        let mut constrained: Vec<Vec<NodeIdx>> = vec![Vec::new(); p];
        for &m in problem.fp() {
            constrained[m] = (0..n).collect();
        }
        for &(m, i) in problem.tp() {
            if !constrained[m].contains(&i) {
                constrained[m].push(i);
            }
        }
        WitnessSearch {
            problem,
            n,
            base_cubes,
            constrained,
        }
    }

    pub(crate) fn base_cubes(&self) -> &[Hypercube] {
        &self.base_cubes
    }

    /// Applies the necessary-condition propagator for all constrained
    /// components whose function is already assigned. Returns false on
    /// conflict; fixes forced witness bits in place.
    pub(crate) fn propagate<'f>(
        &self,
        assigned: impl Fn(NodeIdx) -> Option<&'f MonotoneDnf> + Copy,
        cubes: &mut [Hypercube],
    ) -> bool {
        (0..cubes.len()).all(|m| self.propagate_obs(m, assigned, &mut cubes[m]))
    }

    /// Propagation restricted to one observation; fixing a bit of one
    /// cube never changes evaluations over the others.
    pub(crate) fn propagate_obs<'f>(
        &self,
        m: usize,
        assigned: impl Fn(NodeIdx) -> Option<&'f MonotoneDnf>,
        cube: &mut Hypercube,
    ) -> bool {
        loop {
            let mut changed = false;
            for &i in &self.constrained[m] {
                let Some(f_i) = assigned(i) else { continue };
                match refine(cube, i, f_i) {
                    Refine::Conflict => return false,
                    Refine::Changed => changed = true,
                    Refine::Same => {}
                }
            }
            if !changed {
                return true;
            }
        }
    }

    /// Finds one witness for `f`, optionally starting from cubes already
    /// refined by the synthesis search.
    pub(crate) fn find(
        &self,
        f: &BooleanNetwork,
        seed: Option<&[Hypercube]>,
        stats: &mut SearchStats,
        deadline: Option<Instant>,
    ) -> Result<Option<Vec<Configuration>>> {
        let p = self.problem.observations().len();
        let mut cubes: Vec<Hypercube> = match seed {
            Some(s) => s.to_vec(),
            None => self.base_cubes.clone(),
        };
        if !self.propagate(|i| Some(f.local(i)), &mut cubes) {
            return Ok(None);
        }

        // Most constrained observations first.
        let mut order: Vec<usize> = (0..p).collect();
        order.sort_by_key(|&m| (cubes[m].free_count(), m));

        // Checks become runnable at the position where their last
        // participant completes.
        let pos_of = |m: usize| order.iter().position(|&x| x == m).unwrap();
        let mut reach_sched: Vec<Vec<(usize, usize, bool)>> = vec![Vec::new(); p];
        for &(a, b) in self.problem.pr() {
            reach_sched[pos_of(a).max(pos_of(b))].push((a, b, true));
        }
        for &(a, b) in self.problem.nr() {
            reach_sched[pos_of(a).max(pos_of(b))].push((a, b, false));
        }
        let mut distinct_sched: Vec<Vec<(usize, usize)>> = vec![Vec::new(); p];
        for group in self.problem.distinct() {
            for (k, &a) in group.iter().enumerate() {
                for &b in &group[k + 1..] {
                    distinct_sched[pos_of(a).max(pos_of(b))].push((a, b));
                }
            }
        }

        // Free bits participating in many constrained functions first:
        // they propagate the furthest.
        let mut bit_order: Vec<Vec<NodeIdx>> = Vec::with_capacity(p);
        for m in 0..p {
            let mut score = vec![0usize; self.n];
            for &i in &self.constrained[m] {
                for clause in f.local(i).clauses() {
                    for lit in clause.literals() {
                        score[lit.var] += 1;
                    }
                }
            }
            let mut bits: Vec<NodeIdx> = (0..self.n).collect();
            bits.sort_by_key(|&j| (usize::MAX - score[j], j));
            bit_order.push(bits);
        }

        let ctx = NetworkContext::new(f);
        let mut run = Run {
            ws: self,
            f,
            ctx,
            order,
            bit_order,
            reach_sched,
            distinct_sched,
            stats,
            deadline,
            steps: 0,
        };
        if run.assign_from(0, &mut cubes)? {
            let witness = cubes
                .iter()
                .map(|h| {
                    Configuration::new(h.cells().iter().map(|c| c.as_bool().expect("complete cube")).collect())
                })
                .collect();
            Ok(Some(witness))
        } else {
            Ok(None)
        }
    }
}

enum Refine {
    Same,
    Changed,
    Conflict,
}

/// One round of the constraint f_i(x) = x_i on a cube. With x_i still
/// free, a determined evaluation fixes it. With x_i fixed to v, unit
/// propagation applies: for v = 1 a single surviving clause must hold,
/// forcing its free literals; for v = 0 every surviving clause must be
/// falsified, forcing the last free literal of any clause whose fixed
/// literals are all satisfied.
fn refine(cube: &mut Hypercube, i: NodeIdx, f_i: &MonotoneDnf) -> Refine {
    let Some(v) = cube.get(i).as_bool() else {
        if let Some(w) = eval_on_cells(f_i, cube.cells()).determined() {
            cube.set(i, Cell::from_bool(w));
            return Refine::Changed;
        }
        return Refine::Same;
    };
    match f_i {
        MonotoneDnf::Const(c) => {
            if *c == v {
                Refine::Same
            } else {
                Refine::Conflict
            }
        }
        MonotoneDnf::Clauses(clauses) => {
            if v {
                let mut survivor = None;
                for clause in clauses {
                    let falsified = clause
                        .literals()
                        .iter()
                        .any(|l| cube.get(l.var).as_bool().is_some_and(|b| !l.satisfied_by(b)));
                    if !falsified {
                        if survivor.is_some() {
                            return Refine::Same;
                        }
                        survivor = Some(clause);
                    }
                }
                let Some(clause) = survivor else {
                    return Refine::Conflict;
                };
                let mut out = Refine::Same;
                for l in clause.literals() {
                    if cube.get(l.var).is_free() {
                        cube.set(l.var, Cell::from_bool(l.positive));
                        out = Refine::Changed;
                    }
                }
                out
            } else {
                let mut out = Refine::Same;
                'clauses: for clause in clauses {
                    let mut last_free = None;
                    let mut free = 0;
                    for l in clause.literals() {
                        match cube.get(l.var).as_bool() {
                            Some(b) if !l.satisfied_by(b) => continue 'clauses,
                            Some(_) => {}
                            None => {
                                free += 1;
                                last_free = Some(l);
                            }
                        }
                    }
                    match (free, last_free) {
                        (0, _) => return Refine::Conflict,
                        (1, Some(l)) => {
                            cube.set(l.var, Cell::from_bool(!l.positive));
                            out = Refine::Changed;
                        }
                        _ => {}
                    }
                }
                out
            }
        }
    }
}

struct Run<'a, 'p> {
    ws: &'a WitnessSearch<'p>,
    f: &'a BooleanNetwork,
    ctx: NetworkContext,
    order: Vec<usize>,
    bit_order: Vec<Vec<NodeIdx>>,
    reach_sched: Vec<Vec<(usize, usize, bool)>>,
    distinct_sched: Vec<Vec<(usize, usize)>>,
    stats: &'a mut SearchStats,
    deadline: Option<Instant>,
    steps: u64,
}

impl Run<'_, '_> {
    fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps % 4096 == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    return Err(Error::Capacity {
                        operation: "witness search",
                        message: format!(
                            "deadline exceeded after {} completions and {} reachability checks",
                            self.stats.completions_tried, self.stats.reach_checks
                        ),
                    });
                }
            }
        }
        Ok(())
    }

    /// Completes observations order[k..]; true when a full witness is
    /// reached.
    fn assign_from(&mut self, k: usize, cubes: &mut Vec<Hypercube>) -> Result<bool> {
        if k == self.order.len() {
            return Ok(true);
        }
        let m = self.order[k];
        self.complete_obs(k, m, cubes)
    }

    fn complete_obs(&mut self, k: usize, m: usize, cubes: &mut Vec<Hypercube>) -> Result<bool> {
        self.tick()?;
        let free = self.bit_order[m].iter().copied().find(|&i| cubes[m].get(i).is_free());
        let Some(bit) = free else {
            return self.obs_completed(k, m, cubes);
        };
        for v in [false, true] {
            let mut next = cubes[m].clone();
            next.set(bit, Cell::from_bool(v));
            if !self.ws.propagate_obs(m, |i| Some(self.f.local(i)), &mut next) {
                continue;
            }
            let saved = std::mem::replace(&mut cubes[m], next);
            if self.complete_obs(k, m, cubes)? {
                return Ok(true);
            }
            cubes[m] = saved;
        }
        Ok(false)
    }

    /// Exact checks scheduled at position k, then the next observation.
    fn obs_completed(&mut self, k: usize, m: usize, cubes: &mut Vec<Hypercube>) -> Result<bool> {
        self.stats.completions_tried += 1;
        let config_of = |h: &Hypercube| {
            Configuration::new(h.cells().iter().map(|c| c.as_bool().expect("complete")).collect())
        };
        let x = config_of(&cubes[m]);

        if self.ws.problem.fp().contains(&m) && !crate::semantics::is_fixpoint(self.f, &x)? {
            return Ok(false);
        }
        let tp_comps: Vec<NodeIdx> = self
            .ws
            .problem
            .tp()
            .iter()
            .filter(|&&(m2, _)| m2 == m)
            .map(|&(_, i)| i)
            .collect();
        if !tp_comps.is_empty() && !self.ctx.trap_keeps_fixed(self.f, &x, &tp_comps)? {
            return Ok(false);
        }
        for &(a, b) in &self.distinct_sched[k].clone() {
            if cubes[a] == cubes[b] {
                return Ok(false);
            }
        }
        // Reachability last: each check runs lock iterations over the
        // whole network.
        for &(a, b, expect) in &self.reach_sched[k].clone() {
            self.stats.reach_checks += 1;
            self.tick()?;
            let xa = config_of(&cubes[a]);
            let xb = config_of(&cubes[b]);
            if self.ctx.is_reachable(self.f, &xa, &xb)? != expect {
                return Ok(false);
            }
        }
        self.assign_from(k + 1, cubes)
    }
}
