//! Backtracking enumeration over per-node candidate assignments.
//!
//! Nodes are assigned in declaration order, candidates in stream order,
//! so single-worker emission is lexicographic over the per-node candidate
//! indices. Pruning happens at two levels: a static filter drops local
//! candidates that cannot meet a fixpoint or trap-fixation value on the
//! raw observation cube, and the witness propagator refines all
//! observation cubes after every assignment, rejecting prefixes with an
//! empty completion space. Reachability is only ever checked on complete
//! networks, inside the leaf witness search.

use std::time::Instant;

use rayon::prelude::*;

use super::witness::WitnessSearch;
use super::{Mode, SearchStats, Solution, SynthesisOptions, SynthesisOutcome, SynthesisProblem};
use crate::bn::{BooleanNetwork, Hypercube, MonotoneDnf, NodeIdx};
use crate::candidates::enumerate_local_candidates;
use crate::error::{Error, Result};
use crate::semantics::eval_on_cells;

/// Candidate lists up to this size are materialized once; larger spaces
/// are re-enumerated lazily at each descent.
const MEMO_LIMIT: usize = 1 << 16;

enum Domain {
    Memo(Vec<(u64, MonotoneDnf)>),
    Lazy,
}

struct Engine<'p> {
    problem: &'p SynthesisProblem,
    ws: WitnessSearch<'p>,
    domains: Vec<Domain>,
    n: usize,
}

impl<'p> Engine<'p> {
    fn new(problem: &'p SynthesisProblem) -> Result<Self> {
        let n = problem.dimension();
        let ws = WitnessSearch::new(problem);
        let mut domains = Vec::with_capacity(n);
        for node in 0..n {
            let mut iter = enumerate_local_candidates(problem.graph(), node, problem.bound_for(node))?;
            let mut list = Vec::new();
            let mut idx = 0u64;
            let mut overflow = false;
            while let Some(cand) = iter.next() {
                if list.len() > MEMO_LIMIT {
                    overflow = true;
                    break;
                }
                if static_ok(&ws, node, &cand) {
                    list.push((idx, cand));
                }
                idx += 1;
            }
            domains.push(if overflow { Domain::Lazy } else { Domain::Memo(list) });
        }
        Ok(Engine { problem, ws, domains, n })
    }
}

/// A candidate for `node` survives when every fixpoint- or trap-pinned
/// value it must reproduce is possible over the raw observation cube.
fn static_ok(ws: &WitnessSearch<'_>, node: NodeIdx, cand: &MonotoneDnf) -> bool {
    for (m, comps) in ws.constrained.iter().enumerate() {
        if !comps.contains(&node) {
            continue;
        }
        if let Some(v) = ws.base_cubes()[m].get(node).as_bool() {
            if !eval_on_cells(cand, ws.base_cubes()[m].cells()).admits(v) {
                return false;
            }
        }
    }
    true
}

struct Task {
    assigned: Vec<MonotoneDnf>,
    indices: Vec<u64>,
    cubes: Vec<Hypercube>,
}

struct Dfs<'e, 'p> {
    engine: &'e Engine<'p>,
    mode: Mode,
    limit: Option<u64>,
    with_witness: bool,
    deadline: Option<Instant>,
    assigned: Vec<MonotoneDnf>,
    indices: Vec<u64>,
    cube_stack: Vec<Vec<Hypercube>>,
    solutions: Vec<Solution>,
    count: u64,
    stats: SearchStats,
    done: bool,
    steps: u64,
}

impl<'e, 'p> Dfs<'e, 'p> {
    fn from_task(engine: &'e Engine<'p>, options: &SynthesisOptions, task: Task) -> Self {
        Dfs {
            engine,
            mode: options.mode,
            limit: options.limit,
            with_witness: options.with_witness,
            deadline: options.deadline,
            assigned: task.assigned,
            indices: task.indices,
            cube_stack: vec![task.cubes],
            solutions: Vec::new(),
            count: 0,
            stats: SearchStats::default(),
            done: false,
            steps: 0,
        }
    }

    fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps % 1024 == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    return Err(Error::Capacity {
                        operation: "synthesize",
                        message: format!(
                            "deadline exceeded after trying {} candidates over {} leaves ({} solutions so far)",
                            self.stats.candidates_tried, self.stats.leaves_checked, self.count
                        ),
                    });
                }
            }
        }
        Ok(())
    }

    fn descend(&mut self) -> Result<()> {
        let depth = self.assigned.len();
        if depth == self.engine.n {
            return self.leaf();
        }
        match &self.engine.domains[depth] {
            Domain::Memo(list) => {
                for (idx, cand) in list {
                    self.try_candidate(*idx, cand)?;
                    if self.done {
                        return Ok(());
                    }
                }
            }
            Domain::Lazy => {
                let iter = enumerate_local_candidates(
                    self.engine.problem.graph(),
                    depth,
                    self.engine.problem.bound_for(depth),
                )?;
                for (idx, cand) in iter.enumerate() {
                    if !static_ok(&self.engine.ws, depth, &cand) {
                        self.tick()?;
                        continue;
                    }
                    self.try_candidate(idx as u64, &cand)?;
                    if self.done {
                        return Ok(());
                    }
                }
            }
        }
        Ok(())
    }

    fn try_candidate(&mut self, idx: u64, cand: &MonotoneDnf) -> Result<()> {
        self.stats.candidates_tried += 1;
        self.tick()?;
        let depth = self.assigned.len();
        let mut cubes = self.cube_stack.last().expect("cube stack seeded").clone();
        self.assigned.push(cand.clone());
        let assigned = &self.assigned;
        let ok = self
            .engine
            .ws
            .propagate(|i| (i <= depth).then(|| &assigned[i]), &mut cubes);
        if ok {
            self.indices.push(idx);
            self.cube_stack.push(cubes);
            self.descend()?;
            self.cube_stack.pop();
            self.indices.pop();
        }
        self.assigned.pop();
        Ok(())
    }

    fn leaf(&mut self) -> Result<()> {
        self.stats.leaves_checked += 1;
        let f = BooleanNetwork::new(self.assigned.clone())?;
        let seed = self.cube_stack.last().map(|c| c.as_slice());
        if let Some(witness) = self.engine.ws.find(&f, seed, &mut self.stats, self.deadline)? {
            self.count += 1;
            self.stats.solutions_found += 1;
            match self.mode {
                Mode::Count => {}
                Mode::Enumerate | Mode::First => {
                    self.solutions.push(Solution {
                        network: f,
                        witness: self.with_witness.then_some(witness),
                        indices: self.indices.clone(),
                    });
                }
            }
            if self.mode == Mode::First || self.limit.is_some_and(|l| self.count >= l) {
                self.done = true;
            }
        }
        Ok(())
    }
}

pub(crate) fn run(problem: &SynthesisProblem, options: &SynthesisOptions) -> Result<SynthesisOutcome> {
    let engine = Engine::new(problem)?;
    let base_stats = SearchStats {
        constraint_state_cells: problem.constraint_state_cells(),
        ..SearchStats::default()
    };

    if options.mode == Mode::First {
        // Constructive seeding: a verified solution short-circuits the
        // full search. The fallback below remains complete.
        if let Some(solution) = super::motif::try_construct(problem) {
            let mut stats = base_stats;
            stats.solutions_found = 1;
            return Ok(SynthesisOutcome {
                solutions: vec![solution],
                count: 1,
                stats,
            });
        }
    }

    let root = Task {
        assigned: Vec::new(),
        indices: Vec::new(),
        cubes: engine.ws.base_cubes().to_vec(),
    };

    // First mode stays single-worker: the emitted solution must not
    // depend on scheduling.
    let jobs = if options.mode == Mode::First { 1 } else { options.jobs.max(1) };
    let tasks = if jobs > 1 { split_tasks(&engine, root, jobs * 4) } else { vec![root] };

    let results: Result<Vec<Dfs>> = if tasks.len() > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::InvalidParameter(e.to_string()))?;
        pool.install(|| {
            tasks
                .into_par_iter()
                .map(|t| {
                    let mut dfs = Dfs::from_task(&engine, options, t);
                    dfs.descend()?;
                    Ok(dfs)
                })
                .collect()
        })
    } else {
        tasks
            .into_iter()
            .map(|t| {
                let mut dfs = Dfs::from_task(&engine, options, t);
                dfs.descend()?;
                Ok(dfs)
            })
            .collect()
    };

    let mut stats = base_stats;
    let mut solutions = Vec::new();
    let mut count = 0u64;
    for dfs in results? {
        stats.absorb(&dfs.stats);
        count += dfs.count;
        solutions.extend(dfs.solutions);
    }
    // Tasks partition the search space in candidate-index order and each
    // runs in lexicographic order, so the ordered merge is globally
    // lexicographic; an explicit sort covers the sorted flag regardless.
    if options.sorted {
        solutions.sort_by(|a, b| a.indices.cmp(&b.indices));
    }
    if let Some(limit) = options.limit {
        solutions.truncate(limit as usize);
        count = count.min(limit);
    }
    Ok(SynthesisOutcome { solutions, count, stats })
}

/// Expands the root into at least `want` subtree tasks by assigning the
/// first nodes, as long as their domains are materialized.
fn split_tasks(engine: &Engine<'_>, root: Task, want: usize) -> Vec<Task> {
    let mut tasks = vec![root];
    let mut depth = 0;
    while tasks.len() < want && depth < engine.n.min(4) {
        let Domain::Memo(list) = &engine.domains[depth] else { break };
        let mut next = Vec::with_capacity(tasks.len() * list.len());
        for task in tasks {
            for (idx, cand) in list {
                let mut cubes = task.cubes.clone();
                let mut assigned = task.assigned.clone();
                assigned.push(cand.clone());
                let ok = engine
                    .ws
                    .propagate(|i| (i <= depth).then(|| &assigned[i]), &mut cubes);
                if ok {
                    let mut indices = task.indices.clone();
                    indices.push(*idx);
                    next.push(Task { assigned, indices, cubes });
                }
            }
        }
        tasks = next;
        depth += 1;
        if tasks.is_empty() {
            break;
        }
    }
    tasks
}
