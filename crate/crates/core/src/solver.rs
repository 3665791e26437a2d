//! Three-stage pipeline: reduction-driven greedy construction, reverse-order
//! redundancy pruning, and randomized local search around the best solution.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::sync::atomic::AtomicBool;
use std::time::{Duration, Instant};

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{CycleProbe, TriGraph, VertexId};
use crate::instance::Instance;
use crate::oracle::is_valid_dfvs;
use crate::reductions::{reduce_to_fixpoint, Scheduler};
use crate::stop::Stop;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ScoringMode {
    /// `(d⁺ + d±) · (d⁻ + d±)`
    Product,
    /// `d±` first, then `d⁻ · d⁺`.
    Lexicographic,
    /// Stage one uses `Product`; local-search iterations alternate.
    #[default]
    Alternate,
}

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("trigger fraction {0} outside [0.05, 0.25]")]
    TriggerFraction(f64),
    #[error("restore fraction {0} outside (0, 1)")]
    RestoreFraction(f64),
    #[error("degree bound must be positive")]
    DegreeBound,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolverConfig {
    pub seed: u64,
    /// Wall-clock budget for the whole solve.
    pub time_limit: Option<Duration>,
    /// Cap on local-search iterations. When set, pruning is never skipped for
    /// lack of time, so the result depends only on the seed.
    pub max_iterations: Option<u64>,
    pub trigger_fraction: f64,
    pub restore_fraction: f64,
    pub degree_bound: usize,
    pub scoring_mode: ScoringMode,
    /// Record one [`IterationRecord`] per local-search iteration.
    pub trace: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            seed: 0,
            time_limit: Some(Duration::from_secs(600)),
            max_iterations: None,
            trigger_fraction: 0.10,
            restore_fraction: 0.30,
            degree_bound: 12,
            scoring_mode: ScoringMode::Alternate,
            trace: false,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(0.05..=0.25).contains(&self.trigger_fraction) {
            return Err(ConfigError::TriggerFraction(self.trigger_fraction));
        }
        if !(self.restore_fraction > 0.0 && self.restore_fraction < 1.0) {
            return Err(ConfigError::RestoreFraction(self.restore_fraction));
        }
        if self.degree_bound == 0 {
            return Err(ConfigError::DegreeBound);
        }
        Ok(())
    }

    /// Number of vertices freed from a best solution of size `size`:
    /// `⌈restore_fraction · size⌉`, at least one for a nonempty solution.
    pub fn restore_count(&self, size: usize) -> usize {
        if size == 0 {
            return 0;
        }
        // the epsilon keeps e.g. 0.3 * 10 from rounding up to 4
        let k = (self.restore_fraction * size as f64 - 1e-9).ceil() as usize;
        k.clamp(1, size)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cause {
    Forced,
    Chosen,
}

/// Working graph plus the ordered solution stack built from it.
#[derive(Clone, Debug)]
pub struct SolverState {
    pub(crate) graph: TriGraph,
    pub(crate) stack: Vec<(VertexId, Cause)>,
    pub(crate) scheduler: Scheduler,
    pub(crate) degree_bound: usize,
    rescore: Vec<VertexId>,
    rescore_mark: Vec<bool>,
}

impl SolverState {
    pub fn new(graph: TriGraph, config: &SolverConfig) -> Self {
        let scheduler = Scheduler::new(&graph, config.trigger_fraction);
        let cap = graph.capacity();
        SolverState {
            graph,
            stack: Vec::new(),
            scheduler,
            degree_bound: config.degree_bound,
            rescore: Vec::new(),
            rescore_mark: vec![false; cap],
        }
    }

    pub fn graph(&self) -> &TriGraph {
        &self.graph
    }

    pub fn stack(&self) -> &[(VertexId, Cause)] {
        &self.stack
    }

    pub fn scheduler(&self) -> &Scheduler {
        &self.scheduler
    }

    /// Solution vertices in insertion order.
    pub fn solution_order(&self) -> Vec<VertexId> {
        self.stack.iter().map(|&(v, _)| v).collect()
    }

    pub(crate) fn mark_for_rescore(&mut self, v: VertexId) {
        if !self.rescore_mark[v.index()] {
            self.rescore_mark[v.index()] = true;
            self.rescore.push(v);
        }
    }

    fn take_rescore(&mut self) -> Vec<VertexId> {
        let list = std::mem::take(&mut self.rescore);
        for v in &list {
            self.rescore_mark[v.index()] = false;
        }
        list
    }
}

pub fn score_product(g: &TriGraph, v: VertexId) -> u64 {
    let b = g.bidir_degree(v) as u64;
    (g.out_degree(v) as u64 + b) * (g.in_degree(v) as u64 + b)
}

pub fn score_lexicographic(g: &TriGraph, v: VertexId) -> (u64, u64) {
    (
        g.bidir_degree(v) as u64,
        g.in_degree(v) as u64 * g.out_degree(v) as u64,
    )
}

type ScoreKey = (u64, u64);

fn score_key(g: &TriGraph, v: VertexId, mode: ScoringMode) -> ScoreKey {
    match mode {
        ScoringMode::Lexicographic => score_lexicographic(g, v),
        ScoringMode::Product | ScoringMode::Alternate => (score_product(g, v), 0),
    }
}

/// Live vertex with the highest score, smallest id among ties.
pub fn select_best(g: &TriGraph, mode: ScoringMode) -> Option<VertexId> {
    g.live_vertices()
        .max_by_key(|&v| (score_key(g, v, mode), Reverse(v)))
}

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("interrupted")]
pub struct Interrupted;

/// Alternates reduction to fixpoint with removal of the best-scoring vertex
/// until the graph is empty. Every removed vertex lands on the state's stack.
pub fn construct_solution(
    state: &mut SolverState,
    mode: ScoringMode,
    stop: &Stop,
) -> Result<(), Interrupted> {
    // Lazy max-heap: every live vertex has an entry carrying its current key;
    // entries whose key no longer matches are discarded on pop.
    let mut heap: BinaryHeap<(ScoreKey, Reverse<VertexId>)> = BinaryHeap::new();
    let mut seeded = false;
    loop {
        reduce_to_fixpoint(state, stop);
        if stop.is_set() {
            return Err(Interrupted);
        }
        if state.graph.is_empty() {
            state.take_rescore();
            return Ok(());
        }
        let dirty = state.take_rescore();
        if seeded {
            for v in dirty {
                if state.graph.is_live(v) {
                    heap.push((score_key(&state.graph, v, mode), Reverse(v)));
                }
            }
        } else {
            heap.extend(
                state
                    .graph
                    .live_vertices()
                    .map(|v| (score_key(&state.graph, v, mode), Reverse(v))),
            );
            seeded = true;
        }
        let chosen = loop {
            let (key, Reverse(v)) = heap.pop().expect("every live vertex has a heap entry");
            if state.graph.is_live(v) && score_key(&state.graph, v, mode) == key {
                break v;
            }
        };
        state.graph.remove_vertex(chosen);
        state.stack.push((chosen, Cause::Chosen));
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("instance minus the given vertices still contains a cycle")]
    NotAFeedbackSet,
}

/// Feedback vertex set in original ids, kept sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BestSolution {
    vertices: Vec<VertexId>,
}

impl BestSolution {
    pub fn new(mut vertices: Vec<VertexId>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        BestSolution { vertices }
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn size(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// Walks `order` newest-first and drops every vertex that can be put back into
/// the acyclic remainder without closing a cycle. If `stop` fires midway the
/// unprocessed vertices are kept, so the result is always valid.
pub fn prune_redundant(
    order: &[VertexId],
    inst: &Instance,
    stop: &Stop,
) -> Result<BestSolution, SolveError> {
    let n = inst.vertex_count();
    let mut in_solution = vec![false; n];
    for &v in order {
        in_solution[v.index()] = true;
    }
    let keep: Vec<bool> = in_solution.iter().map(|&s| !s).collect();
    let mut remainder = TriGraph::induced(inst, &keep);
    if !remainder.is_acyclic() {
        return Err(SolveError::NotAFeedbackSet);
    }
    let mut probe = CycleProbe::new(n);
    for (step, &v) in order.iter().rev().enumerate() {
        if step % 64 == 0 && stop.is_set() {
            break;
        }
        if !in_solution[v.index()] {
            continue;
        }
        let succs = inst.successors(v);
        let preds = inst.predecessors(v);
        if !probe.creates_cycle(&remainder, v, succs, preds) {
            remainder.insert_vertex(v, succs, preds);
            in_solution[v.index()] = false;
        }
    }
    Ok(BestSolution::new(
        inst.vertices().filter(|v| in_solution[v.index()]).collect(),
    ))
}

/// True iff putting any single solution vertex back creates a cycle.
pub fn is_one_minimal(inst: &Instance, sol: &BestSolution) -> bool {
    let mut keep = vec![true; inst.vertex_count()];
    for v in sol.vertices() {
        keep[v.index()] = false;
    }
    let remainder = TriGraph::induced(inst, &keep);
    let mut probe = CycleProbe::new(inst.vertex_count());
    sol.vertices()
        .iter()
        .all(|&v| probe.creates_cycle(&remainder, v, inst.successors(v), inst.predecessors(v)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IterationRecord {
    pub freed: usize,
    pub mode: ScoringMode,
    /// Candidate size, `None` when the iteration was cut short.
    pub candidate: Option<usize>,
    pub best: usize,
    pub pruned: bool,
}

pub struct LocalSearchStep {
    pub best: BestSolution,
    pub record: IterationRecord,
    pub prune_time: Option<Duration>,
}

/// Frees a uniformly random `⌈restore_fraction · |best|⌉` subset of `best`,
/// re-solves the subgraph induced by everything except the kept vertices, and
/// returns the candidate if it is no larger than `best`.
pub fn local_search_iteration(
    best: &BestSolution,
    inst: &Instance,
    config: &SolverConfig,
    mode: ScoringMode,
    allow_prune: bool,
    rng: &mut ChaCha8Rng,
    stop: &Stop,
) -> LocalSearchStep {
    let size = best.size();
    let freed = config.restore_count(size);
    let mut record = IterationRecord {
        freed,
        mode,
        candidate: None,
        best: size,
        pruned: false,
    };
    if freed == 0 {
        return LocalSearchStep {
            best: best.clone(),
            record,
            prune_time: None,
        };
    }
    let mut is_freed = vec![false; size];
    for i in index::sample(rng, size, freed) {
        is_freed[i] = true;
    }
    let kept: Vec<VertexId> = best
        .vertices()
        .iter()
        .zip(&is_freed)
        .filter(|(_, &f)| !f)
        .map(|(&v, _)| v)
        .collect();

    let mut keep = vec![true; inst.vertex_count()];
    for v in &kept {
        keep[v.index()] = false;
    }
    let mut state = SolverState::new(TriGraph::induced(inst, &keep), config);
    if construct_solution(&mut state, mode, stop).is_err() {
        return LocalSearchStep {
            best: best.clone(),
            record,
            prune_time: None,
        };
    }

    let mut order = kept;
    order.extend(state.stack.iter().map(|&(v, _)| v));
    let mut prune_time = None;
    let candidate = if allow_prune {
        let t = Instant::now();
        let pruned = prune_redundant(&order, inst, stop)
            .expect("kept vertices plus subgraph solution cover every cycle");
        prune_time = Some(t.elapsed());
        record.pruned = true;
        pruned
    } else {
        BestSolution::new(order)
    };
    record.candidate = Some(candidate.size());
    let next = if candidate.size() <= size {
        debug_assert!(is_valid_dfvs(inst, candidate.vertices()));
        candidate
    } else {
        best.clone()
    };
    record.best = next.size();
    LocalSearchStep {
        best: next,
        record,
        prune_time,
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub stage_one_size: usize,
    pub stage_two_size: usize,
    /// Local-search iterations completed.
    pub iterations: u64,
    pub improvements: u64,
    /// Stop fired before stage one finished.
    pub interrupted_early: bool,
    pub trace: Vec<IterationRecord>,
}

#[derive(Clone, Debug)]
pub struct SolveOutcome {
    pub best: BestSolution,
    pub stats: SolveStats,
}

/// Runs all three stages until the iteration cap, the time limit, or the
/// cancellation flag ends the search, then returns the best solution found.
pub fn solve(inst: &Instance, config: &SolverConfig, cancel: Option<&AtomicBool>) -> SolveOutcome {
    let start = Instant::now();
    let deadline = config.time_limit.map(|t| start + t);
    let stop = Stop::new(cancel, deadline);
    let mut stats = SolveStats::default();

    let stage_one_mode = match config.scoring_mode {
        ScoringMode::Alternate => ScoringMode::Product,
        m => m,
    };
    let mut state = SolverState::new(TriGraph::from_instance(inst), config);
    if construct_solution(&mut state, stage_one_mode, &stop).is_err() {
        // Stack plus the unreduced rest covers every cycle: merged vertices
        // never close a cycle on their own.
        let mut vertices = state.solution_order();
        vertices.extend(state.graph.live_vertices());
        let best = BestSolution::new(vertices);
        stats.stage_one_size = best.size();
        stats.stage_two_size = best.size();
        stats.interrupted_early = true;
        return SolveOutcome { best, stats };
    }
    let order = state.solution_order();
    stats.stage_one_size = order.len();
    drop(state);

    let t = Instant::now();
    let mut best =
        prune_redundant(&order, inst, &stop).expect("stage one yields a feedback vertex set");
    let mut last_prune = t.elapsed();
    stats.stage_two_size = best.size();
    log::info!(
        "stage one: {} vertices, stage two: {} vertices",
        stats.stage_one_size,
        stats.stage_two_size
    );

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    while !best.is_empty()
        && !stop.is_set()
        && config
            .max_iterations
            .is_none_or(|cap| stats.iterations < cap)
    {
        let mode = match config.scoring_mode {
            ScoringMode::Alternate if stats.iterations % 2 == 0 => ScoringMode::Lexicographic,
            ScoringMode::Alternate => ScoringMode::Product,
            m => m,
        };
        let allow_prune = match deadline {
            None => true,
            Some(d) => d.saturating_duration_since(Instant::now()) >= last_prune * 2,
        };
        let step = local_search_iteration(&best, inst, config, mode, allow_prune, &mut rng, &stop);
        if step.record.candidate.is_none() {
            break;
        }
        if let Some(p) = step.prune_time {
            last_prune = p;
        }
        if step.best.size() < best.size() {
            stats.improvements += 1;
            log::debug!(
                "iteration {}: improved to {}",
                stats.iterations,
                step.best.size()
            );
        }
        best = step.best;
        stats.iterations += 1;
        if config.trace {
            stats.trace.push(step.record);
        }
    }
    SolveOutcome { best, stats }
}
