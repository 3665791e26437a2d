//! The eight reduction rules and the policy deciding when each one runs.
//!
//! Rules 1 and 2 are driven by a queue of vertices whose neighborhood changed
//! and run after every graph change. Rules 3 to 8 run as full passes, and a
//! new pass starts only once the edge count has dropped by the configured
//! trigger fraction since the previous one.

use std::collections::VecDeque;

use crate::graph::{strongly_connected_components, TriGraph, VertexId};
use crate::solver::{Cause, SolverState};
use crate::stop::Stop;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReductionOutcome {
    /// Vertices removed into the solution, in removal order.
    pub forced: Vec<VertexId>,
    pub merged: Vec<VertexId>,
    pub edges_erased: usize,
    pub changed: bool,
}

impl ReductionOutcome {
    fn absorb(&mut self, other: ReductionOutcome) {
        self.forced.extend(other.forced);
        self.merged.extend(other.merged);
        self.edges_erased += other.edges_erased;
        self.changed |= other.changed;
    }
}

/// True iff every pair of distinct vertices in `set` is joined in both
/// directions. Empty and singleton sets qualify.
pub fn is_diclique(g: &TriGraph, set: &[VertexId]) -> bool {
    set.iter()
        .enumerate()
        .all(|(i, x)| set[i + 1..].iter().all(|y| g.bidir(*x).contains(y)))
}

fn sorted(it: impl Iterator<Item = VertexId>) -> Vec<VertexId> {
    let mut v: Vec<VertexId> = it.collect();
    v.sort_unstable();
    v
}

/// Merges `v`, then removes into the solution every vertex that gained a
/// self-loop from the merge.
fn merge_and_cascade(g: &mut TriGraph, v: VertexId, out: &mut ReductionOutcome) {
    let looped = g.merge_vertex(v);
    out.merged.push(v);
    out.changed = true;
    for u in looped {
        if g.is_live(u) && g.has_self_loop(u) {
            g.remove_vertex(u);
            out.forced.push(u);
        }
    }
}

pub fn rule1_self_loop(g: &mut TriGraph, v: VertexId) -> ReductionOutcome {
    let mut out = ReductionOutcome::default();
    if g.is_live(v) && g.has_self_loop(v) {
        g.remove_vertex(v);
        out.forced.push(v);
        out.changed = true;
    }
    out
}

pub fn rule2_low_degree(g: &mut TriGraph, v: VertexId) -> ReductionOutcome {
    let mut out = ReductionOutcome::default();
    if !g.is_live(v) || g.has_self_loop(v) {
        return out;
    }
    let b = g.bidir_degree(v);
    if g.in_degree(v) + b <= 1 || g.out_degree(v) + b <= 1 {
        merge_and_cascade(g, v, &mut out);
    }
    out
}

pub fn rule3_bidir_diclique_with_zero_side(g: &mut TriGraph, v: VertexId) -> ReductionOutcome {
    let mut out = ReductionOutcome::default();
    if !g.is_live(v) || g.has_self_loop(v) || g.in_degree(v).min(g.out_degree(v)) != 0 {
        return out;
    }
    let clique = sorted(g.bidir(v).iter().copied());
    if !is_diclique(g, &clique) {
        return out;
    }
    for u in clique {
        g.remove_vertex(u);
        out.forced.push(u);
    }
    merge_and_cascade(g, v, &mut out);
    out
}

/// Erases every one-directional edge whose endpoints lie in different strongly
/// connected components of the graph restricted to one-directional edges.
pub fn rule4_cross_scc_edge_pruning(g: &mut TriGraph) -> ReductionOutcome {
    let mut out = ReductionOutcome::default();
    let alive: Vec<bool> = (0..g.capacity())
        .map(|i| g.is_live(VertexId(i as u32)))
        .collect();
    let comp = strongly_connected_components(&alive, |v, buf| {
        buf.extend(g.out_only(VertexId(v as u32)).iter().map(|w| w.0));
    });
    let mut doomed = Vec::new();
    for u in g.live_vertices() {
        for &w in g.out_only(u) {
            if comp[u.index()] != comp[w.index()] {
                doomed.push((u, w));
            }
        }
    }
    doomed.sort_unstable();
    for (u, w) in doomed {
        if g.erase_edge(u, w) {
            out.edges_erased += 1;
        }
    }
    out.changed = out.edges_erased > 0;
    out
}

/// Erases the one-directional edge `u -> v` when every in-only neighbor of `u`
/// also points to `v`, or every out-only neighbor of `v` is also reached from
/// `u`. Inclusion is non-strict.
pub fn rule5_edge_dominance(g: &mut TriGraph, u: VertexId, v: VertexId) -> ReductionOutcome {
    let mut out = ReductionOutcome::default();
    if u == v || !g.is_live(u) || !g.out_only(u).contains(&v) {
        return out;
    }
    let into_v = |x: &VertexId| g.in_only(v).contains(x) || g.bidir(v).contains(x);
    let from_u = |x: &VertexId| g.out_only(u).contains(x) || g.bidir(u).contains(x);
    if g.in_only(u).iter().all(into_v) || g.out_only(v).iter().all(from_u) {
        g.erase_edge(u, v);
        out.edges_erased = 1;
        out.changed = true;
    }
    out
}

pub fn rule6_one_sided_diclique(g: &mut TriGraph, v: VertexId) -> ReductionOutcome {
    let mut out = ReductionOutcome::default();
    if !g.is_live(v) || g.has_self_loop(v) {
        return out;
    }
    let outs = sorted(g.out_only(v).iter().chain(g.bidir(v).iter()).copied());
    let fires = is_diclique(g, &outs) || {
        let ins = sorted(g.in_only(v).iter().chain(g.bidir(v).iter()).copied());
        is_diclique(g, &ins)
    };
    if fires {
        merge_and_cascade(g, v, &mut out);
    }
    out
}

pub fn rule7_two_diclique_split(
    g: &mut TriGraph,
    v: VertexId,
    degree_bound: usize,
) -> ReductionOutcome {
    let mut out = ReductionOutcome::default();
    if !g.is_live(v) || g.has_self_loop(v) || g.total_degree(v) > degree_bound {
        return out;
    }
    let pinned = sorted(g.bidir(v).iter().copied());
    if !is_diclique(g, &pinned) {
        return out;
    }
    let rest = sorted(g.in_only(v).iter().chain(g.out_only(v).iter()).copied());
    let mut parts = if pinned.is_empty() {
        Vec::new()
    } else {
        vec![pinned]
    };
    if partition_into_dicliques(g, &rest, &mut parts, 2) {
        merge_and_cascade(g, v, &mut out);
    }
    out
}

pub fn rule8_three_diclique_split(
    g: &mut TriGraph,
    v: VertexId,
    degree_bound: usize,
) -> ReductionOutcome {
    let mut out = ReductionOutcome::default();
    if !g.is_live(v)
        || g.has_self_loop(v)
        || g.bidir_degree(v) != 0
        || g.total_degree(v) > degree_bound
    {
        return out;
    }
    let rest = sorted(g.in_only(v).iter().chain(g.out_only(v).iter()).copied());
    if partition_into_dicliques(g, &rest, &mut Vec::new(), 3) {
        merge_and_cascade(g, v, &mut out);
    }
    out
}

/// Backtracking search assigning each of `rest` to one of at most `max_parts`
/// dicliques, extending the (already diclique) `parts`.
fn partition_into_dicliques(
    g: &TriGraph,
    rest: &[VertexId],
    parts: &mut Vec<Vec<VertexId>>,
    max_parts: usize,
) -> bool {
    let Some((&x, tail)) = rest.split_first() else {
        return true;
    };
    for i in 0..parts.len() {
        if parts[i].iter().all(|y| g.bidir(x).contains(y)) {
            parts[i].push(x);
            if partition_into_dicliques(g, tail, parts, max_parts) {
                return true;
            }
            parts[i].pop();
        }
    }
    if parts.len() < max_parts {
        parts.push(vec![x]);
        if partition_into_dicliques(g, tail, parts, max_parts) {
            return true;
        }
        parts.pop();
    }
    false
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FullPassRecord {
    /// Edge count at the start of the previous full pass, if any.
    pub baseline: Option<usize>,
    pub edges_at_start: usize,
    pub edges_at_end: usize,
}

/// Queue for Rules 1-2 plus the edge-loss trigger for full passes.
#[derive(Clone, Debug)]
pub struct Scheduler {
    trigger_fraction: f64,
    edges_at_last_full_pass: Option<usize>,
    queue: VecDeque<VertexId>,
    queued: Vec<bool>,
    passes: Vec<FullPassRecord>,
}

impl Scheduler {
    /// Seeds the queue with every live vertex of `g`.
    pub fn new(g: &TriGraph, trigger_fraction: f64) -> Self {
        let mut s = Scheduler {
            trigger_fraction,
            edges_at_last_full_pass: None,
            queue: VecDeque::with_capacity(g.live_count()),
            queued: vec![false; g.capacity()],
            passes: Vec::new(),
        };
        for v in g.live_vertices() {
            s.enqueue(v);
        }
        s
    }

    pub fn trigger_fraction(&self) -> f64 {
        self.trigger_fraction
    }

    pub fn edges_at_last_full_pass(&self) -> Option<usize> {
        self.edges_at_last_full_pass
    }

    /// Every full pass run so far, in order.
    pub fn passes(&self) -> &[FullPassRecord] {
        &self.passes
    }

    pub fn pending(&self) -> usize {
        self.queue.len()
    }

    /// Whether enough edges were lost since the last full pass to run another.
    pub fn full_pass_due(&self, edge_count: usize) -> bool {
        match self.edges_at_last_full_pass {
            None => true,
            Some(base) => {
                let lost = base.saturating_sub(edge_count);
                lost > 0 && lost as f64 >= self.trigger_fraction * base as f64
            }
        }
    }

    fn enqueue(&mut self, v: VertexId) {
        if !self.queued[v.index()] {
            self.queued[v.index()] = true;
            self.queue.push_back(v);
        }
    }

    fn pop(&mut self) -> Option<VertexId> {
        let v = self.queue.pop_front()?;
        self.queued[v.index()] = false;
        Some(v)
    }
}

fn commit(state: &mut SolverState, out: ReductionOutcome, total: &mut ReductionOutcome) {
    for &v in &out.forced {
        state.stack.push((v, Cause::Forced));
    }
    total.absorb(out);
}

/// Applies Rules 1-2 to every queued vertex until the queue runs dry.
fn drain_queue(state: &mut SolverState, total: &mut ReductionOutcome, stop: &Stop) {
    let mut steps = 0u32;
    loop {
        for v in state.graph.take_touched() {
            state.mark_for_rescore(v);
            state.scheduler.enqueue(v);
        }
        let Some(v) = state.scheduler.pop() else {
            break;
        };
        if !state.graph.is_live(v) {
            continue;
        }
        let out = if state.graph.has_self_loop(v) {
            rule1_self_loop(&mut state.graph, v)
        } else {
            rule2_low_degree(&mut state.graph, v)
        };
        if out.changed {
            commit(state, out, total);
        }
        steps = steps.wrapping_add(1);
        if steps.is_multiple_of(256) && stop.is_set() {
            return;
        }
    }
}

/// One application of Rules 4, 5, 3, 6, 7, 8 in that order, with the Rule 1-2
/// queue drained after every change.
fn full_pass(state: &mut SolverState, total: &mut ReductionOutcome, stop: &Stop) {
    let bound = state.degree_bound;

    let out = rule4_cross_scc_edge_pruning(&mut state.graph);
    if out.changed {
        commit(state, out, total);
        drain_queue(state, total, stop);
    }

    let cap = state.graph.capacity();
    for i in 0..cap {
        let u = VertexId(i as u32);
        if !state.graph.is_live(u) {
            continue;
        }
        if i % 256 == 0 && stop.is_set() {
            return;
        }
        let du = state.graph.total_degree(u);
        for w in sorted(state.graph.out_only(u).iter().copied()) {
            if !state.graph.is_live(u) {
                break;
            }
            if du > bound && state.graph.is_live(w) && state.graph.total_degree(w) > bound {
                continue;
            }
            let out = rule5_edge_dominance(&mut state.graph, u, w);
            if out.changed {
                commit(state, out, total);
            }
        }
        drain_queue(state, total, stop);
    }

    type VertexRule = fn(&mut TriGraph, VertexId, usize) -> ReductionOutcome;
    let rules: [(VertexRule, bool); 4] = [
        (|g, v, _| rule3_bidir_diclique_with_zero_side(g, v), false),
        (|g, v, _| rule6_one_sided_diclique(g, v), true),
        (rule7_two_diclique_split, true),
        (rule8_three_diclique_split, true),
    ];
    for (rule, bounded) in rules {
        for i in 0..cap {
            let v = VertexId(i as u32);
            if !state.graph.is_live(v) || (bounded && state.graph.total_degree(v) > bound) {
                continue;
            }
            if i % 256 == 0 && stop.is_set() {
                return;
            }
            let out = rule(&mut state.graph, v, bound);
            if out.changed {
                commit(state, out, total);
                drain_queue(state, total, stop);
            }
        }
    }
}

/// Reduces until neither the Rule 1-2 queue nor a due full pass changes the
/// graph. Forced vertices are pushed onto the solution stack as they occur.
pub fn reduce_to_fixpoint(state: &mut SolverState, stop: &Stop) -> ReductionOutcome {
    let mut total = ReductionOutcome::default();
    loop {
        drain_queue(state, &mut total, stop);
        if stop.is_set() || state.graph.is_empty() {
            break;
        }
        let edges = state.graph.edge_count();
        if !state.scheduler.full_pass_due(edges) {
            break;
        }
        let baseline = state.scheduler.edges_at_last_full_pass.replace(edges);
        full_pass(state, &mut total, stop);
        state.scheduler.passes.push(FullPassRecord {
            baseline,
            edges_at_start: edges,
            edges_at_end: state.graph.edge_count(),
        });
    }
    total
}
