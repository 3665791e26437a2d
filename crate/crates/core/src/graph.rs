//! Mutable digraph with tri-partitioned neighborhoods.
//!
//! Every live vertex keeps its neighbors split into three disjoint sets:
//! in-only (`u -> v` without `v -> u`), out-only, and bidirectional. Self-loops
//! are a per-vertex flag and never appear in the neighbor sets.

use std::collections::BTreeSet;
use std::fmt;

use rustc_hash::FxHashSet;

use crate::instance::Instance;

/// Dense 0-based vertex index. External (PACE) ids are `index + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub u32);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn external(self) -> u32 {
        self.0 + 1
    }

    /// Panics on `0`, which is not a valid 1-based id.
    pub fn from_external(id: u32) -> Self {
        assert!(id > 0, "external vertex ids are 1-based");
        VertexId(id - 1)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.external())
    }
}

pub type NeighborSet = FxHashSet<VertexId>;

#[derive(Clone, Debug, Default)]
struct Node {
    in_only: NeighborSet,
    out_only: NeighborSet,
    bidir: NeighborSet,
    self_loop: bool,
}

#[derive(Clone, Debug)]
pub struct TriGraph {
    nodes: Vec<Node>,
    alive: Vec<bool>,
    live_count: usize,
    edge_count: usize,
    touched: Vec<VertexId>,
    touched_mark: Vec<bool>,
}

impl TriGraph {
    /// Graph over `n` live vertices without edges.
    pub fn new(n: usize) -> Self {
        let mut g = Self::empty(n);
        g.alive.iter_mut().for_each(|a| *a = true);
        g.live_count = n;
        g
    }

    /// Index space of size `n` with no live vertex.
    pub fn empty(n: usize) -> Self {
        TriGraph {
            nodes: vec![Node::default(); n],
            alive: vec![false; n],
            live_count: 0,
            edge_count: 0,
            touched: Vec::new(),
            touched_mark: vec![false; n],
        }
    }

    pub fn from_arcs<I>(n: usize, arcs: I) -> Self
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut g = Self::new(n);
        for (u, v) in arcs {
            g.add_edge(u, v);
        }
        g
    }

    pub fn from_instance(inst: &Instance) -> Self {
        Self::induced(inst, &vec![true; inst.vertex_count()])
    }

    /// Subgraph of `inst` induced by the vertices with `keep[v]` set. The index
    /// space stays that of the instance; dropped vertices are simply not live.
    pub fn induced(inst: &Instance, keep: &[bool]) -> Self {
        assert_eq!(keep.len(), inst.vertex_count());
        let mut g = Self::empty(inst.vertex_count());
        for (i, &k) in keep.iter().enumerate() {
            if k {
                g.alive[i] = true;
                g.live_count += 1;
            }
        }
        for (u, v) in inst.arcs() {
            if keep[u.index()] && keep[v.index()] {
                g.add_edge(u, v);
            }
        }
        g
    }

    #[inline]
    pub fn capacity(&self) -> usize {
        self.nodes.len()
    }

    #[inline]
    pub fn live_count(&self) -> usize {
        self.live_count
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn is_live(&self, v: VertexId) -> bool {
        self.alive.get(v.index()).copied().unwrap_or(false)
    }

    pub fn is_empty(&self) -> bool {
        self.live_count == 0
    }

    /// Live vertices in ascending id order.
    pub fn live_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.alive
            .iter()
            .enumerate()
            .filter(|(_, &a)| a)
            .map(|(i, _)| VertexId(i as u32))
    }

    #[inline]
    pub fn in_only(&self, v: VertexId) -> &NeighborSet {
        &self.nodes[v.index()].in_only
    }

    #[inline]
    pub fn out_only(&self, v: VertexId) -> &NeighborSet {
        &self.nodes[v.index()].out_only
    }

    #[inline]
    pub fn bidir(&self, v: VertexId) -> &NeighborSet {
        &self.nodes[v.index()].bidir
    }

    #[inline]
    pub fn has_self_loop(&self, v: VertexId) -> bool {
        self.nodes[v.index()].self_loop
    }

    #[inline]
    pub fn in_degree(&self, v: VertexId) -> usize {
        self.nodes[v.index()].in_only.len()
    }

    #[inline]
    pub fn out_degree(&self, v: VertexId) -> usize {
        self.nodes[v.index()].out_only.len()
    }

    #[inline]
    pub fn bidir_degree(&self, v: VertexId) -> usize {
        self.nodes[v.index()].bidir.len()
    }

    /// Number of distinct neighbors, ignoring a self-loop.
    #[inline]
    pub fn total_degree(&self, v: VertexId) -> usize {
        let n = &self.nodes[v.index()];
        n.in_only.len() + n.out_only.len() + n.bidir.len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        if u == v {
            return self.is_live(u) && self.nodes[u.index()].self_loop;
        }
        let n = &self.nodes[u.index()];
        n.out_only.contains(&v) || n.bidir.contains(&v)
    }

    /// Successors of `v` (out-only and bidirectional), excluding `v` itself.
    pub fn successors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        let n = &self.nodes[v.index()];
        n.out_only.iter().chain(n.bidir.iter()).copied()
    }

    pub fn predecessors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        let n = &self.nodes[v.index()];
        n.in_only.iter().chain(n.bidir.iter()).copied()
    }

    /// Every directed edge among live vertices, sorted.
    pub fn arc_set(&self) -> BTreeSet<(VertexId, VertexId)> {
        let mut arcs = BTreeSet::new();
        for v in self.live_vertices() {
            if self.has_self_loop(v) {
                arcs.insert((v, v));
            }
            for s in self.successors(v) {
                arcs.insert((v, s));
            }
        }
        arcs
    }

    /// Adds `u -> v` between live vertices. Returns false when it already exists.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> bool {
        debug_assert!(self.is_live(u) && self.is_live(v));
        if u == v {
            let node = &mut self.nodes[u.index()];
            if node.self_loop {
                return false;
            }
            node.self_loop = true;
            self.edge_count += 1;
            return true;
        }
        self.link(u, v)
    }

    fn link(&mut self, u: VertexId, v: VertexId) -> bool {
        {
            let nu = &self.nodes[u.index()];
            if nu.out_only.contains(&v) || nu.bidir.contains(&v) {
                return false;
            }
        }
        if self.nodes[u.index()].in_only.remove(&v) {
            self.nodes[v.index()].out_only.remove(&u);
            self.nodes[u.index()].bidir.insert(v);
            self.nodes[v.index()].bidir.insert(u);
        } else {
            self.nodes[u.index()].out_only.insert(v);
            self.nodes[v.index()].in_only.insert(u);
        }
        self.edge_count += 1;
        true
    }

    /// Erases the single edge `u -> v`. A bidirectional pair degrades to the
    /// reverse one-directional edge. Returns false if the edge was absent.
    pub fn erase_edge(&mut self, u: VertexId, v: VertexId) -> bool {
        if u == v {
            let node = &mut self.nodes[u.index()];
            if !node.self_loop {
                return false;
            }
            node.self_loop = false;
            self.edge_count -= 1;
            self.touch(u);
            return true;
        }
        if self.nodes[u.index()].out_only.remove(&v) {
            self.nodes[v.index()].in_only.remove(&u);
        } else if self.nodes[u.index()].bidir.remove(&v) {
            self.nodes[v.index()].bidir.remove(&u);
            self.nodes[u.index()].in_only.insert(v);
            self.nodes[v.index()].out_only.insert(u);
        } else {
            return false;
        }
        self.edge_count -= 1;
        self.touch(u);
        self.touch(v);
        true
    }

    /// Deletes `v` with all incident edges.
    ///
    /// Panics if `v` is not live.
    pub fn remove_vertex(&mut self, v: VertexId) {
        assert!(self.is_live(v), "remove_vertex: {v} is not live");
        let node = std::mem::take(&mut self.nodes[v.index()]);
        for &u in &node.in_only {
            self.nodes[u.index()].out_only.remove(&v);
            self.touch(u);
        }
        for &u in &node.out_only {
            self.nodes[u.index()].in_only.remove(&v);
            self.touch(u);
        }
        for &u in &node.bidir {
            self.nodes[u.index()].bidir.remove(&v);
            self.touch(u);
        }
        self.edge_count -= node.in_only.len()
            + node.out_only.len()
            + 2 * node.bidir.len()
            + usize::from(node.self_loop);
        self.alive[v.index()] = false;
        self.live_count -= 1;
    }

    /// Contracts `v`: every predecessor gets an edge to every successor, then
    /// `v` is deleted. Returns the vertices that gained a self-loop.
    ///
    /// Panics if `v` is not live or carries a self-loop.
    pub fn merge_vertex(&mut self, v: VertexId) -> Vec<VertexId> {
        assert!(self.is_live(v), "merge_vertex: {v} is not live");
        assert!(!self.has_self_loop(v), "merge_vertex: {v} has a self-loop");
        let mut preds: Vec<VertexId> = self.predecessors(v).collect();
        let mut succs: Vec<VertexId> = self.successors(v).collect();
        preds.sort_unstable();
        succs.sort_unstable();
        self.remove_vertex(v);
        let mut looped = Vec::new();
        for &p in &preds {
            for &s in &succs {
                if p == s {
                    let node = &mut self.nodes[p.index()];
                    if !node.self_loop {
                        node.self_loop = true;
                        self.edge_count += 1;
                        looped.push(p);
                    }
                } else {
                    self.link(p, s);
                }
            }
        }
        looped
    }

    /// Re-inserts a dead vertex with the given edges. Neighbors that are not
    /// live are skipped; `v` in either list becomes a self-loop.
    pub fn insert_vertex(&mut self, v: VertexId, succs: &[VertexId], preds: &[VertexId]) {
        assert!(!self.is_live(v), "insert_vertex: {v} is already live");
        self.alive[v.index()] = true;
        self.live_count += 1;
        for &s in succs {
            if s == v || self.is_live(s) {
                self.add_edge(v, s);
            }
        }
        for &p in preds {
            if p == v || self.is_live(p) {
                self.add_edge(p, v);
            }
        }
    }

    #[inline]
    fn touch(&mut self, v: VertexId) {
        let mark = &mut self.touched_mark[v.index()];
        if !*mark {
            *mark = true;
            self.touched.push(v);
        }
    }

    /// Vertices whose neighborhood changed since the last call, in first-touch
    /// order. May include vertices that are no longer live.
    pub fn take_touched(&mut self) -> Vec<VertexId> {
        let touched = std::mem::take(&mut self.touched);
        for v in &touched {
            self.touched_mark[v.index()] = false;
        }
        touched
    }

    /// Strongly connected components over all live vertices. `None` for dead
    /// vertices. Self-loops do not affect the partition.
    pub fn scc(&self) -> Vec<Option<u32>> {
        let comp = strongly_connected_components(&self.alive, |v, out| {
            out.extend(self.successors(VertexId(v as u32)).map(|w| w.0));
        });
        comp.into_iter()
            .map(|c| if c == UNASSIGNED { None } else { Some(c) })
            .collect()
    }

    pub fn is_acyclic(&self) -> bool {
        for v in self.live_vertices() {
            let n = &self.nodes[v.index()];
            if n.self_loop || !n.bidir.is_empty() {
                return false;
            }
        }
        let comp = strongly_connected_components(&self.alive, |v, out| {
            out.extend(self.nodes[v].out_only.iter().map(|w| w.0));
        });
        let components = comp
            .iter()
            .filter(|&&c| c != UNASSIGNED)
            .max()
            .map_or(0, |&c| c as usize + 1);
        components == self.live_count
    }

    /// Whether adding the dead vertex `v` back with the given edges would close
    /// a cycle. `self` must be acyclic.
    pub fn creates_cycle_if_restored(
        &self,
        v: VertexId,
        succs: &[VertexId],
        preds: &[VertexId],
    ) -> bool {
        CycleProbe::new(self.capacity()).creates_cycle(self, v, succs, preds)
    }

    /// Full-scan check of the representation invariants.
    pub fn audit(&self) -> Result<(), String> {
        let mut edges = 0usize;
        let mut live = 0usize;
        for (i, node) in self.nodes.iter().enumerate() {
            let v = VertexId(i as u32);
            if !self.alive[i] {
                if node.self_loop
                    || !node.in_only.is_empty()
                    || !node.out_only.is_empty()
                    || !node.bidir.is_empty()
                {
                    return Err(format!("dead vertex {v} still has edges"));
                }
                continue;
            }
            live += 1;
            for (name, set) in [
                ("in", &node.in_only),
                ("out", &node.out_only),
                ("bidir", &node.bidir),
            ] {
                for &u in set {
                    if u == v {
                        return Err(format!("{v} lists itself in {name}"));
                    }
                    if !self.is_live(u) {
                        return Err(format!("{v} lists dead {u} in {name}"));
                    }
                }
            }
            if node
                .in_only
                .iter()
                .any(|u| node.out_only.contains(u) || node.bidir.contains(u))
                || node.out_only.iter().any(|u| node.bidir.contains(u))
            {
                return Err(format!("neighbor sets of {v} overlap"));
            }
            for &u in &node.out_only {
                if !self.nodes[u.index()].in_only.contains(&v) {
                    return Err(format!("{v}->{u} missing from in-set of {u}"));
                }
            }
            for &u in &node.in_only {
                if !self.nodes[u.index()].out_only.contains(&v) {
                    return Err(format!("{u}->{v} missing from out-set of {u}"));
                }
            }
            for &u in &node.bidir {
                if !self.nodes[u.index()].bidir.contains(&v) {
                    return Err(format!("bidir {v}<->{u} not symmetric"));
                }
            }
            edges += node.out_only.len() + node.bidir.len() + usize::from(node.self_loop);
        }
        if live != self.live_count {
            return Err(format!(
                "live count {} but {} live flags",
                self.live_count, live
            ));
        }
        if edges != self.edge_count {
            return Err(format!(
                "edge count {} but {} edges stored",
                self.edge_count, edges
            ));
        }
        Ok(())
    }
}

/// Reusable scratch for repeated restore-cycle queries on one graph.
#[derive(Debug)]
pub struct CycleProbe {
    fwd: Vec<u32>,
    bwd: Vec<u32>,
    stamp: u32,
    frontier: Vec<VertexId>,
    next: Vec<VertexId>,
    back_frontier: Vec<VertexId>,
}

impl CycleProbe {
    pub fn new(capacity: usize) -> Self {
        CycleProbe {
            fwd: vec![0; capacity],
            bwd: vec![0; capacity],
            stamp: 0,
            frontier: Vec::new(),
            next: Vec::new(),
            back_frontier: Vec::new(),
        }
    }

    fn bump(&mut self) -> u32 {
        if self.stamp == u32::MAX {
            self.fwd.iter_mut().for_each(|s| *s = 0);
            self.bwd.iter_mut().for_each(|s| *s = 0);
            self.stamp = 0;
        }
        self.stamp += 1;
        self.stamp
    }

    /// Bidirectional search from the successors of `v` toward its
    /// predecessors. Edges to vertices that are not live in `g` are ignored.
    pub fn creates_cycle(
        &mut self,
        g: &TriGraph,
        v: VertexId,
        succs: &[VertexId],
        preds: &[VertexId],
    ) -> bool {
        assert!(!g.is_live(v), "creates_cycle_if_restored: {v} is live");
        if succs.contains(&v) || preds.contains(&v) {
            return true;
        }
        let stamp = self.bump();
        self.frontier.clear();
        self.back_frontier.clear();
        for &p in preds {
            if g.is_live(p) && self.bwd[p.index()] != stamp {
                self.bwd[p.index()] = stamp;
                self.back_frontier.push(p);
            }
        }
        for &s in succs {
            if !g.is_live(s) {
                continue;
            }
            if self.bwd[s.index()] == stamp {
                return true;
            }
            if self.fwd[s.index()] != stamp {
                self.fwd[s.index()] = stamp;
                self.frontier.push(s);
            }
        }
        while !self.frontier.is_empty() && !self.back_frontier.is_empty() {
            self.next.clear();
            if self.frontier.len() <= self.back_frontier.len() {
                for &u in &self.frontier {
                    for w in g.successors(u) {
                        if self.bwd[w.index()] == stamp {
                            return true;
                        }
                        if self.fwd[w.index()] != stamp {
                            self.fwd[w.index()] = stamp;
                            self.next.push(w);
                        }
                    }
                }
                std::mem::swap(&mut self.frontier, &mut self.next);
            } else {
                for &u in &self.back_frontier {
                    for w in g.predecessors(u) {
                        if self.fwd[w.index()] == stamp {
                            return true;
                        }
                        if self.bwd[w.index()] != stamp {
                            self.bwd[w.index()] = stamp;
                            self.next.push(w);
                        }
                    }
                }
                std::mem::swap(&mut self.back_frontier, &mut self.next);
            }
        }
        false
    }
}

pub(crate) const UNASSIGNED: u32 = u32::MAX;

/// Iterative Tarjan over the vertices with `alive[v]` set. `successors(v, out)`
/// appends the successors of `v`; dead successors are ignored. Returns a
/// component id per vertex, `UNASSIGNED` for dead ones.
pub(crate) fn strongly_connected_components<F>(alive: &[bool], mut successors: F) -> Vec<u32>
where
    F: FnMut(usize, &mut Vec<u32>),
{
    let n = alive.len();
    let mut index = vec![UNASSIGNED; n];
    let mut low = vec![0u32; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNASSIGNED; n];
    let mut stack: Vec<u32> = Vec::new();
    // (vertex, successor list, cursor)
    let mut frames: Vec<(u32, Vec<u32>, usize)> = Vec::new();
    let mut pool: Vec<Vec<u32>> = Vec::new();
    let mut next_index = 0u32;
    let mut next_comp = 0u32;

    for root in 0..n {
        if !alive[root] || index[root] != UNASSIGNED {
            continue;
        }
        let mut enter = |v: usize,
                         frames: &mut Vec<(u32, Vec<u32>, usize)>,
                         pool: &mut Vec<Vec<u32>>,
                         stack: &mut Vec<u32>,
                         index: &mut [u32],
                         low: &mut [u32],
                         on_stack: &mut [bool]| {
            index[v] = next_index;
            low[v] = next_index;
            next_index += 1;
            stack.push(v as u32);
            on_stack[v] = true;
            let mut succ = pool.pop().unwrap_or_default();
            succ.clear();
            successors(v, &mut succ);
            frames.push((v as u32, succ, 0));
        };
        enter(
            root,
            &mut frames,
            &mut pool,
            &mut stack,
            &mut index,
            &mut low,
            &mut on_stack,
        );

        while let Some(frame) = frames.last_mut() {
            let v = frame.0 as usize;
            if frame.2 < frame.1.len() {
                let w = frame.1[frame.2] as usize;
                frame.2 += 1;
                if !alive[w] {
                    continue;
                }
                if index[w] == UNASSIGNED {
                    enter(
                        w,
                        &mut frames,
                        &mut pool,
                        &mut stack,
                        &mut index,
                        &mut low,
                        &mut on_stack,
                    );
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                let (_, succ, _) = frames.pop().expect("frame present");
                pool.push(succ);
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow") as usize;
                        on_stack[w] = false;
                        comp[w] = next_comp;
                        if w == v {
                            break;
                        }
                    }
                    next_comp += 1;
                }
                if let Some(parent) = frames.last() {
                    let p = parent.0 as usize;
                    low[p] = low[p].min(low[v]);
                }
            }
        }
    }
    comp
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vid(x: u32) -> VertexId {
        VertexId::from_external(x)
    }

    /// Builds a graph from 1-based arcs over vertices `1..=n`.
    fn graph(n: usize, arcs: &[(u32, u32)]) -> TriGraph {
        TriGraph::from_arcs(n, arcs.iter().map(|&(u, v)| (vid(u), vid(v))))
    }

    fn arcs(g: &TriGraph) -> Vec<(u32, u32)> {
        g.arc_set()
            .into_iter()
            .map(|(u, v)| (u.external(), v.external()))
            .collect()
    }

    fn live(g: &TriGraph) -> Vec<u32> {
        g.live_vertices().map(|v| v.external()).collect()
    }

    #[test]
    fn remove_from_triangle() {
        let mut g = graph(3, &[(1, 2), (2, 3), (3, 1)]);
        g.remove_vertex(vid(2));
        assert_eq!(arcs(&g), vec![(3, 1)]);
        assert_eq!(live(&g), vec![1, 3]);
        g.audit().unwrap();
    }

    #[test]
    fn remove_bidirectional_endpoint() {
        let mut g = graph(2, &[(1, 2), (2, 1)]);
        assert_eq!(g.edge_count(), 2);
        g.remove_vertex(vid(1));
        assert!(arcs(&g).is_empty());
        assert_eq!(live(&g), vec![2]);
        assert_eq!(g.edge_count(), 0);
        g.audit().unwrap();
    }

    #[test]
    fn remove_self_loop_vertex() {
        let mut g = graph(1, &[(1, 1)]);
        assert_eq!(g.edge_count(), 1);
        g.remove_vertex(vid(1));
        assert!(g.is_empty());
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    #[should_panic]
    fn remove_dead_vertex_panics() {
        let mut g = graph(2, &[(1, 2)]);
        g.remove_vertex(vid(1));
        g.remove_vertex(vid(1));
    }

    #[test]
    fn merge_path_vertex() {
        let mut g = graph(3, &[(1, 2), (2, 3)]);
        assert!(g.merge_vertex(vid(2)).is_empty());
        assert_eq!(arcs(&g), vec![(1, 3)]);
        g.audit().unwrap();
    }

    #[test]
    fn merge_creates_self_loop() {
        let mut g = graph(3, &[(1, 2), (2, 1), (2, 3)]);
        let looped = g.merge_vertex(vid(2));
        assert_eq!(looped, vec![vid(1)]);
        assert_eq!(arcs(&g), vec![(1, 1), (1, 3)]);
        g.audit().unwrap();
    }

    #[test]
    fn merge_promotes_to_bidirectional() {
        let mut g = graph(4, &[(1, 2), (3, 2), (2, 4), (4, 1)]);
        assert!(g.merge_vertex(vid(2)).is_empty());
        assert_eq!(arcs(&g), vec![(1, 4), (3, 4), (4, 1)]);
        assert_eq!(
            g.bidir(vid(1)).iter().copied().collect::<Vec<_>>(),
            vec![vid(4)]
        );
        assert_eq!(
            g.bidir(vid(4)).iter().copied().collect::<Vec<_>>(),
            vec![vid(1)]
        );
        assert!(g.in_only(vid(1)).is_empty());
        g.audit().unwrap();
    }

    #[test]
    #[should_panic]
    fn merge_self_loop_panics() {
        let mut g = graph(1, &[(1, 1)]);
        g.merge_vertex(vid(1));
    }

    #[test]
    fn erase_half_of_bidirectional_pair() {
        let mut g = graph(2, &[(1, 2), (2, 1)]);
        assert!(g.erase_edge(vid(1), vid(2)));
        assert_eq!(arcs(&g), vec![(2, 1)]);
        assert!(g.out_only(vid(2)).contains(&vid(1)));
        assert!(!g.erase_edge(vid(1), vid(2)));
        g.audit().unwrap();
    }

    #[test]
    fn scc_examples() {
        let g = graph(3, &[(1, 2), (2, 3), (3, 1)]);
        let c = g.scc();
        assert!(c[0] == c[1] && c[1] == c[2]);

        let g = graph(3, &[(1, 2), (2, 3)]);
        let c = g.scc();
        assert!(c[0] != c[1] && c[1] != c[2] && c[0] != c[2]);

        let g = graph(3, &[(1, 2), (2, 1), (3, 1)]);
        let c = g.scc();
        assert_eq!(c[0], c[1]);
        assert_ne!(c[0], c[2]);
    }

    #[test]
    fn acyclicity_examples() {
        assert!(graph(3, &[(1, 2), (2, 3)]).is_acyclic());
        assert!(!graph(2, &[(1, 2), (2, 1)]).is_acyclic());
        assert!(!graph(1, &[(1, 1)]).is_acyclic());
        assert!(!graph(3, &[(1, 2), (2, 3), (3, 1)]).is_acyclic());
        assert!(TriGraph::new(0).is_acyclic());
    }

    #[test]
    fn restore_queries() {
        let mut g = graph(3, &[(2, 3)]);
        g.remove_vertex(vid(1));
        assert!(g.creates_cycle_if_restored(vid(1), &[vid(2)], &[vid(3)]));
        assert!(!g.creates_cycle_if_restored(vid(1), &[vid(2), vid(3)], &[]));

        let mut g = graph(5, &[(4, 5)]);
        g.remove_vertex(vid(1));
        assert!(g.creates_cycle_if_restored(vid(1), &[vid(4)], &[vid(4)]));
        assert!(g.creates_cycle_if_restored(vid(1), &[vid(1)], &[]));
    }

    #[test]
    fn restore_then_insert_keeps_invariants() {
        let mut g = graph(4, &[(1, 2), (2, 3), (3, 4)]);
        g.remove_vertex(vid(4));
        g.insert_vertex(vid(4), &[vid(1)], &[vid(3)]);
        assert_eq!(arcs(&g), vec![(1, 2), (2, 3), (3, 4), (4, 1)]);
        g.audit().unwrap();
    }

    #[test]
    fn induced_subgraphs() {
        let inst = Instance::from_external_arcs(3, &[(1, 2), (2, 3), (3, 1)]);
        let g = TriGraph::induced(&inst, &[true, true, false]);
        assert_eq!(arcs(&g), vec![(1, 2)]);
        let g = TriGraph::from_instance(&inst);
        assert_eq!(arcs(&g), vec![(1, 2), (2, 3), (3, 1)]);

        let inst = Instance::from_external_arcs(3, &[(1, 2), (2, 1), (2, 3)]);
        let g = TriGraph::induced(&inst, &[false, true, true]);
        assert_eq!(arcs(&g), vec![(2, 3)]);
        assert!(g.bidir(vid(2)).is_empty() && g.bidir(vid(3)).is_empty());
    }

    #[test]
    fn touched_tracking() {
        let mut g = graph(3, &[(1, 2), (2, 3)]);
        assert!(g.take_touched().is_empty());
        g.remove_vertex(vid(2));
        let mut t = g.take_touched();
        t.sort();
        assert_eq!(t, vec![vid(1), vid(3)]);
        assert!(g.take_touched().is_empty());
    }
}
