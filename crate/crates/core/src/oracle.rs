//! Ground truth for tests: an exhaustive minimum-DFVS search, solution
//! validation, and seeded random instance generators.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashSet;
use thiserror::Error;

use crate::graph::{TriGraph, VertexId};
use crate::instance::Instance;

/// Largest live vertex count the exhaustive search accepts.
pub const EXACT_LIMIT: usize = 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("{0} vertices exceed the exhaustive search limit of {EXACT_LIMIT}")]
    TooLarge(usize),
}

/// Minimum-cardinality feedback vertex set of `g`, by trying every subset of
/// size 0, 1, 2, ... and returning the first that leaves `g` acyclic.
pub fn exact_min_dfvs(g: &TriGraph) -> Result<Vec<VertexId>, OracleError> {
    let verts: Vec<VertexId> = g.live_vertices().collect();
    let k = verts.len();
    if k > EXACT_LIMIT {
        return Err(OracleError::TooLarge(k));
    }
    let mut pos = vec![usize::MAX; g.capacity()];
    for (i, v) in verts.iter().enumerate() {
        pos[v.index()] = i;
    }
    let mut succ = vec![0u32; k];
    let mut looped = 0u32;
    for (i, &v) in verts.iter().enumerate() {
        if g.has_self_loop(v) {
            looped |= 1 << i;
        }
        for w in g.successors(v) {
            succ[i] |= 1 << pos[w.index()];
        }
    }
    let all: u32 = if k == 32 { u32::MAX } else { (1u32 << k) - 1 };
    for size in 0..=k {
        let mut subset: u32 = if size == 0 { 0 } else { (1u32 << size) - 1 };
        loop {
            if mask_acyclic(&succ, looped, all & !subset) {
                return Ok((0..k)
                    .filter(|i| subset & (1 << i) != 0)
                    .map(|i| verts[i])
                    .collect());
            }
            if size == 0 || size == k {
                break;
            }
            // next subset of the same size (Gosper's hack)
            let c = subset & subset.wrapping_neg();
            let r = subset + c;
            subset = (((r ^ subset) >> 2) / c) | r;
            if subset > all {
                break;
            }
        }
    }
    unreachable!("removing every vertex leaves an acyclic graph")
}

/// Repeatedly peels vertices without successors inside `remaining`.
fn mask_acyclic(succ: &[u32], looped: u32, mut remaining: u32) -> bool {
    if looped & remaining != 0 {
        return false;
    }
    loop {
        if remaining == 0 {
            return true;
        }
        let mut sinks = 0u32;
        let mut rest = remaining;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if succ[i] & remaining == 0 {
                sinks |= 1 << i;
            }
        }
        if sinks == 0 {
            return false;
        }
        remaining &= !sinks;
    }
}

pub fn exact_min_dfvs_instance(inst: &Instance) -> Result<Vec<VertexId>, OracleError> {
    exact_min_dfvs(&TriGraph::from_instance(inst))
}

/// True iff removing `s` from `inst` leaves an acyclic graph.
pub fn is_valid_dfvs(inst: &Instance, s: &[VertexId]) -> bool {
    let mut keep = vec![true; inst.vertex_count()];
    for v in s {
        keep[v.index()] = false;
    }
    TriGraph::induced(inst, &keep).is_acyclic()
}

/// Independent cycle check on the plain adjacency lists: iterative three-color
/// depth-first search over the vertices not marked in `removed`.
pub fn has_cycle_avoiding(inst: &Instance, removed: &[bool]) -> bool {
    #[derive(Clone, Copy, PartialEq)]
    enum Color {
        White,
        Grey,
        Black,
    }
    let n = inst.vertex_count();
    let mut color = vec![Color::White; n];
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for root in 0..n {
        if removed[root] || color[root] != Color::White {
            continue;
        }
        color[root] = Color::Grey;
        stack.push((root, 0));
        while let Some(&mut (v, ref mut cursor)) = stack.last_mut() {
            let succs = inst.successors(VertexId(v as u32));
            if *cursor < succs.len() {
                let w = succs[*cursor].index();
                *cursor += 1;
                if removed[w] {
                    continue;
                }
                match color[w] {
                    Color::Grey => return true,
                    Color::White => {
                        color[w] = Color::Grey;
                        stack.push((w, 0));
                    }
                    Color::Black => {}
                }
            } else {
                color[v] = Color::Black;
                stack.pop();
            }
        }
    }
    false
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeneratorParams {
    pub n: usize,
    /// Probability of each ordered pair being an edge.
    pub p: f64,
    /// Also draw each self-loop with probability `p`.
    pub self_loops: bool,
    pub seed: u64,
}

/// Erdős–Rényi style digraph, deterministic in `params.seed`.
pub fn random_digraph(params: &GeneratorParams) -> Instance {
    assert!(
        (0.0..=1.0).contains(&params.p),
        "edge probability must lie in [0, 1]"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut arcs = Vec::new();
    for u in 0..params.n as u32 {
        for v in 0..params.n as u32 {
            if u == v && !params.self_loops {
                continue;
            }
            if rng.random_bool(params.p) {
                arcs.push((VertexId(u), VertexId(v)));
            }
        }
    }
    Instance::from_arcs(params.n, arcs)
}

/// `m` distinct loop-free arcs drawn uniformly over `n` vertices.
pub fn random_sparse_digraph(n: usize, m: usize, seed: u64) -> Instance {
    assert!(n >= 2 || m == 0);
    assert!(m <= n * n.saturating_sub(1), "too many arcs requested");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen: FxHashSet<(u32, u32)> = FxHashSet::default();
    let mut arcs = Vec::with_capacity(m);
    while arcs.len() < m {
        let u = rng.random_range(0..n as u32);
        let v = rng.random_range(0..n as u32);
        if u != v && seen.insert((u, v)) {
            arcs.push((VertexId(u), VertexId(v)));
        }
    }
    Instance::from_arcs(n, arcs)
}
