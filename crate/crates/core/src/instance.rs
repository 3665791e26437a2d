use crate::graph::VertexId;

/// Immutable input digraph. Adjacency lists are sorted and duplicate-free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    declared_edges: usize,
    out: Vec<Vec<VertexId>>,
    inc: Vec<Vec<VertexId>>,
    edge_count: usize,
}

impl Instance {
    /// Builds an instance over `n` vertices. Duplicate arcs are collapsed.
    pub fn from_arcs<I>(n: usize, arcs: I) -> Self
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut out = vec![Vec::new(); n];
        for (u, v) in arcs {
            assert!(
                u.index() < n && v.index() < n,
                "arc ({u}, {v}) out of range for n = {n}"
            );
            out[u.index()].push(v);
        }
        Self::from_adjacency(out)
    }

    /// Convenience constructor from 1-based arcs.
    pub fn from_external_arcs(n: usize, arcs: &[(u32, u32)]) -> Self {
        Self::from_arcs(
            n,
            arcs.iter()
                .map(|&(u, v)| (VertexId::from_external(u), VertexId::from_external(v))),
        )
    }

    /// Out-neighbor lists per vertex; they get sorted and deduplicated.
    pub fn from_adjacency(mut out: Vec<Vec<VertexId>>) -> Self {
        let n = out.len();
        let mut inc = vec![Vec::new(); n];
        let mut edge_count = 0;
        for (u, list) in out.iter_mut().enumerate() {
            list.sort_unstable();
            list.dedup();
            edge_count += list.len();
            for &v in list.iter() {
                inc[v.index()].push(VertexId(u as u32));
            }
        }
        Instance {
            declared_edges: edge_count,
            out,
            inc,
            edge_count,
        }
    }

    pub(crate) fn with_declared_edges(mut self, m: usize) -> Self {
        self.declared_edges = m;
        self
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.out.len()
    }

    /// Number of distinct arcs, self-loops included.
    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Edge count stated in the input header.
    pub fn declared_edges(&self) -> usize {
        self.declared_edges
    }

    #[inline]
    pub fn successors(&self, v: VertexId) -> &[VertexId] {
        &self.out[v.index()]
    }

    #[inline]
    pub fn predecessors(&self, v: VertexId) -> &[VertexId] {
        &self.inc[v.index()]
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.out.len() as u32).map(VertexId)
    }

    /// All arcs in (tail, head) order.
    pub fn arcs(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().map(move |&v| (VertexId(u as u32), v)))
    }
}
