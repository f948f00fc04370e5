//! Loopless signed multigraphs and the operations that produce new ones from
//! them: switching, deletion and sign-respecting contraction.
//!
//! Graphs are plain values. Every operation that removes or merges things
//! returns explicit relabeling maps so that callers holding old ids can
//! translate them; an id is never reused for a different edge or vertex.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sign::Sign;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub usize);

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Old vertex id -> new vertex id (`None` when the vertex was removed).
pub type VertexMap = Vec<Option<VertexId>>;
/// Old edge id -> new edge id (`None` when the edge was removed).
pub type EdgeMap = Vec<Option<EdgeId>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub sign: Sign,
}

impl Edge {
    pub fn other(&self, x: VertexId) -> VertexId {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }

    pub fn is_incident(&self, x: VertexId) -> bool {
        self.u == x || self.v == x
    }

    /// Endpoints as an ordered pair, smaller id first.
    pub fn key(&self) -> (VertexId, VertexId) {
        if self.u <= self.v {
            (self.u, self.v)
        } else {
            (self.v, self.u)
        }
    }

    pub fn shares_vertex(&self, other: &Edge) -> Option<VertexId> {
        if other.is_incident(self.u) {
            Some(self.u)
        } else if other.is_incident(self.v) {
            Some(self.v)
        } else {
            None
        }
    }
}

/// A set of vertices to switch at. Switching flips the sign of every edge
/// with exactly one endpoint in the set.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwitchSet {
    pub vertices: BTreeSet<VertexId>,
}

impl SwitchSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }
}

impl FromIterator<VertexId> for SwitchSet {
    fn from_iter<I: IntoIterator<Item = VertexId>>(iter: I) -> Self {
        SwitchSet {
            vertices: iter.into_iter().collect(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedGraph {
    n: usize,
    edges: Vec<Edge>,
}

impl SignedGraph {
    /// `n` isolated vertices, no edges.
    pub fn new(n: usize) -> Self {
        SignedGraph {
            n,
            edges: Vec::new(),
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Sign)>,
    {
        let mut g = SignedGraph::new(n);
        for (u, v, s) in edges {
            g.add_edge(VertexId(u), VertexId(v), s)?;
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + Clone {
        (0..self.n).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + Clone {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn add_vertex(&mut self) -> VertexId {
        self.n += 1;
        VertexId(self.n - 1)
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId, sign: Sign) -> Result<EdgeId> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::LoopRejected(u));
        }
        self.edges.push(Edge { u, v, sign });
        Ok(EdgeId(self.edges.len() - 1))
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v.0 < self.n {
            Ok(())
        } else {
            Err(Error::BadVertex(v))
        }
    }

    pub fn check_edge(&self, e: EdgeId) -> Result<()> {
        if e.0 < self.edges.len() {
            Ok(())
        } else {
            Err(Error::BadEdge(e))
        }
    }

    pub fn edge(&self, e: EdgeId) -> Result<&Edge> {
        self.edges.get(e.0).ok_or(Error::BadEdge(e))
    }

    /// Panics on an out-of-range id; use [`SignedGraph::edge`] for checked access.
    pub fn sign(&self, e: EdgeId) -> Sign {
        self.edges[e.0].sign
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        let edge = &self.edges[e.0];
        (edge.u, edge.v)
    }

    pub fn signature(&self) -> Vec<Sign> {
        self.edges.iter().map(|e| e.sign).collect()
    }

    /// Same underlying graph with the signs replaced edge-for-edge.
    pub fn with_signature(&self, signature: &[Sign]) -> Result<Self> {
        if signature.len() != self.edges.len() {
            return Err(Error::DomainMismatch {
                expected: self.edges.len(),
                got: signature.len(),
            });
        }
        let mut g = self.clone();
        for (edge, &s) in g.edges.iter_mut().zip(signature) {
            edge.sign = s;
        }
        Ok(g)
    }

    pub fn set_sign(&mut self, e: EdgeId, sign: Sign) -> Result<()> {
        self.check_edge(e)?;
        self.edges[e.0].sign = sign;
        Ok(())
    }

    /// Incidence lists: for each vertex, `(neighbour, edge)` in edge-id order.
    pub fn adjacency(&self) -> Vec<Vec<(VertexId, EdgeId)>> {
        let mut adj = vec![Vec::new(); self.n];
        for (i, e) in self.edges.iter().enumerate() {
            adj[e.u.0].push((e.v, EdgeId(i)));
            adj[e.v.0].push((e.u, EdgeId(i)));
        }
        adj
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.edges.iter().filter(|e| e.is_incident(v)).count()
    }

    pub fn are_parallel(&self, a: EdgeId, b: EdgeId) -> bool {
        self.edges[a.0].key() == self.edges[b.0].key()
    }

    /// All edges with the same endpoint pair as `e`, including `e`.
    pub fn parallel_class(&self, e: EdgeId) -> Result<Vec<EdgeId>> {
        let key = self.edge(e)?.key();
        Ok(self
            .edge_ids()
            .filter(|&f| self.edges[f.0].key() == key)
            .collect())
    }

    pub fn is_simple(&self) -> bool {
        let mut keys: Vec<_> = self.edges.iter().map(Edge::key).collect();
        keys.sort_unstable();
        keys.windows(2).all(|w| w[0] != w[1])
    }

    pub fn switch(&self, s: &SwitchSet) -> Result<Self> {
        for &v in &s.vertices {
            self.check_vertex(v)?;
        }
        let mut g = self.clone();
        for edge in &mut g.edges {
            if s.contains(edge.u) != s.contains(edge.v) {
                edge.sign = -edge.sign;
            }
        }
        Ok(g)
    }

    pub fn delete_edge(&self, e: EdgeId) -> Result<(Self, EdgeMap)> {
        self.check_edge(e)?;
        Ok(self.retain_edges(|f| f != e))
    }

    /// Keeps the edges accepted by `keep`, preserving their relative order.
    pub fn retain_edges(&self, mut keep: impl FnMut(EdgeId) -> bool) -> (Self, EdgeMap) {
        let mut map = vec![None; self.edges.len()];
        let mut edges = Vec::new();
        for (i, edge) in self.edges.iter().enumerate() {
            if keep(EdgeId(i)) {
                map[i] = Some(EdgeId(edges.len()));
                edges.push(*edge);
            }
        }
        (SignedGraph { n: self.n, edges }, map)
    }

    pub fn delete_vertex(&self, v: VertexId) -> Result<(Self, VertexMap, EdgeMap)> {
        self.check_vertex(v)?;
        let vmap: VertexMap = self
            .vertices()
            .map(|w| match w.0.cmp(&v.0) {
                std::cmp::Ordering::Less => Some(w),
                std::cmp::Ordering::Equal => None,
                std::cmp::Ordering::Greater => Some(VertexId(w.0 - 1)),
            })
            .collect();
        let (g, emap) = self.relabel(&vmap, self.n - 1);
        Ok((g, vmap, emap))
    }

    /// Contracts `e` after switching so that it is positive. Edges parallel
    /// to `e` would become loops and are removed. The merged vertex takes
    /// the smaller of the two endpoint ids (before compaction).
    pub fn contract_edge(&self, e: EdgeId) -> Result<(Self, VertexMap, EdgeMap)> {
        let edge = *self.edge(e)?;
        let resigned = if edge.sign.is_negative() {
            self.switch(&[edge.u].into_iter().collect())?
        } else {
            self.clone()
        };
        let (keep, gone) = if edge.u < edge.v {
            (edge.u, edge.v)
        } else {
            (edge.v, edge.u)
        };
        let vmap: VertexMap = self
            .vertices()
            .map(|w| {
                let w = if w == gone { keep } else { w };
                Some(if w.0 > gone.0 { VertexId(w.0 - 1) } else { w })
            })
            .collect();
        let (g, emap) = resigned.relabel(&vmap, self.n - 1);
        Ok((g, vmap, emap))
    }

    /// Induced relabeling: edges whose endpoints map to the same vertex or to
    /// `None` are dropped.
    fn relabel(&self, vmap: &VertexMap, n: usize) -> (Self, EdgeMap) {
        let mut emap = vec![None; self.edges.len()];
        let mut edges = Vec::new();
        for (i, edge) in self.edges.iter().enumerate() {
            if let (Some(u), Some(v)) = (vmap[edge.u.0], vmap[edge.v.0]) {
                if u != v {
                    emap[i] = Some(EdgeId(edges.len()));
                    edges.push(Edge {
                        u,
                        v,
                        sign: edge.sign,
                    });
                }
            }
        }
        (SignedGraph { n, edges }, emap)
    }

    /// Subgraph formed by `edges` on the vertices they touch, compacted.
    /// Returns the subgraph, new-vertex -> old-vertex and new-edge -> old-edge.
    pub fn edge_induced(&self, edges: &[EdgeId]) -> (Self, Vec<VertexId>, Vec<EdgeId>) {
        let mut local = vec![None; self.n];
        let mut vertices = Vec::new();
        let mut touched: Vec<VertexId> = edges
            .iter()
            .flat_map(|&e| [self.edges[e.0].u, self.edges[e.0].v])
            .collect();
        touched.sort_unstable();
        touched.dedup();
        for v in touched {
            local[v.0] = Some(VertexId(vertices.len()));
            vertices.push(v);
        }
        let mut sub = SignedGraph::new(vertices.len());
        for &e in edges {
            let edge = &self.edges[e.0];
            sub.edges.push(Edge {
                u: local[edge.u.0].expect("touched"),
                v: local[edge.v.0].expect("touched"),
                sign: edge.sign,
            });
        }
        (sub, vertices, edges.to_vec())
    }

    /// Product of the signs of `edges`.
    pub fn sign_of(&self, edges: &[EdgeId]) -> Sign {
        edges.iter().map(|&e| self.sign(e)).product()
    }
}
