//! Graphs whose edges carry global labels, as they appear at the nodes of a
//! reduction tree. Vertices keep their ids from the input graph.

use std::collections::BTreeSet;

use crate::balance::VertexSigning;
use crate::connectivity::{blocks, component_labels};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, SignedGraph, VertexId};
use crate::sign::Sign;
use crate::verdict::{EdgeRef, SigningRecord};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LabelledEdge {
    pub label: EdgeRef,
    pub u: VertexId,
    pub v: VertexId,
    pub sign: Sign,
}

impl LabelledEdge {
    fn key(&self) -> (VertexId, VertexId) {
        (self.u.min(self.v), self.u.max(self.v))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LabelledGraph {
    pub edges: Vec<LabelledEdge>,
}

impl LabelledGraph {
    pub fn from_graph(g: &SignedGraph) -> Self {
        LabelledGraph {
            edges: g
                .edges()
                .iter()
                .enumerate()
                .map(|(i, e)| LabelledEdge {
                    label: EdgeRef::Edge(EdgeId(i)),
                    u: e.u,
                    v: e.v,
                    sign: e.sign,
                })
                .collect(),
        }
    }

    pub fn find(&self, r: EdgeRef) -> Option<&LabelledEdge> {
        self.edges.iter().find(|e| e.label == r)
    }

    pub fn contains(&self, r: EdgeRef) -> bool {
        self.find(r).is_some()
    }

    pub fn labels(&self) -> Vec<EdgeRef> {
        self.edges.iter().map(|e| e.label).collect()
    }

    pub fn vertex_set(&self) -> BTreeSet<VertexId> {
        self.edges.iter().flat_map(|e| [e.u, e.v]).collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_set().len()
    }

    /// The edges whose labels are in `keep`, in their current order.
    pub fn restrict(&self, keep: &BTreeSet<EdgeRef>) -> LabelledGraph {
        LabelledGraph {
            edges: self
                .edges
                .iter()
                .filter(|e| keep.contains(&e.label))
                .copied()
                .collect(),
        }
    }

    pub fn push(&mut self, label: EdgeRef, u: VertexId, v: VertexId, sign: Sign) {
        self.edges.push(LabelledEdge { label, u, v, sign });
    }

    /// A plain graph on the touched vertices, numbered in increasing order
    /// of their ids here.
    pub fn compact(&self) -> Compact {
        let vertices: Vec<VertexId> = self.vertex_set().into_iter().collect();
        let local = |x: VertexId| VertexId(vertices.binary_search(&x).expect("touched vertex"));
        let g = SignedGraph::from_edges(
            vertices.len(),
            self.edges.iter().map(|e| (local(e.u).0, local(e.v).0, e.sign)),
        )
        .expect("labelled graphs are loopless");
        Compact {
            g,
            labels: self.labels(),
            vertices,
        }
    }

    /// Drops every edge parallel to `e1` or `e2` other than the two themselves.
    pub fn without_parallels(&self, e1: EdgeRef, e2: EdgeRef) -> Result<LabelledGraph> {
        let k1 = self.require(e1)?.key();
        let k2 = self.require(e2)?.key();
        Ok(LabelledGraph {
            edges: self
                .edges
                .iter()
                .filter(|e| e.label == e1 || e.label == e2 || (e.key() != k1 && e.key() != k2))
                .copied()
                .collect(),
        })
    }

    pub(crate) fn require(&self, r: EdgeRef) -> Result<&LabelledEdge> {
        self.find(r)
            .ok_or_else(|| Error::Inconsistent(format!("edge {r} missing from a node graph")))
    }
}

#[derive(Clone, Debug)]
pub struct Compact {
    pub g: SignedGraph,
    /// Local vertex index to original id.
    pub vertices: Vec<VertexId>,
    /// Local edge index to label.
    pub labels: Vec<EdgeRef>,
}

impl Compact {
    pub fn local_vertex(&self, v: VertexId) -> Option<VertexId> {
        self.vertices.binary_search(&v).ok().map(VertexId)
    }

    pub fn local_edge(&self, r: EdgeRef) -> Option<EdgeId> {
        self.labels.iter().position(|&l| l == r).map(EdgeId)
    }

    pub fn root_vertex(&self, v: VertexId) -> VertexId {
        self.vertices[v.0]
    }

    pub fn labels_of(&self, edges: &[EdgeId]) -> Vec<EdgeRef> {
        edges.iter().map(|e| self.labels[e.0]).collect()
    }

    /// `theta` restricted to the vertices touched by the accepted edges.
    pub fn signing_record(
        &self,
        theta: &VertexSigning,
        keep: impl Fn(EdgeId) -> bool,
    ) -> SigningRecord {
        let touched: BTreeSet<VertexId> = self
            .g
            .edge_ids()
            .filter(|&e| keep(e))
            .flat_map(|e| {
                let (u, v) = self.g.endpoints(e);
                [u, v]
            })
            .collect();
        touched
            .into_iter()
            .map(|x| (self.root_vertex(x), theta.get(x)))
            .collect()
    }
}

/// A node graph after the preprocessing every node goes through.
#[derive(Clone, Debug)]
pub(crate) enum Normal {
    ParallelPair,
    /// Edge set on `e1`'s side of a vertex that separates it from `e2`.
    Vacuous(Vec<EdgeRef>),
    /// The block containing both edges, with parallels of `e1, e2` removed.
    Block(LabelledGraph),
}

pub(crate) fn normalize(g: &LabelledGraph, e1: EdgeRef, e2: EdgeRef) -> Result<Normal> {
    if e1 == e2 {
        return Err(Error::Inconsistent(format!("{e1} paired with itself")));
    }
    if g.require(e1)?.key() == g.require(e2)?.key() {
        return Ok(Normal::ParallelPair);
    }
    let reduced = g.without_parallels(e1, e2)?;
    let c = reduced.compact();
    let l1 = c.local_edge(e1).expect("kept");
    let l2 = c.local_edge(e2).expect("kept");
    let tree = blocks(&c.g);
    if !tree.same_block(l1, l2) {
        return Ok(Normal::Vacuous(vacuous_side(&c, l1, l2)));
    }
    let block = &tree.blocks[tree.block_of[l1.0]];
    let keep: BTreeSet<EdgeRef> = block.iter().map(|e| c.labels[e.0]).collect();
    Ok(Normal::Block(reduced.restrict(&keep)))
}

/// Edges reachable from `e1` without passing through some single vertex
/// (or without leaving its component), chosen so that `e2` is excluded.
fn vacuous_side(c: &Compact, e1: EdgeId, e2: EdgeId) -> Vec<EdgeRef> {
    let g = &c.g;
    let n = g.vertex_count();
    let tree = blocks(g);
    let candidates = std::iter::once(None).chain(tree.cut_vertices.iter().copied().map(Some));
    for cut in candidates {
        let mut alive = vec![true; n];
        if let Some(x) = cut {
            alive[x.0] = false;
        }
        let labels = component_labels(g, &alive, |_| true);
        let group = |e: EdgeId| {
            let edge = &g.edges()[e.0];
            labels[edge.u.0].or(labels[edge.v.0])
        };
        if group(e1) != group(e2) {
            let side = group(e1);
            return g
                .edge_ids()
                .filter(|&e| group(e) == side)
                .map(|e| c.labels[e.0])
                .collect();
        }
    }
    unreachable!("edges in different blocks are separated by a cut vertex or lie in different components")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sign::Sign::{Negative as N, Positive as P};

    fn e(i: usize) -> EdgeRef {
        EdgeRef::Edge(EdgeId(i))
    }

    #[test]
    fn parallel_pair_and_removal() {
        let g = SignedGraph::from_edges(3, [(0, 1, P), (1, 0, N), (1, 2, P), (2, 0, P), (0, 1, P)])
            .unwrap();
        let lg = LabelledGraph::from_graph(&g);
        assert!(matches!(normalize(&lg, e(0), e(1)).unwrap(), Normal::ParallelPair));
        let Normal::Block(b) = normalize(&lg, e(0), e(2)).unwrap() else {
            panic!("expected a block")
        };
        assert_eq!(b.labels(), vec![e(0), e(2), e(3)]);
    }

    #[test]
    fn bowtie_is_vacuous_at_the_cut_vertex() {
        let g = SignedGraph::from_edges(
            5,
            [(0, 1, P), (1, 2, P), (2, 0, P), (0, 3, N), (3, 4, P), (4, 0, P)],
        )
        .unwrap();
        let lg = LabelledGraph::from_graph(&g);
        let Normal::Vacuous(side) = normalize(&lg, e(1), e(4)).unwrap() else {
            panic!("expected vacuous")
        };
        assert_eq!(side, vec![e(0), e(1), e(2)]);
        let two = SignedGraph::from_edges(4, [(0, 1, P), (2, 3, P)]).unwrap();
        let Normal::Vacuous(side) = normalize(&LabelledGraph::from_graph(&two), e(0), e(1)).unwrap()
        else {
            panic!("expected vacuous")
        };
        assert_eq!(side, vec![e(0)]);
    }

    #[test]
    fn compact_keeps_vertex_order() {
        let mut lg = LabelledGraph::default();
        lg.push(EdgeRef::Marker(0), VertexId(7), VertexId(3), N);
        lg.push(e(4), VertexId(3), VertexId(9), P);
        let c = lg.compact();
        assert_eq!(c.vertices, vec![VertexId(3), VertexId(7), VertexId(9)]);
        assert_eq!(c.g.endpoints(EdgeId(0)), (VertexId(1), VertexId(0)));
        assert_eq!(c.local_edge(e(4)), Some(EdgeId(1)));
    }
}
