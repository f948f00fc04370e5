//! Balance testing with certificates, signature equivalence, and signed
//! path search.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::connectivity::is_2_connected;
use crate::cycle::{Cycle, SignedPath};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, SignedGraph, SwitchSet, VertexId};
use crate::sign::Sign;

/// A sign per vertex. It certifies balance of a set of edges when every
/// edge `uv` in the set has sign `theta(u) * theta(v)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexSigning {
    pub theta: Vec<Sign>,
}

impl VertexSigning {
    pub fn get(&self, v: VertexId) -> Sign {
        self.theta[v.0]
    }

    /// First edge among `edges` whose sign is not realized.
    pub fn violation(
        &self,
        g: &SignedGraph,
        edges: impl IntoIterator<Item = EdgeId>,
    ) -> Option<EdgeId> {
        edges.into_iter().find(|&e| {
            let edge = &g.edges()[e.0];
            edge.sign != self.theta[edge.u.0] * self.theta[edge.v.0]
        })
    }

    pub fn certifies(&self, g: &SignedGraph) -> bool {
        self.theta.len() == g.vertex_count() && self.violation(g, g.edge_ids()).is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BalanceResult {
    Balanced(VertexSigning),
    /// A cycle of sign -1.
    Unbalanced(Cycle),
}

impl BalanceResult {
    pub fn is_balanced(&self) -> bool {
        matches!(self, BalanceResult::Balanced(_))
    }
}

pub fn is_balanced(g: &SignedGraph) -> BalanceResult {
    balance_of(g, |_| true)
}

/// Balance of the spanning subgraph formed by the edges accepted by `keep`.
///
/// A BFS forest assigns every vertex the sign of its tree path from the
/// component root; the first non-tree edge (in id order) that disagrees
/// closes a negative cycle with the tree. Vertices untouched by kept edges
/// get `+`.
pub fn balance_of(g: &SignedGraph, keep: impl Fn(EdgeId) -> bool) -> BalanceResult {
    let n = g.vertex_count();
    let adj = g.adjacency();
    let mut theta = vec![Sign::Positive; n];
    let mut parent: Vec<Option<EdgeId>> = vec![None; n];
    let mut depth = vec![usize::MAX; n];
    let mut tree_edge = vec![false; g.edge_count()];
    for root in 0..n {
        if depth[root] != usize::MAX {
            continue;
        }
        depth[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &(y, e) in &adj[x] {
                if depth[y.0] == usize::MAX && keep(e) {
                    depth[y.0] = depth[x] + 1;
                    theta[y.0] = theta[x] * g.sign(e);
                    parent[y.0] = Some(e);
                    tree_edge[e.0] = true;
                    queue.push_back(y.0);
                }
            }
        }
    }
    for e in g.edge_ids() {
        if tree_edge[e.0] || !keep(e) {
            continue;
        }
        let (u, v) = g.endpoints(e);
        if g.sign(e) == theta[u.0] * theta[v.0] {
            continue;
        }
        let mut edges = vec![e];
        let (mut a, mut b) = (u.0, v.0);
        while a != b {
            if depth[a] >= depth[b] {
                let pe = parent[a].expect("not a root");
                edges.push(pe);
                a = g.edges()[pe.0].other(VertexId(a)).0;
            } else {
                let pe = parent[b].expect("not a root");
                edges.push(pe);
                b = g.edges()[pe.0].other(VertexId(b)).0;
            }
        }
        let cycle = Cycle::from_edge_set(g, &edges).expect("tree path plus chord is a cycle");
        debug_assert!(cycle.sign(g).is_negative());
        return BalanceResult::Unbalanced(cycle);
    }
    BalanceResult::Balanced(VertexSigning { theta })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equivalence {
    /// Switching the graph at this set yields the other signature.
    Equivalent(SwitchSet),
    /// A cycle whose sign differs between the two signatures.
    Inequivalent(Cycle),
}

/// Decides whether `other` is a switching of `g`'s signature. The edges
/// where the two signatures differ form an edge cut exactly when the
/// signature "sigma times other" is balanced; its vertex signing names the
/// switching set.
pub fn signatures_equivalent(g: &SignedGraph, other: &[Sign]) -> Result<Equivalence> {
    if other.len() != g.edge_count() {
        return Err(Error::DomainMismatch {
            expected: g.edge_count(),
            got: other.len(),
        });
    }
    let difference: Vec<Sign> = g
        .signature()
        .iter()
        .zip(other)
        .map(|(&a, &b)| a * b)
        .collect();
    let product = g.with_signature(&difference)?;
    Ok(match is_balanced(&product) {
        BalanceResult::Balanced(signing) => Equivalence::Equivalent(
            g.vertices()
                .filter(|&v| signing.get(v).is_negative())
                .collect(),
        ),
        BalanceResult::Unbalanced(c) => Equivalence::Inequivalent(c),
    })
}

/// Whether `e` lies on cycles of both signs, via the criterion that in a
/// 2-connected graph this holds exactly when `G - e` is unbalanced.
pub fn edge_in_both_signs(g: &SignedGraph, e: EdgeId) -> Result<bool> {
    g.check_edge(e)?;
    if !is_2_connected(g) {
        return Err(Error::NotTwoConnected);
    }
    Ok(!balance_of(g, |f| f != e).is_balanced())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PathSearch {
    Found(SignedPath),
    /// The search completed without finding a path: none exists.
    Absent,
    /// The node budget ran out first; nothing is known.
    Exhausted,
}

/// Simple `u`-`v` path whose sign is `sign`, by exhaustive backtracking over
/// simple paths. Every extension of a partial path counts against `budget`.
pub fn find_signed_path(
    g: &SignedGraph,
    u: VertexId,
    v: VertexId,
    sign: Sign,
    budget: u64,
) -> Result<PathSearch> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if u == v {
        return Err(Error::PreconditionViolated(
            "path endpoints must be distinct".into(),
        ));
    }
    let adj = g.adjacency();
    let mut on_path = vec![false; g.vertex_count()];
    let mut vertices = vec![u];
    let mut edges = Vec::new();
    on_path[u.0] = true;
    let mut spent = 0u64;
    let mut cursor = vec![0usize];
    let mut signs = vec![Sign::Positive];
    while let Some(&at) = vertices.last() {
        let depth = vertices.len() - 1;
        let i = cursor[depth];
        if i == adj[at.0].len() {
            on_path[at.0] = false;
            vertices.pop();
            edges.pop();
            cursor.pop();
            signs.pop();
            continue;
        }
        cursor[depth] += 1;
        let (next, e) = adj[at.0][i];
        if on_path[next.0] {
            continue;
        }
        spent += 1;
        if spent > budget {
            return Ok(PathSearch::Exhausted);
        }
        let s = signs[depth] * g.sign(e);
        if next == v {
            if s == sign {
                let mut vs = vertices.clone();
                vs.push(v);
                let mut es = edges.clone();
                es.push(e);
                return Ok(PathSearch::Found(SignedPath {
                    vertices: vs,
                    edges: es,
                    sign: s,
                }));
            }
            continue;
        }
        on_path[next.0] = true;
        vertices.push(next);
        edges.push(e);
        cursor.push(0);
        signs.push(s);
    }
    Ok(PathSearch::Absent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadget::build_hat;
    use crate::sign::Sign::{Negative as N, Positive as P};
    use Equivalence::{Equivalent, Inequivalent};

    fn k4(signs: [Sign; 6]) -> SignedGraph {
        let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        SignedGraph::from_edges(4, pairs.iter().zip(signs).map(|(&(u, v), s)| (u, v, s))).unwrap()
    }

    #[test]
    fn positive_k4_is_balanced() {
        match is_balanced(&k4([P; 6])) {
            BalanceResult::Balanced(s) => assert!(s.theta.iter().all(|t| t.is_positive())),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn hat_witness_is_the_two_cycle() {
        let hat = build_hat();
        match is_balanced(&hat.graph) {
            BalanceResult::Unbalanced(c) => {
                assert_eq!(c.edges(), &[EdgeId(0), EdgeId(1)]);
                assert_eq!(c.sign(&hat.graph), N);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn k4_one_negative_edge_witness_is_a_triangle_through_it() {
        let g = k4([P, P, P, N, P, P]);
        match is_balanced(&g) {
            BalanceResult::Unbalanced(c) => {
                assert_eq!(c.len(), 3);
                assert!(c.contains_edge(EdgeId(3)));
                assert_eq!(c.sign(&g), N);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn signing_certifies_balanced_signature() {
        let g = k4([N, N, N, P, P, P]);
        match is_balanced(&g) {
            BalanceResult::Balanced(s) => assert!(s.certifies(&g)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn equivalence_examples() {
        let g = k4([P, N, P, P, N, P]);
        let v = VertexId(2);
        let switched = g.switch(&[v].into_iter().collect()).unwrap();
        match signatures_equivalent(&g, &switched.signature()).unwrap() {
            Equivalent(s) => assert_eq!(g.switch(&s).unwrap().signature(), switched.signature()),
            other => panic!("{other:?}"),
        }

        let c3 = SignedGraph::from_edges(3, [(0, 1, P), (1, 2, P), (2, 0, P)]).unwrap();
        match signatures_equivalent(&c3, &[P, N, P]).unwrap() {
            Inequivalent(c) => assert_eq!(c.len(), 3),
            other => panic!("{other:?}"),
        }

        let tree = SignedGraph::from_edges(4, [(0, 1, P), (1, 2, N), (1, 3, P)]).unwrap();
        assert!(matches!(
            signatures_equivalent(&tree, &[N, N, N]).unwrap(),
            Equivalent(_)
        ));
        assert!(matches!(
            signatures_equivalent(&tree, &[N]),
            Err(Error::DomainMismatch { expected: 3, got: 1 })
        ));
    }

    #[test]
    fn single_edge_criterion_examples() {
        let hat = build_hat();
        assert!(edge_in_both_signs(&hat.graph, hat.e1).unwrap());
        for e in 0..6 {
            assert!(!edge_in_both_signs(&k4([P; 6]), EdgeId(e)).unwrap());
        }
        // negative edge 0-1; edge 2-3 is disjoint from it
        assert!(edge_in_both_signs(&k4([N, P, P, P, P, P]), EdgeId(5)).unwrap());
        let path = SignedGraph::from_edges(3, [(0, 1, P), (1, 2, P)]).unwrap();
        assert!(matches!(edge_in_both_signs(&path, EdgeId(0)), Err(Error::NotTwoConnected)));
    }

    #[test]
    fn signed_path_examples() {
        let g = k4([P; 6]);
        assert!(matches!(
            find_signed_path(&g, VertexId(0), VertexId(3), P, 1000).unwrap(),
            PathSearch::Found(p) if p.sign == P && p.end() == VertexId(3)
        ));
        let tree = SignedGraph::from_edges(4, [(0, 1, P), (1, 2, P), (1, 3, P)]).unwrap();
        assert_eq!(
            find_signed_path(&tree, VertexId(0), VertexId(3), N, 1000).unwrap(),
            PathSearch::Absent
        );
        let hat = build_hat();
        match find_signed_path(&hat.graph, VertexId(0), VertexId(1), N, 1000).unwrap() {
            PathSearch::Found(p) => assert_eq!(p.edges, vec![EdgeId(1)]),
            other => panic!("{other:?}"),
        }
        assert_eq!(
            find_signed_path(&k4([P; 6]), VertexId(0), VertexId(3), N, 2).unwrap(),
            PathSearch::Exhausted
        );
    }
}
