//! Recursive reduction across proper 2-separations.

use std::collections::BTreeMap;

use crate::balance::{balance_of, BalanceResult};
use crate::connectivity::{disjoint_paths, find_proper_2_separation};
use crate::cycle::Cycle;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, SignedGraph, VertexId};
use crate::sign::Sign;
use crate::verdict::{CertRule, EdgeRef, Marker};

use super::piece::{normalize, Compact, LabelledGraph, Normal};
use super::DecideOptions;

#[derive(Clone, Debug)]
pub struct ReductionTree {
    pub root: ReductionNode,
    /// For every marker that stands for a replaced side: a path of the
    /// marker's sign between its ends through that side. Its edges may be
    /// markers again.
    pub expansions: BTreeMap<u32, Vec<EdgeRef>>,
}

#[derive(Clone, Debug)]
pub struct ReductionNode {
    pub e1: EdgeRef,
    pub e2: EdgeRef,
    /// The graph as handed to this node, before preprocessing.
    pub graph: LabelledGraph,
    pub kind: NodeKind,
}

#[derive(Clone, Debug)]
pub enum NodeKind {
    ParallelPair,
    Vacuous { e1_side: Vec<EdgeRef> },
    /// A block small enough for exhaustive enumeration.
    Small { block: LabelledGraph },
    /// A block with no proper 2-separation.
    Leaf { block: LabelledGraph },
    Split {
        block: LabelledGraph,
        boundary: [VertexId; 2],
        side1: Vec<EdgeRef>,
        side2: Vec<EdgeRef>,
        rule: CertRule,
        children: Vec<ReductionNode>,
    },
}

impl ReductionTree {
    /// Replaces markers by their paths, recursively, giving edges of the
    /// input graph.
    pub fn expand(&self, edges: &[EdgeRef]) -> Result<Vec<EdgeId>> {
        let mut out = Vec::new();
        let mut stack: Vec<EdgeRef> = edges.iter().rev().copied().collect();
        while let Some(r) = stack.pop() {
            match r {
                EdgeRef::Edge(e) => out.push(e),
                EdgeRef::Marker(m) => {
                    let path = self.expansions.get(&m).ok_or_else(|| {
                        Error::Inconsistent(format!("marker {m} has no expansion"))
                    })?;
                    stack.extend(path.iter().rev().copied());
                }
            }
        }
        Ok(out)
    }

    pub fn depth(&self) -> usize {
        fn depth(node: &ReductionNode) -> usize {
            match &node.kind {
                NodeKind::Split { children, .. } => 1 + children.iter().map(depth).max().unwrap_or(0),
                _ => 1,
            }
        }
        depth(&self.root)
    }

    pub fn leaf_count(&self) -> usize {
        fn count(node: &ReductionNode) -> usize {
            match &node.kind {
                NodeKind::Split { children, .. } => children.iter().map(count).sum(),
                _ => 1,
            }
        }
        count(&self.root)
    }
}

/// Builds the reduction tree for `e1, e2` with the default options.
pub fn reduce(g: &SignedGraph, e1: EdgeId, e2: EdgeId) -> Result<ReductionTree> {
    reduce_with(g, e1, e2, &DecideOptions::default())
}

pub fn reduce_with(
    g: &SignedGraph,
    e1: EdgeId,
    e2: EdgeId,
    options: &DecideOptions,
) -> Result<ReductionTree> {
    g.check_edge(e1)?;
    g.check_edge(e2)?;
    if e1 == e2 {
        return Err(Error::SameEdge(e1));
    }
    let mut builder = Builder {
        options,
        next_marker: 0,
        expansions: BTreeMap::new(),
    };
    let root = builder.node(LabelledGraph::from_graph(g), EdgeRef::Edge(e1), EdgeRef::Edge(e2))?;
    Ok(ReductionTree {
        root,
        expansions: builder.expansions,
    })
}

struct Builder<'a> {
    options: &'a DecideOptions,
    next_marker: u32,
    expansions: BTreeMap<u32, Vec<EdgeRef>>,
}

impl Builder<'_> {
    fn marker(&mut self, sign: Sign) -> Marker {
        let id = self.next_marker;
        self.next_marker += 1;
        Marker { id, sign }
    }

    fn node(&mut self, graph: LabelledGraph, e1: EdgeRef, e2: EdgeRef) -> Result<ReductionNode> {
        let kind = match normalize(&graph, e1, e2)? {
            Normal::ParallelPair => NodeKind::ParallelPair,
            Normal::Vacuous(e1_side) => NodeKind::Vacuous { e1_side },
            Normal::Block(block) => {
                if block.vertex_count() <= self.options.small_leaf_threshold {
                    NodeKind::Small { block }
                } else {
                    let c = block.compact();
                    match find_proper_2_separation(&c.g)? {
                        None => NodeKind::Leaf { block },
                        Some(sep) => {
                            let (u, v) = sep.boundary;
                            let side1 = c.labels_of(&sep.side1);
                            let side2 = c.labels_of(&sep.side2);
                            self.split(block, &c, [u, v], side1, side2, e1, e2)?
                        }
                    }
                }
            }
        };
        Ok(ReductionNode {
            e1,
            e2,
            graph,
            kind,
        })
    }

    #[allow(clippy::too_many_arguments)]
    fn split(
        &mut self,
        block: LabelledGraph,
        c: &Compact,
        local_boundary: [VertexId; 2],
        side1: Vec<EdgeRef>,
        side2: Vec<EdgeRef>,
        e1: EdgeRef,
        e2: EdgeRef,
    ) -> Result<NodeKind> {
        let [u, v] = local_boundary.map(|x| c.root_vertex(x));
        let in1 = |r: EdgeRef| side1.contains(&r);
        let part = |labels: &[EdgeRef]| block.restrict(&labels.iter().copied().collect());
        let (rule, children) = if in1(e1) != in1(e2) {
            let (first, second) = if in1(e1) { (&side1, &side2) } else { (&side2, &side1) };
            let markers = [self.marker(Sign::Positive), self.marker(Sign::Positive)];
            let mut g0 = part(first);
            g0.push(EdgeRef::Marker(markers[0].id), u, v, Sign::Positive);
            let mut g1 = part(second);
            g1.push(EdgeRef::Marker(markers[1].id), u, v, Sign::Positive);
            let children = vec![
                self.node(g0, e1, EdgeRef::Marker(markers[0].id))?,
                self.node(g1, EdgeRef::Marker(markers[1].id), e2)?,
            ];
            (CertRule::Disjoint { markers }, children)
        } else {
            let (replaced, kept, gone) = if in1(e1) { (2, &side1, &side2) } else { (1, &side2, &side1) };
            let side = part(gone).compact();
            let (lu, lv) = (
                side.local_vertex(u).expect("boundary on side"),
                side.local_vertex(v).expect("boundary on side"),
            );
            let mut child = part(kept);
            let rule = match balance_of(&side.g, |_| true) {
                BalanceResult::Balanced(theta) => {
                    let marker = self.marker(theta.get(lu) * theta.get(lv));
                    let alive = vec![true; side.g.vertex_count()];
                    let path = disjoint_paths(&side.g, &[lu], &[lv], 1, &alive, |_| true)
                        .ok_or_else(|| Error::Inconsistent("side without a boundary path".into()))?
                        .remove(0);
                    debug_assert_eq!(path.sign, marker.sign);
                    self.expansions.insert(marker.id, side.labels_of(&path.edges));
                    child.push(EdgeRef::Marker(marker.id), u, v, marker.sign);
                    CertRule::BalancedSide {
                        replaced,
                        marker,
                        signing: side.signing_record(&theta, |_| true),
                    }
                }
                BalanceResult::Unbalanced(cycle) => {
                    let [plus, minus] = signed_boundary_paths(&side.g, lu, lv, &cycle)?;
                    let positive = self.marker(Sign::Positive);
                    let negative = self.marker(Sign::Negative);
                    self.expansions.insert(positive.id, side.labels_of(&plus));
                    self.expansions.insert(negative.id, side.labels_of(&minus));
                    child.push(EdgeRef::Marker(positive.id), u, v, Sign::Positive);
                    child.push(EdgeRef::Marker(negative.id), u, v, Sign::Negative);
                    CertRule::UnbalancedSide {
                        replaced,
                        positive,
                        negative,
                        negative_cycle: side.labels_of(cycle.edges()),
                    }
                }
            };
            (rule, vec![self.node(child, e1, e2)?])
        };
        Ok(NodeKind::Split {
            block,
            boundary: [u, v],
            side1,
            side2,
            rule,
            children,
        })
    }
}

/// Positive and negative `u`-`v` paths in a 2-connected side (plus `uv`)
/// containing the negative cycle `cycle`: two disjoint paths from `{u, v}`
/// onto the cycle, closed by either of its two arcs.
pub(crate) fn signed_boundary_paths(
    g: &SignedGraph,
    u: VertexId,
    v: VertexId,
    cycle: &Cycle,
) -> Result<[Vec<EdgeId>; 2]> {
    let alive = vec![true; g.vertex_count()];
    let paths = disjoint_paths(g, &[u, v], cycle.vertices(), 2, &alive, |_| true)
        .ok_or_else(|| Error::Inconsistent("no two paths onto the negative cycle".into()))?;
    let (pu, pv) = if paths[0].start() == u {
        (&paths[0], &paths[1])
    } else {
        (&paths[1], &paths[0])
    };
    // arcs of the cycle between the two landing points
    let k = cycle.len();
    let i = cycle.vertices().iter().position(|&x| x == pu.end()).expect("on cycle");
    let j = cycle.vertices().iter().position(|&x| x == pv.end()).expect("on cycle");
    let forward: Vec<EdgeId> = (0..(j + k - i) % k).map(|t| cycle.edges()[(i + t) % k]).collect();
    let backward: Vec<EdgeId> = cycle
        .edges()
        .iter()
        .copied()
        .filter(|e| !forward.contains(e))
        .collect();
    let mut out: [Vec<EdgeId>; 2] = [Vec::new(), Vec::new()];
    for arc in [forward, backward] {
        let mut edges = pu.edges.clone();
        edges.extend(arc);
        edges.extend(pv.edges.iter().rev());
        let slot = if g.sign_of(&edges).is_positive() { 0 } else { 1 };
        out[slot] = edges;
    }
    if out.iter().any(Vec::is_empty) {
        return Err(Error::Inconsistent("boundary paths do not differ in sign".into()));
    }
    Ok(out)
}
