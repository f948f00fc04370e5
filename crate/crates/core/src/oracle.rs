//! Brute-force ground truth: exhaustive enumeration of cycles.
//!
//! Nothing here shares code with the reduction; the decision procedure is
//! tested against these functions.

use std::ops::ControlFlow;

use crate::cycle::Cycle;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, SignedGraph, VertexId};
use crate::sign::Sign;
use crate::verdict::{CertNode, CertStep, EdgeRef, TiedCertificate, Verdict, WitnessPair};

/// Search nodes allowed before a search reports itself incomplete.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommonCycleReport {
    /// Sorted by their sorted edge-id lists.
    pub cycles: Vec<Cycle>,
    pub positive_count: usize,
    pub negative_count: usize,
    /// `true` when the search finished; only then is the list exhaustive.
    pub complete: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Stop {
    Budget,
    Found,
}

struct PathSearch {
    adj: Vec<Vec<(VertexId, EdgeId)>>,
    blocked: Vec<bool>,
    excluded: Vec<EdgeId>,
    spent: u64,
    budget: u64,
}

type PathVisitor<'a> = dyn FnMut(&mut PathSearch, &[EdgeId], &[VertexId]) -> ControlFlow<Stop> + 'a;

impl PathSearch {
    fn new(g: &SignedGraph, excluded: Vec<EdgeId>, budget: u64) -> Self {
        PathSearch {
            adj: g.adjacency(),
            blocked: vec![false; g.vertex_count()],
            excluded,
            spent: 0,
            budget,
        }
    }

    fn tick(&mut self) -> ControlFlow<Stop> {
        self.spent += 1;
        if self.spent > self.budget {
            ControlFlow::Break(Stop::Budget)
        } else {
            ControlFlow::Continue(())
        }
    }

    /// Every simple `from`-`to` path through unblocked vertices. `from` is
    /// blocked for the duration; `to` must be unblocked.
    fn paths(&mut self, from: VertexId, to: VertexId, visit: &mut PathVisitor<'_>) -> ControlFlow<Stop> {
        let was = self.blocked[from.0];
        self.blocked[from.0] = true;
        let mut edges = Vec::new();
        let mut vertices = vec![from];
        let result = self.extend(to, &mut edges, &mut vertices, visit);
        self.blocked[from.0] = was;
        result
    }

    fn extend(
        &mut self,
        to: VertexId,
        edges: &mut Vec<EdgeId>,
        vertices: &mut Vec<VertexId>,
        visit: &mut PathVisitor<'_>,
    ) -> ControlFlow<Stop> {
        let at = *vertices.last().expect("nonempty");
        for i in 0..self.adj[at.0].len() {
            let (next, e) = self.adj[at.0][i];
            if self.excluded.contains(&e) || (next != to && self.blocked[next.0]) {
                continue;
            }
            self.tick()?;
            edges.push(e);
            vertices.push(next);
            let step = if next == to {
                visit(self, edges, vertices)
            } else {
                self.blocked[next.0] = true;
                let r = self.extend(to, edges, vertices, visit);
                self.blocked[next.0] = false;
                r
            };
            edges.pop();
            vertices.pop();
            step?;
        }
        ControlFlow::Continue(())
    }
}

/// Outcome of a raw common-cycle walk.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum WalkEnd {
    Complete,
    Stopped,
    Exhausted,
}

/// Calls `visit` with the edge set of every cycle through both `e1` and
/// `e2`, each exactly once, until it breaks or the budget runs out.
pub(crate) fn walk_common_cycles(
    g: &SignedGraph,
    e1: EdgeId,
    e2: EdgeId,
    budget: u64,
    mut visit: impl FnMut(&[EdgeId]) -> ControlFlow<()>,
) -> Result<WalkEnd> {
    g.check_edge(e1)?;
    g.check_edge(e2)?;
    if e1 == e2 {
        return Err(Error::SameEdge(e1));
    }
    let a = g.edges()[e1.0];
    let b = g.edges()[e2.0];
    let mut emit = |cycle: Vec<EdgeId>| match visit(&cycle) {
        ControlFlow::Continue(()) => ControlFlow::Continue(()),
        ControlFlow::Break(()) => ControlFlow::Break(Stop::Found),
    };
    let flow = if a.key() == b.key() {
        emit(vec![e1, e2])
    } else if let Some(w) = a.shares_vertex(&b) {
        // e1 = w x, e2 = w y: close with every x-y path avoiding w
        let (x, y) = (a.other(w), b.other(w));
        let mut search = PathSearch::new(g, vec![e1, e2], budget);
        search.blocked[w.0] = true;
        search.paths(x, y, &mut |_, path, _| {
            let mut cycle = vec![e1, e2];
            cycle.extend_from_slice(path);
            emit(cycle)
        })
    } else {
        // e1 = p q, e2 = r s: two disjoint paths, p to one end of e2 and
        // q to the other
        let (p, q) = (a.u, a.v);
        let mut search = PathSearch::new(g, vec![e1, e2], budget);
        let mut flow = ControlFlow::Continue(());
        for (x, y) in [(b.u, b.v), (b.v, b.u)] {
            search.blocked[q.0] = true;
            search.blocked[y.0] = true;
            flow = search.paths(p, x, &mut |s, first, first_vertices| {
                let saved: Vec<bool> = first_vertices.iter().map(|v| s.blocked[v.0]).collect();
                for v in first_vertices {
                    s.blocked[v.0] = true;
                }
                s.blocked[q.0] = false;
                s.blocked[y.0] = false;
                let r = s.paths(q, y, &mut |_, second, _| {
                    let mut cycle = vec![e1, e2];
                    cycle.extend_from_slice(first);
                    cycle.extend_from_slice(second);
                    emit(cycle)
                });
                for (v, was) in first_vertices.iter().zip(saved) {
                    s.blocked[v.0] = was;
                }
                s.blocked[q.0] = true;
                s.blocked[y.0] = true;
                r
            });
            search.blocked[q.0] = false;
            search.blocked[y.0] = false;
            if flow.is_break() {
                break;
            }
        }
        flow
    };
    Ok(match flow {
        ControlFlow::Continue(()) => WalkEnd::Complete,
        ControlFlow::Break(Stop::Found) => WalkEnd::Stopped,
        ControlFlow::Break(Stop::Budget) => WalkEnd::Exhausted,
    })
}

pub fn enumerate_common_cycles(
    g: &SignedGraph,
    e1: EdgeId,
    e2: EdgeId,
    budget: u64,
) -> Result<CommonCycleReport> {
    let mut cycles = Vec::new();
    let end = walk_common_cycles(g, e1, e2, budget, |edges| {
        cycles.push(Cycle::from_edge_set(g, edges).expect("enumerated cycle"));
        ControlFlow::Continue(())
    })?;
    cycles.sort_by_cached_key(|c| c.edge_set().into_iter().collect::<Vec<_>>());
    let negative_count = cycles.iter().filter(|c| c.sign(g).is_negative()).count();
    Ok(CommonCycleReport {
        positive_count: cycles.len() - negative_count,
        negative_count,
        cycles,
        complete: end == WalkEnd::Complete,
    })
}

/// Ground-truth verdict by exhaustive enumeration with the default budget.
pub fn oracle_tied(g: &SignedGraph, e1: EdgeId, e2: EdgeId) -> Result<Verdict> {
    oracle_tied_with_budget(g, e1, e2, DEFAULT_BUDGET)
}

pub fn oracle_tied_with_budget(
    g: &SignedGraph,
    e1: EdgeId,
    e2: EdgeId,
    budget: u64,
) -> Result<Verdict> {
    let report = enumerate_common_cycles(g, e1, e2, budget)?;
    if !report.complete {
        return Err(Error::BudgetExhausted(budget));
    }
    let first = |s: Sign| report.cycles.iter().find(|c| c.sign(g) == s).cloned();
    let tree = CertNode {
        e1: EdgeRef::Edge(e1),
        e2: EdgeRef::Edge(e2),
        step: CertStep::Enumerated {
            positive: report.positive_count,
            negative: report.negative_count,
        },
    };
    Ok(match (first(Sign::Positive), first(Sign::Negative)) {
        (Some(positive), Some(negative)) => Verdict::Untied {
            witness: Some(WitnessPair { positive, negative }),
        },
        (None, None) => Verdict::TiedVacuous {
            certificate: TiedCertificate { tree, sample: None },
        },
        (Some(c), None) | (None, Some(c)) => Verdict::Tied {
            common_sign: Some(c.sign(g)),
            certificate: TiedCertificate {
                tree,
                sample: Some(c),
            },
        },
    })
}

/// Every cycle of `g` (as canonical [`Cycle`]s, sorted), plus whether the
/// search finished within `budget`.
pub fn enumerate_cycles(g: &SignedGraph, budget: u64) -> (Vec<Cycle>, bool) {
    let mut cycles = Vec::new();
    let mut search = PathSearch::new(g, Vec::new(), budget);
    let mut complete = true;
    'outer: for s in g.vertices() {
        // cycles whose smallest vertex is s: s -> x ... -> s through vertices > s
        for v in g.vertices().filter(|v| *v < s) {
            search.blocked[v.0] = true;
        }
        let adj = search.adj[s.0].clone();
        for (x, first) in adj {
            if x < s {
                continue;
            }
            search.excluded = vec![first];
            let flow = search.paths(x, s, &mut |_, path, _| {
                // each cycle is met once per direction; keep one
                if first < *path.last().expect("nonempty") {
                    let mut edges = vec![first];
                    edges.extend_from_slice(path);
                    cycles.push(Cycle::from_edge_set(g, &edges).expect("enumerated cycle"));
                }
                ControlFlow::Continue(())
            });
            if flow.is_break() {
                complete = false;
                break 'outer;
            }
        }
        for v in g.vertices() {
            search.blocked[v.0] = false;
        }
    }
    cycles.sort_by_cached_key(|c| c.edge_set().into_iter().collect::<Vec<_>>());
    (cycles, complete)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ThreeEdgeSearch {
    Found(Cycle),
    /// The search finished: no cycle contains all three edges.
    Absent,
    Exhausted,
}

/// A cycle containing all of `e1`, `e2`, `e3`, by filtering the common
/// cycles of `e1` and `e2`.
pub fn cycle_through_three(
    g: &SignedGraph,
    e1: EdgeId,
    e2: EdgeId,
    e3: EdgeId,
    budget: u64,
) -> Result<ThreeEdgeSearch> {
    g.check_edge(e3)?;
    if e3 == e1 || e3 == e2 {
        return Err(Error::SameEdge(e3));
    }
    let mut found = None;
    let end = walk_common_cycles(g, e1, e2, budget, |edges| {
        if edges.contains(&e3) {
            found = Some(Cycle::from_edge_set(g, edges).expect("enumerated cycle"));
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(match (found, end) {
        (Some(c), _) => ThreeEdgeSearch::Found(c),
        (None, WalkEnd::Exhausted) => ThreeEdgeSearch::Exhausted,
        (None, _) => ThreeEdgeSearch::Absent,
    })
}
