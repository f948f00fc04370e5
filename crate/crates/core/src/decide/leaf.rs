//! The tied/untied decision on a 3-connected graph.

use std::collections::BTreeSet;

use crate::balance::{balance_of, BalanceResult, VertexSigning};
use crate::connectivity::{component_labels, disjoint_paths, is_3_connected};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, SignedGraph, VertexId};
use crate::sign::Sign;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LeafCase {
    /// `class ∪ {e1, e2}` is the cut `δ(cut_side)` and the rest is balanced.
    ParallelCut {
        class: Vec<EdgeId>,
        cut_side: Vec<VertexId>,
        signing: VertexSigning,
    },
    CommonVertex { vertex: VertexId, signing: VertexSigning },
    BalancedRemainder { signing: VertexSigning },
}

impl LeafCase {
    pub fn number(&self) -> u8 {
        match self {
            LeafCase::ParallelCut { .. } => 1,
            LeafCase::CommonVertex { .. } => 2,
            LeafCase::BalancedRemainder { .. } => 3,
        }
    }

    pub fn signing(&self) -> &VertexSigning {
        match self {
            LeafCase::ParallelCut { signing, .. }
            | LeafCase::CommonVertex { signing, .. }
            | LeafCase::BalancedRemainder { signing } => signing,
        }
    }

    /// Whether edge `e` belongs to the subgraph the signing balances.
    pub fn covers(&self, g: &SignedGraph, e1: EdgeId, e2: EdgeId, e: EdgeId) -> bool {
        match self {
            LeafCase::ParallelCut { class, .. } => e != e1 && e != e2 && !class.contains(&e),
            LeafCase::CommonVertex { vertex, .. } => !g.edges()[e.0].is_incident(*vertex),
            LeafCase::BalancedRemainder { .. } => e != e1 && e != e2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LeafVerdict {
    Tied { case: LeafCase, sign: Sign },
    Untied,
}

/// Applies the three tied structures, in order, to a 3-connected graph in
/// which neither `e1` nor `e2` has a parallel edge.
pub fn check_leaf(g: &SignedGraph, e1: EdgeId, e2: EdgeId) -> Result<LeafVerdict> {
    g.check_edge(e1)?;
    g.check_edge(e2)?;
    if e1 == e2 {
        return Err(Error::SameEdge(e1));
    }
    if !is_3_connected(g) {
        return Err(Error::PreconditionViolated("graph is not 3-connected".into()));
    }
    for e in [e1, e2] {
        if g.parallel_class(e)?.len() > 1 {
            return Err(Error::PreconditionViolated(format!("edge {e} has a parallel edge")));
        }
    }
    Ok(leaf_cases(g, e1, e2))
}

pub(crate) fn leaf_cases(g: &SignedGraph, e1: EdgeId, e2: EdgeId) -> LeafVerdict {
    let case = parallel_cut(g, e1, e2)
        .or_else(|| common_vertex(g, e1, e2))
        .or_else(|| balanced_remainder(g, e1, e2));
    match case {
        Some(case) => {
            let sign = through_sign(g, e1, e2, case.signing());
            LeafVerdict::Tied { case, sign }
        }
        None => LeafVerdict::Untied,
    }
}

/// Sign of every cycle through `e1` and `e2` whose remaining edges are
/// balanced by `theta`: the two edge signs times `theta` over the endpoints
/// (a shared endpoint cancels).
pub(crate) fn through_sign(g: &SignedGraph, e1: EdgeId, e2: EdgeId, theta: &VertexSigning) -> Sign {
    let (a, b) = g.endpoints(e1);
    let (c, d) = g.endpoints(e2);
    g.sign(e1) * g.sign(e2) * theta.get(a) * theta.get(b) * theta.get(c) * theta.get(d)
}

fn parallel_cut(g: &SignedGraph, e1: EdgeId, e2: EdgeId) -> Option<LeafCase> {
    let n = g.vertex_count();
    let mut seen = BTreeSet::new();
    for e in g.edge_ids() {
        let key = g.edges()[e.0].key();
        if !seen.insert(key) {
            continue;
        }
        let class = g.parallel_class(e).expect("valid edge");
        let signs: BTreeSet<Sign> = class.iter().map(|&f| g.sign(f)).collect();
        if signs.len() < 2 || class.contains(&e1) || class.contains(&e2) {
            continue;
        }
        let in_cut = |f: EdgeId| f == e1 || f == e2 || class.contains(&f);
        let labels = component_labels(g, &vec![true; n], |f| !in_cut(f));
        let count = labels.iter().flatten().max().map_or(0, |m| m + 1);
        // 2-colour the components along the cut edges
        let mut adj = vec![Vec::new(); count];
        for f in g.edge_ids().filter(|&f| in_cut(f)) {
            let (u, v) = g.endpoints(f);
            let (cu, cv) = (labels[u.0].expect("alive"), labels[v.0].expect("alive"));
            adj[cu].push(cv);
            adj[cv].push(cu);
        }
        let Some(colour) = two_colour(&adj) else {
            continue;
        };
        let BalanceResult::Balanced(signing) = balance_of(g, |f| !in_cut(f)) else {
            continue;
        };
        let cut_side = g
            .vertices()
            .filter(|v| !colour[labels[v.0].expect("alive")])
            .collect();
        return Some(LeafCase::ParallelCut {
            class,
            cut_side,
            signing,
        });
    }
    None
}

fn two_colour(adj: &[Vec<usize>]) -> Option<Vec<bool>> {
    let mut colour: Vec<Option<bool>> = vec![None; adj.len()];
    for s in 0..adj.len() {
        if colour[s].is_some() {
            continue;
        }
        colour[s] = Some(false);
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            let cx = colour[x].expect("coloured");
            for &y in &adj[x] {
                match colour[y] {
                    None => {
                        colour[y] = Some(!cx);
                        stack.push(y);
                    }
                    Some(cy) if cy == cx => return None,
                    Some(_) => {}
                }
            }
        }
    }
    Some(colour.into_iter().map(|c| c.expect("coloured")).collect())
}

fn common_vertex(g: &SignedGraph, e1: EdgeId, e2: EdgeId) -> Option<LeafCase> {
    let w = g.edges()[e1.0].shares_vertex(&g.edges()[e2.0])?;
    match balance_of(g, |f| !g.edges()[f.0].is_incident(w)) {
        BalanceResult::Balanced(signing) => Some(LeafCase::CommonVertex { vertex: w, signing }),
        BalanceResult::Unbalanced(_) => None,
    }
}

fn balanced_remainder(g: &SignedGraph, e1: EdgeId, e2: EdgeId) -> Option<LeafCase> {
    match balance_of(g, |f| f != e1 && f != e2) {
        BalanceResult::Balanced(signing) => Some(LeafCase::BalancedRemainder { signing }),
        BalanceResult::Unbalanced(_) => None,
    }
}

/// Edge set of one cycle through both edges, found with a flow; `None` when
/// there is none.
pub fn common_cycle(g: &SignedGraph, e1: EdgeId, e2: EdgeId) -> Option<Vec<EdgeId>> {
    let a = g.edges()[e1.0];
    let b = g.edges()[e2.0];
    if a.key() == b.key() {
        return Some(vec![e1, e2]);
    }
    let mut alive = vec![true; g.vertex_count()];
    let keep = |f: EdgeId| f != e1 && f != e2;
    let paths = match a.shares_vertex(&b) {
        Some(w) => {
            alive[w.0] = false;
            disjoint_paths(g, &[a.other(w)], &[b.other(w)], 1, &alive, keep)?
        }
        None => disjoint_paths(g, &[a.u, a.v], &[b.u, b.v], 2, &alive, keep)?,
    };
    let mut edges = vec![e1, e2];
    for p in paths {
        edges.extend(p.edges);
    }
    Some(edges)
}
