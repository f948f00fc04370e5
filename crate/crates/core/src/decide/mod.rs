//! Deciding whether two edges are tied.
//!
//! Every node of the reduction tree first handles a parallel pair, then
//! drops edges parallel to either distinguished edge and restricts to the
//! block containing both. Small blocks are enumerated, blocks without a
//! proper 2-separation are decided by [`check_leaf`], and the rest are split.

mod leaf;
mod lovasz;
mod piece;
mod reduce;

use std::ops::ControlFlow;

pub use leaf::{check_leaf, common_cycle, LeafCase, LeafVerdict};
pub use lovasz::{lovasz_three_edges, LovaszOutcome, NoCycleReason};
pub use piece::{Compact, LabelledEdge, LabelledGraph};
pub use reduce::{reduce, reduce_with, NodeKind, ReductionNode, ReductionTree};

pub(crate) use piece::{normalize, Normal};

use crate::cycle::Cycle;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, SignedGraph};
use crate::oracle::{enumerate_common_cycles, walk_common_cycles, WalkEnd, DEFAULT_BUDGET};
use crate::sign::Sign;
use crate::verdict::{
    CertNode, CertRule, CertStep, EdgeRef, TiedCertificate, Verdict, WitnessPair,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecideOptions {
    /// Blocks with at most this many vertices are decided by enumeration.
    pub small_leaf_threshold: usize,
    /// Search nodes spent looking for an untied witness at a leaf.
    pub witness_budget: u64,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions {
            small_leaf_threshold: 3,
            witness_budget: DEFAULT_BUDGET,
        }
    }
}

pub fn decide_tied(g: &SignedGraph, e1: EdgeId, e2: EdgeId) -> Result<Verdict> {
    decide_tied_with(g, e1, e2, &DecideOptions::default())
}

pub fn decide_tied_with(
    g: &SignedGraph,
    e1: EdgeId,
    e2: EdgeId,
    options: &DecideOptions,
) -> Result<Verdict> {
    let tree = reduce_with(g, e1, e2, options)?;
    let (cert, outcome) = evaluate(&tree.root, options)?;
    Ok(match outcome {
        Outcome::Vacuous => Verdict::TiedVacuous {
            certificate: TiedCertificate {
                tree: cert.expect("tied nodes carry certificates"),
                sample: None,
            },
        },
        Outcome::Tied { sign, sample } => {
            let sample = Cycle::from_edge_set(g, &tree.expand(&sample)?)?;
            if sample.sign(g) != sign {
                return Err(Error::Inconsistent("sample cycle has the wrong sign".into()));
            }
            Verdict::Tied {
                common_sign: Some(sign),
                certificate: TiedCertificate {
                    tree: cert.expect("tied nodes carry certificates"),
                    sample: Some(sample),
                },
            }
        }
        Outcome::Untied { witness } => Verdict::Untied {
            witness: witness
                .map(|w| lift_witness(&tree, g, e1, e2, &w))
                .transpose()?,
        },
    })
}

/// Turns a positive/negative pair of cycles of the tree's root question,
/// possibly running through markers, into cycles of `g`.
pub fn lift_witness(
    tree: &ReductionTree,
    g: &SignedGraph,
    e1: EdgeId,
    e2: EdgeId,
    witness: &[Vec<EdgeRef>; 2],
) -> Result<WitnessPair> {
    let [positive, negative] = [0, 1].map(|i| -> Result<Cycle> {
        let c = Cycle::from_edge_set(g, &tree.expand(&witness[i])?)?;
        if !c.contains_edge(e1) || !c.contains_edge(e2) {
            return Err(Error::Inconsistent("lifted cycle misses e1 or e2".into()));
        }
        Ok(c)
    });
    let (positive, negative) = (positive?, negative?);
    if positive.sign(g) != Sign::Positive || negative.sign(g) != Sign::Negative {
        return Err(Error::Inconsistent("lifted witness signs are wrong".into()));
    }
    Ok(WitnessPair { positive, negative })
}

/// What a node found, with cycles written in the node's edge labels.
#[derive(Clone, Debug)]
enum Outcome {
    Vacuous,
    Tied { sign: Sign, sample: Vec<EdgeRef> },
    /// `[positive, negative]`, absent if the witness search ran out.
    Untied { witness: Option<[Vec<EdgeRef>; 2]> },
}

fn evaluate(node: &ReductionNode, options: &DecideOptions) -> Result<(Option<CertNode>, Outcome)> {
    let cert = |step| {
        Some(CertNode {
            e1: node.e1,
            e2: node.e2,
            step,
        })
    };
    match &node.kind {
        NodeKind::ParallelPair => {
            let sign = node.graph.require(node.e1)?.sign * node.graph.require(node.e2)?.sign;
            let sample = vec![node.e1, node.e2];
            Ok((cert(CertStep::ParallelPair), Outcome::Tied { sign, sample }))
        }
        NodeKind::Vacuous { e1_side } => Ok((
            cert(CertStep::Vacuous {
                e1_side: e1_side.clone(),
            }),
            Outcome::Vacuous,
        )),
        NodeKind::Small { block } => {
            let c = block.compact();
            let (l1, l2) = local_pair(&c, node)?;
            let report = enumerate_common_cycles(&c.g, l1, l2, DEFAULT_BUDGET)?;
            if !report.complete {
                return Err(Error::BudgetExhausted(DEFAULT_BUDGET));
            }
            let step = CertStep::Enumerated {
                positive: report.positive_count,
                negative: report.negative_count,
            };
            let first = |s: Sign| {
                report
                    .cycles
                    .iter()
                    .find(|cy| cy.sign(&c.g) == s)
                    .map(|cy| c.labels_of(cy.edges()))
            };
            Ok(match (first(Sign::Positive), first(Sign::Negative)) {
                (Some(p), Some(n)) => (None, Outcome::Untied { witness: Some([p, n]) }),
                (None, None) => (cert(step), Outcome::Vacuous),
                (Some(sample), None) => (cert(step), Outcome::Tied { sign: Sign::Positive, sample }),
                (None, Some(sample)) => (cert(step), Outcome::Tied { sign: Sign::Negative, sample }),
            })
        }
        NodeKind::Leaf { block } => {
            let c = block.compact();
            let (l1, l2) = local_pair(&c, node)?;
            let sample = common_cycle(&c.g, l1, l2)
                .ok_or_else(|| Error::Inconsistent("block without a common cycle".into()))?;
            let sample_sign = c.g.sign_of(&sample);
            match leaf::leaf_cases(&c.g, l1, l2) {
                LeafVerdict::Tied { case, sign } => {
                    if sign != sample_sign {
                        return Err(Error::Inconsistent("leaf sign disagrees with its sample".into()));
                    }
                    let signing = c.signing_record(case.signing(), |e| case.covers(&c.g, l1, l2, e));
                    let step = match case {
                        LeafCase::ParallelCut { class, cut_side, .. } => CertStep::ParallelCut {
                            class: c.labels_of(&class),
                            cut_side: cut_side.iter().map(|&x| c.root_vertex(x)).collect(),
                            signing,
                        },
                        LeafCase::CommonVertex { vertex, .. } => CertStep::CommonVertex {
                            vertex: c.root_vertex(vertex),
                            signing,
                        },
                        LeafCase::BalancedRemainder { .. } => CertStep::BalancedRemainder { signing },
                    };
                    Ok((cert(step), Outcome::Tied { sign, sample: c.labels_of(&sample) }))
                }
                LeafVerdict::Untied => {
                    let mut other = None;
                    let end = walk_common_cycles(&c.g, l1, l2, options.witness_budget, |edges| {
                        if c.g.sign_of(edges) != sample_sign {
                            other = Some(edges.to_vec());
                            ControlFlow::Break(())
                        } else {
                            ControlFlow::Continue(())
                        }
                    })?;
                    let witness = match (other, end) {
                        (Some(other), _) => {
                            let (a, b) = (c.labels_of(&sample), c.labels_of(&other));
                            Some(if sample_sign.is_positive() { [a, b] } else { [b, a] })
                        }
                        (None, WalkEnd::Exhausted) => None,
                        (None, _) => {
                            return Err(Error::Inconsistent(
                                "no tied structure applies but every common cycle has one sign".into(),
                            ))
                        }
                    };
                    Ok((None, Outcome::Untied { witness }))
                }
            }
        }
        NodeKind::Split {
            boundary,
            side1,
            side2,
            rule,
            children,
            ..
        } => {
            let mut certs = Vec::new();
            let mut outcomes = Vec::new();
            for child in children {
                let (c, o) = evaluate(child, options)?;
                certs.push(c);
                outcomes.push(o);
            }
            let outcome = match rule {
                CertRule::Disjoint { markers } => {
                    combine_disjoint(&outcomes[0], &outcomes[1], markers[0].id, markers[1].id)?
                }
                _ => outcomes.pop().expect("one child"),
            };
            let cert_node = match outcome {
                Outcome::Untied { .. } => None,
                _ => cert(CertStep::Split {
                    boundary: *boundary,
                    side1: side1.clone(),
                    side2: side2.clone(),
                    rule: rule.clone(),
                    children: certs
                        .into_iter()
                        .map(|c| c.ok_or_else(|| Error::Inconsistent("tied split over an untied child".into())))
                        .collect::<Result<_>>()?,
                }),
            };
            Ok((cert_node, outcome))
        }
    }
}

fn local_pair(c: &Compact, node: &ReductionNode) -> Result<(EdgeId, EdgeId)> {
    let find = |r: EdgeRef| {
        c.local_edge(r)
            .ok_or_else(|| Error::Inconsistent(format!("edge {r} missing from its block")))
    };
    Ok((find(node.e1)?, find(node.e2)?))
}

/// Outcome across a split that separates `e1` from `e2`. Child 0 asks
/// about `(e1, m0)` and child 1 about `(m1, e2)`; a cycle of the parent is
/// a cycle of each child with the marker removed, and its sign is the
/// product.
fn combine_disjoint(a: &Outcome, b: &Outcome, m0: u32, m1: u32) -> Result<Outcome> {
    let glue = |x: &[EdgeRef], y: &[EdgeRef]| -> Vec<EdgeRef> {
        x.iter()
            .filter(|&&r| r != EdgeRef::Marker(m0))
            .chain(y.iter().filter(|&&r| r != EdgeRef::Marker(m1)))
            .copied()
            .collect()
    };
    // some cycle of a child with its sign, if one is at hand
    let any = |o: &Outcome| -> Option<(Vec<EdgeRef>, Sign)> {
        match o {
            Outcome::Tied { sign, sample } => Some((sample.clone(), *sign)),
            Outcome::Untied { witness: Some([p, _]) } => Some((p.clone(), Sign::Positive)),
            _ => None,
        }
    };
    Ok(match (a, b) {
        (Outcome::Vacuous, Outcome::Untied { .. }) | (Outcome::Untied { .. }, Outcome::Vacuous) => {
            return Err(Error::Inconsistent("split child is vacuous beside an untied one".into()))
        }
        (Outcome::Vacuous, _) | (_, Outcome::Vacuous) => Outcome::Vacuous,
        (Outcome::Tied { sign: s, sample: x }, Outcome::Tied { sign: t, sample: y }) => Outcome::Tied {
            sign: *s * *t,
            sample: glue(x, y),
        },
        (Outcome::Untied { witness }, other) => Outcome::Untied {
            witness: witness.as_ref().zip(any(other)).map(|([p, n], (y, s))| {
                let (p, n) = (glue(p, &y), glue(n, &y));
                if s.is_positive() { [p, n] } else { [n, p] }
            }),
        },
        (other, Outcome::Untied { witness }) => Outcome::Untied {
            witness: witness.as_ref().zip(any(other)).map(|([p, n], (x, s))| {
                let (p, n) = (glue(&x, p), glue(&x, n));
                if s.is_positive() { [p, n] } else { [n, p] }
            }),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadget::Gadget;
    use crate::graph::VertexId;
    use crate::oracle::oracle_tied;
    use crate::sign::Sign::{Negative as N, Positive as P};
    use crate::verdict::VerdictKind;

    fn k4(signs: [Sign; 6]) -> SignedGraph {
        let pairs = [(0, 1), (2, 3), (0, 2), (0, 3), (1, 2), (1, 3)];
        SignedGraph::from_edges(4, pairs.iter().zip(signs).map(|(&(u, v), s)| (u, v, s))).unwrap()
    }

    fn assert_witness(g: &SignedGraph, e1: EdgeId, e2: EdgeId, v: &Verdict) {
        let Verdict::Untied { witness: Some(w) } = v else {
            panic!("expected an untied witness, got {v:?}")
        };
        for (c, s) in [(&w.positive, P), (&w.negative, N)] {
            c.validate(g).unwrap();
            assert_eq!(c.sign(g), s);
            assert!(c.contains_edge(e1) && c.contains_edge(e2));
        }
    }

    #[test]
    fn gadgets_are_untied_with_witnesses() {
        for gadget in Gadget::ALL {
            let inst = gadget.build();
            let v = decide_tied(&inst.graph, inst.e1, inst.e2).unwrap();
            assert_witness(&inst.graph, inst.e1, inst.e2, &v);
        }
    }

    #[test]
    fn k4_examples() {
        let g = k4([N, P, P, P, P, P]);
        let v = decide_tied(&g, EdgeId(0), EdgeId(1)).unwrap();
        assert_eq!(v.kind(), VerdictKind::Tied(Some(N)));
        let cert = v.certificate().unwrap();
        assert_eq!(cert.tree.step.leaf_case(), Some(3));
        let g = k4([P, P, N, P, P, P]);
        let v = decide_tied(&g, EdgeId(0), EdgeId(1)).unwrap();
        assert_witness(&g, EdgeId(0), EdgeId(1), &v);
    }

    #[test]
    fn parallel_and_vacuous_pairs() {
        let g = SignedGraph::from_edges(3, [(0, 1, N), (1, 0, N), (1, 2, P)]).unwrap();
        assert_eq!(decide_tied(&g, EdgeId(0), EdgeId(1)).unwrap().kind(), VerdictKind::Tied(Some(P)));
        assert_eq!(decide_tied(&g, EdgeId(0), EdgeId(2)).unwrap().kind(), VerdictKind::Vacuous);
        assert!(matches!(decide_tied(&g, EdgeId(2), EdgeId(2)), Err(Error::SameEdge(_))));
        assert!(matches!(decide_tied(&g, EdgeId(2), EdgeId(7)), Err(Error::BadEdge(_))));
    }

    #[test]
    fn two_k4s_on_a_boundary_split_once() {
        // K4 on {0,1,2,3} and K4 on {0,1,4,5}, sharing the edge 0-1 once
        let mut edges = vec![(0, 1, P)];
        for &(u, v) in &[(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] {
            edges.push((u, v, P));
        }
        for &(u, v) in &[(0, 4), (0, 5), (1, 4), (1, 5), (4, 5)] {
            edges.push((u, v, if (u, v) == (4, 5) { N } else { P }));
        }
        let g = SignedGraph::from_edges(6, edges).unwrap();
        let (e1, e2) = (EdgeId(5), EdgeId(10));
        let tree = reduce(&g, e1, e2).unwrap();
        let NodeKind::Split { rule, children, boundary, .. } = &tree.root.kind else {
            panic!("expected a split")
        };
        assert_eq!(*boundary, [VertexId(0), VertexId(1)]);
        assert!(matches!(rule, CertRule::Disjoint { .. }));
        assert!(children.iter().all(|c| !matches!(c.kind, NodeKind::Split { .. })));
        let v = decide_tied(&g, e1, e2).unwrap();
        assert_eq!(v.kind(), oracle_tied(&g, e1, e2).unwrap().kind());
    }

    #[test]
    fn matches_oracle_on_gadget_pairs() {
        for gadget in Gadget::ALL {
            let g = gadget.build().graph;
            for a in g.edge_ids() {
                for b in g.edge_ids().filter(|&b| b != a) {
                    let ours = decide_tied(&g, a, b).unwrap();
                    let truth = oracle_tied(&g, a, b).unwrap();
                    assert_eq!(ours.kind(), truth.kind(), "{} {a} {b}", gadget.name());
                    if !ours.is_tied() {
                        assert_witness(&g, a, b, &ours);
                    }
                }
            }
        }
    }
}
