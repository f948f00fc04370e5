//! Independent checking of verdicts.
//!
//! Untied verdicts are checked through their witness cycles. Tied verdicts
//! are checked by replaying the certificate tree: every node graph is
//! rebuilt from its parent's, every split is checked to be a proper
//! 2-separation with consistent markers, and every leaf claim is re-checked
//! from the recorded data.

use std::collections::{BTreeMap, BTreeSet};

use crate::cycle::Cycle;
use crate::decide::{normalize, LabelledEdge, LabelledGraph, Normal};
use crate::graph::{EdgeId, SignedGraph, VertexId};
use crate::oracle::{enumerate_common_cycles, DEFAULT_BUDGET};
use crate::sign::Sign;
use crate::verdict::{CertNode, CertRule, CertStep, EdgeRef, Marker, SigningRecord, Verdict};

type Check<T = ()> = std::result::Result<T, String>;

/// `Ok` when `v` is a valid verdict about `e1, e2` in `g`, otherwise the
/// first failure found.
pub fn verify_certificate(g: &SignedGraph, e1: EdgeId, e2: EdgeId, v: &Verdict) -> Check {
    g.check_edge(e1).map_err(|e| e.to_string())?;
    g.check_edge(e2).map_err(|e| e.to_string())?;
    if e1 == e2 {
        return Err("e1 and e2 are the same edge".into());
    }
    match v {
        Verdict::Untied { witness } => {
            let w = witness.as_ref().ok_or("untied verdict carries no witness")?;
            check_through(g, e1, e2, &w.positive, "positive witness")?;
            check_through(g, e1, e2, &w.negative, "negative witness")?;
            if w.positive.sign(g) != Sign::Positive {
                return Err("positive witness has sign -".into());
            }
            if w.negative.sign(g) != Sign::Negative {
                return Err("negative witness has sign +".into());
            }
            Ok(())
        }
        Verdict::Tied {
            common_sign,
            certificate,
        } => {
            let found = replay(g, e1, e2, &certificate.tree)?;
            let Found::Tied(sign) = found else {
                return Err("certificate shows no common cycle, but the verdict is not vacuous".into());
            };
            if let Some(claimed) = common_sign {
                if *claimed != sign {
                    return Err(format!("common sign {claimed} but the certificate gives {sign}"));
                }
            }
            if let Some(sample) = &certificate.sample {
                check_through(g, e1, e2, sample, "sample")?;
                if sample.sign(g) != sign {
                    return Err("sample cycle has the wrong sign".into());
                }
            }
            Ok(())
        }
        Verdict::TiedVacuous { certificate } => {
            if certificate.sample.is_some() {
                return Err("vacuous verdict carries a sample cycle".into());
            }
            match replay(g, e1, e2, &certificate.tree)? {
                Found::Vacuous => Ok(()),
                Found::Tied(_) => Err("certificate shows a common cycle, but the verdict is vacuous".into()),
            }
        }
    }
}

fn check_through(g: &SignedGraph, e1: EdgeId, e2: EdgeId, c: &Cycle, what: &str) -> Check {
    c.validate(g).map_err(|e| format!("{what} is not a cycle: {e}"))?;
    for (name, e) in [("e1", e1), ("e2", e2)] {
        if !c.contains_edge(e) {
            return Err(format!("{what} not a cycle containing {name} (edge {e})"));
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Found {
    Vacuous,
    Tied(Sign),
}

fn replay(g: &SignedGraph, e1: EdgeId, e2: EdgeId, root: &CertNode) -> Check<Found> {
    if root.e1 != EdgeRef::Edge(e1) || root.e2 != EdgeRef::Edge(e2) {
        return Err("certificate root is about a different edge pair".into());
    }
    let mut markers = BTreeSet::new();
    check_node(&LabelledGraph::from_graph(g), root, &mut markers)
}

fn check_node(graph: &LabelledGraph, node: &CertNode, markers: &mut BTreeSet<u32>) -> Check<Found> {
    let (e1, e2) = (node.e1, node.e2);
    if e1 == e2 {
        return Err(format!("node pairs {e1} with itself"));
    }
    let a = *graph.find(e1).ok_or_else(|| format!("{e1} is not in its node graph"))?;
    let b = *graph.find(e2).ok_or_else(|| format!("{e2} is not in its node graph"))?;
    let parallel = [a.u.min(a.v), a.u.max(a.v)] == [b.u.min(b.v), b.u.max(b.v)];
    if let CertStep::ParallelPair = node.step {
        return if parallel {
            Ok(Found::Tied(a.sign * b.sign))
        } else {
            Err(format!("{e1} and {e2} are not parallel"))
        };
    }
    if parallel {
        return Err(format!("{e1} and {e2} are parallel"));
    }
    if let CertStep::Vacuous { e1_side } = &node.step {
        let reduced = graph.without_parallels(e1, e2).map_err(|e| e.to_string())?;
        check_vacuous_side(&reduced, e1, e2, e1_side)?;
        return Ok(Found::Vacuous);
    }
    let block = match normalize(graph, e1, e2).map_err(|e| e.to_string())? {
        Normal::Block(block) => block,
        _ => return Err(format!("{e1} and {e2} are not in a common block")),
    };
    let ends = |x: EdgeRef| {
        let e = block.find(x).expect("in block");
        (e.u, e.v, e.sign)
    };
    match &node.step {
        CertStep::ParallelPair | CertStep::Vacuous { .. } => unreachable!("handled above"),
        CertStep::Enumerated { positive, negative } => {
            let c = block.compact();
            let l1 = c.local_edge(e1).expect("in block");
            let l2 = c.local_edge(e2).expect("in block");
            let report = enumerate_common_cycles(&c.g, l1, l2, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            if !report.complete {
                return Err("enumeration did not finish".into());
            }
            if (report.positive_count, report.negative_count) != (*positive, *negative) {
                return Err(format!(
                    "enumeration finds {} positive and {} negative cycles, not {positive} and {negative}",
                    report.positive_count, report.negative_count
                ));
            }
            match (positive, negative) {
                (0, 0) => Ok(Found::Vacuous),
                (_, 0) => Ok(Found::Tied(Sign::Positive)),
                (0, _) => Ok(Found::Tied(Sign::Negative)),
                _ => Err("enumeration finds cycles of both signs".into()),
            }
        }
        CertStep::ParallelCut {
            class,
            cut_side,
            signing,
        } => {
            let first = class.first().ok_or("empty parallel class")?;
            let (p, q, _) = block.find(*first).map(|e| (e.u, e.v, e.sign)).ok_or("class edge not in the block")?;
            let key = (p.min(q), p.max(q));
            let full: BTreeSet<EdgeRef> = block
                .edges
                .iter()
                .filter(|e| (e.u.min(e.v), e.u.max(e.v)) == key)
                .map(|e| e.label)
                .collect();
            let listed: BTreeSet<EdgeRef> = class.iter().copied().collect();
            if listed.len() != class.len() || listed != full {
                return Err("class is not a full parallel class".into());
            }
            if listed.contains(&e1) || listed.contains(&e2) {
                return Err("class contains e1 or e2".into());
            }
            let signs: BTreeSet<Sign> = class.iter().map(|&f| ends(f).2).collect();
            if signs.len() != 2 {
                return Err("parallel class does not have both signs".into());
            }
            let vertices = block.vertex_set();
            let x: BTreeSet<VertexId> = cut_side.iter().copied().collect();
            if x.len() != cut_side.len() || !x.is_subset(&vertices) {
                return Err("cut side lists repeated or foreign vertices".into());
            }
            let mut cut_plus = listed.clone();
            cut_plus.extend([e1, e2]);
            let delta: BTreeSet<EdgeRef> = block
                .edges
                .iter()
                .filter(|e| x.contains(&e.u) != x.contains(&e.v))
                .map(|e| e.label)
                .collect();
            if delta != cut_plus {
                return Err("the class with e1, e2 is not the cut of the recorded vertex set".into());
            }
            let theta = check_signing(&block, signing, |r| !cut_plus.contains(&r))?;
            through_sign(ends(e1), ends(e2), &theta).map(Found::Tied)
        }
        CertStep::CommonVertex { vertex, signing } => {
            let (a1, b1, _) = ends(e1);
            let (a2, b2, _) = ends(e2);
            if !((a1 == *vertex || b1 == *vertex) && (a2 == *vertex || b2 == *vertex)) {
                return Err(format!("vertex {vertex} is not an end of both edges"));
            }
            let theta = check_signing(&block, signing, |r| {
                let e = block.find(r).expect("in block");
                e.u != *vertex && e.v != *vertex
            })?;
            through_sign(ends(e1), ends(e2), &theta).map(Found::Tied)
        }
        CertStep::BalancedRemainder { signing } => {
            let theta = check_signing(&block, signing, |r| r != e1 && r != e2)?;
            through_sign(ends(e1), ends(e2), &theta).map(Found::Tied)
        }
        CertStep::Split {
            boundary,
            side1,
            side2,
            rule,
            children,
        } => check_split(&block, node, *boundary, side1, side2, rule, children, markers),
    }
}

/// Sign shared by all cycles through `e1, e2` when the rest is balanced by
/// `theta`; the ends of both edges must be signed unless they coincide.
fn through_sign(
    (a1, b1, s1): (VertexId, VertexId, Sign),
    (a2, b2, s2): (VertexId, VertexId, Sign),
    theta: &BTreeMap<VertexId, Sign>,
) -> Check<Sign> {
    let mut count: BTreeMap<VertexId, usize> = BTreeMap::new();
    for x in [a1, b1, a2, b2] {
        *count.entry(x).or_default() += 1;
    }
    let mut sign = s1 * s2;
    for (x, k) in count {
        if k % 2 == 1 {
            sign *= *theta
                .get(&x)
                .ok_or_else(|| format!("signing does not cover vertex {x}"))?;
        }
    }
    Ok(sign)
}

/// Checks that `signing` lists exactly the vertices touched by the accepted
/// edges, once each, and realizes every accepted edge's sign.
fn check_signing(
    graph: &LabelledGraph,
    signing: &SigningRecord,
    keep: impl Fn(EdgeRef) -> bool,
) -> Check<BTreeMap<VertexId, Sign>> {
    let theta: BTreeMap<VertexId, Sign> = signing.iter().copied().collect();
    if theta.len() != signing.len() {
        return Err("signing lists a vertex twice".into());
    }
    let kept: Vec<_> = graph.edges.iter().filter(|e| keep(e.label)).collect();
    let touched: BTreeSet<VertexId> = kept.iter().flat_map(|e| [e.u, e.v]).collect();
    if touched != theta.keys().copied().collect() {
        return Err("signing does not list exactly the vertices of its subgraph".into());
    }
    for e in kept {
        if e.sign != theta[&e.u] * theta[&e.v] {
            return Err(format!("signing violated at edge {}", e.label));
        }
    }
    Ok(theta)
}

fn check_vacuous_side(graph: &LabelledGraph, e1: EdgeRef, e2: EdgeRef, side: &[EdgeRef]) -> Check {
    let s: BTreeSet<EdgeRef> = side.iter().copied().collect();
    if s.len() != side.len() {
        return Err("vacuous side lists an edge twice".into());
    }
    if !s.contains(&e1) || s.contains(&e2) {
        return Err("vacuous side must contain e1 and not e2".into());
    }
    if s.iter().any(|&r| !graph.contains(r)) {
        return Err("vacuous side lists an edge outside the graph".into());
    }
    let (inside, outside): (Vec<&LabelledEdge>, Vec<&LabelledEdge>) = graph.edges.iter().partition(|e| s.contains(&e.label));
    let vi: BTreeSet<VertexId> = inside.iter().flat_map(|e| [e.u, e.v]).collect();
    let vo: BTreeSet<VertexId> = outside.iter().flat_map(|e| [e.u, e.v]).collect();
    if vi.intersection(&vo).count() > 1 {
        return Err("vacuous side meets the rest in more than one vertex".into());
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn check_split(
    block: &LabelledGraph,
    node: &CertNode,
    [u, v]: [VertexId; 2],
    side1: &[EdgeRef],
    side2: &[EdgeRef],
    rule: &CertRule,
    children: &[CertNode],
    markers: &mut BTreeSet<u32>,
) -> Check<Found> {
    let s1: BTreeSet<EdgeRef> = side1.iter().copied().collect();
    let s2: BTreeSet<EdgeRef> = side2.iter().copied().collect();
    if s1.len() != side1.len() || s2.len() != side2.len() || !s1.is_disjoint(&s2) {
        return Err("sides repeat an edge".into());
    }
    let all: BTreeSet<EdgeRef> = block.labels().into_iter().collect();
    if s1.union(&s2).copied().collect::<BTreeSet<_>>() != all {
        return Err("sides do not partition the block".into());
    }
    let g1 = block.restrict(&s1);
    let g2 = block.restrict(&s2);
    let (v1, v2) = (g1.vertex_set(), g2.vertex_set());
    if u == v || v1.intersection(&v2).copied().collect::<BTreeSet<_>>() != BTreeSet::from([u, v]) {
        return Err(format!("sides do not meet exactly in {{{u}, {v}}}"));
    }
    if v1.len() <= 2 || v2.len() <= 2 {
        return Err("separation is not proper".into());
    }
    let (e1, e2) = (node.e1, node.e2);
    let mut fresh = |m: &Marker| -> Check {
        if all.contains(&EdgeRef::Marker(m.id)) || !markers.insert(m.id) {
            return Err(format!("marker {} is reused", m.id));
        }
        Ok(())
    };
    match rule {
        CertRule::Disjoint { markers: [m0, m1] } => {
            if s1.contains(&e1) == s1.contains(&e2) {
                return Err("disjoint rule but e1, e2 are on the same side".into());
            }
            if m0.sign != Sign::Positive || m1.sign != Sign::Positive {
                return Err("disjoint-rule markers must be positive".into());
            }
            fresh(m0)?;
            fresh(m1)?;
            let [c0, c1] = children else {
                return Err("disjoint rule needs two children".into());
            };
            let (r0, r1) = (EdgeRef::Marker(m0.id), EdgeRef::Marker(m1.id));
            if (c0.e1, c0.e2, c1.e1, c1.e2) != (e1, r0, r1, e2) {
                return Err("children are not about (e1, m0) and (m1, e2)".into());
            }
            let (first, second) = if s1.contains(&e1) { (g1, g2) } else { (g2, g1) };
            let mut h0 = first;
            h0.push(r0, u, v, m0.sign);
            let mut h1 = second;
            h1.push(r1, u, v, m1.sign);
            let a = check_node(&h0, c0, markers)?;
            let b = check_node(&h1, c1, markers)?;
            Ok(match (a, b) {
                (Found::Tied(x), Found::Tied(y)) => Found::Tied(x * y),
                _ => Found::Vacuous,
            })
        }
        CertRule::BalancedSide {
            replaced,
            marker,
            signing,
        } => {
            let (kept, gone) = sides(*replaced, g1, g2, e1, e2)?;
            let theta = check_signing(&gone, signing, |_| true)?;
            if marker.sign != theta[&u] * theta[&v] {
                return Err("marker sign differs from the side's boundary path sign".into());
            }
            fresh(marker)?;
            let mut h = kept;
            h.push(EdgeRef::Marker(marker.id), u, v, marker.sign);
            single_child(&h, node, children, markers)
        }
        CertRule::UnbalancedSide {
            replaced,
            positive,
            negative,
            negative_cycle,
        } => {
            let (kept, gone) = sides(*replaced, g1, g2, e1, e2)?;
            let c = gone.compact();
            let local: Vec<EdgeId> = negative_cycle
                .iter()
                .map(|&r| c.local_edge(r).ok_or("negative cycle leaves the replaced side"))
                .collect::<std::result::Result<_, &str>>()?;
            let cycle = Cycle::from_edge_set(&c.g, &local).map_err(|e| format!("negative cycle: {e}"))?;
            if cycle.sign(&c.g) != Sign::Negative {
                return Err("recorded cycle of the replaced side is positive".into());
            }
            if positive.sign != Sign::Positive || negative.sign != Sign::Negative {
                return Err("marker pair must be + and -".into());
            }
            fresh(positive)?;
            fresh(negative)?;
            let mut h = kept;
            h.push(EdgeRef::Marker(positive.id), u, v, positive.sign);
            h.push(EdgeRef::Marker(negative.id), u, v, negative.sign);
            single_child(&h, node, children, markers)
        }
    }
}

fn sides(
    replaced: u8,
    g1: LabelledGraph,
    g2: LabelledGraph,
    e1: EdgeRef,
    e2: EdgeRef,
) -> Check<(LabelledGraph, LabelledGraph)> {
    let (kept, gone) = match replaced {
        1 => (g2, g1),
        2 => (g1, g2),
        _ => return Err(format!("replaced side {replaced} is not 1 or 2")),
    };
    if !kept.contains(e1) || !kept.contains(e2) {
        return Err("e1 and e2 are not both on the kept side".into());
    }
    Ok((kept, gone))
}

fn single_child(
    h: &LabelledGraph,
    node: &CertNode,
    children: &[CertNode],
    markers: &mut BTreeSet<u32>,
) -> Check<Found> {
    let [child] = children else {
        return Err("side replacement needs exactly one child".into());
    };
    if (child.e1, child.e2) != (node.e1, node.e2) {
        return Err("child is about a different edge pair".into());
    }
    check_node(h, child, markers)
}
