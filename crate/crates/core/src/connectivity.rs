//! Components, blocks, 2-separations and 3-connectivity.
//!
//! Multigraphs are handled throughout: parallel edges never change vertex
//! connectivity, and they always land in the same block.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, SignedGraph, VertexId};

/// Block / cut-vertex decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockTree {
    /// Edge sets of the blocks, each sorted, ordered by smallest edge id.
    pub blocks: Vec<Vec<EdgeId>>,
    pub cut_vertices: Vec<VertexId>,
    /// `block_of[e]` indexes `blocks`.
    pub block_of: Vec<usize>,
    /// `(block, cut vertex)` pairs with the cut vertex on the block.
    pub incidence: Vec<(usize, VertexId)>,
}

impl BlockTree {
    pub fn same_block(&self, a: EdgeId, b: EdgeId) -> bool {
        self.block_of[a.0] == self.block_of[b.0]
    }
}

/// A 2-separation: the sides partition the edges and share exactly the two
/// boundary vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Separation {
    pub side1: Vec<EdgeId>,
    pub side2: Vec<EdgeId>,
    pub boundary: (VertexId, VertexId),
}

impl Separation {
    /// Checks the type invariants against `g`; the message names the first
    /// violated one.
    pub fn check(&self, g: &SignedGraph) -> std::result::Result<(), String> {
        let mut all: Vec<EdgeId> = self.side1.iter().chain(&self.side2).copied().collect();
        all.sort_unstable();
        if all != g.edge_ids().collect::<Vec<_>>() {
            return Err("sides do not partition the edge set".into());
        }
        let shared: BTreeSet<VertexId> = side_vertices(g, &self.side1)
            .intersection(&side_vertices(g, &self.side2))
            .copied()
            .collect();
        let (u, v) = self.boundary;
        if u == v || shared != [u, v].into_iter().collect() {
            return Err(format!(
                "sides meet in {shared:?}, not in the boundary {{{u}, {v}}}"
            ));
        }
        Ok(())
    }

    pub fn is_proper(&self, g: &SignedGraph) -> bool {
        let one = side_vertices(g, &self.side1);
        let two = side_vertices(g, &self.side2);
        !one.is_subset(&two) && !two.is_subset(&one)
    }
}

pub fn side_vertices(g: &SignedGraph, edges: &[EdgeId]) -> BTreeSet<VertexId> {
    edges
        .iter()
        .flat_map(|&e| {
            let (u, v) = g.endpoints(e);
            [u, v]
        })
        .collect()
}

/// Connected components as sorted vertex lists, ordered by smallest vertex.
pub fn components(g: &SignedGraph) -> Vec<Vec<VertexId>> {
    let label = component_labels(g, &vec![true; g.vertex_count()], |_| true);
    let count = label.iter().flatten().max().map_or(0, |m| m + 1);
    let mut out = vec![Vec::new(); count];
    for v in g.vertices() {
        if let Some(c) = label[v.0] {
            out[c].push(v);
        }
    }
    out
}

pub fn is_connected(g: &SignedGraph) -> bool {
    components(g).len() <= 1
}

/// Component index per live vertex, using only live vertices and accepted
/// edges. Components are numbered in order of their smallest vertex.
pub(crate) fn component_labels(
    g: &SignedGraph,
    alive: &[bool],
    keep: impl Fn(EdgeId) -> bool,
) -> Vec<Option<usize>> {
    let adj = g.adjacency();
    let mut label = vec![None; g.vertex_count()];
    let mut next = 0;
    for s in g.vertices() {
        if !alive[s.0] || label[s.0].is_some() {
            continue;
        }
        label[s.0] = Some(next);
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &(y, e) in &adj[x.0] {
                if alive[y.0] && label[y.0].is_none() && keep(e) {
                    label[y.0] = Some(next);
                    queue.push_back(y);
                }
            }
        }
        next += 1;
    }
    label
}

struct Bcc {
    blocks: Vec<Vec<EdgeId>>,
    is_cut: Vec<bool>,
}

/// Hopcroft–Tarjan on the subgraph of live vertices and accepted edges.
/// Tree edges are skipped by id, not by endpoint, so parallel edges close
/// 2-cycles as they should.
fn biconnected(g: &SignedGraph, alive: &[bool], keep: &dyn Fn(EdgeId) -> bool) -> Bcc {
    const UNSEEN: usize = usize::MAX;
    let n = g.vertex_count();
    let adj = g.adjacency();
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut is_cut = vec![false; n];
    let mut blocks = Vec::new();
    let mut edge_stack: Vec<EdgeId> = Vec::new();
    let mut timer = 0;

    struct Frame {
        v: usize,
        via: Option<EdgeId>,
        next: usize,
    }

    for root in 0..n {
        if !alive[root] || disc[root] != UNSEEN {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        let mut root_children = 0;
        let mut stack = vec![Frame {
            v: root,
            via: None,
            next: 0,
        }];
        while let Some(frame) = stack.last_mut() {
            let v = frame.v;
            if frame.next < adj[v].len() {
                let (w, e) = adj[v][frame.next];
                frame.next += 1;
                if Some(e) == frame.via || !alive[w.0] || !keep(e) {
                    continue;
                }
                let w = w.0;
                if disc[w] == UNSEEN {
                    edge_stack.push(e);
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push(Frame {
                        v: w,
                        via: Some(e),
                        next: 0,
                    });
                } else if disc[w] < disc[v] {
                    edge_stack.push(e);
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                let done = stack.pop().expect("nonempty");
                if let Some(parent) = stack.last() {
                    let p = parent.v;
                    low[p] = low[p].min(low[done.v]);
                    if low[done.v] >= disc[p] {
                        if p == root {
                            root_children += 1;
                        } else {
                            is_cut[p] = true;
                        }
                        let via = done.via.expect("non-root frame");
                        let mut block = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            block.push(e);
                            if e == via {
                                break;
                            }
                        }
                        block.sort_unstable();
                        blocks.push(block);
                    }
                }
            }
        }
        if root_children >= 2 {
            is_cut[root] = true;
        }
    }
    blocks.sort();
    Bcc { blocks, is_cut }
}

pub fn blocks(g: &SignedGraph) -> BlockTree {
    let Bcc { blocks, is_cut } = biconnected(g, &vec![true; g.vertex_count()], &|_| true);
    let mut block_of = vec![usize::MAX; g.edge_count()];
    let mut incidence = Vec::new();
    for (i, block) in blocks.iter().enumerate() {
        for &e in block {
            block_of[e.0] = i;
        }
        for v in side_vertices(g, block) {
            if is_cut[v.0] {
                incidence.push((i, v));
            }
        }
    }
    BlockTree {
        blocks,
        cut_vertices: g.vertices().filter(|v| is_cut[v.0]).collect(),
        block_of,
        incidence,
    }
}

/// Connected, at least two vertices, and no cut vertex.
pub fn is_2_connected(g: &SignedGraph) -> bool {
    let n = g.vertex_count();
    n >= 2 && is_connected(g) && {
        let bcc = biconnected(g, &vec![true; n], &|_| true);
        !bcc.is_cut.iter().any(|&c| c)
    }
}

/// At least four vertices and no vertex cut of size at most two.
pub fn is_3_connected(g: &SignedGraph) -> bool {
    let n = g.vertex_count();
    if n < 4 || !is_2_connected(g) {
        return false;
    }
    let mut alive = vec![true; n];
    for u in 0..n {
        alive[u] = false;
        let bcc = biconnected(g, &alive, &|_| true);
        let labels = component_labels(g, &alive, |_| true);
        let connected = labels.iter().flatten().all(|&c| c == 0);
        alive[u] = true;
        if !connected || bcc.is_cut.iter().any(|&c| c) {
            return false;
        }
    }
    true
}

/// Some proper 2-separation of a 2-connected graph, or `None` when the graph
/// is 3-connected (or has fewer than four vertices).
///
/// Deterministic: the boundary is the lexicographically smallest pair
/// `{u, v}` whose removal disconnects the graph. Side one is the smallest
/// component of `G - {u, v}` (by edge count, then by smallest vertex) with
/// its attaching edges; every other edge, including any `uv` edges, is on
/// side two.
pub fn find_proper_2_separation(g: &SignedGraph) -> Result<Option<Separation>> {
    if !is_2_connected(g) {
        return Err(Error::NotTwoConnected);
    }
    let n = g.vertex_count();
    if n < 4 {
        return Ok(None);
    }
    let mut alive = vec![true; n];
    for u in 0..n {
        alive[u] = false;
        let bcc = biconnected(g, &alive, &|_| true);
        alive[u] = true;
        let Some(v) = (u + 1..n).find(|&v| bcc.is_cut[v]) else {
            continue;
        };
        alive[u] = false;
        alive[v] = false;
        let labels = component_labels(g, &alive, |_| true);
        let count = labels.iter().flatten().max().map_or(0, |m| m + 1);
        let mut sizes = vec![0usize; count];
        for edge in g.edges() {
            if let Some(c) = labels[edge.u.0].or(labels[edge.v.0]) {
                sizes[c] += 1;
            }
        }
        // components are numbered by smallest vertex, so the first minimum wins ties
        let chosen = (0..count).min_by_key(|&c| sizes[c]).expect("at least two components");
        let (side1, side2) = g.edge_ids().partition(|&e| {
            let edge = &g.edges()[e.0];
            labels[edge.u.0] == Some(chosen) || labels[edge.v.0] == Some(chosen)
        });
        return Ok(Some(Separation {
            side1,
            side2,
            boundary: (VertexId(u), VertexId(v)),
        }));
    }
    Ok(None)
}

/// Up to `k` vertex-disjoint paths from `sources` to `targets` (Menger),
/// avoiding vertices not in `alive` and edges rejected by `keep`. Each path
/// starts at a distinct source, ends at its first target vertex, and the
/// paths share no vertex. A vertex in both sets yields a zero-length path.
/// Returns `None` if fewer than `k` such paths exist.
pub fn disjoint_paths(
    g: &SignedGraph,
    sources: &[VertexId],
    targets: &[VertexId],
    k: usize,
    alive: &[bool],
    keep: impl Fn(EdgeId) -> bool,
) -> Option<Vec<crate::cycle::SignedPath>> {
    let n = g.vertex_count();
    // node 2x = x_in, 2x+1 = x_out, 2n = source, 2n+1 = sink
    let source = 2 * n;
    let sink = 2 * n + 1;
    let mut net = FlowNet::new(2 * n + 2);
    for (x, _) in alive.iter().enumerate().take(n).filter(|(_, &a)| a) {
        net.add_arc(2 * x, 2 * x + 1, None);
    }
    for (i, edge) in g.edges().iter().enumerate() {
        let e = EdgeId(i);
        if alive[edge.u.0] && alive[edge.v.0] && keep(e) {
            net.add_arc(2 * edge.u.0 + 1, 2 * edge.v.0, Some(e));
            net.add_arc(2 * edge.v.0 + 1, 2 * edge.u.0, Some(e));
        }
    }
    let source_set: BTreeSet<VertexId> = sources.iter().copied().filter(|s| alive[s.0]).collect();
    let target_set: BTreeSet<VertexId> = targets.iter().copied().filter(|t| alive[t.0]).collect();
    for s in &source_set {
        net.add_arc(source, 2 * s.0, None);
    }
    for t in &target_set {
        net.add_arc(2 * t.0 + 1, sink, None);
    }
    for _ in 0..k {
        if !net.augment(source, sink) {
            return None;
        }
    }
    let mut paths = Vec::with_capacity(k);
    for start in net.flow_successors(source) {
        let mut vertices = vec![VertexId(start / 2)];
        let mut edges = Vec::new();
        let mut node = start;
        loop {
            let at = VertexId(node / 2);
            if target_set.contains(&at) {
                break;
            }
            // through x_in -> x_out, then along one used edge arc
            let out = net.flow_successor(node).expect("flow conserved");
            let (next, e) = net.flow_arc(out).expect("flow conserved");
            node = next;
            edges.push(e.expect("edge arc"));
            vertices.push(VertexId(node / 2));
        }
        let sign = g.sign_of(&edges);
        paths.push(crate::cycle::SignedPath {
            vertices,
            edges,
            sign,
        });
    }
    Some(paths)
}

/// Unit-capacity flow network with arc labels.
struct FlowNet {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<u8>,
    label: Vec<Option<EdgeId>>,
}

impl FlowNet {
    fn new(nodes: usize) -> Self {
        FlowNet {
            head: vec![Vec::new(); nodes],
            to: Vec::new(),
            cap: Vec::new(),
            label: Vec::new(),
        }
    }

    /// Arc `2i` is forward with capacity one, arc `2i + 1` its residual twin.
    fn add_arc(&mut self, from: usize, to: usize, label: Option<EdgeId>) {
        self.head[from].push(self.to.len());
        self.to.push(to);
        self.cap.push(1);
        self.label.push(label);
        self.head[to].push(self.to.len());
        self.to.push(from);
        self.cap.push(0);
        self.label.push(label);
    }

    fn augment(&mut self, s: usize, t: usize) -> bool {
        let mut via = vec![usize::MAX; self.head.len()];
        let mut seen = vec![false; self.head.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            if x == t {
                break;
            }
            for &a in &self.head[x] {
                let y = self.to[a];
                if self.cap[a] > 0 && !seen[y] {
                    seen[y] = true;
                    via[y] = a;
                    queue.push_back(y);
                }
            }
        }
        if !seen[t] {
            return false;
        }
        let mut x = t;
        while x != s {
            let a = via[x];
            self.cap[a] -= 1;
            self.cap[a ^ 1] += 1;
            x = self.to[a ^ 1];
        }
        true
    }

    /// Forward arc out of `node` carrying flow, with its head and label.
    fn flow_arc_from(&self, node: usize) -> Option<usize> {
        self.head[node]
            .iter()
            .copied()
            .find(|&a| a % 2 == 0 && self.cap[a] == 0)
    }

    fn flow_successors(&self, node: usize) -> Vec<usize> {
        self.head[node]
            .iter()
            .filter(|&&a| a % 2 == 0 && self.cap[a] == 0)
            .map(|&a| self.to[a])
            .collect()
    }

    fn flow_successor(&self, node: usize) -> Option<usize> {
        self.flow_arc_from(node).map(|a| self.to[a])
    }

    fn flow_arc(&self, node: usize) -> Option<(usize, Option<EdgeId>)> {
        self.flow_arc_from(node).map(|a| (self.to[a], self.label[a]))
    }
}
