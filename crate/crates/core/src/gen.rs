//! Seeded instance generators.

use std::collections::{BTreeSet, VecDeque};

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gadget::Gadget;
use crate::graph::{EdgeId, SignedGraph, SwitchSet, VertexId};
use crate::sign::Sign;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::BadParams(format!("probability {p} is outside [0, 1]")))
    }
}

fn random_sign(rng: &mut impl Rng, p_neg: f64) -> Sign {
    if rng.gen_bool(p_neg) {
        Sign::Negative
    } else {
        Sign::Positive
    }
}

/// `m` uniformly random endpoint pairs (parallel edges allowed), each
/// negative with probability `p_neg`.
pub fn random_signed_graph(n: usize, m: usize, p_neg: f64, seed: u64) -> Result<SignedGraph> {
    check_probability(p_neg)?;
    if m > 0 && n < 2 {
        return Err(Error::BadParams("edges need at least two vertices".into()));
    }
    let mut rng = rng(seed);
    let mut g = SignedGraph::new(n);
    for _ in 0..m {
        let u = rng.gen_range(0..n);
        let mut v = rng.gen_range(0..n - 1);
        if v >= u {
            v += 1;
        }
        let s = random_sign(&mut rng, p_neg);
        g.add_edge(VertexId(u), VertexId(v), s)?;
    }
    Ok(g)
}

/// A wheel on `n` vertices (hub 0) plus `extra_edges` random chords, with
/// random signs. With `simple`, chords never repeat an existing pair and
/// stop early once the graph is complete.
pub fn random_3_connected(
    n: usize,
    extra_edges: usize,
    p_neg: f64,
    simple: bool,
    seed: u64,
) -> Result<SignedGraph> {
    check_probability(p_neg)?;
    if n < 4 {
        return Err(Error::BadParams("a 3-connected graph needs at least 4 vertices".into()));
    }
    let mut rng = rng(seed);
    let mut pairs: Vec<(usize, usize)> = (1..n).map(|i| (0, i)).collect();
    pairs.extend((1..n).map(|i| (i, if i + 1 < n { i + 1 } else { 1 })));
    let mut present: BTreeSet<(usize, usize)> = pairs.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    let mut missing: Vec<(usize, usize)> = (0..n)
        .tuple_combinations()
        .filter(|p| !present.contains(p))
        .collect();
    for _ in 0..extra_edges {
        if simple {
            if missing.is_empty() {
                break;
            }
            let pick = missing.swap_remove(rng.gen_range(0..missing.len()));
            present.insert(pick);
            pairs.push(pick);
        } else {
            let u = rng.gen_range(0..n);
            let mut v = rng.gen_range(0..n - 1);
            if v >= u {
                v += 1;
            }
            pairs.push((u, v));
        }
    }
    let signs: Vec<Sign> = pairs.iter().map(|_| random_sign(&mut rng, p_neg)).collect();
    SignedGraph::from_edges(n, pairs.into_iter().zip(signs).map(|((u, v), s)| (u, v, s)))
}

/// The tied structure a composed instance starts from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LeafShape {
    /// Two balanced `K_k` joined by a `+`/`-` pair and by `e1`, `e2`.
    ParallelCut { k: usize },
    /// A wheel with a balanced rim; `e1`, `e2` are adjacent spokes. With
    /// `doubled`, a third spoke becomes a `+`/`-` pair.
    CommonVertex { rim: usize, doubled: bool },
    /// A simple 3-connected graph on `n` vertices, balanced apart from
    /// `e1`, `e2`.
    BalancedRemainder { n: usize },
}

/// One step that grows a tied instance while keeping it tied.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Splice {
    /// Replace an edge `f` by a balanced 2-connected side with `size` new
    /// vertices whose boundary paths all have the sign of `f`.
    BalancedSide { size: usize },
    /// Replace a `+`/`-` parallel pair by an unbalanced 2-connected side
    /// with `size` new vertices. Without such a pair, the side is attached
    /// across the ends of `e1`.
    UnbalancedSide { size: usize },
    /// Glue another composed instance: delete `e2` here and its `e2` there,
    /// identify their ends, and ask about the two `e1`s.
    Join { other: Box<Recipe> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Recipe {
    pub leaf: LeafShape,
    pub splices: Vec<Splice>,
}

impl Recipe {
    pub fn leaf(leaf: LeafShape) -> Self {
        Recipe {
            leaf,
            splices: Vec::new(),
        }
    }

    pub fn then(mut self, splice: Splice) -> Self {
        self.splices.push(splice);
        self
    }

    /// A random recipe with at most `depth` levels of nested joins.
    pub fn random(rng: &mut impl Rng, depth: usize) -> Recipe {
        let leaf = match rng.gen_range(0..3) {
            0 => LeafShape::ParallelCut { k: rng.gen_range(3..=4) },
            1 => LeafShape::CommonVertex {
                rim: rng.gen_range(3..=5),
                doubled: rng.gen_bool(0.5),
            },
            _ => LeafShape::BalancedRemainder { n: rng.gen_range(4..=6) },
        };
        let count = rng.gen_range(0..=3);
        let splices = (0..count)
            .map(|_| match rng.gen_range(0..if depth > 0 { 3 } else { 2 }) {
                0 => Splice::BalancedSide { size: rng.gen_range(1..=3) },
                1 => Splice::UnbalancedSide { size: rng.gen_range(2..=3) },
                _ => Splice::Join {
                    other: Box::new(Recipe::random(rng, depth - 1)),
                },
            })
            .collect();
        Recipe { leaf, splices }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TiedInstance {
    pub graph: SignedGraph,
    pub e1: EdgeId,
    pub e2: EdgeId,
}

/// Builds an instance in which `e1, e2` are tied by construction, then
/// switches at a random vertex set and shuffles vertex and edge ids.
pub fn compose_tied_instance(recipe: &Recipe, seed: u64) -> Result<TiedInstance> {
    let mut rng = rng(seed);
    let raw = compose(recipe, &mut rng)?;
    Ok(scramble(raw, &mut rng))
}

/// Edge list under construction; `None` marks a deleted edge.
struct Draft {
    n: usize,
    edges: Vec<Option<(usize, usize, Sign)>>,
    e1: usize,
    e2: usize,
}

impl Draft {
    fn add(&mut self, u: usize, v: usize, s: Sign) -> usize {
        self.edges.push(Some((u, v, s)));
        self.edges.len() - 1
    }

    fn vertex(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }

    fn live(&self) -> impl Iterator<Item = (usize, (usize, usize, Sign))> + Clone + '_ {
        self.edges.iter().enumerate().filter_map(|(i, e)| e.map(|e| (i, e)))
    }
}

fn compose(recipe: &Recipe, rng: &mut ChaCha8Rng) -> Result<Draft> {
    let mut d = leaf(&recipe.leaf, rng)?;
    for splice in &recipe.splices {
        match splice {
            Splice::BalancedSide { size } => balanced_side(&mut d, *size, rng)?,
            Splice::UnbalancedSide { size } => unbalanced_side(&mut d, *size, rng)?,
            Splice::Join { other } => {
                let b = compose(other, rng)?;
                join(&mut d, b);
            }
        }
    }
    Ok(d)
}

fn leaf(shape: &LeafShape, rng: &mut ChaCha8Rng) -> Result<Draft> {
    use Sign::{Negative as N, Positive as P};
    let mut d = Draft {
        n: 0,
        edges: Vec::new(),
        e1: 0,
        e2: 0,
    };
    let any = |rng: &mut ChaCha8Rng| if rng.gen_bool(0.5) { N } else { P };
    match *shape {
        LeafShape::ParallelCut { k } => {
            if k < 3 {
                return Err(Error::BadRecipe("parallel-cut sides need k >= 3".into()));
            }
            d.n = 2 * k;
            for (u, v) in (0..k).tuple_combinations() {
                d.add(u, v, P);
                d.add(k + u, k + v, P);
            }
            d.add(0, k, P);
            d.add(0, k, N);
            d.e1 = d.add(1, k + 1, any(rng));
            d.e2 = d.add(2, k + 2, any(rng));
        }
        LeafShape::CommonVertex { rim, doubled } => {
            if rim < 3 {
                return Err(Error::BadRecipe("a wheel needs a rim of at least 3".into()));
            }
            d.n = rim + 1;
            for i in 1..=rim {
                d.add(i, if i < rim { i + 1 } else { 1 }, P);
            }
            d.e1 = d.add(0, 1, any(rng));
            d.e2 = d.add(0, 2, any(rng));
            for i in 3..=rim {
                if doubled && i == 3 {
                    d.add(0, i, P);
                    d.add(0, i, N);
                } else {
                    d.add(0, i, any(rng));
                }
            }
        }
        LeafShape::BalancedRemainder { n } => {
            if n < 4 {
                return Err(Error::BadRecipe("a 3-connected leaf needs n >= 4".into()));
            }
            let extra = rng.gen_range(0..=n);
            let g = random_3_connected(n, extra, 0.0, true, rng.gen())?;
            d.n = n;
            for e in g.edges() {
                d.add(e.u.0, e.v.0, P);
            }
            let picks = rand::seq::index::sample(rng, g.edge_count(), 2);
            d.e1 = picks.index(0);
            d.e2 = picks.index(1);
            for e in [d.e1, d.e2] {
                let (u, v, _) = d.edges[e].expect("live");
                d.edges[e] = Some((u, v, any(rng)));
            }
        }
    }
    Ok(d)
}

/// A random 2-connected graph on the boundary `u, v` plus `size` new
/// vertices, as `(x, y)` pairs over the draft's vertex numbering.
fn side_pairs(d: &mut Draft, u: usize, v: usize, size: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let inner: Vec<usize> = (0..size).map(|_| d.vertex()).collect();
    // two internally disjoint u-v routes through the new vertices
    let cut = rng.gen_range(0..=size);
    let mut pairs = Vec::new();
    for route in [&inner[..cut], &inner[cut..]] {
        let mut at = u;
        for &x in route {
            pairs.push((at, x));
            at = x;
        }
        if !route.is_empty() {
            pairs.push((at, v));
        }
    }
    if cut == 0 || cut == size {
        // only one route went through new vertices; add a second one
        let mid = inner[rng.gen_range(0..size)];
        pairs.push((u, mid));
        pairs.push((mid, v));
    }
    let mut all = vec![u, v];
    all.extend(&inner);
    for _ in 0..rng.gen_range(0..=size) {
        let (a, b) = (*all.choose(rng).expect("nonempty"), *all.choose(rng).expect("nonempty"));
        if a != b {
            pairs.push((a, b));
        }
    }
    pairs
}

fn balanced_side(d: &mut Draft, size: usize, rng: &mut ChaCha8Rng) -> Result<()> {
    if size == 0 {
        return Err(Error::BadRecipe("a side needs at least one new vertex".into()));
    }
    let candidates: Vec<usize> = d.live().map(|(i, _)| i).filter(|&i| i != d.e1 && i != d.e2).collect();
    let &f = candidates
        .choose(rng)
        .ok_or_else(|| Error::BadRecipe("no edge to replace".into()))?;
    let (u, v, s) = d.edges[f].take().expect("live");
    let pairs = side_pairs(d, u, v, size, rng);
    let mut theta = vec![Sign::Positive; d.n];
    for t in theta.iter_mut() {
        if rng.gen_bool(0.5) {
            *t = Sign::Negative;
        }
    }
    theta[v] = theta[u] * s;
    for (a, b) in pairs {
        d.add(a, b, theta[a] * theta[b]);
    }
    Ok(())
}

fn unbalanced_side(d: &mut Draft, size: usize, rng: &mut ChaCha8Rng) -> Result<()> {
    if size < 2 {
        return Err(Error::BadRecipe("an unbalanced side needs at least two new vertices".into()));
    }
    let key = |(u, v, _): (usize, usize, Sign)| (u.min(v), u.max(v));
    let mut pairs_found = Vec::new();
    for ((i, a), (j, b)) in d.live().tuple_combinations() {
        if ![i, j].contains(&d.e1) && ![i, j].contains(&d.e2) && key(a) == key(b) && a.2 != b.2 {
            pairs_found.push((i, j));
        }
    }
    let (u, v) = match pairs_found.choose(rng) {
        Some(&(i, j)) => {
            let (u, v, _) = d.edges[i].take().expect("live");
            d.edges[j] = None;
            (u, v)
        }
        None => {
            let (u, v, _) = d.edges[d.e1].expect("live");
            (u, v)
        }
    };
    let pairs = side_pairs(d, u, v, size, rng);
    let mut ids = Vec::new();
    for (a, b) in pairs {
        let s = if rng.gen_bool(0.5) { Sign::Negative } else { Sign::Positive };
        ids.push(d.add(a, b, s));
    }
    // make sure the side is unbalanced: flip one edge if it came out balanced
    let (side, map) = draft_subgraph(d, &ids);
    if crate::balance::is_balanced(&side).is_balanced() {
        let pick = map[rng.gen_range(0..map.len())];
        let (a, b, s) = d.edges[pick].expect("live");
        d.edges[pick] = Some((a, b, -s));
    }
    Ok(())
}

fn draft_subgraph(d: &Draft, ids: &[usize]) -> (SignedGraph, Vec<usize>) {
    let g = SignedGraph::from_edges(d.n, ids.iter().map(|&i| d.edges[i].expect("live")))
        .expect("loopless");
    (g, ids.to_vec())
}

/// Deletes `a.e2` and `b.e2`, identifies their ends, and asks about
/// `(a.e1, b.e1)`. Both deleted edges are first made positive by a switch
/// at one end.
fn join(a: &mut Draft, mut b: Draft) {
    for d in [&mut *a, &mut b] {
        let (u, _, s) = d.edges[d.e2].expect("live");
        if s.is_negative() {
            for e in d.edges.iter_mut().flatten() {
                if e.0 == u || e.1 == u {
                    e.2 = -e.2;
                }
            }
        }
    }
    let (p, q, _) = a.edges[a.e2].take().expect("live");
    let (r, s, _) = b.edges[b.e2].take().expect("live");
    let offset = a.n;
    let map = |x: usize| {
        if x == r {
            p
        } else if x == s {
            q
        } else {
            offset + x
        }
    };
    let mut e1 = None;
    for (i, e) in b.edges.iter().enumerate() {
        if let Some((x, y, sign)) = *e {
            let id = a.add(map(x), map(y), sign);
            if i == b.e1 {
                e1 = Some(id);
            }
        }
    }
    a.n += b.n;
    a.e2 = e1.expect("b.e1 is live");
}

/// Random switch plus random relabelling of vertices and edges; dead edges
/// and unused vertex ids are dropped.
fn scramble(d: Draft, rng: &mut ChaCha8Rng) -> TiedInstance {
    let used: BTreeSet<usize> = d.live().flat_map(|(_, (u, v, _))| [u, v]).collect();
    let mut order: Vec<usize> = used.iter().copied().collect();
    order.shuffle(rng);
    let mut relabel = vec![usize::MAX; d.n];
    for (new, &old) in order.iter().enumerate() {
        relabel[old] = new;
    }
    let flip: Vec<bool> = (0..order.len()).map(|_| rng.gen_bool(0.5)).collect();
    let mut live: Vec<(usize, (usize, usize, Sign))> = d.live().collect();
    live.shuffle(rng);
    let mut g = SignedGraph::new(order.len());
    let (mut e1, mut e2) = (EdgeId(0), EdgeId(0));
    for (old, (u, v, s)) in live {
        let (x, y) = (relabel[u], relabel[v]);
        let s = if flip[x] != flip[y] { -s } else { s };
        let id = g.add_edge(VertexId(x), VertexId(y), s).expect("loopless");
        if old == d.e1 {
            e1 = id;
        }
        if old == d.e2 {
            e2 = id;
        }
    }
    TiedInstance { graph: g, e1, e2 }
}

/// All-positive graphs with `n` vertices for `1 <= n <= n_max` and at most
/// `m_max` edges; parallel edges only when `simple` is false. With
/// `dedup_isomorphic`, one graph per isomorphism class.
pub fn enumerate_underlying(n_max: usize, m_max: usize, simple: bool, dedup_isomorphic: bool) -> Result<Vec<SignedGraph>> {
    if n_max > 7 {
        return Err(Error::BadParams("n_max above 7 is too large to enumerate".into()));
    }
    let mut out = Vec::new();
    for n in 1..=n_max {
        let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
        let mut seen = BTreeSet::new();
        let perms: Vec<Vec<usize>> = if dedup_isomorphic {
            (0..n).permutations(n).collect()
        } else {
            Vec::new()
        };
        let mut emit = |multiset: &[usize]| {
            if dedup_isomorphic {
                let canon = perms
                    .iter()
                    .map(|p| {
                        let mut es: Vec<(usize, usize)> = multiset
                            .iter()
                            .map(|&i| {
                                let (u, v) = pairs[i];
                                (p[u].min(p[v]), p[u].max(p[v]))
                            })
                            .collect();
                        es.sort_unstable();
                        es
                    })
                    .min()
                    .unwrap_or_default();
                if !seen.insert(canon) {
                    return;
                }
            }
            let g = SignedGraph::from_edges(n, multiset.iter().map(|&i| (pairs[i].0, pairs[i].1, Sign::Positive)))
                .expect("loopless");
            out.push(g);
        };
        for m in 0..=m_max.min(if simple { pairs.len() } else { m_max }) {
            if simple {
                for combo in (0..pairs.len()).combinations(m) {
                    emit(&combo);
                }
            } else if !pairs.is_empty() || m == 0 {
                for combo in (0..pairs.len()).combinations_with_replacement(m) {
                    emit(&combo);
                }
            }
        }
    }
    Ok(out)
}

/// One signature per switching class of `g`: a BFS spanning forest stays
/// positive and the remaining edges take every sign pattern.
pub fn switching_representatives(g: &SignedGraph) -> Vec<SignedGraph> {
    let adj = g.adjacency();
    let mut seen = vec![false; g.vertex_count()];
    let mut tree = vec![false; g.edge_count()];
    for s in g.vertices() {
        if seen[s.0] {
            continue;
        }
        seen[s.0] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &(y, e) in &adj[x.0] {
                if !seen[y.0] {
                    seen[y.0] = true;
                    tree[e.0] = true;
                    queue.push_back(y);
                }
            }
        }
    }
    let free: Vec<EdgeId> = g.edge_ids().filter(|e| !tree[e.0]).collect();
    (0u64..1 << free.len())
        .map(|mask| {
            let mut signature = vec![Sign::Positive; g.edge_count()];
            for (bit, e) in free.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    signature[e.0] = Sign::Negative;
                }
            }
            g.with_signature(&signature).expect("same edge count")
        })
        .collect()
}

/// Every underlying graph within the bounds, each with one signature per
/// switching class.
pub fn enumerate_small(n_max: usize, m_max: usize, simple: bool, dedup_isomorphic: bool) -> Result<Vec<SignedGraph>> {
    Ok(enumerate_underlying(n_max, m_max, simple, dedup_isomorphic)?
        .iter()
        .flat_map(switching_representatives)
        .collect())
}

/// A generator request.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GenSpec {
    Random { n: usize, m: usize, p_neg: f64, seed: u64 },
    Random3Connected { n: usize, extra_edges: usize, p_neg: f64, simple: bool, seed: u64 },
    Exhaustive { n_max: usize, m_max: usize, simple: bool, dedup_isomorphic: bool },
    /// A composed tied instance; a random recipe is drawn when none is given.
    ComposedTied { recipe: Option<Recipe>, seed: u64 },
    Gadget { gadget: Gadget },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generated {
    pub graph: SignedGraph,
    /// The distinguished edges, for generators that have them.
    pub pair: Option<(EdgeId, EdgeId)>,
}

pub fn generate(spec: &GenSpec) -> Result<Vec<Generated>> {
    let plain = |graph| vec![Generated { graph, pair: None }];
    Ok(match spec {
        GenSpec::Random { n, m, p_neg, seed } => plain(random_signed_graph(*n, *m, *p_neg, *seed)?),
        GenSpec::Random3Connected {
            n,
            extra_edges,
            p_neg,
            simple,
            seed,
        } => plain(random_3_connected(*n, *extra_edges, *p_neg, *simple, *seed)?),
        GenSpec::Exhaustive {
            n_max,
            m_max,
            simple,
            dedup_isomorphic,
        } => enumerate_small(*n_max, *m_max, *simple, *dedup_isomorphic)?
            .into_iter()
            .map(|graph| Generated { graph, pair: None })
            .collect(),
        GenSpec::ComposedTied { recipe, seed } => {
            let recipe = match recipe {
                Some(r) => r.clone(),
                None => Recipe::random(&mut rng(seed.wrapping_add(0x9e37_79b9)), 1),
            };
            let t = compose_tied_instance(&recipe, *seed)?;
            vec![Generated {
                graph: t.graph,
                pair: Some((t.e1, t.e2)),
            }]
        }
        GenSpec::Gadget { gadget } => {
            let inst = gadget.build();
            vec![Generated {
                graph: inst.graph,
                pair: Some((inst.e1, inst.e2)),
            }]
        }
    })
}

/// Applies a random switch, for tests of switch invariance.
pub fn random_switch(g: &SignedGraph, seed: u64) -> (SignedGraph, SwitchSet) {
    let mut rng = rng(seed);
    let s: SwitchSet = g.vertices().filter(|_| rng.gen_bool(0.5)).collect();
    (g.switch(&s).expect("vertices of g"), s)
}
