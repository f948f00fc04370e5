use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, SignedGraph, VertexId};
use crate::sign::Sign;

/// A cycle given by its cyclic edge sequence; `edges[i]` joins `vertices[i]`
/// and `vertices[(i + 1) % len]`. A cycle of length two is a pair of
/// parallel edges.
///
/// Constructors return the canonical rotation: the smallest edge id comes
/// first and the walk continues toward the smaller of its two neighbours.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cycle {
    edges: Vec<EdgeId>,
    vertices: Vec<VertexId>,
}

impl Cycle {
    /// Validates that `edges`, in the given order, form a closed walk with no
    /// repeated vertex.
    pub fn new(g: &SignedGraph, edges: &[EdgeId]) -> Result<Cycle> {
        if edges.len() < 2 {
            return Err(Error::NotACycle(format!("{} edge(s)", edges.len())));
        }
        for &e in edges {
            g.check_edge(e)?;
        }
        let first = g.edges()[edges[0].0];
        let mut last_error = None;
        for start in [first.u, first.v] {
            match walk(g, start, edges) {
                Ok(vertices) => {
                    return Ok(Cycle {
                        edges: edges.to_vec(),
                        vertices,
                    }
                    .canonical())
                }
                Err(e) => last_error = Some(e),
            }
        }
        Err(last_error.expect("two attempts"))
    }

    /// Orders an unordered edge set into a cycle. Fails unless every touched
    /// vertex has degree exactly two in the set and the set is connected.
    pub fn from_edge_set(g: &SignedGraph, edges: &[EdgeId]) -> Result<Cycle> {
        let set: BTreeSet<EdgeId> = edges.iter().copied().collect();
        if set.len() != edges.len() {
            return Err(Error::NotACycle("repeated edge".into()));
        }
        if set.len() < 2 {
            return Err(Error::NotACycle(format!("{} edge(s)", set.len())));
        }
        let mut incident: BTreeMap<VertexId, Vec<EdgeId>> = BTreeMap::new();
        for &e in &set {
            let edge = g.edge(e)?;
            incident.entry(edge.u).or_default().push(e);
            incident.entry(edge.v).or_default().push(e);
        }
        if let Some((v, es)) = incident.iter().find(|(_, es)| es.len() != 2) {
            return Err(Error::NotACycle(format!(
                "vertex {v} has degree {} in the edge set",
                es.len()
            )));
        }
        let start = *set.iter().next().expect("nonempty");
        let mut ordered = vec![start];
        let (mut at, _) = g.endpoints(start);
        let mut prev = start;
        loop {
            let pair = &incident[&at];
            let next = if pair[0] == prev { pair[1] } else { pair[0] };
            if next == start {
                break;
            }
            ordered.push(next);
            at = g.edges()[next.0].other(at);
            prev = next;
        }
        if ordered.len() != set.len() {
            return Err(Error::NotACycle("edge set is a union of several cycles".into()));
        }
        // The walk left `start` through its endpoint `u`, so the sequence is
        // a traversal beginning at `start.v`.
        Cycle::new(g, &ordered)
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        self.edges.contains(&e)
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    pub fn edge_set(&self) -> BTreeSet<EdgeId> {
        self.edges.iter().copied().collect()
    }

    /// Sign under `g`'s signature. The cycle is assumed to belong to `g`; use
    /// [`cycle_sign`] to validate first.
    pub fn sign(&self, g: &SignedGraph) -> Sign {
        g.sign_of(&self.edges)
    }

    /// Re-checks the stored vertex sequence against `g`. Used on cycles that
    /// were deserialized or otherwise not built by a constructor.
    pub fn validate(&self, g: &SignedGraph) -> Result<()> {
        if self.edges.len() < 2 || self.edges.len() != self.vertices.len() {
            return Err(Error::NotACycle(format!(
                "{} edges but {} vertices",
                self.edges.len(),
                self.vertices.len()
            )));
        }
        for &e in &self.edges {
            g.check_edge(e)?;
        }
        let vertices = walk(g, self.vertices[0], &self.edges)?;
        if vertices != self.vertices {
            return Err(Error::NotACycle(
                "vertex sequence does not match the edges".into(),
            ));
        }
        Ok(())
    }

    fn canonical(self) -> Cycle {
        let k = self.edges.len();
        let (pos, _) = self
            .edges
            .iter()
            .enumerate()
            .min_by_key(|(_, e)| **e)
            .expect("nonempty");
        let forward = self.edges[(pos + 1) % k] <= self.edges[(pos + k - 1) % k];
        let mut edges = Vec::with_capacity(k);
        let mut vertices = Vec::with_capacity(k);
        if forward {
            for i in 0..k {
                edges.push(self.edges[(pos + i) % k]);
                vertices.push(self.vertices[(pos + i) % k]);
            }
        } else {
            // Reversed traversal: edge j joins vertices[j] and vertices[j+1],
            // so walking backwards from edge `pos` starts at vertices[pos+1].
            for i in 0..k {
                edges.push(self.edges[(pos + k - i) % k]);
                vertices.push(self.vertices[(pos + k - i + 1) % k]);
            }
        }
        if k == 2 {
            // both edges join the same pair, so either vertex may lead
            vertices.sort();
        }
        Cycle { edges, vertices }
    }
}

fn walk(g: &SignedGraph, start: VertexId, edges: &[EdgeId]) -> Result<Vec<VertexId>> {
    let mut vertices = Vec::with_capacity(edges.len());
    let mut seen = BTreeSet::new();
    let mut used = BTreeSet::new();
    let mut at = start;
    for &e in edges {
        let edge = g.edge(e)?;
        if !used.insert(e) {
            return Err(Error::NotACycle(format!("edge {e} repeated")));
        }
        if !edge.is_incident(at) {
            return Err(Error::NotACycle(format!(
                "edge {e} is not incident with vertex {at}"
            )));
        }
        if !seen.insert(at) {
            return Err(Error::NotACycle(format!("vertex {at} repeated")));
        }
        vertices.push(at);
        at = edge.other(at);
    }
    if at != start {
        return Err(Error::NotACycle("walk is not closed".into()));
    }
    Ok(vertices)
}

/// Validates `edges` as a cycle of `g` and returns its sign.
pub fn cycle_sign(g: &SignedGraph, c: &Cycle) -> Result<Sign> {
    c.validate(g)?;
    Ok(c.sign(g))
}

/// A simple path with its sign. `edges[i]` joins `vertices[i]` and
/// `vertices[i + 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedPath {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
    pub sign: Sign,
}

impl SignedPath {
    pub fn start(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn end(&self) -> VertexId {
        *self.vertices.last().expect("nonempty path")
    }
}
