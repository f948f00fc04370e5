//! When three edges of a simple 3-connected graph lie on a common cycle.

use crate::connectivity::{is_3_connected, is_connected};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, SignedGraph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NoCycleReason {
    /// All three edges meet at this vertex.
    CommonVertex(VertexId),
    /// Deleting the three edges disconnects the graph.
    Disconnecting,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LovaszOutcome {
    CycleExists,
    NoCycle(NoCycleReason),
}

pub fn lovasz_three_edges(
    g: &SignedGraph,
    e1: EdgeId,
    e2: EdgeId,
    e3: EdgeId,
) -> Result<LovaszOutcome> {
    for e in [e1, e2, e3] {
        g.check_edge(e)?;
    }
    if e1 == e2 || e1 == e3 || e2 == e3 {
        return Err(Error::PreconditionViolated("the three edges must be distinct".into()));
    }
    if !g.is_simple() {
        return Err(Error::PreconditionViolated("graph is not simple".into()));
    }
    if !is_3_connected(g) {
        return Err(Error::PreconditionViolated("graph is not 3-connected".into()));
    }
    let (a, b) = g.endpoints(e1);
    for x in [a, b] {
        if g.edges()[e2.0].is_incident(x) && g.edges()[e3.0].is_incident(x) {
            return Ok(LovaszOutcome::NoCycle(NoCycleReason::CommonVertex(x)));
        }
    }
    let (rest, _) = g.retain_edges(|e| e != e1 && e != e2 && e != e3);
    if !is_connected(&rest) {
        return Ok(LovaszOutcome::NoCycle(NoCycleReason::Disconnecting));
    }
    Ok(LovaszOutcome::CycleExists)
}
