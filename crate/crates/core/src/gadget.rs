//! The three small untied configurations: hat, target and hedgehog.
//!
//! Each has a distinguished negative cycle `C` and two distinguished edges
//! off `C`. Signatures are canonical: the first edge of `C` is negative and
//! every other edge is positive.

use serde::{Deserialize, Serialize};

use crate::cycle::Cycle;
use crate::graph::{EdgeId, SignedGraph};
use crate::sign::Sign::{self, Negative as N, Positive as P};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetInstance {
    pub graph: SignedGraph,
    pub e1: EdgeId,
    pub e2: EdgeId,
    pub distinguished_cycle: Cycle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Gadget {
    Hat,
    Target,
    Hedgehog,
}

impl Gadget {
    pub const ALL: [Gadget; 3] = [Gadget::Hat, Gadget::Target, Gadget::Hedgehog];

    pub fn build(self) -> GadgetInstance {
        match self {
            Gadget::Hat => build_hat(),
            Gadget::Target => build_target(),
            Gadget::Hedgehog => build_hedgehog(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Gadget::Hat => "hat",
            Gadget::Target => "target",
            Gadget::Hedgehog => "hedgehog",
        }
    }
}

impl std::str::FromStr for Gadget {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Gadget::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| format!("unknown gadget {s:?} (hat, target, hedgehog)"))
    }
}

fn assemble(n: usize, edges: &[(usize, usize, Sign)], cycle: &[usize], e1: usize, e2: usize) -> GadgetInstance {
    let graph = SignedGraph::from_edges(n, edges.iter().copied()).expect("static gadget");
    let cycle_edges: Vec<EdgeId> = cycle.iter().map(|&e| EdgeId(e)).collect();
    let distinguished_cycle = Cycle::from_edge_set(&graph, &cycle_edges).expect("static gadget");
    GadgetInstance {
        graph,
        e1: EdgeId(e1),
        e2: EdgeId(e2),
        distinguished_cycle,
    }
}

/// Vertices `x1 = 0`, `x2 = 1`, `y = 2`. Edges 0 and 1 are the `+`/`-`
/// pair on `x1 x2`; `e1 = x1 y` is edge 2 and `e2 = x2 y` is edge 3.
pub fn build_hat() -> GadgetInstance {
    assemble(3, &[(0, 1, P), (0, 1, N), (0, 2, P), (1, 2, P)], &[0, 1], 2, 3)
}

/// Rim `x1 x2 x3 x4` on vertices 0..4 (edges 0..4, edge 0 negative) with
/// chords `e1 = x1 x3` (edge 4) and `e2 = x2 x4` (edge 5).
pub fn build_target() -> GadgetInstance {
    assemble(
        4,
        &[(0, 1, N), (1, 2, P), (2, 3, P), (3, 0, P), (0, 2, P), (1, 3, P)],
        &[0, 1, 2, 3],
        4,
        5,
    )
}

/// Triangle `x1 x2 x3` on vertices 0..3 (edges 0..3, edge 0 negative);
/// `y1 = 3` and `y2 = 4` are joined to every `x`. `e1 = x1 y1` is edge 3
/// and `e2 = x2 y2` is edge 7.
pub fn build_hedgehog() -> GadgetInstance {
    assemble(
        5,
        &[
            (0, 1, N),
            (1, 2, P),
            (2, 0, P),
            (0, 3, P),
            (1, 3, P),
            (2, 3, P),
            (0, 4, P),
            (1, 4, P),
            (2, 4, P),
        ],
        &[0, 1, 2],
        3,
        7,
    )
}
