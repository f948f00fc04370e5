//! Verdicts and the certificate documents that back them.
//!
//! Certificates refer to vertices and edges of the input graph by their
//! original ids. Edges introduced while reducing across 2-separations are
//! markers with their own ids; a marker always joins the two boundary
//! vertices of the split that created it.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cycle::Cycle;
use crate::graph::{EdgeId, VertexId};
use crate::sign::Sign;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeRef {
    Edge(EdgeId),
    Marker(u32),
}

impl fmt::Display for EdgeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeRef::Edge(e) => write!(f, "e{e}"),
            EdgeRef::Marker(m) => write!(f, "m{m}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Marker {
    pub id: u32,
    pub sign: Sign,
}

/// Vertex signs listed for exactly the vertices touched by the edges the
/// signing is meant to balance.
pub type SigningRecord = Vec<(VertexId, Sign)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertNode {
    pub e1: EdgeRef,
    pub e2: EdgeRef,
    pub step: CertStep,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CertStep {
    /// `e1` and `e2` are parallel; their 2-cycle is the only common cycle.
    ParallelPair,
    /// `e1_side` contains `e1` but not `e2` and meets the remaining edges in
    /// at most one vertex, so no cycle contains both.
    Vacuous { e1_side: Vec<EdgeRef> },
    /// Decided by exhaustive enumeration of the common cycles.
    Enumerated { positive: usize, negative: usize },
    /// A parallel class with both signs plus `e1, e2` is the cut `δ(cut_side)`
    /// and the rest is balanced.
    ParallelCut {
        class: Vec<EdgeRef>,
        cut_side: Vec<VertexId>,
        signing: SigningRecord,
    },
    /// `e1, e2` meet at `vertex` and the graph minus that vertex is balanced.
    CommonVertex { vertex: VertexId, signing: SigningRecord },
    /// The graph minus `e1, e2` is balanced.
    BalancedRemainder { signing: SigningRecord },
    Split {
        boundary: [VertexId; 2],
        side1: Vec<EdgeRef>,
        side2: Vec<EdgeRef>,
        rule: CertRule,
        children: Vec<CertNode>,
    },
}

impl CertStep {
    /// Which structure of the 3-connected characterization a leaf uses.
    pub fn leaf_case(&self) -> Option<u8> {
        match self {
            CertStep::ParallelCut { .. } => Some(1),
            CertStep::CommonVertex { .. } => Some(2),
            CertStep::BalancedRemainder { .. } => Some(3),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "part", rename_all = "snake_case")]
pub enum CertRule {
    /// `e1` and `e2` are on different sides; side `i + 1` is replaced in
    /// child `i` by the positive marker `markers[i]`.
    Disjoint { markers: [Marker; 2] },
    /// Both edges are on the kept side; the replaced side (1 or 2) is
    /// balanced by `signing` and becomes one marker whose sign is the sign
    /// of every boundary-to-boundary path through it.
    BalancedSide {
        replaced: u8,
        marker: Marker,
        signing: SigningRecord,
    },
    /// Both edges are on the kept side; the replaced side contains
    /// `negative_cycle` and becomes a `+`/`-` marker pair.
    UnbalancedSide {
        replaced: u8,
        positive: Marker,
        negative: Marker,
        negative_cycle: Vec<EdgeRef>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TiedCertificate {
    pub tree: CertNode,
    /// A cycle through both edges, exhibiting the common sign.
    pub sample: Option<Cycle>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessPair {
    pub positive: Cycle,
    pub negative: Cycle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    /// Cycles of both signs contain `e1` and `e2`. The witness is absent
    /// only when a search budget ran out while building it.
    Untied { witness: Option<WitnessPair> },
    /// At least one cycle contains both edges and all have the same sign.
    Tied {
        common_sign: Option<Sign>,
        certificate: TiedCertificate,
    },
    /// No cycle contains both edges.
    TiedVacuous { certificate: TiedCertificate },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VerdictKind {
    Untied,
    Tied(Option<Sign>),
    Vacuous,
}

impl Verdict {
    pub fn kind(&self) -> VerdictKind {
        match self {
            Verdict::Untied { .. } => VerdictKind::Untied,
            Verdict::Tied { common_sign, .. } => VerdictKind::Tied(*common_sign),
            Verdict::TiedVacuous { .. } => VerdictKind::Vacuous,
        }
    }

    pub fn is_tied(&self) -> bool {
        !matches!(self, Verdict::Untied { .. })
    }

    pub fn certificate(&self) -> Option<&TiedCertificate> {
        match self {
            Verdict::Untied { .. } => None,
            Verdict::Tied { certificate, .. } | Verdict::TiedVacuous { certificate } => {
                Some(certificate)
            }
        }
    }
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerdictKind::Untied => write!(f, "UNTIED"),
            VerdictKind::Tied(Some(s)) => write!(f, "TIED {s}"),
            VerdictKind::Tied(None) => write!(f, "TIED unknown-sign"),
            VerdictKind::Vacuous => write!(f, "TIED vacuous"),
        }
    }
}

/// On-disk certificate: the verdict plus the edge pair it is about.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub format: String,
    pub version: u32,
    pub e1: EdgeId,
    pub e2: EdgeId,
    #[serde(flatten)]
    pub verdict: Verdict,
}

impl CertificateFile {
    pub const FORMAT: &'static str = "signed-ties-certificate";

    pub fn new(e1: EdgeId, e2: EdgeId, verdict: Verdict) -> Self {
        CertificateFile {
            format: Self::FORMAT.to_string(),
            version: 1,
            e1,
            e2,
            verdict,
        }
    }
}
