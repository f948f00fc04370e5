//! Signed graphs and the question of whether two edges are tied: whether
//! every cycle through both has the same sign.
//!
//! [`decide_tied`] answers with a [`Verdict`] that carries either two
//! witness cycles of opposite sign or a certificate that
//! [`verify_certificate`] checks independently. [`oracle_tied`] is the
//! exhaustive reference answer.

pub mod balance;
pub mod connectivity;
pub mod cycle;
pub mod decide;
pub mod error;
pub mod gadget;
pub mod gen;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod sign;
pub mod verdict;
pub mod verify;

pub use balance::{is_balanced, BalanceResult, VertexSigning};
pub use cycle::{cycle_sign, Cycle, SignedPath};
pub use decide::{decide_tied, decide_tied_with, DecideOptions};
pub use error::{Error, Result};
pub use graph::{Edge, EdgeId, SignedGraph, SwitchSet, VertexId};
pub use oracle::{enumerate_common_cycles, oracle_tied, CommonCycleReport};
pub use sign::Sign;
pub use verdict::{CertificateFile, TiedCertificate, Verdict, VerdictKind, WitnessPair};
pub use verify::verify_certificate;
