use std::collections::BTreeSet;

use crate::graph::Vertex;
use crate::Rational;

/// Errors raised by graph, project and behaviour operations.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("carriers overlap on {0:?}")]
    CarrierOverlap(BTreeSet<Vertex>),
    #[error("carrier mismatch: {left:?} vs {right:?}")]
    CarrierMismatch {
        left: BTreeSet<Vertex>,
        right: BTreeSet<Vertex>,
    },
    #[error("edge weight {0} outside ]0,1]")]
    InvalidWeight(Rational),
    #[error("edge endpoint {0:?} is not a vertex of the graph")]
    UnknownVertex(Vertex),
    #[error("slice graph vertices differ from the carrier")]
    SliceCarrier,
    #[error("execution diverges: the set of alternating paths is infinite")]
    Divergent,
    #[error("truncated circuit enumeration is incomplete; measurement is only a lower bound")]
    InexactMeasure,
    #[error("no value for circuit weight {0} in the measure table")]
    UnmappedWeight(Rational),
    #[error("path is not an alternating cycle")]
    NotACycle,
    #[error("relabelling is not injective or not defined on the carrier")]
    NotInjectiveOnCarrier,
    #[error("scalar must be nonzero")]
    ZeroScalar,
    #[error("both or neither of the side pairings vanish")]
    AmbiguousSide,
    #[error("behaviour has no copolar witnesses")]
    InsufficientWitnesses,
    #[error("decomposition is not equivalent to the original project")]
    DecompositionMismatch,
    #[error("vertex {0:?} outside the relocation domain")]
    DomainViolation(Vertex),
    #[error("atom {0} has no valuation")]
    UnboundAtom(String),
    #[error("ill-formed proof: {0}")]
    IllFormedProof(String),
    #[error("multiplicative units are not behaviours")]
    UnitNotBehaviour,
    #[error("no principal cut to reduce: {0}")]
    NotReducible(String),
    #[error("{line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
