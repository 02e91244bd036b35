use thiserror::Error;

use crate::composition::Composition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{fine} is not a refinement of {coarse}")]
    NotARefinement { fine: Composition, coarse: Composition },

    #[error("basis mismatch: expected {expected}, found {found}")]
    BasisMismatch { expected: String, found: String },

    #[error("element is not homogeneous of degree {expected}")]
    DegreeMismatch { expected: usize },

    #[error("functional is not invertible: its value at the empty composition is zero")]
    NotInvertible,

    #[error("functional must vanish at the empty composition")]
    NonvanishingAtEmpty,

    #[error("functional must take the value 1 at the empty composition")]
    WrongValueAtEmpty,

    #[error("{0} is not a partition (parts must be weakly decreasing)")]
    NotAPartition(Composition),

    #[error("singular: value at ({n}) is zero")]
    SingularCharacter { n: u32 },

    #[error("not normalized: value at ({n}) is not 1")]
    NotNormalized { n: u32 },

    #[error("prefix sum vanishes on {prefix}")]
    ZeroPrefixSum { prefix: Composition },

    #[error("no closed form for the even-odd g at even size {size}")]
    EvenSizeUnsupported { size: usize },

    #[error("not a character: {0}")]
    NotACharacter(String),

    #[error("not an infinitesimal character: {0}")]
    NotAnInfinitesimalCharacter(String),

    #[error("not a shuffle character: {0}")]
    NotAShuffleCharacter(String),

    #[error("degree {degree} exceeds the declared bound {bound} of the order")]
    BoundExceeded { bound: u32, degree: usize },

    #[error("degree {degree} exceeds the hard cap {cap}")]
    DegreeCap { degree: usize, cap: usize },

    #[error("invalid order: {0}")]
    InvalidOrder(String),

    #[error("invalid poset: {0}")]
    InvalidPoset(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("unknown basis `{name}`; known bases: {known}")]
    UnknownBasis { name: String, known: String },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
