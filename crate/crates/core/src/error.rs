use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid word: {0}")]
    InvalidWord(String),

    #[error("invalid labeling: {0}")]
    InvalidLabeling(String),

    #[error("edge {0} is not an edge of the graph")]
    UnknownEdge(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("search bound {bound} exceeds guard {guard}")]
    GuardExceeded { bound: u128, guard: u128 },

    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid code: {0}")]
    InvalidCode(String),

    #[error("invalid cover: {0}")]
    InvalidCover(String),

    #[error("face twist refused at tile {tile}: edge {edge} has multiplicity 0")]
    TwistRefused { tile: usize, edge: String },

    #[error("tile {0} is out of range")]
    TileOutOfRange(usize),

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("not a distributive lattice: {0}")]
    NotDistributive(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}
