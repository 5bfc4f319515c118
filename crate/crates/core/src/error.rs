use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("invalid rank {0}: must be at least 1")]
    InvalidRank(usize),

    #[error("invalid interval [{i},{j}] for rank {n}: need 1 <= i <= j <= n")]
    InvalidInterval { n: usize, i: usize, j: usize },

    #[error("invalid vector {vector:?}: entry a_{index} exceeds bound {bound}")]
    InvalidAVector {
        vector: Vec<usize>,
        index: usize,
        bound: usize,
    },

    #[error("not a bracket vector: violated at i={i}, j={j} ({j} + a_{} > a_{i})", i + j)]
    NotBracketVector { i: usize, j: usize },

    #[error("malformed bracket string: {0}")]
    MalformedBrackets(String),

    #[error("field mismatch: GF({left}) vs GF({right})")]
    FieldMismatch { left: u32, right: u32 },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("morphism does not commute at arrow {arrow} -> {}", arrow + 1)]
    NotCommutative { arrow: usize },

    #[error("morphism is not injective at vertex {vertex}")]
    NotInjective { vertex: usize },

    #[error("morphism is not surjective at vertex {vertex}")]
    NotSurjective { vertex: usize },

    #[error("sequence is not exact at vertex {vertex}")]
    NotExact { vertex: usize },

    #[error("vertex {vertex} out of range for rank {n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("rank {n} exceeds the enumeration bound {bound}")]
    TooLarge { n: usize, bound: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
