use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid alphabet: {0}")]
    Alphabet(String),
    #[error("unknown symbol '{0}'")]
    UnknownSymbol(char),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("generator index {generator} is outside an alphabet of rank {rank}")]
    AlphabetMismatch { generator: usize, rank: usize },
    #[error("vertex {vertex} is out of range for a graph with {count} vertices")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("tuple lengths differ ({0} vs {1})")]
    TupleLength(usize, usize),
    #[error("expected a nontrivial word")]
    TrivialWord,
    #[error("not a basis: {0}")]
    NotABasis(String),
    #[error("the given words do not generate the free group")]
    DoesNotGenerate,
    #[error("factor ranks {rank_a} + {rank_b} (from {listed} listed words) do not add up to {rank}")]
    RankMismatch {
        rank_a: usize,
        rank_b: usize,
        listed: usize,
        rank: usize,
    },
    #[error("both factors of a proper splitting need at least one generator")]
    ImproperSplitting,
    #[error("the chosen factors intersect trivially")]
    TrivialIntersection,
    #[error("a free group of rank {0} has no proper free splitting to bound against")]
    RankTooSmall(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
