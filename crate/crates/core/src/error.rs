use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid prime {0}: {1}")]
    InvalidPrime(u32, &'static str),

    #[error("invalid simplicial set: {0}")]
    InvalidSimplicialSet(String),

    #[error("invalid simplicial morphism: {0}")]
    InvalidMorphism(String),

    #[error("invalid chain map: {0}")]
    InvalidChainMap(String),

    #[error("malformed space document: {0}")]
    Document(String),

    #[error("complex is only built through degree {built}, but degree {needed} is required (raise the cap)")]
    Truncated { built: usize, needed: usize },

    #[error("resource guard: {what} has {size} basis elements, limit is {limit} (raise the limit or STEENROD_PRODUCT_LIMIT)")]
    ResourceGuard {
        what: String,
        size: usize,
        limit: usize,
    },

    #[error("invalid class: {0}")]
    InvalidClass(String),

    #[error("degree {0} exceeds the maximal supported simplex dimension")]
    DimensionTooLarge(usize),

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
