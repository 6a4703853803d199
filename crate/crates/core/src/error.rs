use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{count} features requested, at most {max} are supported")]
    TooManyFeatures { count: usize, max: usize },

    #[error("duplicate feature name `{0}`")]
    DuplicateFeature(String),

    #[error("invalid feature name `{0}` (expected [A-Za-z0-9_]+)")]
    InvalidFeatureName(String),

    #[error("unknown feature `{0}`")]
    UnknownFeature(String),

    #[error("feature index {index} is outside a space of {len} features")]
    FeatureOutOfRange { index: usize, len: usize },

    #[error("expected {expected} features, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("assignment mentions feature {0} with both polarities")]
    Inconsistent(usize),

    #[error("truth table must have {expected} entries, got {actual}")]
    TableLength { expected: usize, actual: usize },

    #[error("invalid decimal `{0}`")]
    InvalidDecimal(String),

    #[error("linear model has a tie (weighted sum exactly 0) at table index {0}")]
    LinearTie(u32),

    #[error("background knowledge admits no individual")]
    Unsatisfiable,

    #[error("individual does not satisfy the background knowledge (not a real individual)")]
    NotReal,

    #[error("feature order is not a permutation of the feature set")]
    InvalidOrder,

    #[error("dataset is empty")]
    EmptyDataset,

    #[error("arity {arity} exceeds the number of features ({len})")]
    ArityTooLarge { arity: usize, len: usize },

    #[error("decision process is already biased on the protected feature")]
    AlreadyBiased,

    #[error("proxy witness does not hold against the background knowledge")]
    InvalidWitness,

    #[error("invalid feature partition: {0}")]
    InvalidPartition(String),

    #[error("invalid mapping: {0}")]
    InvalidMapping(String),
}
