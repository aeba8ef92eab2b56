use thiserror::Error;

/// Errors produced by any repset operation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("non-finite coordinate at point {index}")]
    NonFiniteCoordinate { index: usize },

    #[error("zero-norm vector at point {index} is not valid under cosine distance")]
    ZeroNorm { index: usize },

    #[error("zero-norm vector is not valid under cosine distance")]
    ZeroNormVector,

    #[error("duplicate point id `{id}`")]
    DuplicateId { id: String },

    #[error("empty point set")]
    EmptyPointSet,

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("selection is empty")]
    EmptySelection,

    #[error("selection needs at least {needed} indices, got {got}")]
    TooFewIndices { needed: usize, got: usize },

    #[error("index {index} out of bounds for {len} points")]
    IndexOutOfBounds { index: usize, len: usize },

    #[error("duplicate index {index} in selection")]
    DuplicateIndex { index: usize },

    #[error("subset size {n} out of range 1..={max}")]
    SubsetSizeOutOfRange { n: usize, max: usize },

    #[error("enumeration budget exceeded: C({n_points},{subset}) = {combinations} > {budget}")]
    EnumerationBudgetExceeded {
        n_points: usize,
        subset: usize,
        combinations: u128,
        budget: u64,
    },

    #[error("budget {budget} is below the class count {classes}")]
    BudgetBelowClassCount { budget: usize, classes: usize },

    #[error("invalid threshold {thresh}: must lie in (0, 1]")]
    InvalidThreshold { thresh: f64 },

    #[error("perplexity {perplexity} must lie in (0, {n}) for {n} points")]
    InvalidPerplexity { perplexity: f64, n: usize },

    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error("tsplib: missing {key} header")]
    TspMissingHeader { key: &'static str },

    #[error("tsplib line {line}: invalid {key} value `{value}`")]
    TspInvalidHeader {
        key: &'static str,
        line: usize,
        value: String,
    },

    #[error("tsplib: unsupported EDGE_WEIGHT_TYPE `{found}` (only EUC_2D is supported)")]
    TspUnsupportedEdgeWeightType { found: String },

    #[error("tsplib line {line}: malformed node line `{content}`")]
    TspMalformedNodeLine { line: usize, content: String },

    #[error("tsplib line {line}: duplicate node index {index}")]
    TspDuplicateNode { line: usize, index: usize },

    #[error("tsplib: DIMENSION is {expected} but the file has {found} node lines")]
    TspDimensionMismatch { expected: usize, found: usize },

    #[error("tsplib: node indices are not contiguous 1..={expected}")]
    TspNonContiguousIndices { expected: usize },

    #[error("empty input")]
    EmptyInput,
}

pub type Result<T> = std::result::Result<T, Error>;
