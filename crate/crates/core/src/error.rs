use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero divisor")]
    ZeroDivisor,

    #[error("resultant of the zero polynomial is undefined")]
    ZeroResultantInput,

    #[error("non-invertible series (constant term {constant})")]
    NonInvertibleSeries { constant: String },

    #[error("series_{op} requires constant term {required}, got {constant}")]
    SeriesDomain {
        op: &'static str,
        required: &'static str,
        constant: String,
    },

    #[error("series order {have} is below the required order {need}")]
    SeriesOrderTooSmall { have: usize, need: usize },

    #[error("below stable variable count: m = {m} < d = {d}")]
    BelowStableVariableCount { m: usize, d: usize },

    #[error("input is not symmetric: {0}")]
    NotSymmetric(String),

    #[error("level n = {n} is below the minimum {min}")]
    LevelTooSmall { n: u64, min: u64 },

    #[error("product factor not unit-normalized: constant term is {constant}")]
    NotUnitNormalized { constant: String },

    #[error("below stable threshold: n = {n} < n_star = {n_star}; use oracle_eval")]
    BelowStableThreshold { n: u64, n_star: u64 },

    #[error("eventual polynomiality applies to the polynomial case only")]
    ProductsPresent,

    #[error("outside the truncation range: need n > R, got n = {n}, R = {r}")]
    TruncationRange { n: u64, r: usize },

    #[error("h_r stable formula requires r >= 2, got r = {0}")]
    HStableIndex(u64),

    #[error("internal consistency violated: {0}")]
    Internal(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("semantic error: {0}")]
    Semantic(String),
}
