use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension n = {n} is below the minimum {min}")]
    Dimension { n: usize, min: usize },

    #[error("invalid inner products a = {a}, b = {b}: need -1 <= b < a < 1")]
    InnerProducts { a: f64, b: f64 },

    #[error("candidate index {0} is outside 1..=5")]
    CandidateIndex(usize),

    #[error("k = {k} is outside 2..={k_max} for n = {n} (K~({n}) = {k_max})")]
    SliceIndex { n: usize, k: usize, k_max: usize },

    #[error("a = {a} lies outside the closed interval [{lo}, {hi}]")]
    OutOfInterval { a: f64, lo: f64, hi: f64 },

    #[error("empty dimension range {n_min}..={n_max}")]
    EmptyRange { n_min: usize, n_max: usize },

    #[error("need at least {min} samples, got {got}")]
    Samples { min: usize, got: usize },

    #[error("point {index} has {len} coordinates, expected {n}")]
    PointDimension { index: usize, len: usize, n: usize },

    #[error("point {index} has squared norm {norm_sq}, expected 1")]
    NotUnit { index: usize, norm_sq: f64 },

    #[error("hypothesis violated: a + b = {sum} is negative")]
    HypothesisViolated { sum: f64 },
}
