//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by state construction, coordinate maps, and solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Squared amplitude moduli do not sum to one.
    #[error("state not normalized: sum of |C_i|^2 is {norm} (must be 1 within {tol})")]
    NotNormalized { norm: f64, tol: f64 },

    /// Amplitude vectors other than dimension 2 or 3 are not supported.
    #[error("unsupported amplitude dimension {n}: only n = 2 and n = 3 are implemented")]
    UnsupportedDimension { n: usize },

    /// A numeric argument fell outside its documented domain.
    #[error("{name} = {value} is outside {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    /// Label and amplitude counts disagree.
    #[error("{labels} basis labels for {amplitudes} amplitudes")]
    LabelMismatch { labels: usize, amplitudes: usize },

    /// A doubling-map step was requested on an already absorbed chain.
    #[error("doubling step applied to an absorbed chain")]
    ChainAlreadyAbsorbed,

    /// Hydrogen evaluator asked for a state outside the supported pair.
    #[error("unsupported hydrogen eigenstate (n={n}, l={l}, m={m}); only (1,0,0) and (2,1,1) are implemented")]
    UnsupportedEigenstate { n: u32, l: u32, m: i32 },

    /// Finite-difference grid too small to pose the boundary value problem.
    #[error("degenerate grid: {detail}")]
    DegenerateGrid { detail: &'static str },

    /// Scenario configuration carries the wrong number of amplitudes.
    #[error("scenario {scenario} expects {expected} amplitudes, got {actual}")]
    ScenarioDimensionMismatch {
        scenario: &'static str,
        expected: usize,
        actual: usize,
    },

    /// Experiment configuration file could not be parsed.
    #[error("config parse error at line {line}: {message}")]
    ConfigParse { line: usize, message: String },

    /// Statistical routine received unusable inputs.
    #[error("invalid statistics input: {detail}")]
    InvalidStatistics { detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
