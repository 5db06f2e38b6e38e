//! Error types for ingestion, fitting, and synthesis.

use thiserror::Error;

/// Errors produced while parsing or validating decile and CPI data.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum IngestError {
    #[error("line {line}: expected header `{expected}`, found `{found}`")]
    HeaderMismatch {
        line: usize,
        expected: &'static str,
        found: String,
    },

    #[error("line {line}: expected {expected} fields, found {found}")]
    FieldCount {
        line: usize,
        expected: usize,
        found: usize,
    },

    #[error("line {line}: field `{field}`: cannot parse `{value}` as a number")]
    BadNumber {
        line: usize,
        field: &'static str,
        value: String,
    },

    #[error("line {line}: field `{field}`: unknown token `{value}`")]
    UnknownToken {
        line: usize,
        field: &'static str,
        value: String,
    },

    #[error("line {line}: {source}")]
    InvalidSeries { line: usize, source: SeriesError },

    #[error("line {line}: CPI index for year {year} must be positive, got {value}")]
    NonPositiveIndex { line: usize, year: i32, value: f64 },

    #[error("duplicate CPI entry for year {year} on line {line}")]
    DuplicateYear { line: usize, year: i32 },

    #[error("base year {base_year} missing from the CPI series")]
    MissingBaseYear { base_year: i32 },

    #[error("year {year} missing from the CPI series")]
    MissingYear { year: i32 },
}

/// Invariant violations on a decile series.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SeriesError {
    #[error("expected exactly 10 decile values, got {found}")]
    WrongCount { found: usize },

    #[error("decile values must be strictly increasing, but d{} >= d{}", index + 1, index + 2)]
    NotIncreasing { index: usize },

    #[error("decile value d{} is not finite", index + 1)]
    NotFinite { index: usize },
}

/// Errors from CDF construction, fitting, and model inversion.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FitError {
    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error("abscissae must be strictly increasing at index {index}")]
    NotIncreasing { index: usize },

    #[error("point {index} is not finite")]
    NotFinite { index: usize },

    #[error("polynomial degree {degree} is outside the supported range 1..=5")]
    DegreeRange { degree: usize },

    #[error("polynomial must have 1..=6 finite coefficients")]
    BadCoefficients,

    #[error("cannot standardize: all abscissae are equal")]
    ZeroScale,

    #[error("normal system is singular at degree {degree}")]
    Singular { degree: usize },

    #[error("log-log transform requires positive values, got {value} at index {index}")]
    NonPositive { index: usize, value: f64 },

    #[error("observed and fitted sequences have different lengths ({observed} vs {fitted})")]
    LengthMismatch { observed: usize, fitted: usize },

    #[error("observed data is constant but the fit is not exact (ss_res = {ss_res})")]
    ConstantObserved { ss_res: f64 },

    #[error("expected a degree-2 polynomial, got degree {degree}")]
    NotQuadratic { degree: usize },

    #[error("quadratic is degenerate (both leading coefficients vanish); cannot invert")]
    DegenerateQuadratic,

    #[error("no real solution at p = {p}: discriminant {discriminant} < 0")]
    NegativeDiscriminant { p: f64, discriminant: f64 },

    #[error("reconstruction failed at p = {p}: {source}")]
    ReconstructAt { p: f64, source: Box<FitError> },

    #[error("reconstructed series is invalid: {source}")]
    ReconstructInvalid { source: SeriesError },
}

/// Errors from sampling, decile recomputation, and inequality summaries.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SynthError {
    #[error("sample count must be at least 1")]
    EmptySample,

    #[error("sampling band [{p_low}, {p_high}] is invalid: need 10 <= p_low <= p_high")]
    BadBand { p_low: f64, p_high: f64 },

    #[error(transparent)]
    Fit(#[from] FitError),

    #[error("need at least 10 incomes to form deciles, got {got}")]
    TooFewIncomes { got: usize },

    #[error("income {index} is not finite")]
    NotFinite { index: usize },

    #[error("{statistic} deciles are not strictly increasing: {source}")]
    DegenerateDeciles {
        statistic: &'static str,
        source: SeriesError,
    },

    #[error("gini is undefined on an empty sequence")]
    EmptyIncomes,

    #[error("gini requires a positive mean, got {mean}")]
    NonPositiveMean { mean: f64 },
}
