//! Decile income and wealth distributions as polynomial complementary
//! CDFs.
//!
//! National statistics offices publish income and wealth tables as ten
//! decile statistics per country-year. This crate turns such a table into
//! an empirical complementary CDF (percent of population with income at
//! least x, on the fixed grid 100, 90, ..., 10), fits polynomial models to
//! it by least squares, inverts the fitted quadratic back to decile
//! boundaries, generates synthetic populations from the model, and
//! round-trips published coefficient tables through the whole pipeline.
//!
//! The numerically delicate part is that raw abscissae may sit anywhere
//! from 10^3 (euros) to 10^8 (old lire), where a naive Vandermonde system
//! is unusable; see [`fit`] for how standardization removes the problem.

// negated float comparisons keep NaN on the rejecting branch
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod fit;
pub mod ingest;
pub mod rng;
pub mod synth;

pub use error::{FitError, IngestError, SeriesError, SynthError};
pub use fit::{
    back_transform_coefficients, build_cdf, fit_loglog, fit_polynomial,
    invert_decreasing_quadratic, r_squared, reconstruct_series_from_fit, standardize,
    EmpiricalCdf, FitConfig, FitResult, Polynomial, Standardization, Transform, MAX_DEGREE,
    PERCENT_GRID,
};
pub use ingest::{
    parse_cpi_csv, parse_decile_csv, write_decile_csv, CpiSeries, DecileSeries, IncomeKind,
    SeriesMeta, Statistic, CPI_CSV_HEADER, DECILE_CSV_HEADER,
};
pub use rng::{SplitMix64, GENERATOR_ID};
pub use synth::{
    compute_deciles, gini, grid_inversions, roundtrip_check, sample_incomes, RoundtripReport,
    SampleSpec,
};
