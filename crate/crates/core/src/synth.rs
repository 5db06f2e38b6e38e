//! Synthetic populations from a fitted model: inverse-transform sampling,
//! decile recomputation, inequality summaries, and the coefficient
//! round-trip check.

use crate::error::SynthError;
use crate::fit::{
    build_cdf, fit_polynomial, invert_decreasing_quadratic, reconstruct_series_from_fit,
    FitConfig, Polynomial, PERCENT_GRID,
};
use crate::ingest::{DecileSeries, IncomeKind, SeriesMeta, Statistic};
use crate::rng::SplitMix64;

/// How to draw a synthetic population from a fitted quadratic.
///
/// Levels are drawn uniformly on the percent band `[p_low, p_high]` and
/// mapped through the inverted model. The default band [10, 100] is the
/// range the decile data actually covers; the fitted parabola is not
/// monotone past its vertex, so the band never extends below 10.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleSpec {
    pub n: usize,
    pub seed: u64,
    pub p_low: f64,
    pub p_high: f64,
}

impl SampleSpec {
    /// Spec with the default band [10, 100].
    pub fn new(n: usize, seed: u64) -> Result<SampleSpec, SynthError> {
        SampleSpec::with_band(n, seed, 10.0, 100.0)
    }

    pub fn with_band(n: usize, seed: u64, p_low: f64, p_high: f64) -> Result<SampleSpec, SynthError> {
        if n == 0 {
            return Err(SynthError::EmptySample);
        }
        if !(p_low >= 10.0 && p_low <= p_high) || !p_high.is_finite() {
            return Err(SynthError::BadBand { p_low, p_high });
        }
        Ok(SampleSpec {
            n,
            seed,
            p_low,
            p_high,
        })
    }
}

/// Draws `spec.n` incomes by inverse-transform sampling of the quadratic
/// model. Identical specs produce bit-identical output.
pub fn sample_incomes(poly: &Polynomial, spec: &SampleSpec) -> Result<Vec<f64>, SynthError> {
    // Fail fast when the band edges are outside the invertible domain;
    // the discriminant grows with p, so p_low is the binding edge.
    invert_decreasing_quadratic(poly, spec.p_low)?;
    invert_decreasing_quadratic(poly, spec.p_high)?;

    let span = spec.p_high - spec.p_low;
    let mut rng = SplitMix64::new(spec.seed);
    let mut out = Vec::with_capacity(spec.n);
    for _ in 0..spec.n {
        let u = spec.p_low + span * rng.next_f64();
        out.push(invert_decreasing_quadratic(poly, u)?);
    }
    Ok(out)
}

/// Recomputes decile statistics from raw incomes.
///
/// Incomes are sorted ascending and split into ten consecutive blocks
/// (block k covers indices `floor(k n / 10) .. floor((k+1) n / 10)`).
/// Returns the mean-income series and the upper-limit series; ties that
/// break strict monotonicity of either output are reported, not silently
/// accepted.
pub fn compute_deciles(
    incomes: &[f64],
    meta: &SeriesMeta,
) -> Result<(DecileSeries, DecileSeries), SynthError> {
    let n = incomes.len();
    if n < 10 {
        return Err(SynthError::TooFewIncomes { got: n });
    }
    for (index, v) in incomes.iter().enumerate() {
        if !v.is_finite() {
            return Err(SynthError::NotFinite { index });
        }
    }
    let mut sorted = incomes.to_vec();
    sorted.sort_unstable_by(f64::total_cmp);

    let mut means = [0.0; 10];
    let mut uppers = [0.0; 10];
    for k in 0..10 {
        let lo = k * n / 10;
        let hi = (k + 1) * n / 10;
        let block = &sorted[lo..hi];
        means[k] = block.iter().sum::<f64>() / block.len() as f64;
        uppers[k] = block[block.len() - 1];
    }

    let mean_series = DecileSeries::new(
        SeriesMeta {
            statistic: Statistic::MeanIncome,
            ..meta.clone()
        },
        &means,
    )
    .map_err(|source| SynthError::DegenerateDeciles {
        statistic: "mean-income",
        source,
    })?;
    let upper_series = DecileSeries::new(
        SeriesMeta {
            statistic: Statistic::UpperLimit,
            ..meta.clone()
        },
        &uppers,
    )
    .map_err(|source| SynthError::DegenerateDeciles {
        statistic: "upper-limit",
        source,
    })?;
    Ok((mean_series, upper_series))
}

/// Gini coefficient, `G = sum_ij |x_i - x_j| / (2 n^2 mu)`.
///
/// Computed through the sorted-rank identity
/// `G = (2 sum_i i x_(i) - (n+1) sum_i x_i) / (n sum_i x_i)`, which is
/// O(n log n) and agrees with the pairwise definition to rounding.
/// Meaningful on nonnegative data; errors when the mean is not positive.
pub fn gini(incomes: &[f64]) -> Result<f64, SynthError> {
    if incomes.is_empty() {
        return Err(SynthError::EmptyIncomes);
    }
    let n = incomes.len() as f64;
    let total: f64 = incomes.iter().sum();
    let mean = total / n;
    if !(mean > 0.0) {
        return Err(SynthError::NonPositiveMean { mean });
    }
    let mut sorted = incomes.to_vec();
    sorted.sort_unstable_by(f64::total_cmp);
    if sorted[0] == sorted[sorted.len() - 1] {
        return Ok(0.0); // perfect equality, exactly
    }
    let weighted: f64 = sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| (i as f64 + 1.0) * x)
        .sum();
    let g = (2.0 * weighted - (n + 1.0) * total) / (n * total);
    Ok(g.max(0.0))
}

/// Outcome of one coefficient round-trip.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoundtripReport {
    pub max_coeff_rel_err: f64,
    pub refit_r_squared: f64,
    pub pass: bool,
}

/// Inverts `poly` to its synthetic decile series, refits a quadratic, and
/// compares the recovered coefficients against the input.
pub fn roundtrip_check(poly: &Polynomial, tolerance: f64) -> Result<RoundtripReport, SynthError> {
    let meta = SeriesMeta {
        country: "roundtrip".into(),
        year: 0,
        currency: String::new(),
        statistic: Statistic::UpperLimit,
        income_kind: IncomeKind::Disposable,
    };
    let series = reconstruct_series_from_fit(poly, meta)?;
    let cdf = build_cdf(&series);
    let refit = fit_polynomial(&cdf, &FitConfig::with_degree(2))?;

    let mut max_rel = 0.0_f64;
    for (got, want) in refit.poly.coeffs().iter().zip(poly.coeffs()) {
        let denom = want.abs().max(f64::MIN_POSITIVE);
        max_rel = max_rel.max((got - want).abs() / denom);
    }
    Ok(RoundtripReport {
        max_coeff_rel_err: max_rel,
        refit_r_squared: refit.r_squared,
        pass: max_rel <= tolerance,
    })
}

/// Grid inversion values of a quadratic, `x(p)` for p = 100, 90, ..., 10.
pub fn grid_inversions(poly: &Polynomial) -> Result<[f64; 10], SynthError> {
    let mut out = [0.0; 10];
    for (slot, p) in out.iter_mut().zip(PERCENT_GRID) {
        *slot = invert_decreasing_quadratic(poly, p)?;
    }
    Ok(out)
}
