//! Machine-readable report documents.
//!
//! Reports keep the descending P1/P2/P3 coefficient naming used by the
//! published tables; the library's ascending order exists only internally.
//! Serialized values use the shortest round-trippable decimal form, so a
//! report parsed back yields bitwise-identical numbers.

use decilefit::{FitResult, SeriesMeta};
use serde::{Deserialize, Serialize};

/// One named coefficient; `P1` is the highest power.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedCoefficient {
    pub name: String,
    pub value: f64,
}

/// Per-series fit report, one JSON document per line of the report file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    pub country: String,
    pub year: i32,
    pub currency: String,
    pub statistic: String,
    pub income_kind: String,
    pub degree: usize,
    pub transform: String,
    pub coefficients: Vec<NamedCoefficient>,
    /// R² in percent, rounded to two decimals like the published tables.
    pub r2_percent: f64,
    /// Full-precision R² as a fraction.
    pub r_squared: f64,
    pub residuals: Vec<f64>,
    pub x_mean: f64,
    pub x_scale: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub generator: Option<String>,
}

impl FitReport {
    pub fn new(meta: &SeriesMeta, fit: &FitResult) -> FitReport {
        let coeffs = fit.poly.coeffs();
        let coefficients = coeffs
            .iter()
            .rev()
            .enumerate()
            .map(|(i, &value)| NamedCoefficient {
                name: format!("P{}", i + 1),
                value,
            })
            .collect();
        FitReport {
            country: meta.country.clone(),
            year: meta.year,
            currency: meta.currency.clone(),
            statistic: meta.statistic.as_str().to_string(),
            income_kind: meta.income_kind.as_str().to_string(),
            degree: fit.poly.degree(),
            transform: fit.transform.as_str().to_string(),
            coefficients,
            r2_percent: round2(fit.r_squared * 100.0),
            r_squared: fit.r_squared,
            residuals: fit.residuals.clone(),
            x_mean: fit.standardization.x_mean,
            x_scale: fit.standardization.x_scale,
            generator: None,
        }
    }

    /// Coefficient value by its P-name, if present.
    pub fn coefficient(&self, name: &str) -> Option<f64> {
        self.coefficients
            .iter()
            .find(|c| c.name == name)
            .map(|c| c.value)
    }
}

/// Companion report written next to a sampled population.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleReport {
    pub generator: String,
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
    pub n: usize,
    pub seed: u64,
    pub p_low: f64,
    pub p_high: f64,
    pub gini: Option<f64>,
    pub mean_deciles: Vec<f64>,
    pub upper_deciles: Vec<f64>,
}

pub fn round2(value: f64) -> f64 {
    (value * 100.0).round() / 100.0
}
