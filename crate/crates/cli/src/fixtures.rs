//! Published coefficient fixtures and the five reference figure datasets.
//!
//! The shipped CSV carries every coefficient row of the source tables;
//! rows whose parabola bottoms out above p = 10 are kept as comments
//! because the full percent grid cannot be inverted for them (see the
//! file itself for the per-row vertex minima).

use anyhow::{bail, Context, Result};
use decilefit::{FitError, Polynomial};

/// Exact header of a fixture CSV file.
pub const FIXTURE_CSV_HEADER: &str = "dataset,year,currency,p1,p2,p3,r2_percent";

/// The fixture table shipped with the crate.
pub const EMBEDDED_FIXTURES: &str = include_str!("../fixtures/published_coefficients.csv");

/// One published coefficient row: quadratic `p1 x^2 + p2 x + p3` with its
/// printed determination score in percent.
#[derive(Debug, Clone, PartialEq)]
pub struct FixtureRow {
    pub dataset: String,
    pub year: i32,
    pub currency: String,
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
    pub r2_percent: f64,
}

impl FixtureRow {
    pub fn poly(&self) -> Result<Polynomial, FitError> {
        Polynomial::quadratic(self.p1, self.p2, self.p3)
    }

    fn check_invariants(&self, line: usize) -> Result<()> {
        let name = format!("{} {}", self.dataset, self.year);
        if !(self.p1 > 0.0) {
            bail!("line {line}: row {name}: p1 must be positive, got {}", self.p1);
        }
        if !(self.p2 < 0.0) {
            bail!("line {line}: row {name}: p2 must be negative, got {}", self.p2);
        }
        if !(self.p3 > 0.0) {
            bail!("line {line}: row {name}: p3 must be positive, got {}", self.p3);
        }
        if !(self.r2_percent > 90.0 && self.r2_percent <= 100.0) {
            bail!(
                "line {line}: row {name}: r2_percent must be in (90, 100], got {}",
                self.r2_percent
            );
        }
        Ok(())
    }
}

/// Parses a fixture CSV. Lines starting with `#` and blank lines are
/// comments; every data row must satisfy the row invariants.
pub fn parse_fixture_csv(text: &str) -> Result<Vec<FixtureRow>> {
    let mut lines = text.lines().enumerate();
    let header = lines
        .next()
        .map(|(_, l)| l.trim_end())
        .unwrap_or_default();
    if header != FIXTURE_CSV_HEADER {
        bail!("line 1: expected header `{FIXTURE_CSV_HEADER}`, found `{header}`");
    }

    let mut rows = Vec::new();
    for (idx, raw) in lines {
        let line = idx + 1;
        let row = raw.trim_end_matches('\r');
        if row.trim().is_empty() || row.trim_start().starts_with('#') {
            continue;
        }
        let parts: Vec<&str> = row.split(',').collect();
        if parts.len() != 7 {
            bail!("line {line}: expected 7 fields, found {}", parts.len());
        }
        let field = |i: usize, name: &str| -> Result<f64> {
            parts[i]
                .parse::<f64>()
                .with_context(|| format!("line {line}: field `{name}`: cannot parse `{}`", parts[i]))
        };
        let row = FixtureRow {
            dataset: parts[0].to_string(),
            year: parts[1]
                .parse()
                .with_context(|| format!("line {line}: field `year`: cannot parse `{}`", parts[1]))?,
            currency: parts[2].to_string(),
            p1: field(3, "p1")?,
            p2: field(4, "p2")?,
            p3: field(5, "p3")?,
            r2_percent: field(6, "r2_percent")?,
        };
        row.check_invariants(line)?;
        rows.push(row);
    }
    Ok(rows)
}

/// One of the five reference figure datasets, with the equation constants
/// exactly as printed alongside the figures.
#[derive(Debug, Clone, Copy)]
pub struct FigureDataset {
    pub file_stem: &'static str,
    pub dataset: &'static str,
    pub year: i32,
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
    pub r2_percent: f64,
}

impl FigureDataset {
    pub fn poly(&self) -> Result<Polynomial, FitError> {
        Polynomial::quadratic(self.p1, self.p2, self.p3)
    }
}

pub const FIGURES: [FigureDataset; 5] = [
    FigureDataset {
        file_stem: "france_upper_limit_2002",
        dataset: "france-upper-limit",
        year: 2002,
        p1: 1.196e-7,
        p2: -0.008721,
        p3: 167.5,
        r2_percent: 99.72,
    },
    FigureDataset {
        file_stem: "finland_upper_limit_1988",
        dataset: "finland-upper-limit",
        year: 1988,
        p1: 1.596e-7,
        p2: -0.01135,
        p3: 190.8,
        r2_percent: 99.43,
    },
    FigureDataset {
        file_stem: "romania_mean_income_2004",
        dataset: "romania-mean-income",
        year: 2004,
        p1: 4.693e-13,
        p2: -1.886e-5,
        p3: 191.9,
        r2_percent: 97.5,
    },
    FigureDataset {
        file_stem: "italy_mean_income_2000",
        dataset: "italy-mean-income",
        year: 2000,
        p1: 3.213e-8,
        p2: -0.00388,
        p3: 124.4,
        r2_percent: 99.58,
    },
    FigureDataset {
        file_stem: "france_mean_wealth_2010",
        dataset: "france-mean-wealth",
        year: 2010,
        p1: 1.294e-10,
        p2: -0.000223,
        p3: 87.6,
        r2_percent: 96.15,
    },
];
