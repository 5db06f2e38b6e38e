//! Decile data files: parsing, validation, and nominal-to-real conversion.
//!
//! The input format is a plain CSV with one country-year per row:
//!
//! ```text
//! country,year,currency,statistic,income_kind,d1,d2,d3,d4,d5,d6,d7,d8,d9,d10
//! France,2002,EUR,upper_limit,disposable,8802.57,10357.93,...
//! ```
//!
//! Decimal separator is `.` regardless of locale; no thousands separators.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{IngestError, SeriesError};

/// Exact header required on the first line of a decile CSV file.
pub const DECILE_CSV_HEADER: &str =
    "country,year,currency,statistic,income_kind,d1,d2,d3,d4,d5,d6,d7,d8,d9,d10";

/// Exact header required on the first line of a CPI CSV file.
pub const CPI_CSV_HEADER: &str = "year,index";

/// Which per-decile statistic a series carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Statistic {
    /// Total income of the decile divided by its headcount.
    MeanIncome,
    /// The largest income inside the decile.
    UpperLimit,
}

impl Statistic {
    pub fn as_str(self) -> &'static str {
        match self {
            Statistic::MeanIncome => "mean_income",
            Statistic::UpperLimit => "upper_limit",
        }
    }

    fn parse(token: &str) -> Option<Self> {
        match token {
            "mean_income" => Some(Statistic::MeanIncome),
            "upper_limit" => Some(Statistic::UpperLimit),
            _ => None,
        }
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// What kind of income (or wealth) the values measure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IncomeKind {
    Disposable,
    Gross,
    Pensioner,
    Wealth,
}

impl IncomeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            IncomeKind::Disposable => "disposable",
            IncomeKind::Gross => "gross",
            IncomeKind::Pensioner => "pensioner",
            IncomeKind::Wealth => "wealth",
        }
    }

    fn parse(token: &str) -> Option<Self> {
        match token {
            "disposable" => Some(IncomeKind::Disposable),
            "gross" => Some(IncomeKind::Gross),
            "pensioner" => Some(IncomeKind::Pensioner),
            "wealth" => Some(IncomeKind::Wealth),
            _ => None,
        }
    }
}

impl fmt::Display for IncomeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Identifying metadata for one country-year series.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesMeta {
    pub country: String,
    pub year: i32,
    pub currency: String,
    pub statistic: Statistic,
    pub income_kind: IncomeKind,
}

/// One country-year row: ten decile values plus metadata.
///
/// Values are strictly increasing and finite; negative values are permitted
/// (bottom wealth deciles can be negative).
#[derive(Debug, Clone, PartialEq)]
pub struct DecileSeries {
    pub meta: SeriesMeta,
    values: [f64; 10],
}

impl DecileSeries {
    /// Builds a series, enforcing the count, finiteness, and strict
    /// monotonicity invariants.
    pub fn new(meta: SeriesMeta, values: &[f64]) -> Result<Self, SeriesError> {
        if values.len() != 10 {
            return Err(SeriesError::WrongCount {
                found: values.len(),
            });
        }
        let mut arr = [0.0; 10];
        arr.copy_from_slice(values);
        let series = DecileSeries { meta, values: arr };
        series.validate()?;
        Ok(series)
    }

    /// Re-checks the invariants; returns the series unchanged when they hold.
    pub fn validate(&self) -> Result<&Self, SeriesError> {
        for (i, v) in self.values.iter().enumerate() {
            if !v.is_finite() {
                return Err(SeriesError::NotFinite { index: i });
            }
        }
        for i in 0..9 {
            if self.values[i] >= self.values[i + 1] {
                return Err(SeriesError::NotIncreasing { index: i });
            }
        }
        Ok(self)
    }

    pub fn values(&self) -> &[f64; 10] {
        &self.values
    }

    /// Converts nominal values to real values of the CPI base year.
    ///
    /// Every value is multiplied by `index[base_year] / index[year]`; the
    /// currency label gains a suffix naming the base year.
    pub fn deflate_to_real(&self, cpi: &CpiSeries) -> Result<DecileSeries, IngestError> {
        let ratio = cpi.deflator(self.meta.year)?;
        let mut values = self.values;
        for v in &mut values {
            *v *= ratio;
        }
        let mut meta = self.meta.clone();
        meta.currency = format!("{}@{}", meta.currency, cpi.base_year());
        Ok(DecileSeries { meta, values })
    }
}

/// Consumer price index series with a designated base year.
#[derive(Debug, Clone, PartialEq)]
pub struct CpiSeries {
    base_year: i32,
    index: BTreeMap<i32, f64>,
}

impl CpiSeries {
    /// Builds a CPI series; every index value must be positive and the base
    /// year must be present.
    pub fn new(base_year: i32, index: BTreeMap<i32, f64>) -> Result<Self, IngestError> {
        for (&year, &value) in &index {
            if !(value > 0.0) {
                return Err(IngestError::NonPositiveIndex {
                    line: 0,
                    year,
                    value,
                });
            }
        }
        if !index.contains_key(&base_year) {
            return Err(IngestError::MissingBaseYear { base_year });
        }
        Ok(CpiSeries { base_year, index })
    }

    pub fn base_year(&self) -> i32 {
        self.base_year
    }

    /// Multiplier taking nominal values of `year` to base-year values.
    pub fn deflator(&self, year: i32) -> Result<f64, IngestError> {
        let at_year = self
            .index
            .get(&year)
            .ok_or(IngestError::MissingYear { year })?;
        let at_base = self.index[&self.base_year];
        Ok(at_base / at_year)
    }
}

/// Parses the full contents of a decile CSV file.
///
/// The first line must match [`DECILE_CSV_HEADER`] exactly. Blank lines are
/// skipped. Every series is validated; errors carry the 1-based line number.
pub fn parse_decile_csv(text: &str) -> Result<Vec<DecileSeries>, IngestError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(IngestError::HeaderMismatch {
        line: 1,
        expected: DECILE_CSV_HEADER,
        found: String::new(),
    })?;
    if header.trim_end() != DECILE_CSV_HEADER {
        return Err(IngestError::HeaderMismatch {
            line: 1,
            expected: DECILE_CSV_HEADER,
            found: header.to_string(),
        });
    }

    const FIELDS: [&str; 15] = [
        "country",
        "year",
        "currency",
        "statistic",
        "income_kind",
        "d1",
        "d2",
        "d3",
        "d4",
        "d5",
        "d6",
        "d7",
        "d8",
        "d9",
        "d10",
    ];

    let mut out = Vec::new();
    for (idx, raw) in lines {
        let line = idx + 1;
        let row = raw.trim_end_matches('\r');
        if row.trim().is_empty() {
            continue;
        }
        let parts: Vec<&str> = row.split(',').collect();
        if parts.len() != FIELDS.len() {
            return Err(IngestError::FieldCount {
                line,
                expected: FIELDS.len(),
                found: parts.len(),
            });
        }
        let year: i32 = parts[1].parse().map_err(|_| IngestError::BadNumber {
            line,
            field: "year",
            value: parts[1].to_string(),
        })?;
        let statistic = Statistic::parse(parts[3]).ok_or_else(|| IngestError::UnknownToken {
            line,
            field: "statistic",
            value: parts[3].to_string(),
        })?;
        let income_kind =
            IncomeKind::parse(parts[4]).ok_or_else(|| IngestError::UnknownToken {
                line,
                field: "income_kind",
                value: parts[4].to_string(),
            })?;
        let mut values = [0.0; 10];
        for (i, v) in values.iter_mut().enumerate() {
            *v = parse_number(parts[5 + i], line, FIELDS[5 + i])?;
        }
        let meta = SeriesMeta {
            country: parts[0].to_string(),
            year,
            currency: parts[2].to_string(),
            statistic,
            income_kind,
        };
        let series = DecileSeries::new(meta, &values)
            .map_err(|source| IngestError::InvalidSeries { line, source })?;
        out.push(series);
    }
    Ok(out)
}

/// Serializes series back into the canonical CSV format.
///
/// Values print in the shortest form that parses back to the same bits, so
/// `parse_decile_csv` of the output reproduces the input exactly.
pub fn write_decile_csv(series: &[DecileSeries]) -> String {
    let mut out = String::from(DECILE_CSV_HEADER);
    out.push('\n');
    for s in series {
        out.push_str(&format!(
            "{},{},{},{},{}",
            s.meta.country, s.meta.year, s.meta.currency, s.meta.statistic, s.meta.income_kind
        ));
        for v in s.values() {
            out.push(',');
            out.push_str(&format_f64(*v));
        }
        out.push('\n');
    }
    out
}

/// Parses a CPI CSV file (`year,index` header) against a base year given
/// separately.
pub fn parse_cpi_csv(text: &str, base_year: i32) -> Result<CpiSeries, IngestError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(IngestError::HeaderMismatch {
        line: 1,
        expected: CPI_CSV_HEADER,
        found: String::new(),
    })?;
    if header.trim_end() != CPI_CSV_HEADER {
        return Err(IngestError::HeaderMismatch {
            line: 1,
            expected: CPI_CSV_HEADER,
            found: header.to_string(),
        });
    }

    let mut index = BTreeMap::new();
    for (idx, raw) in lines {
        let line = idx + 1;
        let row = raw.trim_end_matches('\r');
        if row.trim().is_empty() {
            continue;
        }
        let parts: Vec<&str> = row.split(',').collect();
        if parts.len() != 2 {
            return Err(IngestError::FieldCount {
                line,
                expected: 2,
                found: parts.len(),
            });
        }
        let year: i32 = parts[0].parse().map_err(|_| IngestError::BadNumber {
            line,
            field: "year",
            value: parts[0].to_string(),
        })?;
        let value = parse_number(parts[1], line, "index")?;
        if !(value > 0.0) {
            return Err(IngestError::NonPositiveIndex { line, year, value });
        }
        if index.insert(year, value).is_some() {
            return Err(IngestError::DuplicateYear { line, year });
        }
    }
    CpiSeries::new(base_year, index)
}

fn parse_number(token: &str, line: usize, field: &'static str) -> Result<f64, IngestError> {
    let trimmed = token.trim();
    if trimmed.is_empty() || trimmed != token {
        return Err(IngestError::BadNumber {
            line,
            field,
            value: token.to_string(),
        });
    }
    trimmed.parse::<f64>().map_err(|_| IngestError::BadNumber {
        line,
        field,
        value: token.to_string(),
    })
}

/// Shortest decimal form that round-trips to the same f64.
pub(crate) fn format_f64(v: f64) -> String {
    format!("{v}")
}
