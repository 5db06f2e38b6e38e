//! Implementations of the four subcommands.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use decilefit::{
    build_cdf, compute_deciles, fit_polynomial, gini, parse_cpi_csv, parse_decile_csv,
    reconstruct_series_from_fit, roundtrip_check, sample_incomes, DecileSeries, FitConfig,
    IncomeKind, Polynomial, SampleSpec, SeriesMeta, Statistic, Transform, GENERATOR_ID,
};

use crate::fixtures::{parse_fixture_csv, FigureDataset, EMBEDDED_FIXTURES, FIGURES};
use crate::plot::plot_tsv;
use crate::report::{FitReport, SampleReport};

/// Marker for bad invocations; the caller maps it to exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub struct FitArgs {
    pub input: PathBuf,
    pub degree: usize,
    pub transform: Transform,
    pub output: PathBuf,
    pub plot_dir: Option<PathBuf>,
    pub cpi: Option<PathBuf>,
    pub base_year: Option<i32>,
}

pub fn cmd_fit(args: &FitArgs) -> Result<()> {
    let text = fs::read_to_string(&args.input)
        .with_context(|| format!("cannot read {}", args.input.display()))?;
    let mut series = parse_decile_csv(&text)?;
    if series.is_empty() {
        bail!("no series");
    }

    if let (Some(cpi_path), Some(base_year)) = (&args.cpi, args.base_year) {
        let cpi_text = fs::read_to_string(cpi_path)
            .with_context(|| format!("cannot read {}", cpi_path.display()))?;
        let cpi = parse_cpi_csv(&cpi_text, base_year)?;
        series = series
            .iter()
            .map(|s| s.deflate_to_real(&cpi))
            .collect::<Result<Vec<_>, _>>()?;
    }

    let config = FitConfig {
        degree: args.degree,
        transform: args.transform,
    };

    let mut reports = Vec::with_capacity(series.len());
    let mut plots = Vec::new();
    for s in &series {
        let cdf = build_cdf(s);
        let fit = fit_polynomial(&cdf, &config).with_context(|| {
            format!(
                "fit failed for {} {} {} {}",
                s.meta.country, s.meta.year, s.meta.statistic, s.meta.income_kind
            )
        })?;
        let report = FitReport::new(&s.meta, &fit);
        println!(
            "{} {} {} {}: degree {}, R^2 = {}%",
            s.meta.country,
            s.meta.year,
            s.meta.statistic,
            s.meta.income_kind,
            report.degree,
            report.r2_percent
        );
        if args.plot_dir.is_some() {
            plots.push((plot_file_name(&s.meta), plot_tsv(cdf.points(), |x| fit.predict(x))));
        }
        reports.push(report);
    }

    // nothing is written until every series has fitted; a failed write
    // removes whatever this run already put on disk
    let mut written: Vec<PathBuf> = Vec::new();
    let outcome = write_fit_outputs(args, &reports, &plots, &mut written);
    if outcome.is_err() {
        for path in &written {
            let _ = fs::remove_file(path);
        }
    }
    outcome
}

fn write_fit_outputs(
    args: &FitArgs,
    reports: &[FitReport],
    plots: &[(String, String)],
    written: &mut Vec<PathBuf>,
) -> Result<()> {
    if let Some(dir) = &args.plot_dir {
        fs::create_dir_all(dir)
            .with_context(|| format!("cannot create {}", dir.display()))?;
        for (name, tsv) in plots {
            let path = dir.join(name);
            fs::write(&path, tsv).with_context(|| format!("cannot write {}", path.display()))?;
            written.push(path);
        }
    }
    let mut body = String::new();
    for report in reports {
        body.push_str(&serde_json::to_string(report)?);
        body.push('\n');
    }
    fs::write(&args.output, body)
        .with_context(|| format!("cannot write {}", args.output.display()))?;
    written.push(args.output.clone());
    Ok(())
}

fn plot_file_name(meta: &SeriesMeta) -> String {
    let sanitize = |s: &str| -> String {
        s.chars()
            .map(|c| if c.is_ascii_alphanumeric() { c.to_ascii_lowercase() } else { '-' })
            .collect()
    };
    format!(
        "{}_{}_{}_{}.tsv",
        sanitize(&meta.country),
        meta.year,
        meta.statistic,
        meta.income_kind
    )
}

pub fn cmd_roundtrip(fixtures: Option<&Path>, tolerance: f64) -> Result<()> {
    let text = match fixtures {
        Some(path) => fs::read_to_string(path)
            .with_context(|| format!("cannot read {}", path.display()))?,
        None => EMBEDDED_FIXTURES.to_string(),
    };
    let rows = parse_fixture_csv(&text)?;
    if rows.is_empty() {
        bail!("no fixture rows");
    }

    println!(
        "{:<30} {:>5} {:>13} {:>20} {:>7}",
        "dataset", "year", "max_rel_err", "refit_r2", "status"
    );
    let mut failed = 0usize;
    for row in &rows {
        let poly = row.poly()?;
        match roundtrip_check(&poly, tolerance) {
            Ok(report) => {
                let status = if report.pass { "PASS" } else { "FAIL" };
                if !report.pass {
                    failed += 1;
                }
                println!(
                    "{:<30} {:>5} {:>13.3e} {:>20.15} {:>7}",
                    row.dataset, row.year, report.max_coeff_rel_err, report.refit_r_squared, status
                );
            }
            Err(err) => {
                failed += 1;
                println!(
                    "{:<30} {:>5} {:>13} {:>20} {:>7}  ({err})",
                    row.dataset, row.year, "-", "-", "FAIL"
                );
            }
        }
    }
    println!(
        "summary: {}/{} rows passed at tolerance {:e}",
        rows.len() - failed,
        rows.len(),
        tolerance
    );
    if failed > 0 {
        bail!("{failed} of {} rows failed the round-trip", rows.len());
    }
    Ok(())
}

pub struct SampleArgs {
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
    pub n: usize,
    pub seed: u64,
    pub p_low: f64,
    pub p_high: f64,
    pub output: PathBuf,
}

pub fn cmd_sample(args: &SampleArgs) -> Result<()> {
    let poly = Polynomial::quadratic(args.p1, args.p2, args.p3)?;
    let spec = SampleSpec::with_band(args.n, args.seed, args.p_low, args.p_high)
        .map_err(|e| UsageError(e.to_string()))?;
    let incomes = sample_incomes(&poly, &spec)?;

    let mut body = String::with_capacity(incomes.len() * 18);
    for x in &incomes {
        body.push_str(&format!("{x}\n"));
    }

    let meta = SeriesMeta {
        country: "sample".into(),
        year: 0,
        currency: "units".into(),
        statistic: Statistic::MeanIncome,
        income_kind: IncomeKind::Disposable,
    };
    let deciles = compute_deciles(&incomes, &meta).ok();
    let report = SampleReport {
        generator: GENERATOR_ID.to_string(),
        p1: args.p1,
        p2: args.p2,
        p3: args.p3,
        n: args.n,
        seed: args.seed,
        p_low: args.p_low,
        p_high: args.p_high,
        gini: gini(&incomes).ok(),
        mean_deciles: deciles
            .as_ref()
            .map(|(m, _)| m.values().to_vec())
            .unwrap_or_default(),
        upper_deciles: deciles
            .as_ref()
            .map(|(_, u)| u.values().to_vec())
            .unwrap_or_default(),
    };

    fs::write(&args.output, body)
        .with_context(|| format!("cannot write {}", args.output.display()))?;
    let report_path = companion_report_path(&args.output);
    let mut json = serde_json::to_string_pretty(&report)?;
    json.push('\n');
    fs::write(&report_path, json)
        .with_context(|| format!("cannot write {}", report_path.display()))?;

    println!(
        "wrote {} incomes to {} (generator {}, seed {})",
        args.n,
        args.output.display(),
        GENERATOR_ID,
        args.seed
    );
    println!("report: {}", report_path.display());
    Ok(())
}

pub fn companion_report_path(output: &Path) -> PathBuf {
    let mut name = output.file_name().unwrap_or_default().to_os_string();
    name.push(".report.json");
    output.with_file_name(name)
}

pub fn cmd_figures(out_dir: &Path) -> Result<()> {
    fs::create_dir_all(out_dir)
        .with_context(|| format!("cannot create {}", out_dir.display()))?;
    for figure in FIGURES {
        let path = out_dir.join(format!("{}.tsv", figure.file_stem));
        let tsv = figure_tsv(&figure)?;
        fs::write(&path, tsv).with_context(|| format!("cannot write {}", path.display()))?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

/// Reconstructed grid points plus the curve of the printed equation.
pub fn figure_tsv(figure: &FigureDataset) -> Result<String> {
    let poly = figure.poly()?;
    let meta = SeriesMeta {
        country: figure.dataset.to_string(),
        year: figure.year,
        currency: String::new(),
        statistic: Statistic::UpperLimit,
        income_kind: IncomeKind::Disposable,
    };
    let series: DecileSeries = reconstruct_series_from_fit(&poly, meta)?;
    let cdf = build_cdf(&series);
    Ok(plot_tsv(cdf.points(), |x| poly.eval(x)))
}
