//! Command-line driver for decile-distribution fitting.
//!
//! Exit codes: 0 success, 1 validation or domain failure, 2 usage error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use decilefit::Transform;

use decilefit_cli::commands::{self, FitArgs, SampleArgs, UsageError};

#[derive(Parser)]
#[command(
    name = "decilefit",
    version,
    about = "Fit polynomial complementary CDFs to decile income data, round-trip published \
             coefficient tables, and sample synthetic populations"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum TransformArg {
    /// Fit p against x directly
    Linear,
    /// Fit ln p against ln x
    Loglog,
}

impl From<TransformArg> for Transform {
    fn from(arg: TransformArg) -> Transform {
        match arg {
            TransformArg::Linear => Transform::Linear,
            TransformArg::Loglog => Transform::LogLog,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Fit each series of a decile CSV file and write per-series reports
    Fit {
        /// Decile CSV input file
        #[arg(long)]
        input: PathBuf,
        /// Polynomial degree
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=5))]
        degree: u8,
        /// Coordinate transform applied before fitting
        #[arg(long, value_enum, default_value = "linear")]
        transform: TransformArg,
        /// Report output file (one JSON document per series, per line)
        #[arg(long)]
        output: PathBuf,
        /// Directory for per-series plot TSV files
        #[arg(long)]
        plot_dir: Option<PathBuf>,
        /// CPI CSV file for nominal-to-real conversion
        #[arg(long, requires = "base_year")]
        cpi: Option<PathBuf>,
        /// CPI base year (required with --cpi)
        #[arg(long, requires = "cpi")]
        base_year: Option<i32>,
    },
    /// Round-trip published coefficient rows: invert to deciles, refit, compare
    Roundtrip {
        /// Fixture CSV file; defaults to the embedded coefficient table
        #[arg(long)]
        fixtures: Option<PathBuf>,
        /// Maximum relative coefficient discrepancy accepted as a pass
        #[arg(long, default_value_t = 1e-6)]
        tolerance: f64,
    },
    /// Sample a synthetic population from a fitted quadratic
    #[command(allow_negative_numbers = true)]
    Sample {
        /// Quadratic coefficient (of x^2)
        #[arg(long)]
        p1: f64,
        /// Linear coefficient (of x)
        #[arg(long)]
        p2: f64,
        /// Constant coefficient
        #[arg(long)]
        p3: f64,
        /// Number of incomes to draw
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        /// Generator seed; identical seeds give byte-identical output
        #[arg(long)]
        seed: u64,
        /// Lower edge of the sampled percent band
        #[arg(long, default_value_t = 10.0)]
        p_low: f64,
        /// Upper edge of the sampled percent band
        #[arg(long, default_value_t = 100.0)]
        p_high: f64,
        /// Output file, one income per line; a companion
        /// `<output>.report.json` carries decile tables and gini
        #[arg(long)]
        output: PathBuf,
    },
    /// Emit the five reference figure datasets as plot TSV files
    Figures {
        /// Directory the TSV files are written into
        #[arg(long)]
        out_dir: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Cmd::Fit {
            input,
            degree,
            transform,
            output,
            plot_dir,
            cpi,
            base_year,
        } => commands::cmd_fit(&FitArgs {
            input,
            degree: usize::from(degree),
            transform: transform.into(),
            output,
            plot_dir,
            cpi,
            base_year,
        }),
        Cmd::Roundtrip { fixtures, tolerance } => {
            commands::cmd_roundtrip(fixtures.as_deref(), tolerance)
        }
        Cmd::Sample {
            p1,
            p2,
            p3,
            n,
            seed,
            p_low,
            p_high,
            output,
        } => commands::cmd_sample(&SampleArgs {
            p1,
            p2,
            p3,
            n: n as usize,
            seed,
            p_low,
            p_high,
            output,
        }),
        Cmd::Figures { out_dir } => commands::cmd_figures(&out_dir),
    };

    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            if err.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
