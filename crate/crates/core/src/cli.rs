//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use crate::analysis::{compare_octant_with_lag, octant_exact_angles, CompareReport};
use crate::approx::{approx_octant, Octant, OctantSinogram};
use crate::error::RadonError;
use crate::exact::exact_radon;
use crate::image::Image;
use crate::io::{self, PgmError};
use crate::pipeline::sim_run;

#[derive(Debug, Parser)]
#[command(
    name = "shear-radon",
    version,
    about = "Approximate and exact discrete Radon transforms"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact fractional-weight sinogram as CSV.
    Exact {
        #[command(flatten)]
        common: Common,
        /// Output CSV file.
        #[arg(short, long)]
        output: PathBuf,
        /// Angles in degrees: `start:stop:step` (stop excluded) or `a,b,c`.
        #[arg(long, default_value = "0:180:1")]
        angles: String,
    },
    /// Approximate octant sinograms, one CSV per octant.
    Approx {
        #[command(flatten)]
        common: Common,
        /// Output directory.
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long)]
        octant: Option<Octant>,
    },
    /// Run the pipeline model: sinogram CSV, trace CSV and a latency summary.
    Simulate {
        #[command(flatten)]
        common: Common,
        /// Output directory.
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Compare approximate octants with the exact transform.
    Compare {
        #[command(flatten)]
        common: Common,
        /// Output report CSV.
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long)]
        octant: Option<Octant>,
        /// Lag search radius in bins (defaults to the image side).
        #[arg(long)]
        max_lag: Option<usize>,
    },
    /// Multiplexer decision trace of the pipeline model.
    Trace {
        #[command(flatten)]
        common: Common,
        /// Output CSV file.
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct Common {
    /// Input PGM (P2 or P5).
    pub input: PathBuf,
    /// Zero-pad non-square input to a square.
    #[arg(long)]
    pub pad: bool,
    /// Also write min-max normalized PGM renders of the sinograms.
    #[arg(long)]
    pub render: bool,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Pgm { path: PathBuf, source: PgmError },
    #[error(transparent)]
    Radon(#[from] RadonError),
    #[error("invalid angle list `{0}`")]
    Angles(String),
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Parses `start:stop:step` (stop excluded) or a comma-separated list.
pub fn parse_angles(spec: &str) -> Result<Vec<f64>, CliError> {
    let bad = || CliError::Angles(spec.to_string());
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() == 3 {
        let nums = parts
            .iter()
            .map(|p| p.trim().parse::<f64>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        let (start, stop, step) = (nums[0], nums[1], nums[2]);
        if step.is_nan() || step <= 0.0 || !start.is_finite() || !stop.is_finite() {
            return Err(bad());
        }
        let count = ((stop - start) / step).ceil().max(0.0) as usize;
        return Ok((0..count).map(|i| start + i as f64 * step).collect());
    }
    if parts.len() != 1 {
        return Err(bad());
    }
    let angles = spec
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|_| bad()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(angles)
}

fn load(common: &Common) -> Result<Image, CliError> {
    let bytes = std::fs::read(&common.input).map_err(io_err(&common.input))?;
    io::read_pgm(&bytes, common.pad).map_err(|source| CliError::Pgm {
        path: common.input.clone(),
        source,
    })
}

fn save(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    io::write_atomic(path, bytes).map_err(io_err(path))
}

fn ensure_dir(dir: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(io_err(dir))
}

fn octant_grid(sino: &OctantSinogram) -> Vec<Vec<f64>> {
    sino.rows
        .iter()
        .map(|r| r.iter().map(|&v| v as f64).collect())
        .collect()
}

fn selected(octant: Option<Octant>) -> Vec<Octant> {
    octant.map_or_else(|| Octant::ALL.to_vec(), |o| vec![o])
}

fn write_octant(
    dir: &Path,
    prefix: &str,
    sino: &OctantSinogram,
    render: bool,
) -> Result<(), CliError> {
    let stem = format!("{prefix}_{}", sino.octant);
    save(
        &dir.join(format!("{stem}.csv")),
        &io::write_sinogram_csv(sino),
    )?;
    if render {
        save(
            &dir.join(format!("{stem}.pgm")),
            &io::write_grid_pgm(&octant_grid(sino)),
        )?;
    }
    Ok(())
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let stdout_err = |source| CliError::Io {
        path: PathBuf::from("<stdout>"),
        source,
    };
    match cli.command {
        Command::Exact {
            common,
            output,
            angles,
        } => {
            let img = load(&common)?;
            let angles = parse_angles(&angles)?;
            let sino = exact_radon(&img, &angles)?;
            save(&output, &io::write_exact_csv(&sino))?;
            if common.render {
                save(
                    &output.with_extension("pgm"),
                    &io::write_grid_pgm(&sino.values),
                )?;
            }
        }
        Command::Approx {
            common,
            output,
            octant,
        } => {
            let img = load(&common)?;
            ensure_dir(&output)?;
            for o in selected(octant) {
                write_octant(&output, "approx", &approx_octant(&img, o)?, common.render)?;
            }
        }
        Command::Simulate { common, output } => {
            let img = load(&common)?;
            ensure_dir(&output)?;
            let run = sim_run(&img)?;
            write_octant(&output, "sim", &run.sinogram, common.render)?;
            save(&output.join("trace.csv"), &io::write_trace_csv(&run.trace))?;
            let n = img.n();
            writeln!(
                out,
                "theta_k_ready = N+1+k, total_cycles = 2N; N={n} theta_1_ready={} theta_N_ready={} total_cycles={}",
                run.ready[0],
                run.ready[n - 1],
                run.total_cycles
            )
            .map_err(stdout_err)?;
        }
        Command::Trace { common, output } => {
            let img = load(&common)?;
            let run = sim_run(&img)?;
            save(&output, &io::write_trace_csv(&run.trace))?;
        }
        Command::Compare {
            common,
            output,
            octant,
            max_lag,
        } => {
            let img = load(&common)?;
            let max_lag = max_lag.unwrap_or(img.n());
            let mut reports: Vec<CompareReport> = Vec::new();
            for o in selected(octant) {
                let sino = approx_octant(&img, o)?;
                let exact = exact_radon(&img, &octant_exact_angles(&sino))?;
                reports.push(compare_octant_with_lag(&img, &sino, &exact, max_lag)?);
            }
            save(&output, &io::write_report_csv(&reports))?;
            for r in &reports {
                writeln!(
                    out,
                    "{}: mean_pearson = {}",
                    r.octant,
                    io::fmt_real(r.mean_pearson)
                )
                .map_err(stdout_err)?;
            }
            let mean = reports.iter().map(|r| r.mean_pearson).sum::<f64>() / reports.len() as f64;
            writeln!(out, "mean_pearson = {}", io::fmt_real(mean)).map_err(stdout_err)?;
        }
    }
    Ok(())
}

/// Parses `args` (program name first) and runs the subcommand. Returns the
/// process exit status; diagnostics go to `err` as one line.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let text = e.to_string();
            let line = text.lines().next().unwrap_or("invalid arguments");
            let _ = writeln!(err, "{line}");
            return 2;
        }
    };
    match execute(cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}
