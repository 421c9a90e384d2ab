use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qtorus_cli::{parse_checks, precision_from_env, run_report, run_verify, write_output, CliError, Format, VerifyConfig};

#[derive(Parser)]
#[command(name = "qtorus", about = "Exact checks for quantum-torus braid representations")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run checks and emit one record per (check, parameters).
    Verify(Opts),
    /// Write eigenvalue, centralizer, image-order and Verma-norm tables.
    Report(Opts),
}

#[derive(Args)]
struct Opts {
    /// Comma-separated list of N values.
    #[arg(long = "N", value_delimiter = ',', default_values_t = [3u32, 4, 5])]
    n_list: Vec<u32>,
    #[arg(long, default_value_t = 4)]
    n_max: usize,
    /// "all" or a comma-separated subset of torus,qserre,spectra,gauss,braid,eigs,trace,verma,centralizer,image.
    #[arg(long, default_value = "all")]
    checks: String,
    /// Element budget for the braid-image closure.
    #[arg(long, default_value_t = qtorus::braid_image::DEFAULT_BUDGET)]
    budget: u64,
    /// Digits for floating approximations in payloads (default from QTORUS_PRECISION, else 12).
    #[arg(long)]
    precision: Option<u32>,
    #[arg(long, default_value = "json")]
    format: String,
    /// Output file (verify) or directory (report); stdout if absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Add wall_time to each record. Output is then no longer reproducible.
    #[arg(long)]
    timings: bool,
}

impl Opts {
    fn config(self) -> Result<VerifyConfig, CliError> {
        let precision = match self.precision {
            Some(p) => p,
            None => precision_from_env()?,
        };
        let cfg = VerifyConfig {
            n_list: self.n_list,
            n_max: self.n_max,
            checks: parse_checks(&self.checks)?,
            budget: self.budget,
            precision,
            output_path: self.out,
            format: self.format.parse::<Format>()?,
            timings: self.timings,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

fn run(cmd: Cmd) -> Result<i32, CliError> {
    match cmd {
        Cmd::Verify(o) => {
            let cfg = o.config()?;
            let report = run_verify(&cfg)?;
            write_output(&report.render(cfg.format)?, cfg.output_path.as_deref())?;
            Ok(report.exit_code())
        }
        Cmd::Report(o) => {
            let cfg = o.config()?;
            Ok(run_report(&cfg)?.exit_code())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match std::panic::catch_unwind(|| run(cli.cmd)) {
        Ok(Ok(c)) => c,
        Ok(Err(CliError::Usage(m))) => {
            eprintln!("error: {m}");
            2
        }
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            3
        }
        Err(_) => 3,
    };
    ExitCode::from(code as u8)
}
