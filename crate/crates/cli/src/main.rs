//! `fbosc`: spectra, radial wave functions, self-checks and level diagrams
//! for the fermion-boson relativistic oscillator.

mod config;
mod figure;
mod spectrum_cmd;
mod verify;
mod wavefunction_cmd;

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{BoundsArgs, Defaults, Format, GridArgs, ModelArgs, OutputArgs};

#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Verification(String),
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) | CliError::Io(_) => 1,
            CliError::Verification(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Validation(m) | CliError::Verification(m) | CliError::Io(m) => m,
        }
    }
}

/// Shortest-safe round-trip formatting: 17 significant digits.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Parser)]
#[command(name = "fbosc", version, about = "Fermion-boson relativistic oscillator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Tabulate levels grouped by degeneracy
    Spectrum {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        bounds: BoundsArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sample G(r) and F(r) for one level
    Wavefunction {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        kappa: i64,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the invariant suite; exits 2 if any check fails
    Verify(VerifyArgs),
    /// Level diagram per (l, j) sector
    Figure {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        bounds: BoundsArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[command(flatten)]
    bounds: BoundsArgs,
    #[command(flatten)]
    output: OutputArgs,
    /// Check the heavy-boson approach to the Dirac oscillator instead
    #[arg(long)]
    dirac_limit: bool,
    /// Dirac-oscillator frequency for --dirac-limit
    #[arg(long)]
    omega: Option<f64>,
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Io(format!("stdout: {e}")))
        }
    }
}

fn warn(lines: &[String]) {
    for line in lines {
        eprintln!("warning: {line}");
    }
}

fn verify_report(args: &VerifyArgs) -> Result<verify::Report, CliError> {
    if args.dirac_limit {
        let m1 = args.model.m1.unwrap_or(1.0);
        let omega = args
            .omega
            .ok_or_else(|| CliError::Validation("--dirac-limit needs --omega".into()))?;
        if !(m1 > 0.0 && m1.is_finite() && omega > 0.0 && omega.is_finite()) {
            return Err(CliError::Validation(
                "--m1 and --omega must be positive".into(),
            ));
        }
        return Ok(verify::dirac_limit_suite(m1, omega));
    }
    if args.omega.is_some() {
        return Err(CliError::Validation(
            "--omega only applies with --dirac-limit".into(),
        ));
    }
    let run = config::resolve(
        &args.model,
        Some(&args.bounds),
        Some(&args.output),
        None,
        Defaults {
            n_max: 3,
            j_max_twice: 5,
            format: Format::Json,
        },
    )?;
    Ok(verify::model_suite(&run))
}

fn render_report(report: &verify::Report, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("serializable");
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let mut s = String::from("name,pass,detail\n");
            for c in &report.checks {
                let _ = writeln!(s, "{},{},\"{}\"", c.name, c.pass, c.detail.replace('"', "'"));
            }
            Ok(s)
        }
        Format::Svg => Err(CliError::Validation(
            "verify output supports json or csv".into(),
        )),
    }
}

fn execute(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Spectrum {
            model,
            bounds,
            output,
        } => {
            let defaults = Defaults {
                n_max: 2,
                j_max_twice: 7,
                format: Format::Csv,
            };
            let run = config::resolve(&model, Some(&bounds), Some(&output), None, defaults)?;
            let (body, warnings) = spectrum_cmd::run(&run)?;
            warn(&warnings);
            emit(&body, output.out.as_deref())
        }
        Command::Wavefunction {
            model,
            n,
            kappa,
            grid,
            output,
        } => {
            let defaults = Defaults {
                n_max: n,
                j_max_twice: 1,
                format: Format::Csv,
            };
            let run = config::resolve(&model, None, Some(&output), Some(&grid), defaults)?;
            let body = wavefunction_cmd::run(&run, n, kappa)?;
            emit(&body, output.out.as_deref())
        }
        Command::Verify(args) => {
            let report = verify_report(&args)?;
            let format = args.output.format.unwrap_or(Format::Json);
            emit(&render_report(&report, format)?, args.output.out.as_deref())?;
            if report.pass {
                Ok(())
            } else {
                let failed: Vec<&str> = report
                    .checks
                    .iter()
                    .filter(|c| !c.pass)
                    .map(|c| c.name)
                    .collect();
                Err(CliError::Verification(format!(
                    "failed checks: {}",
                    failed.join(", ")
                )))
            }
        }
        Command::Figure {
            model,
            bounds,
            output,
        } => {
            let defaults = Defaults {
                n_max: 2,
                j_max_twice: 7,
                format: Format::Svg,
            };
            let run = config::resolve(&model, Some(&bounds), Some(&output), None, defaults)?;
            let fig = figure::build(&run);
            let body = match run.format {
                Format::Svg => figure::render_svg(&fig),
                Format::Csv => figure::render_csv(&fig),
                Format::Json => {
                    return Err(CliError::Validation(
                        "figure output supports svg or csv".into(),
                    ))
                }
            };
            emit(&body, output.out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
