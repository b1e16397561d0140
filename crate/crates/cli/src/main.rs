use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use srspec::ultra::Polarization;
use srspec_cli::commands::{self, CmdError, Format, OutputOptions, WidthMode};
use srspec_cli::verify::{self, Level};

#[derive(Parser)]
#[command(
    name = "srspec",
    version,
    about = "Synchrotron-radiation polarization spectra and spectral widths",
    propagate_version = true
)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Significant digits for numeric output (4 to 15)
    #[arg(long, global = true, default_value_t = 6)]
    precision: usize,
    /// Solver x-tolerance override
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Write output to a file instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Effective,
    Half,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LevelArg {
    Fast,
    Full,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the full table of spectral characteristics for all components
    Table,
    /// Emit spectral density curves on a uniform y-grid
    Spectrum {
        /// Restrict to one component (0, 2, 3, +1, -1); all five otherwise
        #[arg(long, allow_hyphen_values = true)]
        component: Option<String>,
        #[arg(long, default_value_t = 0.0)]
        y_min: f64,
        #[arg(long, default_value_t = 3.0)]
        y_max: f64,
        #[arg(long, default_value_t = 0.005)]
        step: f64,
    },
    /// Solve the effective-width or half-width system
    Width {
        #[arg(long, value_enum, default_value_t = ModeArg::Effective)]
        mode: ModeArg,
        /// Restrict to one component (0, 2, 3, +1, -1); all five otherwise
        #[arg(long, allow_hyphen_values = true)]
        component: Option<String>,
    },
    /// Per-harmonic powers of the exact finite-velocity theory
    Exact {
        /// Speed ratio v/c, strictly between 0 and 1
        #[arg(long)]
        beta: f64,
        /// Harmonic truncation point (defaults to a converged choice)
        #[arg(long)]
        nu_max: Option<u32>,
    },
    /// Run the verification suite
    Verify {
        #[arg(long, value_enum, default_value_t = LevelArg::Fast)]
        level: LevelArg,
    },
}

fn parse_component(text: Option<&str>) -> Result<Option<Polarization>, CmdError> {
    match text {
        None => Ok(None),
        Some(raw) => raw
            .parse::<Polarization>()
            .map(Some)
            .map_err(CmdError::Usage),
    }
}

fn run(cli: Cli) -> Result<ExitCode, CmdError> {
    if !(4..=15).contains(&cli.precision) {
        return Err(CmdError::Usage(format!(
            "--precision must lie in 4..=15, got {}",
            cli.precision
        )));
    }
    let solver_tol = match cli.tol {
        None => srspec::widths::DEFAULT_SOLVER_TOL,
        Some(t) if t.is_finite() && t > 0.0 && t <= 1e-2 => t,
        Some(t) => {
            return Err(CmdError::Usage(format!(
                "--tol must lie in (0, 1e-2], got {t}"
            )));
        }
    };
    let opts = OutputOptions {
        format: match cli.format {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        },
        precision: cli.precision,
        solver_tol,
    };

    let (body, meta, code) = match cli.command {
        Command::Table => (commands::table(opts)?, None, ExitCode::SUCCESS),
        Command::Spectrum {
            component,
            y_min,
            y_max,
            step,
        } => {
            let s = parse_component(component.as_deref())?;
            (
                commands::spectrum(opts, s, y_min, y_max, step)?,
                None,
                ExitCode::SUCCESS,
            )
        }
        Command::Width { mode, component } => {
            let s = parse_component(component.as_deref())?;
            let mode = match mode {
                ModeArg::Effective => WidthMode::Effective,
                ModeArg::Half => WidthMode::Half,
            };
            (commands::width(opts, mode, s)?, None, ExitCode::SUCCESS)
        }
        Command::Exact { beta, nu_max } => (
            commands::exact_spectrum(opts, beta, nu_max)?,
            None,
            ExitCode::SUCCESS,
        ),
        Command::Verify { level } => {
            let level = match level {
                LevelArg::Fast => Level::Fast,
                LevelArg::Full => Level::Full,
            };
            let report = verify::run(level, solver_tol);
            let code = if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            };
            (
                report.body(opts.format, opts.precision),
                Some(report.meta()),
                code,
            )
        }
    };

    match &cli.out {
        None => print!("{body}"),
        Some(path) => std::fs::write(path, &body)
            .map_err(|e| CmdError::Failure(format!("cannot write {}: {e}", path.display())))?,
    }
    if let Some(meta) = meta {
        eprint!("{meta}");
    }
    Ok(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(2),
            };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(CmdError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CmdError::Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
