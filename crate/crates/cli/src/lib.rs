//! Command-line front end: scans, grids, figure presets and the oracle
//! validation suite for parity-dependent squeezed states.
//!
//! Every table is written as CSV with a `# {json}` metadata line, or as a
//! single JSON document with `--format json`.

pub mod commands;
pub mod figures;
pub mod output;
pub mod params;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use pdsqueeze::C;

use commands::{EvolveSpec, GridQuantity, Probe, Quantity, ScanSpec};
use figures::FigureOptions;
use output::Format;
use params::{Range, ScanVar, StateParams};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;
pub const EXIT_TRUNCATION: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Numerical(String),
    #[error("{0}")]
    Truncation(String),
    /// Validation ran to completion and at least one check failed.
    #[error("validation failed")]
    Validation(Vec<String>),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => EXIT_USAGE,
            CliError::Numerical(_) | CliError::Validation(_) => EXIT_NUMERICAL,
            CliError::Truncation(_) => EXIT_TRUNCATION,
        }
    }
}

impl From<pdsqueeze::Error> for CliError {
    fn from(e: pdsqueeze::Error) -> Self {
        use pdsqueeze::Error as E;
        let msg = e.to_string();
        match e {
            E::Truncation { .. } => CliError::Truncation(format!("{msg}; raise --dim")),
            E::InvalidParameter(_) | E::Configuration(_) | E::Domain(_) | E::DimensionMismatch { .. } => {
                CliError::Usage(msg)
            }
            E::Consistency(_) | E::Unsupported(_) => CliError::Numerical(msg),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "pdsqueeze", version, about = "Parity-dependent squeezed states: scans, grids and validation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Photon-number distribution P(n).
    Pnd {
        #[command(flatten)]
        state: StateArgs,
        /// Largest photon number; defaults to the truncation cutoff.
        #[arg(long)]
        n_max: Option<usize>,
        #[command(flatten)]
        oracle: OracleArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// One quantity against one swept parameter.
    Scan {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long, value_enum)]
        quantity: Quantity,
        #[arg(long = "var", value_enum, default_value = "beta-abs")]
        var: ScanVar,
        /// Scan range as min:max:n.
        #[arg(long, alias = "grid-x", allow_hyphen_values = true)]
        range: Range,
        /// Photon number for `--quantity pnd`.
        #[arg(long, default_value_t = 0)]
        n: usize,
        /// Re α for q, x for wigner.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        at_x: f64,
        /// Im α for q, p for wigner.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        at_y: f64,
        #[command(flatten)]
        oracle: OracleArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Q function over (Re α, Im α) or Wigner function over (x, p).
    Grid {
        #[command(flatten)]
        state: StateArgs,
        #[arg(long, value_enum)]
        quantity: GridQuantity,
        #[arg(long, allow_hyphen_values = true)]
        grid_x: Range,
        #[arg(long, allow_hyphen_values = true)]
        grid_y: Range,
        #[command(flatten)]
        oracle: OracleArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Evolve a coherent state under the parity-dependent Hamiltonian.
    Evolve {
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        omega: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        g0_re: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        g0_im: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        g1_re: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        g1_im: f64,
        #[arg(long, default_value_t = 0.0)]
        beta_abs: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        beta_phase: f64,
        /// Time samples as min:max:n.
        #[arg(long, allow_hyphen_values = true)]
        t: Range,
        #[arg(long, default_value_t = 256)]
        dim: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Seeded comparison of the closed forms against the Fock-space oracle.
    Validate {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        cases: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Data for one of the twelve figures.
    Figure {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=12))]
        number: u8,
        /// Overrides the |β| range of curve figures or the x axis of grids.
        #[arg(long, allow_hyphen_values = true)]
        grid_x: Option<Range>,
        #[arg(long, allow_hyphen_values = true)]
        grid_y: Option<Range>,
        #[command(flatten)]
        oracle: OracleArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Clone, Args)]
pub struct StateArgs {
    #[arg(long, default_value_t = 0.0)]
    pub beta_abs: f64,
    #[arg(long, allow_negative_numbers = true, conflicts_with_all = ["psi0", "psi1"])]
    pub beta_phase: Option<f64>,
    #[arg(long, default_value_t = 0.0)]
    pub r0: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub theta0: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub lambda0: Option<f64>,
    #[arg(long, default_value_t = 0.0)]
    pub r1: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub theta1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub lambda1: Option<f64>,
    /// Sets θ0 = 2ψ0 with λ0 = arg β = 0.
    #[arg(long, allow_negative_numbers = true, conflicts_with_all = ["theta0", "lambda0", "theta1", "lambda1"])]
    pub psi0: Option<f64>,
    #[arg(long, allow_negative_numbers = true, conflicts_with_all = ["theta0", "lambda0", "theta1", "lambda1"])]
    pub psi1: Option<f64>,
}

impl StateArgs {
    pub fn params(&self) -> StateParams {
        if self.psi0.is_some() || self.psi1.is_some() {
            return StateParams::with_psi(
                self.beta_abs,
                self.r0,
                self.psi0.unwrap_or(0.0),
                self.r1,
                self.psi1.unwrap_or(0.0),
            );
        }
        StateParams {
            beta_abs: self.beta_abs,
            beta_phase: self.beta_phase.unwrap_or(0.0),
            r: [self.r0, self.r1],
            theta: [self.theta0.unwrap_or(0.0), self.theta1.unwrap_or(0.0)],
            lambda: [self.lambda0.unwrap_or(0.0), self.lambda1.unwrap_or(0.0)],
            from_psi: false,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    /// Add a column computed in the truncated Fock basis.
    #[arg(long)]
    pub oracle: bool,
    /// Oracle dimension; defaults to the truncation cutoff, at least 256.
    #[arg(long, requires = "oracle")]
    pub dim: Option<usize>,
}

impl OracleArgs {
    fn request(&self) -> Option<Option<usize>> {
        self.oracle.then_some(self.dim)
    }
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

fn execute(cmd: Command) -> Result<(), CliError> {
    match cmd {
        Command::Pnd {
            state,
            n_max,
            oracle,
            output,
        } => commands::run_pnd(&state.params(), n_max, oracle.request())?.emit(output.out.as_deref(), output.format),
        Command::Scan {
            state,
            quantity,
            var,
            range,
            n,
            at_x,
            at_y,
            oracle,
            output,
        } => {
            let spec = ScanSpec {
                quantity,
                base: state.params(),
                var,
                range,
                at: Probe { n, x: at_x, y: at_y },
                oracle: oracle.request(),
            };
            commands::run_scan(&spec)?.emit(output.out.as_deref(), output.format)
        }
        Command::Grid {
            state,
            quantity,
            grid_x,
            grid_y,
            oracle,
            output,
        } => commands::run_grid(quantity, &state.params(), grid_x, grid_y, oracle.request())?
            .into_table()
            .emit(output.out.as_deref(), output.format),
        Command::Evolve {
            omega,
            g0_re,
            g0_im,
            g1_re,
            g1_im,
            beta_abs,
            beta_phase,
            t,
            dim,
            output,
        } => {
            if !(beta_abs >= 0.0) {
                return Err(CliError::Usage(format!("--beta-abs must be >= 0, got {beta_abs}")));
            }
            let spec = EvolveSpec {
                omega,
                g: [C::new(g0_re, g0_im), C::new(g1_re, g1_im)],
                beta: C::from_polar(beta_abs, beta_phase),
                t,
                dim,
            };
            commands::run_evolve(&spec)?.emit(output.out.as_deref(), output.format)
        }
        Command::Validate { seed, cases, output } => {
            let (table, report) = commands::run_validate(seed, cases)?;
            table.emit(output.out.as_deref(), output.format)?;
            if report.passed() {
                Ok(())
            } else {
                Err(CliError::Validation(commands::failure_lines(&report)))
            }
        }
        Command::Figure {
            number,
            grid_x,
            grid_y,
            oracle,
            output,
        } => {
            let opts = FigureOptions {
                oracle: oracle.request(),
                x: grid_x,
                y: grid_y,
            };
            figures::run_figure(number, &opts)?
                .into_table()
                .emit(output.out.as_deref(), output.format)
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code. Diagnostics go to stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(cli.command) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let mut err = std::io::stderr().lock();
            let _ = writeln!(err, "error: {e}");
            if let CliError::Validation(lines) = &e {
                for l in lines {
                    let _ = writeln!(err, "  {l}");
                }
            }
            e.exit_code()
        }
    }
}
