use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ncfourier_cli::{run, CliError, Command, Format, RunConfig};

#[derive(Parser)]
#[command(
    name = "ncfourier",
    version,
    about = "Fourier analysis and uncertainty checks on finite groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Transform a function file and report its spectrum and support metrics.
    Transform(Common),
    /// Run every verifier over seeded random instances.
    Verify(Common),
    /// Tabulate the central quantities per seeded instance.
    Sweep(Common),
    /// Rank profile of every subgroup indicator.
    Subgroups(Common),
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Args)]
struct Common {
    /// Group spec such as C12, D4, S4 or C2xS3.
    #[arg(long)]
    group: String,
    /// Input function file.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Output path; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 10)]
    trials: usize,
    /// Verdict tolerance, in (0, 1e-3].
    #[arg(long, default_value_t = ncfourier::uncertainty::DEFAULT_TOL)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    /// Largest group order for subgroup enumeration and operator-level checks.
    #[arg(long, default_value_t = ncfourier::group::DEFAULT_SUBGROUP_CAP)]
    max_order: usize,
    /// Worker threads (0 picks the number of cores). Output does not depend on it.
    #[arg(long, default_value_t = 0)]
    workers: usize,
}

fn config(cli: Cli) -> RunConfig {
    let (command, c) = match cli.command {
        Cmd::Transform(c) => (Command::Transform, c),
        Cmd::Verify(c) => (Command::Verify, c),
        Cmd::Sweep(c) => (Command::Sweep, c),
        Cmd::Subgroups(c) => (Command::Subgroups, c),
    };
    RunConfig {
        command,
        group_spec: c.group,
        seed: c.seed,
        trials: c.trials,
        tol: c.tol,
        format: match c.format {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        },
        input: c.input,
        output: c.out,
        max_order: c.max_order,
        workers: c.workers,
    }
}

fn emit(cfg: &RunConfig, text: &str) -> Result<(), CliError> {
    match &cfg.output {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        }),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            }),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let cfg = config(cli);
    match run(&cfg).and_then(|outcome| emit(&cfg, &outcome.output).map(|_| outcome.exit_code)) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("ncfourier: {e}");
            ExitCode::from(2)
        }
    }
}
