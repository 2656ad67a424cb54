//! Argument parsing, dispatch and exit codes of the `planestat` binary.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use planestat::asymptotics::Statistic;

use crate::{commands, render, Command, OutputFormat, Report, RunConfig};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_COMPUTATION: u8 = 2;
pub const EXIT_VERIFICATION: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "planestat", version, about = "Exact and asymptotic statistics of plane partitions")]
struct Cli {
    /// Working precision in significant decimal digits.
    #[arg(long, global = true, default_value_t = 50, value_parser = clap::value_parser!(u32).range(30..))]
    precision: u32,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,

    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Largest n accepted for exact computations.
    #[arg(long, global = true, default_value_t = 5000)]
    max_n: u64,

    /// Suppress progress messages on standard error.
    #[arg(long, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StatArg {
    Trace,
    Dimension,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Exact q(n) against the closed form and the saddle-point estimate.
    Count {
        #[arg(long, value_delimiter = ',', required = true)]
        n_grid: Vec<u64>,
    },
    /// Exact mean trace or dimension against its asymptotics.
    Stat {
        #[arg(long, value_enum)]
        statistic: StatArg,
        #[arg(long, value_delimiter = ',', required = true)]
        n_grid: Vec<u64>,
    },
    /// Brute-force enumeration of one n with cross-checks.
    Oracle {
        #[arg(long)]
        n: u64,
    },
    /// Samples Q on the saddle circle inside and outside the central window.
    Probe {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 64)]
        grid_size: usize,
    },
    /// Runs every enumeration cross-check for n <= 12.
    Selftest,
}

fn config(cli: &Cli) -> RunConfig {
    let (command, grid) = match &cli.command {
        Cmd::Count { n_grid } => (Command::Count, n_grid.clone()),
        Cmd::Stat { n_grid, .. } => (Command::Stat, n_grid.clone()),
        Cmd::Oracle { .. } => (Command::Oracle, Vec::new()),
        Cmd::Probe { .. } => (Command::Probe, Vec::new()),
        Cmd::Selftest => (Command::Selftest, Vec::new()),
    };
    let mut cfg = RunConfig::new(command, cli.precision, cli.max_n, grid, cli.format);
    match &cli.command {
        Cmd::Stat { statistic, .. } => {
            cfg.statistic = Some(match statistic {
                StatArg::Trace => Statistic::Trace,
                StatArg::Dimension => Statistic::Dimension,
            })
        }
        Cmd::Oracle { n } => cfg.n = Some(*n),
        Cmd::Probe { n, grid_size } => {
            cfg.n = Some(*n);
            cfg.grid_size = Some(*grid_size);
        }
        _ => {}
    }
    cfg
}

fn execute(cli: &Cli, cfg: &RunConfig) -> planestat::Result<Report> {
    let quiet = cli.quiet;
    let progress = move |msg: &str| {
        if !quiet {
            eprintln!("planestat: {msg}");
        }
    };
    match &cli.command {
        Cmd::Count { .. } => commands::count(cfg, &progress),
        Cmd::Stat { .. } => commands::stat(cfg, cfg.statistic.expect("set for stat"), &progress),
        Cmd::Oracle { n } => commands::oracle(cfg, *n, &progress),
        Cmd::Probe { n, grid_size } => commands::probe(cfg, *n, *grid_size, &progress),
        Cmd::Selftest => commands::selftest(cfg, &progress),
    }
}

fn emit(cli: &Cli, text: &str, stdout: &mut dyn Write) -> std::io::Result<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, text),
        None => {
            stdout.write_all(text.as_bytes())?;
            stdout.flush()
        }
    }
}

/// Runs one invocation; `args` includes the program name. Reports go to
/// `stdout` unless `--out` is given; diagnostics go to standard error.
/// Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                eprint!("{}", e.render());
                return EXIT_USAGE;
            }
            let _ = write!(stdout, "{}", e.render());
            return EXIT_OK;
        }
    };
    let cfg = config(&cli);
    let report = match execute(&cli, &cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("planestat: error: {e}");
            return EXIT_COMPUTATION;
        }
    };
    let text = match render(&report) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("planestat: error: {e}");
            return EXIT_COMPUTATION;
        }
    };
    if let Err(e) = emit(&cli, &text, stdout) {
        eprintln!("planestat: cannot write output: {e}");
        return EXIT_COMPUTATION;
    }
    if report.passed {
        EXIT_OK
    } else {
        eprintln!("planestat: verification failed");
        EXIT_VERIFICATION
    }
}

#[cfg(test)]
mod tests;
