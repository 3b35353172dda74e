//! parstat: CSV front end for partition norm and supernorm statistics.
//!
//! Five subcommands: `stat` prints one statistic as `n,value` rows, `figure`
//! reproduces the data behind the built-in plots, `verify` runs the
//! self-check suites, `bounds` scans the explicit prime bounds, and `primes`
//! dumps the sieve.  Exit codes: 0 success, 1 a check failed, 2 usage error,
//! 3 resource error (caps, sieve limits, i/o).

mod bounds;
mod figure;
mod sink;
mod stat;
mod verify;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use partition_stats::Error;

#[derive(Parser)]
#[command(
    name = "parstat",
    version,
    about = "Reciprocal norm and supernorm statistics of integer partitions",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute one statistic as CSV rows `n,value`
    Stat(stat::Args),
    /// Emit the data behind one of the ten built-in figures
    Figure(figure::Args),
    /// Run the verification suites and report each one
    Verify(verify::Args),
    /// Scan the explicit prime bounds and emit worst margins as CSV
    Bounds(bounds::Args),
    /// Print the prime table as CSV rows `n,p_n`
    Primes(PrimesArgs),
}

#[derive(clap::Args)]
struct PrimesArgs {
    /// Largest prime index to print
    #[arg(long, default_value_t = 100)]
    nmax: u64,
    /// Sieve limit for the prime table
    #[arg(long, default_value_t = 1_000_000)]
    sieve_limit: u64,
    /// Output path (stdout when omitted)
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

fn run_primes(args: &PrimesArgs) -> partition_stats::Result<bool> {
    let table = sink::build_table(args.sieve_limit)?;
    let mut w = sink::open(args.out.as_deref())?;
    writeln!(w, "n,p_n")?;
    for n in 1..=args.nmax {
        writeln!(w, "{n},{}", table.nth_prime(n)?)?;
    }
    w.flush()?;
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Stat(args) => stat::run(args),
        Command::Figure(args) => figure::run(args),
        Command::Verify(args) => verify::run(args),
        Command::Bounds(args) => bounds::run(args),
        Command::Primes(args) => run_primes(args),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}

/// 2 for arguments that can never work, 3 for requests the configured
/// resources cannot satisfy.
fn exit_code(err: &Error) -> u8 {
    match err {
        Error::InvalidArgument(_) | Error::Divergent(_) | Error::Unsupported(_) => 2,
        Error::OutOfRange(_) | Error::ResourceLimit(_) | Error::Io(_) | Error::MalformedData(_) => {
            3
        }
    }
}
