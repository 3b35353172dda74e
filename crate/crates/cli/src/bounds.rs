//! The `bounds` subcommand: scan the explicit prime-growth and partial-sum
//! bounds over sieve-sized ranges and emit one CSV row per bound with its
//! worst observed margin.

use std::io::Write;
use std::path::PathBuf;

use partition_stats::asymptotics::mertens_window_check;
use partition_stats::primes::{
    verify_log_prime_sum_bound, verify_mertens_bounds, verify_prime_bounds, BoundReport,
    MERTENS_BOUND_THRESHOLD,
};
use partition_stats::{Error, MathConstants, Result};

use crate::sink;

/// First prime-table index whose prime clears [`MERTENS_BOUND_THRESHOLD`].
const WINDOW_START_INDEX: u64 = 168_065;

#[derive(clap::Args)]
pub struct Args {
    /// Sieve limit; the scans cover what the table holds
    #[arg(long, default_value_t = 100_000_000)]
    sieve_limit: u64,
    /// Output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn run(args: &Args) -> Result<bool> {
    if args.sieve_limit < MERTENS_BOUND_THRESHOLD {
        return Err(Error::InvalidArgument(format!(
            "the partial-sum bounds are certified only from {MERTENS_BOUND_THRESHOLD}; \
             raise --sieve-limit to at least that"
        )));
    }
    let table = sink::build_table(args.sieve_limit)?;
    let count = table.count();
    if count < WINDOW_START_INDEX {
        return Err(Error::InvalidArgument(format!(
            "the deviation window starts at prime index {WINDOW_START_INDEX} \
             (prime 2278421, the first at or above {MERTENS_BOUND_THRESHOLD}), but the \
             sieve holds only {count} primes; raise --sieve-limit"
        )));
    }
    let consts = MathConstants::new();

    let mut reports: Vec<BoundReport> = Vec::with_capacity(8);
    reports.extend(verify_prime_bounds(&table, (6, count.min(1_000_000)))?);
    reports.push(verify_log_prime_sum_bound(&table, (2, count.min(1_000_000)))?);
    reports.extend(verify_mertens_bounds(
        &table,
        &consts,
        (MERTENS_BOUND_THRESHOLD, args.sieve_limit.min(10_000_000)),
    )?);
    reports.push(mertens_window_check(&table, (WINDOW_START_INDEX, count))?);

    let mut w = sink::open(args.out.as_deref())?;
    writeln!(w, "bound,n_or_x,margin,holds")?;
    let mut all = true;
    for report in &reports {
        writeln!(
            w,
            "{},{},{},{}",
            report.bound_name, report.worst_at, report.worst_margin, report.all_hold
        )?;
        all &= report.all_hold;
    }
    w.flush()?;
    Ok(all)
}
