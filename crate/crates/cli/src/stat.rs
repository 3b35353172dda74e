//! The `stat` subcommand: one statistic, one CSV column pair.

use std::io::Write;
use std::path::PathBuf;

use clap::ValueEnum;
use partition_stats::genfun::{self, Backend};
use partition_stats::oracle::oracle_stat;
use partition_stats::{Ensemble, EnsembleSpec, Mode, Restriction, Result, Weight};

use crate::sink;

#[derive(Clone, Copy, ValueEnum)]
pub enum EnsembleArg {
    /// partitions of n
    Size,
    /// partitions with perimeter n (largest part + length - 1)
    #[value(alias = "per")]
    Perimeter,
    /// partitions with largest part at most / exactly n
    #[value(name = "max")]
    Max,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum WeightArg {
    /// product of the parts
    Norm,
    /// product of the primes indexed by the parts
    Supernorm,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum ModeArg {
    /// one ensemble per n
    Individual,
    /// union of the ensembles up to n
    Cumulative,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum RestrictArg {
    /// no restriction
    #[value(alias = "none")]
    All,
    /// parts equal to 1 excluded
    NoOnes,
    /// all parts distinct
    Distinct,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
pub enum BackendArg {
    /// exact rationals via the coefficient recurrences
    Exact,
    /// compensated f64 via the same recurrences
    Float,
    /// exact rationals by direct enumeration (slow, capped)
    ExactOracle,
}

impl EnsembleArg {
    pub fn to_core(self) -> Ensemble {
        match self {
            EnsembleArg::Size => Ensemble::Size,
            EnsembleArg::Perimeter => Ensemble::Perimeter,
            EnsembleArg::Max => Ensemble::MaxPart,
        }
    }
}

impl WeightArg {
    pub fn to_core(self) -> Weight {
        match self {
            WeightArg::Norm => Weight::Norm,
            WeightArg::Supernorm => Weight::Supernorm,
        }
    }
}

impl ModeArg {
    pub fn to_core(self) -> Mode {
        match self {
            ModeArg::Individual => Mode::Individual,
            ModeArg::Cumulative => Mode::Cumulative,
        }
    }
}

impl RestrictArg {
    pub fn to_core(self) -> Restriction {
        match self {
            RestrictArg::All => Restriction::All,
            RestrictArg::NoOnes => Restriction::NoOnes,
            RestrictArg::Distinct => Restriction::Distinct,
        }
    }
}

#[derive(clap::Args)]
pub struct Args {
    /// Partition family indexed by n
    #[arg(long, value_enum)]
    ensemble: EnsembleArg,
    /// Multiplicative weight; each term is weight^(-beta)
    #[arg(long, value_enum)]
    weight: WeightArg,
    #[arg(long, value_enum, default_value = "individual")]
    mode: ModeArg,
    /// Which partitions participate
    #[arg(long, value_enum, default_value = "all")]
    restrict: RestrictArg,
    /// Weight exponent (exact backends need an integer)
    #[arg(long, default_value_t = 1.0)]
    beta: f64,
    /// Last slot to print; rows run from n = 0
    #[arg(long, default_value_t = 20)]
    nmax: u32,
    #[arg(long, value_enum, default_value = "exact")]
    backend: BackendArg,
    /// Sieve limit for the prime table
    #[arg(long, default_value_t = 1_000_000)]
    sieve_limit: u64,
    /// Output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn run(args: &Args) -> Result<bool> {
    let spec = EnsembleSpec::new(
        args.ensemble.to_core(),
        args.mode.to_core(),
        args.restrict.to_core(),
        args.weight.to_core(),
    )
    .with_beta(args.beta);
    spec.validate()?;
    let table = sink::build_table(args.sieve_limit)?;
    let mut w = sink::open(args.out.as_deref())?;
    writeln!(w, "n,value")?;
    match args.backend {
        BackendArg::Exact => {
            let series = genfun::series(&table, &spec, args.nmax, Backend::Exact)?;
            for n in 0..=args.nmax {
                writeln!(w, "{n},{}", series.exact_value(n).expect("within nmax"))?;
            }
        }
        BackendArg::Float => {
            let series = genfun::series(&table, &spec, args.nmax, Backend::Float)?;
            for n in 0..=args.nmax {
                writeln!(w, "{n},{}", series.value_f64(n).expect("within nmax"))?;
            }
        }
        BackendArg::ExactOracle => {
            for n in 0..=args.nmax {
                writeln!(w, "{n},{}", oracle_stat(&table, &spec, n)?)?;
            }
        }
    }
    w.flush()?;
    Ok(true)
}
