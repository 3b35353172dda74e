//! The `figure` subcommand: plot-ready CSV for the ten built-in figures.
//!
//! Every figure pairs one statistic with one or two reference curves.  The
//! stat column is the exact value correctly rounded to f64; the residual is
//! taken against the first curve.  Figures whose curve involves log log n
//! start at n = 2, the rest at n = 1.

use std::io::Write;
use std::path::PathBuf;

use clap::ValueEnum;
use partition_stats::asymptotics::{predictor, AsymptoticModel};
use partition_stats::genfun::{self, Backend};
use partition_stats::rational::rational_to_f64;
use partition_stats::{
    BigRational, Ensemble, EnsembleSpec, MathConstants, Mode, PrimeTable, Restriction, Result,
    Weight,
};

use crate::sink;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FigureId {
    /// norm statistic, size ensemble, against e^-g * n
    #[value(name = "w-size")]
    WSize,
    /// no-ones norm statistic, size ensemble, against e^-g
    #[value(name = "w-size-1")]
    WSize1,
    /// cumulative supernorm statistic, max-part ensemble
    #[value(name = "c-hat-max")]
    CHatMax,
    /// cumulative supernorm statistic, perimeter ensemble, two curves
    #[value(name = "c-hat-per")]
    CHatPer,
    /// cumulative supernorm statistic, size ensemble, two curves
    #[value(name = "c-hat-size")]
    CHatSize,
    /// the same statistic minus e^g (log n + log log n)
    #[value(name = "c-hat-size-loglog")]
    CHatSizeLoglog,
    /// supernorm statistic, size ensemble, against e^g / n
    #[value(name = "w-hat-size")]
    WHatSize,
    /// supernorm statistic, perimeter ensemble, against e^g / n
    #[value(name = "w-hat-per")]
    WHatPer,
    /// product of the norm and supernorm size statistics, against 1
    #[value(name = "ww-product")]
    WwProduct,
    /// norm statistic, perimeter ensemble, against n and e^-g * n
    #[value(name = "w-per")]
    WPer,
}

enum Source {
    Series(EnsembleSpec),
    MaxClosedForm,
    /// slotwise product of the norm and supernorm individual size series
    SizeProduct,
}

struct FigureDef {
    source: Source,
    start: u32,
    end: u32,
    primary: AsymptoticModel,
    secondary: Option<AsymptoticModel>,
}

fn definition(id: FigureId) -> FigureDef {
    use AsymptoticModel as M;
    let spec = |e, m, r, w| EnsembleSpec::new(e, m, r, w);
    let individual =
        |e, w| spec(e, Mode::Individual, Restriction::All, w);
    let cumulative_sup =
        |e| spec(e, Mode::Cumulative, Restriction::All, Weight::Supernorm);
    match id {
        FigureId::WSize => FigureDef {
            source: Source::Series(individual(Ensemble::Size, Weight::Norm)),
            start: 1,
            end: 70,
            primary: M::LehmerLinear,
            secondary: None,
        },
        FigureId::WSize1 => FigureDef {
            source: Source::Series(spec(
                Ensemble::Size,
                Mode::Individual,
                Restriction::NoOnes,
                Weight::Norm,
            )),
            start: 1,
            end: 40,
            primary: M::LehmerConst,
            secondary: None,
        },
        FigureId::CHatMax => FigureDef {
            source: Source::MaxClosedForm,
            start: 2,
            end: 20,
            primary: M::LogPlusLogLog,
            secondary: None,
        },
        FigureId::CHatPer => FigureDef {
            source: Source::Series(cumulative_sup(Ensemble::Perimeter)),
            start: 2,
            end: 20,
            primary: M::LogPlusLogLog,
            secondary: Some(M::Log),
        },
        FigureId::CHatSize => FigureDef {
            source: Source::Series(cumulative_sup(Ensemble::Size)),
            start: 2,
            end: 70,
            primary: M::Log,
            secondary: Some(M::LogPlusLogLog),
        },
        FigureId::CHatSizeLoglog => FigureDef {
            source: Source::Series(cumulative_sup(Ensemble::Size)),
            start: 2,
            end: 70,
            primary: M::LogPlusLogLog,
            secondary: None,
        },
        FigureId::WHatSize => FigureDef {
            source: Source::Series(individual(Ensemble::Size, Weight::Supernorm)),
            start: 1,
            end: 70,
            primary: M::Inv,
            secondary: None,
        },
        FigureId::WHatPer => FigureDef {
            source: Source::Series(individual(Ensemble::Perimeter, Weight::Supernorm)),
            start: 1,
            end: 20,
            primary: M::Inv,
            secondary: None,
        },
        FigureId::WwProduct => FigureDef {
            source: Source::SizeProduct,
            start: 1,
            end: 70,
            primary: M::Unit,
            secondary: None,
        },
        FigureId::WPer => FigureDef {
            source: Source::Series(individual(Ensemble::Perimeter, Weight::Norm)),
            start: 1,
            end: 20,
            primary: M::Ident,
            secondary: Some(M::LehmerLinear),
        },
    }
}

/// Exact values for slots 0..=end of the figure's statistic.
fn exact_values(table: &PrimeTable, def: &FigureDef) -> Result<Vec<BigRational>> {
    match &def.source {
        Source::Series(spec) => {
            let series = genfun::series(table, spec, def.end, Backend::Exact)?;
            Ok(series.exact_values().expect("exact backend").to_vec())
        }
        Source::MaxClosedForm => {
            let series =
                genfun::max_supernorm_series(table, Mode::Cumulative, def.end, Backend::Exact)?;
            Ok(series.exact_values().expect("exact backend").to_vec())
        }
        Source::SizeProduct => {
            let norm = genfun::series(
                table,
                &EnsembleSpec::new(
                    Ensemble::Size,
                    Mode::Individual,
                    Restriction::All,
                    Weight::Norm,
                ),
                def.end,
                Backend::Exact,
            )?;
            let sup = genfun::series(
                table,
                &EnsembleSpec::new(
                    Ensemble::Size,
                    Mode::Individual,
                    Restriction::All,
                    Weight::Supernorm,
                ),
                def.end,
                Backend::Exact,
            )?;
            let norm = norm.exact_values().expect("exact backend");
            let sup = sup.exact_values().expect("exact backend");
            Ok(norm.iter().zip(sup).map(|(a, b)| a * b).collect())
        }
    }
}

#[derive(clap::Args)]
pub struct Args {
    /// Which figure to reproduce
    #[arg(value_enum)]
    id: FigureId,
    /// Sieve limit for the prime table
    #[arg(long, default_value_t = 1_000_000)]
    sieve_limit: u64,
    /// Output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn run(args: &Args) -> Result<bool> {
    let def = definition(args.id);
    let table = sink::build_table(args.sieve_limit)?;
    let values = exact_values(&table, &def)?;
    let consts = MathConstants::new();
    let mut w = sink::open(args.out.as_deref())?;
    if def.secondary.is_some() {
        writeln!(w, "n,stat,asymptotic,residual,asymptotic2")?;
    } else {
        writeln!(w, "n,stat,asymptotic,residual")?;
    }
    for n in def.start..=def.end {
        let stat = rational_to_f64(&values[n as usize]);
        let asymptotic = predictor(&consts, def.primary, n as u64)?;
        let residual = stat - asymptotic;
        match def.secondary {
            Some(model) => {
                let second = predictor(&consts, model, n as u64)?;
                writeln!(w, "{n},{stat},{asymptotic},{residual},{second}")?;
            }
            None => writeln!(w, "{n},{stat},{asymptotic},{residual}")?,
        }
    }
    w.flush()?;
    Ok(true)
}
