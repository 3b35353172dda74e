//! Reference curves, residual tables, inequality scans, and the explicit
//! two-sided window for the cumulative supernorm statistic.
//!
//! Everything here compares computed series against closed-form growth
//! predictions.  Reports carry signed margins and per-row residuals so a
//! near-miss is visible in the output, not just a boolean.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::constants::MathConstants;
use crate::error::{Error, Result};
use crate::genfun::{self, Backend, CoeffSeries};
use crate::kahan::KahanSum;
use crate::partitions::{Ensemble, EnsembleSpec, Mode, Restriction, Weight};
use crate::primes::{BoundReport, MarginTracker, PrimeTable, MERTENS_BOUND_THRESHOLD};
use crate::rational::rational_to_f64;

/// A reference curve evaluated at positive integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AsymptoticModel {
    /// `e^{-gamma} * n`: linear growth of the size-ensemble norm sum.
    LehmerLinear,
    /// The constant `e^{-gamma}`.
    LehmerConst,
    /// `e^{gamma} * log n`.
    Log,
    /// `e^{gamma} * (log n + log log n)`; defined for n >= 2.
    LogPlusLogLog,
    /// `e^{gamma} / n`.
    Inv,
    /// The constant 1.
    Unit,
    /// The identity map n.
    Ident,
}

impl std::fmt::Display for AsymptoticModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            AsymptoticModel::LehmerLinear => "lehmer-linear",
            AsymptoticModel::LehmerConst => "lehmer-const",
            AsymptoticModel::Log => "log",
            AsymptoticModel::LogPlusLogLog => "log-loglog",
            AsymptoticModel::Inv => "inv",
            AsymptoticModel::Unit => "unit",
            AsymptoticModel::Ident => "ident",
        };
        f.write_str(name)
    }
}

/// Evaluate a reference curve at n.
///
/// Fails for n = 0, and for n = 1 under [`AsymptoticModel::LogPlusLogLog`]
/// where the inner logarithm vanishes and the outer one is undefined.
pub fn predictor(consts: &MathConstants, model: AsymptoticModel, n: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "asymptotic models are evaluated at n >= 1".into(),
        ));
    }
    let x = n as f64;
    let value = match model {
        AsymptoticModel::LehmerLinear => consts.e_neg_gamma * x,
        AsymptoticModel::LehmerConst => consts.e_neg_gamma,
        AsymptoticModel::Log => consts.e_gamma * x.ln(),
        AsymptoticModel::LogPlusLogLog => {
            if n == 1 {
                return Err(Error::InvalidArgument(
                    "log log n needs n >= 2".into(),
                ));
            }
            consts.e_gamma * (x.ln() + x.ln().ln())
        }
        AsymptoticModel::Inv => consts.e_gamma / x,
        AsymptoticModel::Unit => 1.0,
        AsymptoticModel::Ident => x,
    };
    Ok(value)
}

/// One comparison point: computed value against the model's prediction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualRow {
    pub n: u32,
    pub value: f64,
    pub prediction: f64,
    /// value - prediction
    pub residual: f64,
    /// value / prediction
    pub ratio: f64,
}

/// A residual table for one statistic against one reference curve.
#[derive(Debug, Clone)]
pub struct ResidualReport {
    /// Human-readable name of the statistic being compared.
    pub label: String,
    /// The ensemble behind the values, when a single one applies.
    pub spec: Option<EnsembleSpec>,
    pub model: AsymptoticModel,
    pub rows: Vec<ResidualRow>,
}

/// Compare a series against a reference curve over an inclusive slot range.
pub fn residual_report(
    series: &CoeffSeries,
    model: AsymptoticModel,
    n_range: (u32, u32),
) -> Result<ResidualReport> {
    let (start, end) = n_range;
    if start == 0 || start > end {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= start <= end, got ({start}, {end})"
        )));
    }
    if end > series.nmax() {
        return Err(Error::InvalidArgument(format!(
            "range end {end} exceeds the series (nmax = {})",
            series.nmax()
        )));
    }
    let consts = MathConstants::new();
    let mut rows = Vec::with_capacity((end - start + 1) as usize);
    for n in start..=end {
        let value = series.value_f64(n).expect("slot within nmax");
        let prediction = predictor(&consts, model, n as u64)?;
        if prediction == 0.0 {
            return Err(Error::InvalidArgument(format!(
                "the {model} model predicts 0 at n = {n}; ratios are undefined there"
            )));
        }
        rows.push(ResidualRow {
            n,
            value,
            prediction,
            residual: value - prediction,
            ratio: value / prediction,
        });
    }
    Ok(ResidualReport {
        label: series.spec().to_string(),
        spec: Some(*series.spec()),
        model,
        rows,
    })
}

/// Ratio tables for the conjectured decay of the individual supernorm
/// statistics, plus the norm/supernorm product on the size ensemble.
///
/// Four reports, in order: size, perimeter, and max-part statistics each
/// against `e^{gamma}/n`, then the product `W_size * What_size` against the
/// constant 1.  All values come from the float backend, so `nmax` must stay
/// within its caps (the perimeter cap is the binding one).
pub fn conjecture_report(table: &PrimeTable, nmax: u32) -> Result<Vec<ResidualReport>> {
    if nmax == 0 {
        return Err(Error::InvalidArgument("need nmax >= 1".into()));
    }
    let sup = |e| EnsembleSpec::new(e, Mode::Individual, Restriction::All, Weight::Supernorm);
    let what_size = genfun::series(table, &sup(Ensemble::Size), nmax, Backend::Float)?;
    let what_per = genfun::series(table, &sup(Ensemble::Perimeter), nmax, Backend::Float)?;
    let what_max = genfun::max_supernorm_series(table, Mode::Individual, nmax, Backend::Float)?;
    let w_size = genfun::series(
        table,
        &EnsembleSpec::new(
            Ensemble::Size,
            Mode::Individual,
            Restriction::All,
            Weight::Norm,
        ),
        nmax,
        Backend::Float,
    )?;

    let mut reports = vec![
        residual_report(&what_size, AsymptoticModel::Inv, (1, nmax))?,
        residual_report(&what_per, AsymptoticModel::Inv, (1, nmax))?,
        residual_report(&what_max, AsymptoticModel::Inv, (1, nmax))?,
    ];

    // the product table has no single ensemble; rows are built directly
    let mut rows = Vec::with_capacity(nmax as usize);
    for n in 1..=nmax {
        let value = w_size.value_f64(n).expect("slot within nmax")
            * what_size.value_f64(n).expect("slot within nmax");
        rows.push(ResidualRow {
            n,
            value,
            prediction: 1.0,
            residual: value - 1.0,
            ratio: value,
        });
    }
    reports.push(ResidualReport {
        label: "norm * supernorm statistic on the size ensemble".into(),
        spec: None,
        model: AsymptoticModel::Unit,
        rows,
    });
    Ok(reports)
}

/// Paired even/odd samples of an individual series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParityRow {
    pub k: u32,
    /// series value at 2k
    pub even: f64,
    /// series value at 2k + 1
    pub odd: f64,
    /// whether the odd value sits strictly below the even one
    pub odd_below_even: bool,
}

/// Sample a series at (2k, 2k+1) pairs.  The no-ones norm statistic on the
/// size ensemble visibly splits into two interleaved trends for small n;
/// this table records the split without asserting it persists.
pub fn parity_note(series: &CoeffSeries) -> Vec<ParityRow> {
    let mut rows = Vec::new();
    let mut k = 1;
    while 2 * k + 1 <= series.nmax() {
        let even = series.value_f64(2 * k).expect("slot within nmax");
        let odd = series.value_f64(2 * k + 1).expect("slot within nmax");
        rows.push(ParityRow {
            k,
            even,
            odd,
            odd_below_even: odd < even,
        });
        k += 1;
    }
    rows
}

/// One slot of the cumulative supernorm chain across the three ensembles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainRow {
    pub n: u32,
    pub size_value: f64,
    pub per_value: f64,
    pub max_value: f64,
    /// size statistic strictly below the perimeter one
    pub strict_size_per: bool,
    /// perimeter statistic strictly below the max-part one
    pub strict_per_max: bool,
}

/// Results of the inequality scans.
#[derive(Debug, Clone)]
pub struct InequalitySuite {
    /// Margin reports, one per scanned inequality, in a fixed order:
    /// the two chain links, the two ones-stripping identities, the linear
    /// perimeter bound, and the crossing witness at n = 14.
    pub reports: Vec<BoundReport>,
    pub chain: Vec<ChainRow>,
    /// Least n from which every later chain row is strict in both links,
    /// if the scan ends in that state.
    pub chain_strict_from: Option<u32>,
    /// Individual supernorm statistic on the size ensemble at n = 14.
    pub witness_size_14: f64,
    /// Same statistic on the perimeter ensemble at n = 14.
    pub witness_per_14: f64,
}

/// Scan the exact inequalities among the reciprocal statistics.
///
/// Four families are checked:
/// 1. the cumulative supernorm chain size <= perimeter <= max over 1..=nmax,
///    with per-slot strictness recorded;
/// 2. the ones-stripping identities, equating each individual statistic with
///    the cumulative no-ones one, exactly, up to min(nmax, 20);
/// 3. the linear bound: the individual perimeter norm statistic never
///    exceeds n;
/// 4. the witness that the size and perimeter supernorm statistics differ
///    at n = 14, computed exactly regardless of `backend`.
///
/// `backend` selects how the chain and the linear bound are evaluated, so
/// nmax must stay within that backend's caps for those ensembles.
pub fn inequality_suite(
    table: &PrimeTable,
    nmax: u32,
    backend: Backend,
) -> Result<InequalitySuite> {
    if nmax == 0 {
        return Err(Error::InvalidArgument("need nmax >= 1".into()));
    }
    let cum_sup =
        |e| EnsembleSpec::new(e, Mode::Cumulative, Restriction::All, Weight::Supernorm);
    let c_size = genfun::series(table, &cum_sup(Ensemble::Size), nmax, backend)?;
    let c_per = genfun::series(table, &cum_sup(Ensemble::Perimeter), nmax, backend)?;
    let c_max = genfun::max_supernorm_series(table, Mode::Cumulative, nmax, backend)?;

    let mut chain = Vec::with_capacity(nmax as usize);
    let mut link_sp = MarginTracker::new();
    let mut link_pm = MarginTracker::new();
    for n in 1..=nmax {
        let row = match backend {
            Backend::Exact => {
                let s = c_size.exact_value(n).expect("exact backend");
                let p = c_per.exact_value(n).expect("exact backend");
                let m = c_max.exact_value(n).expect("exact backend");
                let d_sp = p - s;
                let d_pm = m - p;
                link_sp.observe(rational_to_f64(&d_sp), n as u64);
                link_pm.observe(rational_to_f64(&d_pm), n as u64);
                ChainRow {
                    n,
                    size_value: rational_to_f64(s),
                    per_value: rational_to_f64(p),
                    max_value: rational_to_f64(m),
                    strict_size_per: d_sp.is_positive(),
                    strict_per_max: d_pm.is_positive(),
                }
            }
            Backend::Float => {
                let s = c_size.value_f64(n).expect("slot within nmax");
                let p = c_per.value_f64(n).expect("slot within nmax");
                let m = c_max.value_f64(n).expect("slot within nmax");
                link_sp.observe(p - s, n as u64);
                link_pm.observe(m - p, n as u64);
                ChainRow {
                    n,
                    size_value: s,
                    per_value: p,
                    max_value: m,
                    strict_size_per: s < p,
                    strict_per_max: p < m,
                }
            }
        };
        chain.push(row);
    }
    let mut chain_strict_from = None;
    for row in chain.iter().rev() {
        if row.strict_size_per && row.strict_per_max {
            chain_strict_from = Some(row.n);
        } else {
            break;
        }
    }

    let mut reports = vec![
        link_sp.into_report("chain-size-perimeter", (1, nmax as u64)),
        link_pm.into_report("chain-perimeter-max", (1, nmax as u64)),
    ];

    // ones-stripping identities, always exact: deleting the parts equal to 1
    // bijects each family onto the union of smaller no-ones families and
    // leaves the norm unchanged
    let id_n = nmax.min(20);
    for (ensemble, name) in [
        (Ensemble::Size, "strip-ones-identity-size"),
        (Ensemble::Perimeter, "strip-ones-identity-perimeter"),
    ] {
        let individual = genfun::series(
            table,
            &EnsembleSpec::new(ensemble, Mode::Individual, Restriction::All, Weight::Norm),
            id_n,
            Backend::Exact,
        )?;
        let stripped = genfun::series(
            table,
            &EnsembleSpec::new(
                ensemble,
                Mode::Cumulative,
                Restriction::NoOnes,
                Weight::Norm,
            ),
            id_n,
            Backend::Exact,
        )?;
        let mut tracker = MarginTracker::new();
        for n in 0..=id_n {
            let diff = (individual.exact_value(n).expect("exact backend")
                - stripped.exact_value(n).expect("exact backend"))
            .abs();
            let margin = if diff.is_zero() {
                0.0
            } else {
                -rational_to_f64(&diff)
            };
            tracker.observe(margin, n as u64);
        }
        reports.push(tracker.into_report(name, (0, id_n as u64)));
    }

    // linear bound on the perimeter ensemble: the individual norm statistic
    // is at most n, with equality at n = 1
    let w_per = genfun::series(
        table,
        &EnsembleSpec::new(
            Ensemble::Perimeter,
            Mode::Individual,
            Restriction::All,
            Weight::Norm,
        ),
        nmax,
        backend,
    )?;
    let mut linear = MarginTracker::new();
    for n in 1..=nmax {
        let margin = match backend {
            Backend::Exact => {
                let d = BigRational::from_integer(n.into())
                    - w_per.exact_value(n).expect("exact backend");
                rational_to_f64(&d)
            }
            Backend::Float => n as f64 - w_per.value_f64(n).expect("slot within nmax"),
        };
        linear.observe(margin, n as u64);
    }
    reports.push(linear.into_report("perimeter-norm-linear-bound", (1, nmax as u64)));

    // crossing witness: the individual supernorm statistics on the size and
    // perimeter ensembles separate at n = 14
    let ind_sup =
        |e| EnsembleSpec::new(e, Mode::Individual, Restriction::All, Weight::Supernorm);
    let ws = genfun::series(table, &ind_sup(Ensemble::Size), 14, Backend::Exact)?;
    let wp = genfun::series(table, &ind_sup(Ensemble::Perimeter), 14, Backend::Exact)?;
    let ws14 = ws.exact_value(14).expect("exact backend");
    let wp14 = wp.exact_value(14).expect("exact backend");
    let mut witness = MarginTracker::new();
    witness.observe(rational_to_f64(&(ws14 - wp14)), 14);
    reports.push(witness.into_report("supernorm-size-above-perimeter-at-14", (14, 14)));

    Ok(InequalitySuite {
        reports,
        chain,
        chain_strict_from,
        witness_size_14: rational_to_f64(ws14),
        witness_per_14: rational_to_f64(wp14),
    })
}

/// Two-sided window around the cumulative supernorm statistic on max-part
/// ensembles, scanned over a range of prime indices:
///
/// ```text
/// -1/log^2 n  <=  Chat_max(n) - e^{gamma} (log n + log log n)  <=  2 log log n / log n
/// ```
///
/// The statistic is the product of p/(p-1) over the first n primes,
/// maintained incrementally in log space.  The window is certified only
/// once the nth prime reaches 2,278,383, so the start index must satisfy
/// that; the first eligible index is 168,065.
pub fn mertens_window_check(table: &PrimeTable, n_range: (u64, u64)) -> Result<BoundReport> {
    let (start, end) = n_range;
    if start == 0 || start > end {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= start <= end, got ({start}, {end})"
        )));
    }
    if end > table.count() {
        return Err(Error::OutOfRange(format!(
            "index range ends at {end} but the table holds {} primes",
            table.count()
        )));
    }
    let p_start = table.nth_prime(start)?;
    if p_start < MERTENS_BOUND_THRESHOLD {
        return Err(Error::InvalidArgument(format!(
            "the window is certified only where the nth prime reaches \
             {MERTENS_BOUND_THRESHOLD}; start index {start} has prime {p_start} \
             (index 168065 is the first eligible)"
        )));
    }
    let consts = MathConstants::new();
    let primes = table.primes();
    let mut log_product = KahanSum::new();
    for &p in &primes[..(start - 1) as usize] {
        log_product.add((1.0 / (p - 1) as f64).ln_1p());
    }
    let mut tracker = MarginTracker::new();
    for n in start..=end {
        let p = primes[(n - 1) as usize] as f64;
        log_product.add((1.0 / (p - 1.0)).ln_1p());
        let value = log_product.value().exp();
        let ln_n = (n as f64).ln();
        let lnln_n = ln_n.ln();
        let dev = value - consts.e_gamma * (ln_n + lnln_n);
        let lower = dev + 1.0 / (ln_n * ln_n);
        let upper = 2.0 * lnln_n / ln_n - dev;
        tracker.observe(lower.min(upper), n);
    }
    Ok(tracker.into_report("cumulative-supernorm-window", (start, end)))
}
