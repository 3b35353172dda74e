//! Fast evaluation of the partition statistics through Euler-product
//! coefficient extraction, plus the closed forms for max-part ensembles.
//!
//! Size-indexed statistics are coefficients of products over parts k of
//! `1/(1 - w_k x^k)` (or `1 + w_k x^k` for distinct parts) with
//! `w_k = weight(k)^(-beta)`, extracted by the standard one-part-at-a-time
//! dynamic program.  Perimeter-indexed statistics use a two-variable
//! program that tracks part count while parts are introduced largest-last,
//! folded so memory stays linear in the index.  Both run over exact
//! rationals or over f64, selected by [`Backend`]; the two backends share
//! the same DP code, so they can only differ by rounding.

use std::io::{BufRead, Write};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::kahan::KahanSum;
use crate::partitions::{Ensemble, EnsembleSpec, Mode, Restriction, Weight};
use crate::primes::{nth_prime_limit_estimate, PrimeTable};
use crate::rational::{self, rational_to_f64, reciprocal_power};
use crate::BigRational;

/// Exact size series are capped here: denominators are lcm-like and reach
/// thousands of digits already at 120.
pub const EXACT_SIZE_CAP: u32 = 120;
/// Exact perimeter series cap; the two-variable program squares the work.
pub const EXACT_PERIMETER_CAP: u32 = 80;
/// Float size series cap (the program is quadratic in the index).
pub const FLOAT_SIZE_CAP: u32 = 100_000;
/// Float perimeter series cap.
pub const FLOAT_PERIMETER_CAP: u32 = 5_000;
/// Cap for exact max-part closed forms (primorial-sized numerators).
pub const EXACT_MAX_PART_CAP: u32 = 2_000;

/// Which arithmetic the series is computed in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    Exact,
    Float,
}

/// A single statistic value in the arithmetic it was computed in.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(BigRational),
    Float(f64),
}

impl Scalar {
    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(v) => rational_to_f64(v),
            Scalar::Float(v) => *v,
        }
    }

    pub fn exact(&self) -> Option<&BigRational> {
        match self {
            Scalar::Exact(v) => Some(v),
            Scalar::Float(_) => None,
        }
    }
}

#[derive(Clone, Debug)]
enum SeriesValues {
    Exact(Vec<BigRational>),
    Float(Vec<f64>),
}

/// A statistic evaluated for every index 0..=nmax.
///
/// Slot conventions: individual size and max-part series carry the empty
/// partition at slot 0 (value 1); individual perimeter series have 0 at
/// slot 0 since no partition has perimeter 0.  Cumulative series count the
/// empty partition exactly once: from slot 0 for size and max-part
/// ensembles, from slot 1 for perimeter ensembles.
#[derive(Clone, Debug)]
pub struct CoeffSeries {
    spec: EnsembleSpec,
    values: SeriesValues,
}

impl CoeffSeries {
    pub fn spec(&self) -> &EnsembleSpec {
        &self.spec
    }

    pub fn nmax(&self) -> u32 {
        let len = match &self.values {
            SeriesValues::Exact(v) => v.len(),
            SeriesValues::Float(v) => v.len(),
        };
        len as u32 - 1
    }

    pub fn backend(&self) -> Backend {
        match &self.values {
            SeriesValues::Exact(_) => Backend::Exact,
            SeriesValues::Float(_) => Backend::Float,
        }
    }

    /// The exact values, when computed exactly.
    pub fn exact_values(&self) -> Option<&[BigRational]> {
        match &self.values {
            SeriesValues::Exact(v) => Some(v),
            SeriesValues::Float(_) => None,
        }
    }

    pub fn exact_value(&self, n: u32) -> Option<&BigRational> {
        self.exact_values()?.get(n as usize)
    }

    /// The value at n as an f64 (correctly rounded for exact backends).
    pub fn value_f64(&self, n: u32) -> Option<f64> {
        match &self.values {
            SeriesValues::Exact(v) => v.get(n as usize).map(rational_to_f64),
            SeriesValues::Float(v) => v.get(n as usize).copied(),
        }
    }

    /// All values as f64, index 0..=nmax.
    pub fn values_f64(&self) -> Vec<f64> {
        match &self.values {
            SeriesValues::Exact(v) => v.iter().map(rational_to_f64).collect(),
            SeriesValues::Float(v) => v.clone(),
        }
    }

    /// Write exact values as `n;num/den` records; float series have no
    /// faithful text form and are refused.
    pub fn write_records<W: Write>(&self, w: W) -> Result<()> {
        match &self.values {
            SeriesValues::Exact(v) => rational::write_records(w, v),
            SeriesValues::Float(_) => Err(Error::Unsupported(
                "only exact series can be written as rational records".into(),
            )),
        }
    }

    /// Read records written by [`write_records`](Self::write_records) back
    /// into a series with the given spec.
    pub fn read_records<R: BufRead>(spec: EnsembleSpec, r: R) -> Result<Self> {
        let values = rational::read_records(r)?;
        if values.is_empty() {
            return Err(Error::MalformedData("series file has no records".into()));
        }
        Ok(Self {
            spec,
            values: SeriesValues::Exact(values),
        })
    }
}

/// Index of the first slot where two series differ, comparing exactly when
/// both are exact and by f64 bits otherwise.
pub fn first_mismatch(a: &CoeffSeries, b: &CoeffSeries) -> Option<u32> {
    let n = a.nmax().min(b.nmax());
    match (&a.values, &b.values) {
        (SeriesValues::Exact(x), SeriesValues::Exact(y)) => {
            (0..=n).find(|&i| x[i as usize] != y[i as usize])
        }
        _ => (0..=n).find(|&i| {
            a.value_f64(i).unwrap().to_bits() != b.value_f64(i).unwrap().to_bits()
        }),
    }
}

trait Coeff: Clone {
    fn coeff_zero() -> Self;
    fn coeff_one() -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn add_assign_val(&mut self, other: Self);
}

impl Coeff for BigRational {
    fn coeff_zero() -> Self {
        Zero::zero()
    }
    fn coeff_one() -> Self {
        One::one()
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn add_assign_val(&mut self, other: Self) {
        *self += other;
    }
}

impl Coeff for f64 {
    fn coeff_zero() -> Self {
        0.0
    }
    fn coeff_one() -> Self {
        1.0
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn add_assign_val(&mut self, other: Self) {
        *self += other;
    }
}

/// Coefficients of the size generating function: out[j] sums w over all
/// admissible partitions of j, out[0] = 1 for the empty partition.
fn size_dp<C: Coeff>(weights: &[C], min_part: u32, distinct: bool) -> Vec<C> {
    let n = weights.len() - 1;
    let mut out = vec![C::coeff_zero(); n + 1];
    out[0] = C::coeff_one();
    for k in min_part as usize..=n {
        if distinct {
            // each part at most once: sweep down so out[j-k] predates k
            for j in (k..=n).rev() {
                let t = out[j - k].mul_ref(&weights[k]);
                out[j].add_assign_val(t);
            }
        } else {
            // unbounded multiplicity: sweep up so out[j-k] already holds k
            for j in k..=n {
                let t = out[j - k].mul_ref(&weights[k]);
                out[j].add_assign_val(t);
            }
        }
    }
    out
}

/// Coefficients of the perimeter statistic: out[m + r] accumulates, for
/// each largest part m, the weighted count of r-element multisets (or
/// r-subsets) of smaller-or-equal parts completing the partition.
fn perimeter_dp<C: Coeff>(weights: &[C], min_part: u32, distinct: bool) -> Vec<C> {
    let n = weights.len() - 1;
    // t[r]: weighted sum over r-element part collections from the parts
    // introduced so far
    let mut t = vec![C::coeff_zero(); n + 1];
    t[0] = C::coeff_one();
    let mut out = vec![C::coeff_zero(); n + 1];
    for m in min_part as usize..=n {
        if distinct {
            // lead part m occurs once; companions are distinct parts < m,
            // so contribute before folding m into t
            for r in 0..=n - m {
                let v = t[r].mul_ref(&weights[m]);
                out[m + r].add_assign_val(v);
            }
            for r in (1..=n).rev() {
                let v = t[r - 1].mul_ref(&weights[m]);
                t[r].add_assign_val(v);
            }
        } else {
            // the lead part may repeat: fold m first, then contribute
            for r in 1..=n {
                let v = t[r - 1].mul_ref(&weights[m]);
                t[r].add_assign_val(v);
            }
            for r in 0..=n - m {
                let v = t[r].mul_ref(&weights[m]);
                out[m + r].add_assign_val(v);
            }
        }
    }
    out
}

fn restriction_params(restriction: Restriction) -> (u32, bool) {
    match restriction {
        Restriction::All => (1, false),
        Restriction::NoOnes => (2, false),
        Restriction::Distinct => (1, true),
    }
}

fn require_primes(table: &PrimeTable, nmax: u32) -> Result<()> {
    if table.count() < nmax as u64 {
        return Err(Error::OutOfRange(format!(
            "supernorm weights up to part {nmax} need the first {nmax} primes but only {} are \
             sieved; rebuild the table with limit at least {}",
            table.count(),
            nth_prime_limit_estimate(nmax as u64)
        )));
    }
    Ok(())
}

fn exact_weights(
    table: &PrimeTable,
    weight: Weight,
    beta: i32,
    nmax: u32,
) -> Result<Vec<BigRational>> {
    if weight == Weight::Supernorm {
        require_primes(table, nmax)?;
    }
    let mut w = Vec::with_capacity(nmax as usize + 1);
    w.push(BigRational::one()); // part 0 does not occur
    for k in 1..=nmax {
        let base = match weight {
            Weight::Norm => BigUint::from(k),
            Weight::Supernorm => BigUint::from(table.nth_prime(k as u64)?),
        };
        w.push(reciprocal_power(base, beta));
    }
    Ok(w)
}

fn float_weights(
    table: &PrimeTable,
    weight: Weight,
    beta: f64,
    nmax: u32,
) -> Result<Vec<f64>> {
    if weight == Weight::Supernorm {
        require_primes(table, nmax)?;
    }
    let mut w = Vec::with_capacity(nmax as usize + 1);
    w.push(1.0);
    for k in 1..=nmax {
        let base = match weight {
            Weight::Norm => k as f64,
            Weight::Supernorm => table.nth_prime(k as u64)? as f64,
        };
        w.push(base.powf(-beta));
    }
    Ok(w)
}

/// Evaluate the statistic described by `spec` for all indices 0..=nmax.
///
/// Size and perimeter ensembles run the generating-function programs in
/// the requested backend (exact backends need an integer exponent).
/// Max-part ensembles are served by closed forms and cover the supernorm
/// over unrestricted partitions and the norm over partitions without ones,
/// both at exponent 1.
pub fn series(
    table: &PrimeTable,
    spec: &EnsembleSpec,
    nmax: u32,
    backend: Backend,
) -> Result<CoeffSeries> {
    spec.validate()?;
    match spec.ensemble {
        Ensemble::Size | Ensemble::Perimeter => {
            let individual = finite_individual_series(table, spec, nmax, backend)?;
            match spec.mode {
                Mode::Individual => Ok(individual),
                Mode::Cumulative => cumulative(&individual),
            }
        }
        Ensemble::MaxPart => max_part_series(table, spec, nmax, backend),
    }
}

fn finite_individual_series(
    table: &PrimeTable,
    spec: &EnsembleSpec,
    nmax: u32,
    backend: Backend,
) -> Result<CoeffSeries> {
    let (cap, label) = match (spec.ensemble, backend) {
        (Ensemble::Size, Backend::Exact) => (EXACT_SIZE_CAP, "exact size"),
        (Ensemble::Size, Backend::Float) => (FLOAT_SIZE_CAP, "float size"),
        (Ensemble::Perimeter, Backend::Exact) => (EXACT_PERIMETER_CAP, "exact perimeter"),
        (Ensemble::Perimeter, Backend::Float) => (FLOAT_PERIMETER_CAP, "float perimeter"),
        (Ensemble::MaxPart, _) => unreachable!("finite ensembles only"),
    };
    if nmax > cap {
        return Err(Error::ResourceLimit(format!(
            "{label} series are capped at {cap}, got nmax = {nmax}"
        )));
    }
    let (min_part, distinct) = restriction_params(spec.restriction);
    let individual_spec = EnsembleSpec {
        mode: Mode::Individual,
        ..*spec
    };
    let values = match backend {
        Backend::Exact => {
            let beta = spec.integer_beta().ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "exact series need an integer exponent, got beta = {}; use the float backend",
                    spec.beta
                ))
            })?;
            let weights = exact_weights(table, spec.weight, beta, nmax)?;
            let dp = match spec.ensemble {
                Ensemble::Size => size_dp(&weights, min_part, distinct),
                _ => perimeter_dp(&weights, min_part, distinct),
            };
            SeriesValues::Exact(dp)
        }
        Backend::Float => {
            let weights = float_weights(table, spec.weight, spec.beta, nmax)?;
            let dp = match spec.ensemble {
                Ensemble::Size => size_dp(&weights, min_part, distinct),
                _ => perimeter_dp(&weights, min_part, distinct),
            };
            SeriesValues::Float(dp)
        }
    };
    Ok(CoeffSeries {
        spec: individual_spec,
        values,
    })
}

fn require_unit_beta(spec: &EnsembleSpec) -> Result<()> {
    if spec.integer_beta() != Some(1) {
        return Err(Error::Unsupported(format!(
            "max-part closed forms cover exponent 1 only, got beta = {}",
            spec.beta
        )));
    }
    Ok(())
}

fn max_part_series(
    table: &PrimeTable,
    spec: &EnsembleSpec,
    nmax: u32,
    backend: Backend,
) -> Result<CoeffSeries> {
    match (spec.weight, spec.restriction) {
        (Weight::Supernorm, Restriction::All) => {
            require_unit_beta(spec)?;
            max_supernorm_series(table, spec.mode, nmax, backend)
        }
        (Weight::Norm, Restriction::NoOnes) => {
            require_unit_beta(spec)?;
            let values: Vec<BigRational> =
                (0..=nmax).map(|n| max_norm_star(n, spec.mode)).collect();
            let values = match backend {
                Backend::Exact => SeriesValues::Exact(values),
                Backend::Float => {
                    SeriesValues::Float(values.iter().map(rational_to_f64).collect())
                }
            };
            Ok(CoeffSeries {
                spec: *spec,
                values,
            })
        }
        _ => Err(Error::Unsupported(format!(
            "no closed form is exposed for max-part statistics with {}; supported: supernorm \
             over all partitions, norm over partitions without ones",
            spec
        ))),
    }
}

/// The supernorm statistic over max-part ensembles for 0..=nmax, by its
/// closed product form.  Individual series put the empty partition at
/// slot 0.
pub fn max_supernorm_series(
    table: &PrimeTable,
    mode: Mode,
    nmax: u32,
    backend: Backend,
) -> Result<CoeffSeries> {
    if backend == Backend::Exact && nmax > EXACT_MAX_PART_CAP {
        return Err(Error::ResourceLimit(format!(
            "exact max-part closed forms are capped at {EXACT_MAX_PART_CAP}, got nmax = {nmax}"
        )));
    }
    require_primes(table, nmax)?;
    let spec = EnsembleSpec::new(Ensemble::MaxPart, mode, Restriction::All, Weight::Supernorm);
    let values = match backend {
        Backend::Exact => {
            let mut values = Vec::with_capacity(nmax as usize + 1);
            // running product over the first n primes of p/(p-1)
            let mut cumulative = BigRational::one();
            values.push(BigRational::one());
            for n in 1..=nmax {
                let p = table.nth_prime(n as u64)?;
                if mode == Mode::Individual {
                    // family at n: the cumulative value through n-1, scaled
                    // by the geometric factor 1/(p_n - 1)
                    values.push(cumulative.clone() / BigInt::from(p - 1));
                }
                cumulative *= BigRational::new(BigInt::from(p), BigInt::from(p - 1));
                if mode == Mode::Cumulative {
                    values.push(cumulative.clone());
                }
            }
            SeriesValues::Exact(values)
        }
        Backend::Float => {
            let mut values = Vec::with_capacity(nmax as usize + 1);
            let mut log_cumulative = KahanSum::new();
            values.push(1.0);
            for n in 1..=nmax {
                let p = table.nth_prime(n as u64)? as f64;
                if mode == Mode::Individual {
                    values.push(log_cumulative.value().exp() / (p - 1.0));
                }
                log_cumulative.add((1.0 / (p - 1.0)).ln_1p());
                if mode == Mode::Cumulative {
                    values.push(log_cumulative.value().exp());
                }
            }
            SeriesValues::Float(values)
        }
    };
    Ok(CoeffSeries { spec, values })
}

/// Cumulative supernorm statistic over partitions with largest part at
/// most n: the product of p/(p-1) over the first n primes.
pub fn max_supernorm_cumulative(table: &PrimeTable, n: u32, backend: Backend) -> Result<Scalar> {
    let series = max_supernorm_series(table, Mode::Cumulative, n, backend)?;
    Ok(series_tail(series))
}

/// Individual supernorm statistic over partitions with largest part
/// exactly n; slot 0 is the empty partition.  Evaluated in the
/// numerically stable form: the cumulative value through n-1 divided by
/// p_n - 1.
pub fn max_supernorm_individual(table: &PrimeTable, n: u32, backend: Backend) -> Result<Scalar> {
    let series = max_supernorm_series(table, Mode::Individual, n, backend)?;
    Ok(series_tail(series))
}

fn series_tail(series: CoeffSeries) -> Scalar {
    match series.values {
        SeriesValues::Exact(mut v) => Scalar::Exact(v.pop().expect("nonempty")),
        SeriesValues::Float(v) => Scalar::Float(*v.last().expect("nonempty")),
    }
}

/// Norm statistic over max-part ensembles of partitions without ones.
/// Individually the geometric sums telescope to 1 for every n >= 2 (and 0
/// at n = 1, where no admissible partition exists); cumulatively the
/// product telescopes to n.  Slot 0 is the empty partition.
pub fn max_norm_star(n: u32, mode: Mode) -> BigRational {
    let int = |v: u32| BigRational::from(BigInt::from(v));
    match mode {
        Mode::Individual => match n {
            0 => BigRational::one(),
            1 => BigRational::zero(),
            _ => BigRational::one(),
        },
        Mode::Cumulative => match n {
            0 => BigRational::one(),
            _ => int(n),
        },
    }
}

/// Independent route to [`max_norm_star`]: evaluate the defining geometric
/// products term by term instead of using the telescoped value.
pub fn max_norm_star_product_route(n: u32, mode: Mode) -> BigRational {
    // product over parts j in 2..=n of 1/(1 - 1/j) = j/(j-1): the weighted
    // sum over all multisets of parts from {2, ..., n}
    let product_through = |m: u32| -> BigRational {
        let mut acc = BigRational::one();
        for j in 2..=m {
            acc *= BigRational::new(BigInt::from(j), BigInt::from(j - 1));
        }
        acc
    };
    match mode {
        Mode::Individual => match n {
            0 => BigRational::one(),
            1 => BigRational::zero(),
            // lead part n joins any multiset of parts from {2..n}
            _ => product_through(n) / BigInt::from(n),
        },
        Mode::Cumulative => product_through(n),
    }
}

/// Turn an individual series into the cumulative one: slot n sums slots
/// 0..=n plus the empty-partition term, which enters at slot 0 for size
/// and max-part ensembles and at slot 1 for perimeter ensembles (the
/// empty partition has perimeter 1).
pub fn cumulative(series: &CoeffSeries) -> Result<CoeffSeries> {
    if series.spec.mode != Mode::Individual {
        return Err(Error::InvalidArgument(
            "cumulative() expects an individual series".into(),
        ));
    }
    let spec = EnsembleSpec {
        mode: Mode::Cumulative,
        ..series.spec
    };
    let perimeter = series.spec.ensemble == Ensemble::Perimeter;
    let values = match &series.values {
        SeriesValues::Exact(v) => {
            let mut out = Vec::with_capacity(v.len());
            let mut acc = if perimeter {
                out.push(BigRational::zero());
                BigRational::zero()
            } else {
                // slot 0 is the empty-partition term by convention
                out.push(BigRational::one());
                BigRational::one()
            };
            for (n, w) in v.iter().enumerate().skip(1) {
                if perimeter && n == 1 {
                    acc += BigRational::one();
                }
                acc += w;
                out.push(acc.clone());
            }
            SeriesValues::Exact(out)
        }
        SeriesValues::Float(v) => {
            let mut out = Vec::with_capacity(v.len());
            let mut acc = KahanSum::new();
            if perimeter {
                out.push(0.0);
            } else {
                acc.add(1.0);
                out.push(acc.value());
            }
            for (n, w) in v.iter().enumerate().skip(1) {
                if perimeter && n == 1 {
                    acc.add(1.0);
                }
                acc.add(*w);
                out.push(acc.value());
            }
            SeriesValues::Float(out)
        }
    };
    Ok(CoeffSeries { spec, values })
}

/// Exact inverse of [`cumulative`] on its image: recover the individual
/// series by first differences, undoing the empty-partition term.
pub fn difference(series: &CoeffSeries) -> Result<CoeffSeries> {
    if series.spec.mode != Mode::Cumulative {
        return Err(Error::InvalidArgument(
            "difference() expects a cumulative series".into(),
        ));
    }
    let spec = EnsembleSpec {
        mode: Mode::Individual,
        ..series.spec
    };
    let perimeter = series.spec.ensemble == Ensemble::Perimeter;
    let values = match &series.values {
        SeriesValues::Exact(v) => {
            let mut out = Vec::with_capacity(v.len());
            if perimeter {
                out.push(BigRational::zero());
            } else {
                out.push(v[0].clone());
            }
            for n in 1..v.len() {
                let mut d = &v[n] - &v[n - 1];
                if perimeter && n == 1 {
                    d -= BigRational::one();
                }
                out.push(d);
            }
            SeriesValues::Exact(out)
        }
        SeriesValues::Float(v) => {
            let mut out = Vec::with_capacity(v.len());
            out.push(if perimeter { 0.0 } else { v[0] });
            for n in 1..v.len() {
                let mut d = v[n] - v[n - 1];
                if perimeter && n == 1 {
                    d -= 1.0;
                }
                out.push(d);
            }
            SeriesValues::Float(out)
        }
    };
    Ok(CoeffSeries { spec, values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{oracle_stat, oracle_stat_f64};

    fn table() -> PrimeTable {
        PrimeTable::build(100_000).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn spec(e: Ensemble, m: Mode, r: Restriction, w: Weight) -> EnsembleSpec {
        EnsembleSpec::new(e, m, r, w)
    }

    #[test]
    fn frozen_small_values() {
        let t = table();
        let w_size = series(
            &t,
            &spec(Ensemble::Size, Mode::Individual, Restriction::All, Weight::Norm),
            3,
            Backend::Exact,
        )
        .unwrap();
        assert_eq!(
            w_size.exact_values().unwrap(),
            &[rat(1, 1), rat(1, 1), rat(3, 2), rat(11, 6)]
        );

        let wh_size = series(
            &t,
            &spec(Ensemble::Size, Mode::Individual, Restriction::All, Weight::Supernorm),
            3,
            Backend::Exact,
        )
        .unwrap();
        assert_eq!(wh_size.exact_value(2), Some(&rat(7, 12)));
        assert_eq!(wh_size.exact_value(3), Some(&rat(59, 120)));

        let wh_per = series(
            &t,
            &spec(Ensemble::Perimeter, Mode::Individual, Restriction::All, Weight::Supernorm),
            3,
            Backend::Exact,
        )
        .unwrap();
        assert_eq!(wh_per.exact_value(3), Some(&rat(217, 360)));

        let w_per = series(
            &t,
            &spec(Ensemble::Perimeter, Mode::Individual, Restriction::All, Weight::Norm),
            3,
            Backend::Exact,
        )
        .unwrap();
        assert_eq!(w_per.exact_value(0), Some(&rat(0, 1)));
        assert_eq!(w_per.exact_value(3), Some(&rat(25, 12)));

        // beta = 2 spot values
        let b2 = series(
            &t,
            &spec(Ensemble::Perimeter, Mode::Individual, Restriction::All, Weight::Norm)
                .with_beta(2.0),
            2,
            Backend::Exact,
        )
        .unwrap();
        assert_eq!(b2.exact_value(2), Some(&rat(5, 4)));
        let b2 = series(
            &t,
            &spec(Ensemble::Size, Mode::Individual, Restriction::All, Weight::Supernorm)
                .with_beta(2.0),
            2,
            Backend::Exact,
        )
        .unwrap();
        assert_eq!(b2.exact_value(2), Some(&rat(25, 144)));
    }

    #[test]
    fn series_agree_with_the_enumeration_oracle() {
        let t = table();
        for ensemble in [Ensemble::Size, Ensemble::Perimeter] {
            let nmax = match ensemble {
                Ensemble::Size => 14,
                _ => 12,
            };
            for restriction in [Restriction::All, Restriction::NoOnes, Restriction::Distinct] {
                for weight in [Weight::Norm, Weight::Supernorm] {
                    for mode in [Mode::Individual, Mode::Cumulative] {
                        for beta in [1.0, 2.0] {
                            let s = spec(ensemble, mode, restriction, weight).with_beta(beta);
                            let got = series(&t, &s, nmax, Backend::Exact).unwrap();
                            for n in 0..=nmax {
                                let want = oracle_stat(&t, &s, n).unwrap();
                                assert_eq!(
                                    got.exact_value(n),
                                    Some(&want),
                                    "{s} disagrees with the oracle at {n}"
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn float_backend_tracks_exact_and_oracle() {
        let t = table();
        for s in [
            spec(Ensemble::Size, Mode::Individual, Restriction::All, Weight::Norm),
            spec(Ensemble::Size, Mode::Cumulative, Restriction::Distinct, Weight::Supernorm),
            spec(Ensemble::Perimeter, Mode::Individual, Restriction::NoOnes, Weight::Norm),
            spec(Ensemble::Perimeter, Mode::Cumulative, Restriction::All, Weight::Supernorm),
        ] {
            let nmax = 20;
            let exact = series(&t, &s, nmax, Backend::Exact).unwrap();
            let float = series(&t, &s, nmax, Backend::Float).unwrap();
            for n in 0..=nmax {
                let e = exact.value_f64(n).unwrap();
                let f = float.value_f64(n).unwrap();
                assert!(
                    (f - e).abs() <= 1e-13 * e.abs().max(1.0),
                    "{s} at {n}: {f} vs {e}"
                );
            }
        }
        // non-integer exponents are float-only
        let s = spec(Ensemble::Size, Mode::Individual, Restriction::All, Weight::Norm)
            .with_beta(1.5);
        assert!(series(&t, &s, 10, Backend::Exact).is_err());
        let f = series(&t, &s, 10, Backend::Float).unwrap();
        let o = oracle_stat_f64(&t, &s, 10).unwrap();
        assert!((f.value_f64(10).unwrap() - o).abs() < 1e-13);
    }

    #[test]
    fn max_part_closed_forms() {
        let t = table();
        // cumulative: 2/1 * 3/2 * 5/4 = 15/4 at n = 3
        let c = max_supernorm_cumulative(&t, 3, Backend::Exact).unwrap();
        assert_eq!(c.exact(), Some(&rat(15, 4)));
        // individual: slot 0 is the empty partition; 3/4 at n = 3
        let w = max_supernorm_individual(&t, 0, Backend::Exact).unwrap();
        assert_eq!(w.exact(), Some(&rat(1, 1)));
        let w = max_supernorm_individual(&t, 1, Backend::Exact).unwrap();
        assert_eq!(w.exact(), Some(&rat(1, 1)));
        let w = max_supernorm_individual(&t, 3, Backend::Exact).unwrap();
        assert_eq!(w.exact(), Some(&rat(3, 4)));

        // float and exact routes agree
        for n in [1u32, 10, 100, 1000] {
            let e = max_supernorm_cumulative(&t, n, Backend::Exact).unwrap().to_f64();
            let f = max_supernorm_cumulative(&t, n, Backend::Float).unwrap().to_f64();
            assert!((f / e - 1.0).abs() < 1e-12, "n={n}: {f} vs {e}");
        }

        // the individual series sums back to the cumulative one
        let ind = max_supernorm_series(&t, Mode::Individual, 40, Backend::Exact).unwrap();
        let cum = cumulative(&ind).unwrap();
        let direct = max_supernorm_series(&t, Mode::Cumulative, 40, Backend::Exact).unwrap();
        assert_eq!(first_mismatch(&cum, &direct), None);
    }

    #[test]
    fn max_norm_star_routes_agree() {
        for mode in [Mode::Individual, Mode::Cumulative] {
            for n in 0..=200u32 {
                assert_eq!(
                    max_norm_star(n, mode),
                    max_norm_star_product_route(n, mode),
                    "mode {mode:?} at {n}"
                );
            }
        }
        assert_eq!(max_norm_star(1, Mode::Individual), BigRational::zero());
        assert_eq!(max_norm_star(7, Mode::Cumulative), rat(7, 1));
    }

    #[test]
    fn max_part_series_dispatch() {
        let t = table();
        let s = spec(Ensemble::MaxPart, Mode::Cumulative, Restriction::All, Weight::Supernorm);
        let got = series(&t, &s, 5, Backend::Exact).unwrap();
        assert_eq!(got.exact_value(3), Some(&rat(15, 4)));
        let s = spec(Ensemble::MaxPart, Mode::Cumulative, Restriction::NoOnes, Weight::Norm);
        let got = series(&t, &s, 7, Backend::Exact).unwrap();
        assert_eq!(got.exact_value(7), Some(&rat(7, 1)));
        // no closed form for distinct max-part supernorm
        let s = spec(Ensemble::MaxPart, Mode::Individual, Restriction::Distinct, Weight::Supernorm);
        assert!(matches!(
            series(&t, &s, 5, Backend::Exact),
            Err(Error::Unsupported(_))
        ));
        // beta != 1 unsupported for closed forms
        let s = spec(Ensemble::MaxPart, Mode::Cumulative, Restriction::All, Weight::Supernorm)
            .with_beta(2.0);
        assert!(series(&t, &s, 5, Backend::Exact).is_err());
    }

    #[test]
    fn cumulative_difference_round_trip() {
        let t = table();
        for s in [
            spec(Ensemble::Size, Mode::Individual, Restriction::All, Weight::Norm),
            spec(Ensemble::Perimeter, Mode::Individual, Restriction::All, Weight::Supernorm),
            spec(Ensemble::Perimeter, Mode::Individual, Restriction::Distinct, Weight::Norm),
        ] {
            let ind = series(&t, &s, 16, Backend::Exact).unwrap();
            let cum = cumulative(&ind).unwrap();
            assert_eq!(cum.spec().mode, Mode::Cumulative);
            let back = difference(&cum).unwrap();
            assert_eq!(first_mismatch(&ind, &back), None, "{s}");
            // and cumulative slots really are prefix sums with the empty term
            let direct = series(
                &t,
                &EnsembleSpec {
                    mode: Mode::Cumulative,
                    ..s
                },
                16,
                Backend::Exact,
            )
            .unwrap();
            assert_eq!(first_mismatch(&cum, &direct), None, "{s}");
        }
    }

    #[test]
    fn perimeter_empty_term_enters_at_slot_one() {
        let t = table();
        let s = spec(Ensemble::Perimeter, Mode::Cumulative, Restriction::All, Weight::Norm);
        let got = series(&t, &s, 2, Backend::Exact).unwrap();
        // no partition has perimeter 0; at 1 the empty partition joins (1)
        assert_eq!(got.exact_value(0), Some(&rat(0, 1)));
        assert_eq!(got.exact_value(1), Some(&rat(2, 1)));
        assert_eq!(got.exact_value(2), Some(&rat(7, 2)));
    }

    #[test]
    fn all_zero_individual_series_cumulates_to_the_empty_term() {
        let s = spec(Ensemble::Size, Mode::Individual, Restriction::All, Weight::Norm);
        let zeros = CoeffSeries {
            spec: s,
            values: SeriesValues::Exact(vec![BigRational::zero(); 5]),
        };
        let cum = cumulative(&zeros).unwrap();
        for n in 0..=4 {
            assert_eq!(cum.exact_value(n), Some(&BigRational::one()));
        }
    }

    #[test]
    fn record_round_trip_and_mismatch_detection() {
        let t = table();
        let s = spec(Ensemble::Size, Mode::Individual, Restriction::All, Weight::Supernorm);
        let ser = series(&t, &s, 10, Backend::Exact).unwrap();
        let mut buf = Vec::new();
        ser.write_records(&mut buf).unwrap();
        let back = CoeffSeries::read_records(s, &buf[..]).unwrap();
        assert_eq!(first_mismatch(&ser, &back), None);

        // corrupt slot 2 and check the first mismatch lands there
        let text = String::from_utf8(buf).unwrap();
        let corrupted: String = text
            .lines()
            .map(|l| {
                if l.starts_with("2;") {
                    "2;1/2\n".to_string()
                } else {
                    format!("{l}\n")
                }
            })
            .collect();
        let bad = CoeffSeries::read_records(s, corrupted.as_bytes()).unwrap();
        assert_eq!(first_mismatch(&ser, &bad), Some(2));
        assert_eq!(ser.exact_value(2), Some(&rat(7, 12)));
    }

    #[test]
    fn caps_and_mode_guards() {
        let t = table();
        let s = spec(Ensemble::Size, Mode::Individual, Restriction::All, Weight::Norm);
        assert!(matches!(
            series(&t, &s, EXACT_SIZE_CAP + 1, Backend::Exact),
            Err(Error::ResourceLimit(_))
        ));
        let s = spec(Ensemble::Perimeter, Mode::Individual, Restriction::All, Weight::Norm);
        assert!(series(&t, &s, EXACT_PERIMETER_CAP + 1, Backend::Exact).is_err());

        let ind = series(&t, &s, 5, Backend::Exact).unwrap();
        assert!(difference(&ind).is_err());
        let cum = cumulative(&ind).unwrap();
        assert!(cumulative(&cum).is_err());
    }

    #[test]
    fn supernorm_series_need_enough_primes() {
        let small = PrimeTable::build(20).unwrap(); // 8 primes
        let s = spec(Ensemble::Size, Mode::Individual, Restriction::All, Weight::Supernorm);
        let err = series(&small, &s, 20, Backend::Exact).unwrap_err();
        assert!(err.to_string().contains("primes"));
    }
}
