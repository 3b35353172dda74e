//! Prime reciprocal sums, the Euler product over primes, and scanning
//! verifiers for their explicit error windows.
//!
//! The float paths accumulate in log space with compensated summation, so
//! products over millions of primes keep close to full double precision.
//! Deviations from the asymptotic values move monotonically between
//! consecutive primes, so each verifier evaluates both endpoints of every
//! inter-prime gap; the scan is exhaustive over real arguments, not just
//! at primes.

use num_bigint::BigInt;
use num_traits::One;

use crate::constants::MathConstants;
use crate::error::{Error, Result};
use crate::kahan::KahanSum;
use crate::primes::{BoundReport, MarginTracker, PrimeTable};
use crate::BigRational;

/// Smallest x at which the window inequalities scanned by
/// [`verify_mertens_bounds`] are certified to hold.
pub const MERTENS_BOUND_THRESHOLD: u64 = 2_278_383;

fn check_x_in_table(table: &PrimeTable, x: u64, what: &str) -> Result<()> {
    if x < 2 {
        return Err(Error::InvalidArgument(format!("{what}({x}) needs x >= 2")));
    }
    if x > table.limit() {
        return Err(Error::OutOfRange(format!(
            "{what}({x}) exceeds the sieve limit {}",
            table.limit()
        )));
    }
    Ok(())
}

/// Sum of 1/p over primes p <= x.
pub fn reciprocal_prime_sum(table: &PrimeTable, x: u64) -> Result<f64> {
    check_x_in_table(table, x, "reciprocal_prime_sum")?;
    let mut s = KahanSum::new();
    for &p in table.primes() {
        if p > x {
            break;
        }
        s.add(1.0 / p as f64);
    }
    Ok(s.value())
}

/// Product of (1 - 1/p) over primes p <= x, as a float via log space.
pub fn mertens_product(table: &PrimeTable, x: u64) -> Result<f64> {
    Ok((-log_reciprocal_product(table, x, "mertens_product")?).exp())
}

/// Product of (1 - 1/p) over primes p <= x, exactly.
pub fn mertens_product_exact(table: &PrimeTable, x: u64) -> Result<BigRational> {
    check_x_in_table(table, x, "mertens_product_exact")?;
    let mut r = BigRational::one();
    for &p in table.primes() {
        if p > x {
            break;
        }
        r *= BigRational::new(BigInt::from(p - 1), BigInt::from(p));
    }
    Ok(r)
}

/// Product of p/(p-1) over primes p <= x, as a float via log space.
pub fn reciprocal_mertens_product(table: &PrimeTable, x: u64) -> Result<f64> {
    Ok(log_reciprocal_product(table, x, "reciprocal_mertens_product")?.exp())
}

/// Product of p/(p-1) over primes p <= x, exactly.
pub fn reciprocal_mertens_product_exact(table: &PrimeTable, x: u64) -> Result<BigRational> {
    check_x_in_table(table, x, "reciprocal_mertens_product_exact")?;
    let mut r = BigRational::one();
    for &p in table.primes() {
        if p > x {
            break;
        }
        r *= BigRational::new(BigInt::from(p), BigInt::from(p - 1));
    }
    Ok(r)
}

/// Sum of ln(p/(p-1)) = ln1p(1/(p-1)) over primes p <= x.
fn log_reciprocal_product(table: &PrimeTable, x: u64, what: &str) -> Result<f64> {
    check_x_in_table(table, x, what)?;
    let mut l = KahanSum::new();
    for &p in table.primes() {
        if p > x {
            break;
        }
        l.add((1.0 / (p as f64 - 1.0)).ln_1p());
    }
    Ok(l.value())
}

struct WindowTrackers {
    sum: MarginTracker,
    product: MarginTracker,
    reciprocal: MarginTracker,
}

impl WindowTrackers {
    fn new() -> Self {
        Self {
            sum: MarginTracker::new(),
            product: MarginTracker::new(),
            reciprocal: MarginTracker::new(),
        }
    }

    /// Record all six margins at one argument.  `s` is the reciprocal prime
    /// sum and `l` the log reciprocal product for the primes counted at x.
    fn eval(&mut self, x: u64, s: f64, l: f64, c: &MathConstants) {
        let ln_x = (x as f64).ln();
        let lnln_x = ln_x.ln();
        let ln3 = ln_x * ln_x * ln_x;
        let fifth = 1.0 / (5.0 * ln3);
        let quarter = 1.0 / (4.0 * ln3);

        let dev_sum = s - lnln_x - c.mertens_m;
        self.sum.observe(fifth - dev_sum, x);
        self.sum.observe(fifth + dev_sum, x);

        let dev_product = (-l).exp() * ln_x / c.e_neg_gamma - 1.0;
        self.product.observe(fifth - dev_product, x);
        self.product.observe(fifth + dev_product, x);

        let dev_reciprocal = l.exp() / (c.e_gamma * ln_x) - 1.0;
        self.reciprocal.observe(quarter - dev_reciprocal, x);
        self.reciprocal.observe(quarter + dev_reciprocal, x);
    }
}

/// Scan three explicit windows for every real x in `x_range` (inclusive,
/// start >= 2278383):
///
/// 1. `|sum(1/p, p <= x) - ln ln x - M| <= 1/(5 ln^3 x)`
/// 2. relative deviation of `prod(1 - 1/p) * ln x` from `e^-gamma` is at
///    most `1/(5 ln^3 x)`
/// 3. relative deviation of `prod(p/(p-1))` from `e^gamma ln x` is at most
///    `1/(4 ln^3 x)`
///
/// Between consecutive primes each deviation is monotone, so evaluating at
/// every prime in range plus both range endpoints covers all real x.
/// Returns one report per window, in that order.
pub fn verify_mertens_bounds(
    table: &PrimeTable,
    consts: &MathConstants,
    x_range: (u64, u64),
) -> Result<Vec<BoundReport>> {
    let (start, end) = x_range;
    if start < MERTENS_BOUND_THRESHOLD {
        return Err(Error::InvalidArgument(format!(
            "window scans are certified only for x >= {MERTENS_BOUND_THRESHOLD}, got start {start}"
        )));
    }
    if start > end {
        return Err(Error::InvalidArgument(format!(
            "empty scan range ({start}, {end})"
        )));
    }
    if end > table.limit() {
        return Err(Error::OutOfRange(format!(
            "range end {end} exceeds the sieve limit {}",
            table.limit()
        )));
    }

    let primes = table.primes();
    let mut s = KahanSum::new();
    let mut l = KahanSum::new();
    let first = primes.partition_point(|&p| p < start);
    for &p in &primes[..first] {
        s.add(1.0 / p as f64);
        l.add((1.0 / (p as f64 - 1.0)).ln_1p());
    }

    let mut t = WindowTrackers::new();
    if first >= primes.len() || primes[first] != start {
        t.eval(start, s.value(), l.value(), consts);
    }
    let mut i = first;
    let mut last_evaluated = start;
    while i < primes.len() && primes[i] <= end {
        let p = primes[i];
        if p > start {
            // limit from the left: the sums do not yet include p
            t.eval(p, s.value(), l.value(), consts);
        }
        s.add(1.0 / p as f64);
        l.add((1.0 / (p as f64 - 1.0)).ln_1p());
        t.eval(p, s.value(), l.value(), consts);
        last_evaluated = p;
        i += 1;
    }
    if end > last_evaluated {
        t.eval(end, s.value(), l.value(), consts);
    }

    Ok(vec![
        t.sum.into_report("mertens-sum-window", x_range),
        t.product.into_report("mertens-product-window", x_range),
        t.reciprocal
            .into_report("reciprocal-mertens-product-window", x_range),
    ])
}

/// Scan `sum(1/ln p_j, j <= n) <= 3n/ln n` for every n in `n_range`
/// (inclusive, 1-based indices, start >= 2).
pub fn verify_log_prime_sum_bound(table: &PrimeTable, n_range: (u64, u64)) -> Result<BoundReport> {
    let (start, end) = n_range;
    if start < 2 || start > end {
        return Err(Error::InvalidArgument(format!(
            "log prime sum scan needs 2 <= start <= end, got ({start}, {end})"
        )));
    }
    if end > table.count() {
        return Err(Error::OutOfRange(format!(
            "range end {end} exceeds the {} primes sieved (limit {})",
            table.count(),
            table.limit()
        )));
    }

    let mut sum = KahanSum::new();
    let mut tracker = MarginTracker::new();
    for (i, &p) in table.primes()[..end as usize].iter().enumerate() {
        sum.add(1.0 / (p as f64).ln());
        let n = (i + 1) as u64;
        if n >= start {
            let x = n as f64;
            tracker.observe(3.0 * x / x.ln() - sum.value(), n);
        }
    }
    Ok(tracker.into_report("log-prime-reciprocal-sum", n_range))
}
