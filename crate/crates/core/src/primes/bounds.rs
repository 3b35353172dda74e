//! Explicit two-sided bounds on the nth prime and its logarithms.
//!
//! Every verifier scans a contiguous index range and reports the *worst
//! signed margin*: the smallest value of (allowed slack - observed
//! deviation) over the range.  A nonnegative worst margin means the bound
//! held everywhere; how close to zero it came says how much room is left.

use crate::error::{Error, Result};
use crate::primes::PrimeTable;

/// Outcome of scanning one inequality over a range.
#[derive(Clone, Debug)]
pub struct BoundReport {
    /// Which inequality was scanned.
    pub bound_name: String,
    /// Inclusive scan range (prime indices or x values, per the verifier).
    pub range: (u64, u64),
    /// True iff the worst margin is nonnegative.
    pub all_hold: bool,
    /// Smallest signed margin seen; negative means a violation.
    pub worst_margin: f64,
    /// Where the worst margin occurred.
    pub worst_at: u64,
}

/// Running minimum of signed margins, keeping the first location of the
/// minimum when scanned in increasing order.
#[derive(Clone, Debug)]
pub struct MarginTracker {
    worst: f64,
    at: u64,
}

impl MarginTracker {
    pub fn new() -> Self {
        Self {
            worst: f64::INFINITY,
            at: 0,
        }
    }

    pub fn observe(&mut self, margin: f64, at: u64) {
        if margin < self.worst {
            self.worst = margin;
            self.at = at;
        }
    }

    pub fn into_report(self, bound_name: &str, range: (u64, u64)) -> BoundReport {
        BoundReport {
            bound_name: bound_name.to_string(),
            range,
            all_hold: self.worst >= 0.0,
            worst_margin: self.worst,
            worst_at: self.at,
        }
    }
}

impl Default for MarginTracker {
    fn default() -> Self {
        Self::new()
    }
}

/// Scan three nth-prime inequalities for every index in `n_range`
/// (inclusive, 1-based, start >= 6):
///
/// 1. `n ln n <= p_n <= n (ln n + ln ln n)`
/// 2. `ln n + ln ln n <= ln p_n <= ln n + ln ln n + (ln ln n)/(ln n)`
/// 3. `|ln ln p_n - ln ln n - (ln ln n)/(ln n)| <= 2 ((ln ln n)/(ln n))^2`
///
/// Returns one report per inequality, in that order.
pub fn verify_prime_bounds(table: &PrimeTable, n_range: (u64, u64)) -> Result<Vec<BoundReport>> {
    let (start, end) = n_range;
    if start < 6 || start > end {
        return Err(Error::InvalidArgument(format!(
            "nth-prime bounds need 6 <= start <= end, got ({start}, {end})"
        )));
    }
    if end > table.count() {
        return Err(Error::OutOfRange(format!(
            "range end {end} exceeds the {} primes sieved (limit {})",
            table.count(),
            table.limit()
        )));
    }

    let mut window = MarginTracker::new();
    let mut log_window = MarginTracker::new();
    let mut loglog = MarginTracker::new();

    for n in start..=end {
        let p = table.primes()[n as usize - 1] as f64;
        let x = n as f64;
        let ln = x.ln();
        let lnln = ln.ln();
        let q = lnln / ln;

        window.observe(p - x * ln, n);
        window.observe(x * (ln + lnln) - p, n);

        let lp = p.ln();
        log_window.observe(lp - (ln + lnln), n);
        log_window.observe(ln + lnln + q - lp, n);

        loglog.observe(2.0 * q * q - (lp.ln() - lnln - q).abs(), n);
    }

    Ok(vec![
        window.into_report("nth-prime-window", n_range),
        log_window.into_report("log-nth-prime-window", n_range),
        loglog.into_report("loglog-nth-prime-expansion", n_range),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tracker_keeps_first_minimum() {
        let mut t = MarginTracker::new();
        t.observe(3.0, 1);
        t.observe(-1.0, 2);
        t.observe(-1.0, 3);
        t.observe(0.5, 4);
        let r = t.into_report("demo", (1, 4));
        assert!(!r.all_hold);
        assert_eq!(r.worst_margin, -1.0);
        assert_eq!(r.worst_at, 2);
    }

    #[test]
    fn report_consistency_invariant() {
        let mut t = MarginTracker::new();
        t.observe(0.0, 7);
        let r = t.into_report("edge", (7, 7));
        assert!(r.all_hold);
        assert_eq!(r.worst_margin, 0.0);
    }

    #[test]
    fn bounds_hold_on_a_medium_range() {
        let table = PrimeTable::build(2_000_000).unwrap();
        let n = table.count();
        let reports = verify_prime_bounds(&table, (6, n)).unwrap();
        assert_eq!(reports.len(), 3);
        for r in &reports {
            assert!(r.all_hold, "{} failed at {}", r.bound_name, r.worst_at);
            assert!(r.worst_margin >= 0.0);
        }
    }

    #[test]
    fn range_preconditions_are_enforced() {
        let table = PrimeTable::build(1_000).unwrap();
        assert!(verify_prime_bounds(&table, (5, 100)).is_err());
        assert!(verify_prime_bounds(&table, (10, 6)).is_err());
        assert!(verify_prime_bounds(&table, (6, 10_000)).is_err());
    }

    #[test]
    fn small_indices_sit_inside_the_window() {
        // p_6 = 13: 6 ln 6 = 10.75, 6(ln 6 + ln ln 6) = 14.24
        let table = PrimeTable::build(100).unwrap();
        let reports = verify_prime_bounds(&table, (6, 6)).unwrap();
        assert!(reports.iter().all(|r| r.all_hold));
    }
}
