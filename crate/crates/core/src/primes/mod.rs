//! Prime generation and the explicit prime-counting bounds.
//!
//! A [`PrimeTable`] holds every prime up to a chosen limit, produced by a
//! segmented sieve of Eratosthenes so the working set stays cache-sized no
//! matter how large the limit is.  The table is the substrate for the
//! Mertens sums and products in [`mertens`] and the nth-prime bounds in
//! [`bounds`]; both report signed margins instead of bare booleans so a
//! near-failure is visible.

mod bounds;
mod mertens;

pub use bounds::{verify_prime_bounds, BoundReport, MarginTracker};
pub use mertens::{
    mertens_product, mertens_product_exact, reciprocal_mertens_product,
    reciprocal_mertens_product_exact, reciprocal_prime_sum, verify_log_prime_sum_bound,
    verify_mertens_bounds, MERTENS_BOUND_THRESHOLD,
};

use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};

/// Largest sieve limit accepted before the prime vector alone would cross
/// roughly 1.5 GiB.
pub const MAX_SIEVE_LIMIT: u64 = 4_000_000_000;

/// Default number of odd values per sieve segment (covers 2^21 integers,
/// a 1 MiB working set).
pub const DEFAULT_SEGMENT_LEN: usize = 1 << 20;

const CACHE_MAGIC: &[u8; 8] = b"PTBLv001";

/// All primes up to a fixed limit, in increasing order.
#[derive(Clone, Debug)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
}

impl PrimeTable {
    /// Sieve every prime `<= limit` with the default segment size.
    pub fn build(limit: u64) -> Result<Self> {
        Self::build_with_segment(limit, DEFAULT_SEGMENT_LEN)
    }

    /// Sieve with an explicit segment length (in odd values per segment).
    pub fn build_with_segment(limit: u64, segment_len: usize) -> Result<Self> {
        if limit < 2 {
            return Err(Error::InvalidArgument(format!(
                "sieve limit must be at least 2, got {limit}"
            )));
        }
        if limit > MAX_SIEVE_LIMIT {
            return Err(Error::ResourceLimit(format!(
                "sieve limit {limit} exceeds the configured budget of {MAX_SIEVE_LIMIT}"
            )));
        }
        let segment_len = segment_len.max(1 << 10);

        // Base primes up to sqrt(limit) from a plain sieve; they seed every
        // segment's composite marking.
        let root = (limit as f64).sqrt() as u64 + 1;
        let base = simple_sieve(root.min(limit));

        // pi(x) ~ x/ln x; 15% headroom avoids reallocation for x >= 100.
        let estimate = if limit >= 100 {
            (limit as f64 / (limit as f64).ln() * 1.15) as usize
        } else {
            30
        };
        let mut primes = Vec::with_capacity(estimate);
        primes.push(2);

        // Each segment covers the odd values low, low+2, ..., low+2*(len-1).
        let mut sieve = vec![true; segment_len];
        let mut low: u64 = 3;
        while low <= limit {
            let span = 2 * segment_len as u64;
            let mut high = low.saturating_add(span - 2).min(limit);
            if high % 2 == 0 {
                // low is odd and low <= high, so high-1 stays in range
                high -= 1;
            }
            let len = ((high - low) / 2 + 1) as usize;
            sieve[..len].fill(true);
            for &p in base.iter().skip(1) {
                // skip 2: odds only
                if p * p > high {
                    break;
                }
                // first odd multiple of p in [max(p*p, low), high]
                let mut start = p * p;
                if start < low {
                    let k = (low + p - 1) / p;
                    start = k * p;
                    if start % 2 == 0 {
                        start += p;
                    }
                }
                let mut idx = ((start - low) / 2) as usize;
                while idx < len {
                    sieve[idx] = false;
                    idx += p as usize;
                }
            }
            for (i, &is_prime) in sieve[..len].iter().enumerate() {
                if is_prime {
                    let v = low + 2 * i as u64;
                    if v <= limit {
                        primes.push(v);
                    }
                }
            }
            low += span;
        }

        Ok(Self { limit, primes })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Number of primes in the table, i.e. pi(limit).
    pub fn count(&self) -> u64 {
        self.primes.len() as u64
    }

    /// The primes in increasing order; `primes()[i]` is the (i+1)-st prime.
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// The nth prime, 1-based; by convention `nth_prime(0) = 1`.
    pub fn nth_prime(&self, n: u64) -> Result<u64> {
        if n == 0 {
            return Ok(1);
        }
        self.primes.get(n as usize - 1).copied().ok_or_else(|| {
            Error::OutOfRange(format!(
                "nth_prime({n}) exceeds the {} primes sieved (limit {}); a sieve limit of at \
                 least {} is needed",
                self.primes.len(),
                self.limit,
                nth_prime_limit_estimate(n)
            ))
        })
    }

    /// Number of primes `<= x` (pi function restricted to the table range).
    pub fn pi(&self, x: u64) -> Result<u64> {
        if x > self.limit {
            return Err(Error::OutOfRange(format!(
                "pi({x}) exceeds the sieve limit {}",
                self.limit
            )));
        }
        Ok(self.primes.partition_point(|&p| p <= x) as u64)
    }

    pub fn is_prime(&self, x: u64) -> Result<bool> {
        if x > self.limit {
            return Err(Error::OutOfRange(format!(
                "is_prime({x}) exceeds the sieve limit {}",
                self.limit
            )));
        }
        Ok(self.primes.binary_search(&x).is_ok())
    }

    /// Write the table to a binary cache: an 8-byte magic, the limit as a
    /// little-endian u64, then each prime as a little-endian u64.
    pub fn write_cache<P: AsRef<Path>>(&self, path: P) -> Result<()> {
        let mut buf = Vec::with_capacity(16 + 8 * self.primes.len());
        buf.extend_from_slice(CACHE_MAGIC);
        buf.extend_from_slice(&self.limit.to_le_bytes());
        for &p in &self.primes {
            buf.extend_from_slice(&p.to_le_bytes());
        }
        let mut f = fs::File::create(path)?;
        f.write_all(&buf)?;
        Ok(())
    }

    /// Load a table written by [`write_cache`](Self::write_cache), validating
    /// the magic, record alignment, strict monotonicity, and the limit.
    pub fn load_cache<P: AsRef<Path>>(path: P) -> Result<Self> {
        let mut raw = Vec::new();
        fs::File::open(path)?.read_to_end(&mut raw)?;
        if raw.len() < 16 || &raw[..8] != CACHE_MAGIC {
            return Err(Error::MalformedData(
                "prime table cache: bad magic or truncated header".into(),
            ));
        }
        if (raw.len() - 16) % 8 != 0 {
            return Err(Error::MalformedData(
                "prime table cache: payload is not a whole number of u64 records".into(),
            ));
        }
        let limit = u64::from_le_bytes(raw[8..16].try_into().unwrap());
        let mut primes = Vec::with_capacity((raw.len() - 16) / 8);
        for chunk in raw[16..].chunks_exact(8) {
            primes.push(u64::from_le_bytes(chunk.try_into().unwrap()));
        }
        if primes.first() != Some(&2) {
            return Err(Error::MalformedData(
                "prime table cache: table must start at 2".into(),
            ));
        }
        if !primes.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::MalformedData(
                "prime table cache: primes are not strictly increasing".into(),
            ));
        }
        if primes.last().copied().unwrap_or(0) > limit {
            return Err(Error::MalformedData(
                "prime table cache: entries exceed the recorded limit".into(),
            ));
        }
        Ok(Self { limit, primes })
    }
}

/// Upper estimate of the sieve limit needed to reach the nth prime.
pub fn nth_prime_limit_estimate(n: u64) -> u64 {
    if n < 6 {
        return 15;
    }
    let x = n as f64;
    (x * (x.ln() + x.ln().ln())).ceil() as u64 + 16
}

fn simple_sieve(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}
