//! Integer partitions in multiplicity form, their statistics, and the
//! ensemble descriptors the rest of the crate is parameterized by.
//!
//! A partition is stored as runs `(part, multiplicity)` with parts strictly
//! decreasing, so `[(3,1),(1,2)]` is the partition 3+1+1.  The weights of
//! interest are the norm (product of the parts) and the supernorm (product
//! of the indexed primes `p_part`); the supernorm maps the set of all
//! partitions bijectively onto the positive integers.

mod count;
mod enumerate;

pub use count::{ensemble_count, partition_count, Count};
pub use enumerate::{
    enumerate_by_perimeter, enumerate_by_size, enumerate_by_size_with_max_part,
    enumerate_by_supernorm_bound, PerimeterPartitions, SizePartitions, SupernormBoundedPartitions,
};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::primes::PrimeTable;

/// Which subfamily of partitions an ensemble ranges over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Restriction {
    /// No restriction.
    All,
    /// Partitions with no part equal to 1.
    NoOnes,
    /// Partitions with pairwise distinct parts.
    Distinct,
}

/// How partitions are grouped into finite families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ensemble {
    /// All partitions of n.
    Size,
    /// All partitions with largest part + length - 1 = n.
    Perimeter,
    /// All partitions with largest part exactly n (or at most n,
    /// cumulatively); infinite families.
    MaxPart,
}

/// Individual statistics sum over one family; cumulative statistics sum
/// over all families up to the index, plus one term for the empty
/// partition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Individual,
    Cumulative,
}

/// The multiplicative weight whose reciprocal powers are summed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Weight {
    /// Product of the parts.
    Norm,
    /// Product of the primes indexed by the parts.
    Supernorm,
}

/// Full description of one statistic family: sum of weight^(-beta) over an
/// ensemble.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnsembleSpec {
    pub ensemble: Ensemble,
    pub mode: Mode,
    pub restriction: Restriction,
    pub weight: Weight,
    pub beta: f64,
}

impl EnsembleSpec {
    /// A spec with the default exponent beta = 1.
    pub fn new(ensemble: Ensemble, mode: Mode, restriction: Restriction, weight: Weight) -> Self {
        Self {
            ensemble,
            mode,
            restriction,
            weight,
            beta: 1.0,
        }
    }

    pub fn with_beta(mut self, beta: f64) -> Self {
        self.beta = beta;
        self
    }

    /// The exponent as an integer, if it is one (required by exact backends).
    pub fn integer_beta(&self) -> Option<i32> {
        if self.beta.fract() == 0.0 && self.beta.abs() <= i32::MAX as f64 {
            Some(self.beta as i32)
        } else {
            None
        }
    }

    /// Reject combinations whose defining sum diverges for every beta > 0:
    /// with unrestricted max-part ensembles the partitions (n, 1, ..., 1)
    /// all share norm n, so the norm-weighted sum has infinitely many equal
    /// terms.
    pub fn validate(&self) -> Result<()> {
        if !self.beta.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "beta must be finite, got {}",
                self.beta
            )));
        }
        if self.ensemble == Ensemble::MaxPart
            && self.weight == Weight::Norm
            && self.restriction == Restriction::All
        {
            return Err(Error::Divergent(
                "max-part ensembles weighted by the norm diverge without a part restriction: \
                 appending parts equal to 1 leaves the norm unchanged"
                    .into(),
            ));
        }
        Ok(())
    }
}

impl fmt::Display for EnsembleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = match self.ensemble {
            Ensemble::Size => "size",
            Ensemble::Perimeter => "perimeter",
            Ensemble::MaxPart => "max-part",
        };
        let m = match self.mode {
            Mode::Individual => "individual",
            Mode::Cumulative => "cumulative",
        };
        let r = match self.restriction {
            Restriction::All => "all",
            Restriction::NoOnes => "no-ones",
            Restriction::Distinct => "distinct",
        };
        let w = match self.weight {
            Weight::Norm => "norm",
            Weight::Supernorm => "supernorm",
        };
        write!(f, "{e}/{m}/{r}/{w}/beta={}", self.beta)
    }
}

/// An integer partition in canonical multiplicity form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    /// Runs (part, multiplicity), parts strictly decreasing, all nonzero.
    runs: Vec<(u32, u32)>,
}

impl Partition {
    /// The empty partition.
    pub fn empty() -> Self {
        Self { runs: Vec::new() }
    }

    /// Build from parts in any order; zero parts are rejected.
    pub fn from_parts<I: IntoIterator<Item = u32>>(parts: I) -> Result<Self> {
        let mut v: Vec<u32> = parts.into_iter().collect();
        if v.contains(&0) {
            return Err(Error::InvalidArgument("partition parts must be >= 1".into()));
        }
        v.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self::from_sorted_desc(&v))
    }

    /// Build from (part, multiplicity) pairs; duplicate parts accumulate,
    /// zero multiplicities are dropped, zero parts are rejected.
    pub fn from_multiplicities<I: IntoIterator<Item = (u32, u32)>>(pairs: I) -> Result<Self> {
        let mut v: Vec<(u32, u32)> = Vec::new();
        for (part, mult) in pairs {
            if part == 0 {
                return Err(Error::InvalidArgument("partition parts must be >= 1".into()));
            }
            if mult > 0 {
                v.push((part, mult));
            }
        }
        v.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let mut runs: Vec<(u32, u32)> = Vec::with_capacity(v.len());
        for (part, mult) in v {
            match runs.last_mut() {
                Some((p, m)) if *p == part => *m += mult,
                _ => runs.push((part, mult)),
            }
        }
        Ok(Self { runs })
    }

    /// Fast path used by the enumerators: `parts` is already sorted in
    /// nonincreasing order with no zeros.
    pub(crate) fn from_sorted_desc(parts: &[u32]) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(!parts.contains(&0));
        let mut runs: Vec<(u32, u32)> = Vec::new();
        for &part in parts {
            match runs.last_mut() {
                Some((p, m)) if *p == part => *m += 1,
                _ => runs.push((part, 1)),
            }
        }
        Self { runs }
    }

    /// The runs (part, multiplicity) with parts strictly decreasing.
    pub fn runs(&self) -> &[(u32, u32)] {
        &self.runs
    }

    /// The parts in nonincreasing order, with repetition.
    pub fn parts(&self) -> impl Iterator<Item = u32> + '_ {
        self.runs
            .iter()
            .flat_map(|&(p, m)| std::iter::repeat(p).take(m as usize))
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    /// Number of parts.
    pub fn length(&self) -> u64 {
        self.runs.iter().map(|&(_, m)| m as u64).sum()
    }

    /// Sum of the parts.
    pub fn size(&self) -> u64 {
        self.runs.iter().map(|&(p, m)| p as u64 * m as u64).sum()
    }

    /// The largest part; 0 for the empty partition.
    pub fn largest_part(&self) -> u32 {
        self.runs.first().map_or(0, |&(p, _)| p)
    }

    /// Largest part + length - 1; the empty partition has perimeter 1.
    pub fn perimeter(&self) -> u64 {
        if self.runs.is_empty() {
            1
        } else {
            self.largest_part() as u64 + self.length() - 1
        }
    }

    pub fn has_ones(&self) -> bool {
        self.runs.last().is_some_and(|&(p, _)| p == 1)
    }

    pub fn is_distinct(&self) -> bool {
        self.runs.iter().all(|&(_, m)| m == 1)
    }

    pub fn satisfies(&self, restriction: Restriction) -> bool {
        match restriction {
            Restriction::All => true,
            Restriction::NoOnes => !self.has_ones(),
            Restriction::Distinct => self.is_distinct(),
        }
    }

    /// Product of the parts; 1 for the empty partition.
    pub fn norm(&self) -> BigUint {
        match self.norm_u128() {
            Some(n) => BigUint::from(n),
            None => self
                .runs
                .iter()
                .fold(BigUint::one(), |acc, &(p, m)| acc * BigUint::from(p).pow(m)),
        }
    }

    /// The norm when it fits in a u128.
    pub fn norm_u128(&self) -> Option<u128> {
        let mut acc: u128 = 1;
        for &(p, m) in &self.runs {
            for _ in 0..m {
                acc = acc.checked_mul(p as u128)?;
            }
        }
        Some(acc)
    }

    /// Product of `p_part` over the parts; 1 for the empty partition.
    /// Needs the table to contain the prime indexed by the largest part.
    pub fn supernorm(&self, table: &PrimeTable) -> Result<BigUint> {
        if let Some(n) = self.supernorm_u128(table)? {
            return Ok(BigUint::from(n));
        }
        let mut acc = BigUint::one();
        for &(p, m) in &self.runs {
            acc *= BigUint::from(table.nth_prime(p as u64)?).pow(m);
        }
        Ok(acc)
    }

    /// The supernorm when it fits in a u128; Err if the table is too small.
    pub fn supernorm_u128(&self, table: &PrimeTable) -> Result<Option<u128>> {
        let mut acc: u128 = 1;
        for &(p, m) in &self.runs {
            let prime = table.nth_prime(p as u64)? as u128;
            for _ in 0..m {
                acc = match acc.checked_mul(prime) {
                    Some(v) => v,
                    None => return Ok(None),
                };
            }
        }
        Ok(Some(acc))
    }

    /// Multiset union: multiplicities add.  Both the norm and the supernorm
    /// are multiplicative over this operation.
    pub fn multiset_union(&self, other: &Self) -> Self {
        let mut runs = Vec::with_capacity(self.runs.len() + other.runs.len());
        let (mut i, mut j) = (0, 0);
        while i < self.runs.len() && j < other.runs.len() {
            let (pa, ma) = self.runs[i];
            let (pb, mb) = other.runs[j];
            match pa.cmp(&pb) {
                std::cmp::Ordering::Greater => {
                    runs.push((pa, ma));
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    runs.push((pb, mb));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    runs.push((pa, ma + mb));
                    i += 1;
                    j += 1;
                }
            }
        }
        runs.extend_from_slice(&self.runs[i..]);
        runs.extend_from_slice(&other.runs[j..]);
        Self { runs }
    }
}

impl fmt::Display for Partition {
    /// Bracketed nonincreasing parts: `[3,1,1]`; the empty partition is `[]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        let mut first = true;
        for p in self.parts() {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        write!(f, "]")
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parse the [`Display`](fmt::Display) form.  Parts must be listed in
    /// nonincreasing order and be at least 1.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| {
                Error::InvalidArgument(format!("partition must look like [3,2,1], got {s:?}"))
            })?;
        let inner = inner.trim();
        if inner.is_empty() {
            return Ok(Self::empty());
        }
        let mut parts = Vec::new();
        for tok in inner.split(',') {
            let part: u32 = tok.trim().parse().map_err(|_| {
                Error::InvalidArgument(format!("bad partition part {:?} in {s:?}", tok.trim()))
            })?;
            if part == 0 {
                return Err(Error::InvalidArgument(format!(
                    "partition parts must be >= 1, got 0 in {s:?}"
                )));
            }
            if let Some(&prev) = parts.last() {
                if part > prev {
                    return Err(Error::InvalidArgument(format!(
                        "partition parts must be nonincreasing, got {part} after {prev} in {s:?}"
                    )));
                }
            }
            parts.push(part);
        }
        Ok(Self::from_sorted_desc(&parts))
    }
}
