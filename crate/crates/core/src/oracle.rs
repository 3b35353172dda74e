//! Brute-force reference evaluation of the partition statistics.
//!
//! Everything here sums reciprocal weights by direct enumeration, term by
//! term, with no generating-function shortcuts.  It is deliberately the
//! slowest implementation in the crate: its only job is to be obviously
//! correct so the fast paths in [`genfun`](crate::genfun) can be tested
//! against it.  Default entry points are capped to keep runtimes sane;
//! the `_unbounded` variant lifts the caps when a test knowingly pays for
//! a bigger sweep.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::kahan::KahanSum;
use crate::partitions::{
    enumerate_by_perimeter, enumerate_by_size, enumerate_by_size_with_max_part, Ensemble,
    EnsembleSpec, Mode, Restriction, Weight,
};
use crate::primes::PrimeTable;
use crate::rational::reciprocal_power;
use crate::BigRational;

/// Largest size index accepted by [`oracle_stat`].
pub const ORACLE_SIZE_CAP: u32 = 30;
/// Largest perimeter index accepted by [`oracle_stat`] (the family at n
/// has 2^(n-1) members).
pub const ORACLE_PERIMETER_CAP: u32 = 22;
/// Largest max-part index accepted by [`oracle_max_truncated`].
pub const ORACLE_MAX_PART_CAP: u32 = 20;
/// Largest size cutoff accepted by [`oracle_max_truncated`].
pub const ORACLE_MAX_CUTOFF_CAP: u32 = 64;

/// Exact statistic by enumeration, within the default caps.
pub fn oracle_stat(table: &PrimeTable, spec: &EnsembleSpec, n: u32) -> Result<BigRational> {
    enforce_caps(spec, n)?;
    oracle_stat_unbounded(table, spec, n)
}

/// Exact statistic by enumeration with no size caps; runtime grows like
/// the number of partitions enumerated.
pub fn oracle_stat_unbounded(
    table: &PrimeTable,
    spec: &EnsembleSpec,
    n: u32,
) -> Result<BigRational> {
    spec.validate()?;
    let beta = spec.integer_beta().ok_or_else(|| {
        Error::InvalidArgument(format!(
            "the exact oracle needs an integer exponent, got beta = {}; use oracle_stat_f64",
            spec.beta
        ))
    })?;
    match spec.mode {
        Mode::Individual => family_sum(table, spec, beta, n),
        Mode::Cumulative => match spec.ensemble {
            Ensemble::Size | Ensemble::MaxPart => {
                // the empty partition is the size-0 (max-part-0) term
                let mut total = BigRational::zero();
                for k in 0..=n {
                    total += family_sum(table, spec, beta, k)?;
                }
                Ok(total)
            }
            Ensemble::Perimeter => {
                // no partition has perimeter 0; the empty partition has
                // perimeter 1 and enters every cumulative sum with n >= 1
                let mut total = BigRational::zero();
                if n >= 1 {
                    total += BigRational::one();
                }
                for k in 1..=n {
                    total += family_sum(table, spec, beta, k)?;
                }
                Ok(total)
            }
        },
    }
}

/// Exact statistics for every index 0..=nmax, one enumeration per family.
///
/// Slot for slot this equals [`oracle_stat`]; the cumulative mode keeps a
/// running total of the family sums instead of enumerating the union
/// afresh at every index, which keeps a full-series sweep linear in the
/// number of partitions visited rather than quadratic.
pub fn oracle_series(
    table: &PrimeTable,
    spec: &EnsembleSpec,
    nmax: u32,
) -> Result<Vec<BigRational>> {
    enforce_caps(spec, nmax)?;
    spec.validate()?;
    let beta = spec.integer_beta().ok_or_else(|| {
        Error::InvalidArgument(format!(
            "the exact oracle needs an integer exponent, got beta = {}; use oracle_stat_f64",
            spec.beta
        ))
    })?;
    let mut values = Vec::with_capacity(nmax as usize + 1);
    match spec.mode {
        Mode::Individual => {
            for n in 0..=nmax {
                values.push(family_sum(table, spec, beta, n)?);
            }
        }
        Mode::Cumulative => {
            let mut total = BigRational::zero();
            for n in 0..=nmax {
                match spec.ensemble {
                    Ensemble::Size | Ensemble::MaxPart => {
                        total += family_sum(table, spec, beta, n)?;
                    }
                    Ensemble::Perimeter => {
                        if n == 1 {
                            // the empty partition, by the perimeter-1 convention
                            total += BigRational::one();
                        }
                        if n >= 1 {
                            total += family_sum(table, spec, beta, n)?;
                        }
                    }
                }
                values.push(total.clone());
            }
        }
    }
    Ok(values)
}

/// Float statistic by enumeration; accepts any finite real exponent.
pub fn oracle_stat_f64(table: &PrimeTable, spec: &EnsembleSpec, n: u32) -> Result<f64> {
    enforce_caps(spec, n)?;
    spec.validate()?;
    match spec.mode {
        Mode::Individual => family_sum_f64(table, spec, n),
        Mode::Cumulative => {
            let mut total = KahanSum::new();
            match spec.ensemble {
                Ensemble::Size | Ensemble::MaxPart => {
                    for k in 0..=n {
                        total.add(family_sum_f64(table, spec, k)?);
                    }
                }
                Ensemble::Perimeter => {
                    if n >= 1 {
                        total.add(1.0);
                    }
                    for k in 1..=n {
                        total.add(family_sum_f64(table, spec, k)?);
                    }
                }
            }
            Ok(total.value())
        }
    }
}

fn enforce_caps(spec: &EnsembleSpec, n: u32) -> Result<()> {
    let (cap, what) = match spec.ensemble {
        Ensemble::Size => (ORACLE_SIZE_CAP, "size"),
        Ensemble::Perimeter => (ORACLE_PERIMETER_CAP, "perimeter"),
        Ensemble::MaxPart => return Ok(()), // rejected later, with a pointer
    };
    if n > cap {
        return Err(Error::ResourceLimit(format!(
            "oracle {what} index {n} exceeds the default cap {cap}; call oracle_stat_unbounded \
             to lift it"
        )));
    }
    Ok(())
}

/// Sum of weight^(-beta) over one individual family, by enumeration.
fn family_sum(
    table: &PrimeTable,
    spec: &EnsembleSpec,
    beta: i32,
    n: u32,
) -> Result<BigRational> {
    // bucket terms by largest part: adding like-sized denominators first
    // keeps the intermediate gcd work down
    let mut buckets: Vec<BigRational> = vec![BigRational::zero(); n as usize + 2];
    match spec.ensemble {
        Ensemble::Size => {
            let mut it = enumerate_by_size(n, spec.restriction);
            while let Some(parts) = it.next_parts() {
                let lead = parts.first().copied().unwrap_or(0) as usize;
                let w = weight_of_parts(table, spec.weight, parts)?;
                buckets[lead] += reciprocal_power(w, beta);
            }
        }
        Ensemble::Perimeter => {
            let mut it = enumerate_by_perimeter(n, spec.restriction);
            while let Some(parts) = it.next_parts() {
                let lead = parts.first().copied().unwrap_or(0) as usize;
                let w = weight_of_parts(table, spec.weight, parts)?;
                buckets[lead] += reciprocal_power(w, beta);
            }
        }
        Ensemble::MaxPart => {
            return Err(Error::Unsupported(
                "max-part families are infinite; use oracle_max_truncated or the closed-form \
                 evaluators"
                    .into(),
            ));
        }
    }
    let mut total = BigRational::zero();
    for b in buckets {
        total += b;
    }
    Ok(total)
}

fn family_sum_f64(table: &PrimeTable, spec: &EnsembleSpec, n: u32) -> Result<f64> {
    let mut sum = KahanSum::new();
    let mut add_term = |table: &PrimeTable, parts: &[u32]| -> Result<()> {
        let w = weight_of_parts(table, spec.weight, parts)?;
        sum.add(w.to_f64().unwrap_or(f64::INFINITY).powf(-spec.beta));
        Ok(())
    };
    match spec.ensemble {
        Ensemble::Size => {
            let mut it = enumerate_by_size(n, spec.restriction);
            while let Some(parts) = it.next_parts() {
                add_term(table, parts)?;
            }
        }
        Ensemble::Perimeter => {
            let mut it = enumerate_by_perimeter(n, spec.restriction);
            while let Some(parts) = it.next_parts() {
                add_term(table, parts)?;
            }
        }
        Ensemble::MaxPart => {
            return Err(Error::Unsupported(
                "max-part families are infinite; use oracle_max_truncated or the closed-form \
                 evaluators"
                    .into(),
            ));
        }
    }
    Ok(sum.value())
}

/// Truncated max-part statistic: the sum of reciprocal weights (exponent
/// 1) over family members whose size is at most `size_cutoff`.  Every term
/// is positive, so the result is a certified lower bound for the full
/// statistic, increasing in the cutoff.
///
/// The norm weight over unrestricted max-part families diverges and is
/// rejected; all other combinations converge.
pub fn oracle_max_truncated(
    table: &PrimeTable,
    weight: Weight,
    restriction: Restriction,
    mode: Mode,
    n: u32,
    size_cutoff: u32,
) -> Result<BigRational> {
    if weight == Weight::Norm && restriction == Restriction::All {
        return Err(Error::Divergent(
            "max-part ensembles weighted by the norm diverge without a part restriction: \
             appending parts equal to 1 leaves the norm unchanged"
                .into(),
        ));
    }
    if n > ORACLE_MAX_PART_CAP || size_cutoff > ORACLE_MAX_CUTOFF_CAP {
        return Err(Error::ResourceLimit(format!(
            "truncated max-part oracle accepts n <= {ORACLE_MAX_PART_CAP} and size_cutoff <= \
             {ORACLE_MAX_CUTOFF_CAP}, got n = {n}, size_cutoff = {size_cutoff}"
        )));
    }

    match mode {
        Mode::Individual => {
            if n == 0 {
                return Err(Error::InvalidArgument(
                    "individual max-part families need a largest part >= 1".into(),
                ));
            }
            if size_cutoff < n {
                return Err(Error::InvalidArgument(format!(
                    "size cutoff {size_cutoff} is below {n}, the smallest size in the family"
                )));
            }
            // partitions with largest part exactly n: a lead part n plus a
            // partition of the remainder into parts <= n (< n if distinct)
            if restriction == Restriction::NoOnes && n == 1 {
                return Ok(BigRational::zero()); // every such partition is all ones
            }
            let rest_cap = if restriction == Restriction::Distinct {
                n - 1
            } else {
                n
            };
            let lead_weight = match weight {
                Weight::Norm => BigUint::from(n),
                Weight::Supernorm => BigUint::from(table.nth_prime(n as u64)?),
            };
            let mut total = BigRational::zero();
            for s in n..=size_cutoff {
                let mut sub = BigRational::zero();
                let mut it = enumerate_by_size_with_max_part(s - n, restriction, rest_cap);
                while let Some(parts) = it.next_parts() {
                    let w = weight_of_parts(table, weight, parts)? * &lead_weight;
                    sub += reciprocal_power(w, 1);
                }
                total += sub;
            }
            Ok(total)
        }
        Mode::Cumulative => {
            // partitions (the empty one included) with largest part <= n
            let mut total = BigRational::zero();
            for s in 0..=size_cutoff {
                let mut sub = BigRational::zero();
                let mut it = enumerate_by_size_with_max_part(s, restriction, n);
                while let Some(parts) = it.next_parts() {
                    let w = weight_of_parts(table, weight, parts)?;
                    sub += reciprocal_power(w, 1);
                }
                total += sub;
            }
            Ok(total)
        }
    }
}

/// The weight of a partition given as a nonincreasing parts slice.
fn weight_of_parts(table: &PrimeTable, weight: Weight, parts: &[u32]) -> Result<BigUint> {
    let mut acc: u128 = 1;
    let mut big: Option<BigUint> = None;
    for &part in parts {
        let factor = match weight {
            Weight::Norm => part as u128,
            Weight::Supernorm => table.nth_prime(part as u64)? as u128,
        };
        match &mut big {
            None => match acc.checked_mul(factor) {
                Some(v) => acc = v,
                None => big = Some(BigUint::from(acc) * BigUint::from(factor)),
            },
            Some(b) => *b *= BigUint::from(factor),
        }
    }
    Ok(big.unwrap_or_else(|| BigUint::from(acc)))
}
