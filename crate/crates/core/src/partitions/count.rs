//! Partition counting: the pentagonal-number recurrence and closed-form
//! ensemble cardinalities.
//!
//! The recurrence is the independent cross-check for the enumerators; the
//! ensemble counts use closed forms throughout (power-of-two laws for
//! perimeter families, Fibonacci for distinct perimeters) so they stay
//! usable far beyond enumeration range.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::Result;
use crate::partitions::{Ensemble, EnsembleSpec, Mode, Restriction};

/// Cardinality of an ensemble; max-part families are infinite unless the
/// parts are required to be distinct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Count {
    Finite(BigUint),
    Infinite,
}

impl Count {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Count::Infinite)
    }

    pub fn finite(self) -> Option<BigUint> {
        match self {
            Count::Finite(v) => Some(v),
            Count::Infinite => None,
        }
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Count::Finite(v) => write!(f, "{v}"),
            Count::Infinite => write!(f, "infinite"),
        }
    }
}

/// Number of partitions of n, via the pentagonal-number recurrence.
pub fn partition_count(n: u32) -> BigUint {
    partition_counts_up_to(n)
        .pop()
        .expect("table is nonempty")
        .to_biguint()
        .expect("partition counts are nonnegative")
}

fn partition_counts_up_to(n: u32) -> Vec<BigInt> {
    let n = n as usize;
    let mut p = Vec::with_capacity(n + 1);
    p.push(BigInt::one());
    for k in 1..=n {
        let mut acc = BigInt::zero();
        let mut j = 1usize;
        loop {
            // generalized pentagonal numbers j(3j-1)/2 and j(3j+1)/2,
            // signs +,+,-,-,...
            let g1 = j * (3 * j - 1) / 2;
            if g1 > k {
                break;
            }
            let g2 = j * (3 * j + 1) / 2;
            let positive = j % 2 == 1;
            let mut term = p[k - g1].clone();
            if g2 <= k {
                term += &p[k - g2];
            }
            if positive {
                acc += term;
            } else {
                acc -= term;
            }
            j += 1;
        }
        p.push(acc);
    }
    p
}

/// Number of partitions of n into distinct parts.
pub fn distinct_partition_count(n: u32) -> BigUint {
    let n = n as usize;
    let mut q = vec![BigUint::zero(); n + 1];
    q[0] = BigUint::one();
    for part in 1..=n {
        for k in (part..=n).rev() {
            let add = q[k - part].clone();
            q[k] += add;
        }
    }
    q.pop().unwrap()
}

fn fibonacci(n: u32) -> BigUint {
    // F(1) = F(2) = 1
    let (mut a, mut b) = (BigUint::zero(), BigUint::one());
    for _ in 0..n {
        let next = &a + &b;
        a = b;
        b = next;
    }
    a
}

fn pow2(e: u32) -> BigUint {
    BigUint::one() << e
}

/// Cardinality of the ensemble described by `spec` at index n.  Individual
/// ensembles exclude the empty partition; cumulative ones include it once.
/// The weight and exponent of the spec are irrelevant to counting.
pub fn ensemble_count(spec: &EnsembleSpec, n: u32) -> Result<Count> {
    let fin = |v: BigUint| Ok(Count::Finite(v));
    match (spec.ensemble, spec.mode) {
        (Ensemble::Size, Mode::Individual) => fin(size_count(spec.restriction, n)),
        (Ensemble::Size, Mode::Cumulative) => {
            let mut total = BigUint::zero();
            for k in 0..=n {
                total += size_count(spec.restriction, k);
            }
            fin(total)
        }
        (Ensemble::Perimeter, Mode::Individual) => fin(perimeter_count(spec.restriction, n)),
        (Ensemble::Perimeter, Mode::Cumulative) => {
            let mut total = BigUint::one(); // the empty partition
            for k in 1..=n {
                total += perimeter_count(spec.restriction, k);
            }
            fin(total)
        }
        (Ensemble::MaxPart, mode) => match spec.restriction {
            Restriction::Distinct => match mode {
                // largest part exactly n plus any subset of 1..n-1
                Mode::Individual => {
                    if n == 0 {
                        fin(BigUint::zero())
                    } else {
                        fin(pow2(n - 1))
                    }
                }
                Mode::Cumulative => fin(pow2(n)),
            },
            Restriction::All | Restriction::NoOnes => {
                if n == 0 {
                    // only the empty partition has largest part 0
                    match mode {
                        Mode::Individual => fin(BigUint::zero()),
                        Mode::Cumulative => fin(BigUint::one()),
                    }
                } else {
                    Ok(Count::Infinite)
                }
            }
        },
    }
}

fn size_count(restriction: Restriction, n: u32) -> BigUint {
    match restriction {
        Restriction::All => partition_count(n),
        Restriction::NoOnes => {
            // partitions of n minus those containing a 1 (strip one 1)
            if n == 0 {
                BigUint::one()
            } else {
                partition_count(n) - partition_count(n - 1)
            }
        }
        Restriction::Distinct => distinct_partition_count(n),
    }
}

fn perimeter_count(restriction: Restriction, n: u32) -> BigUint {
    if n == 0 {
        return BigUint::zero();
    }
    match restriction {
        Restriction::All => pow2(n - 1),
        Restriction::NoOnes => {
            if n == 1 {
                BigUint::zero()
            } else {
                pow2(n - 2)
            }
        }
        Restriction::Distinct => fibonacci(n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{enumerate_by_perimeter, enumerate_by_size, Weight};
    use num_traits::ToPrimitive;

    #[test]
    fn pentagonal_recurrence_reference_values() {
        let expect = [1u64, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42];
        for (n, &e) in expect.iter().enumerate() {
            assert_eq!(partition_count(n as u32).to_u64().unwrap(), e);
        }
        assert_eq!(partition_count(70).to_u64().unwrap(), 4_087_968);
        assert_eq!(partition_count(100).to_u64().unwrap(), 190_569_292);
    }

    #[test]
    fn distinct_counts_match_enumeration() {
        for n in 0..=20u32 {
            assert_eq!(
                distinct_partition_count(n).to_usize().unwrap(),
                enumerate_by_size(n, Restriction::Distinct).count()
            );
        }
    }

    fn spec(e: Ensemble, m: Mode, r: Restriction) -> EnsembleSpec {
        EnsembleSpec::new(e, m, r, Weight::Norm)
    }

    #[test]
    fn ensemble_counts_match_enumeration() {
        for r in [Restriction::All, Restriction::NoOnes, Restriction::Distinct] {
            for n in 0..=12u32 {
                let by_size = ensemble_count(&spec(Ensemble::Size, Mode::Individual, r), n)
                    .unwrap()
                    .finite()
                    .unwrap();
                assert_eq!(
                    by_size.to_usize().unwrap(),
                    enumerate_by_size(n, r).count(),
                    "size {n} {r:?}"
                );
                let by_per = ensemble_count(&spec(Ensemble::Perimeter, Mode::Individual, r), n)
                    .unwrap()
                    .finite()
                    .unwrap();
                assert_eq!(
                    by_per.to_usize().unwrap(),
                    enumerate_by_perimeter(n, r).count(),
                    "perimeter {n} {r:?}"
                );
            }
        }
    }

    #[test]
    fn cumulative_counts_add_the_empty_partition_once() {
        // sizes 0..=5: 1+1+2+3+5+7 = 19, empty already counted at 0
        let c = ensemble_count(&spec(Ensemble::Size, Mode::Cumulative, Restriction::All), 5)
            .unwrap()
            .finite()
            .unwrap();
        assert_eq!(c.to_u64().unwrap(), 19);
        // perimeters: 1 (empty) + 1 + 2 + 4 + 8 = 16 = 2^4
        let c = ensemble_count(
            &spec(Ensemble::Perimeter, Mode::Cumulative, Restriction::All),
            4,
        )
        .unwrap()
        .finite()
        .unwrap();
        assert_eq!(c.to_u64().unwrap(), 16);
    }

    #[test]
    fn max_part_cardinalities() {
        let inf = ensemble_count(&spec(Ensemble::MaxPart, Mode::Individual, Restriction::All), 3)
            .unwrap();
        assert!(inf.is_infinite());
        let inf = ensemble_count(
            &spec(Ensemble::MaxPart, Mode::Cumulative, Restriction::NoOnes),
            1,
        )
        .unwrap();
        assert!(inf.is_infinite());
        let d = ensemble_count(
            &spec(Ensemble::MaxPart, Mode::Individual, Restriction::Distinct),
            5,
        )
        .unwrap();
        assert_eq!(d, Count::Finite(BigUint::from(16u32)));
        let d = ensemble_count(
            &spec(Ensemble::MaxPart, Mode::Cumulative, Restriction::Distinct),
            5,
        )
        .unwrap();
        assert_eq!(d, Count::Finite(BigUint::from(32u32)));
    }
}
