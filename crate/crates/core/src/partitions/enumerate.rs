//! Streaming enumeration of partition families.
//!
//! All three enumerators run an explicit depth-first stack: one frame per
//! chosen part, candidates tried in decreasing order, so partitions stream
//! in reverse lexicographic order without recursion or per-item allocation
//! beyond the yielded value.

use crate::error::{Error, Result};
use crate::partitions::{Partition, Restriction};
use crate::primes::PrimeTable;

fn restriction_params(restriction: Restriction) -> (u32, bool) {
    // (smallest allowed part, parts must be distinct)
    match restriction {
        Restriction::All => (1, false),
        Restriction::NoOnes => (2, false),
        Restriction::Distinct => (1, true),
    }
}

struct SizeFrame {
    remaining: u32,
    next: u32,
}

/// Iterator over partitions of a fixed size.  See [`enumerate_by_size`].
pub struct SizePartitions {
    frames: Vec<SizeFrame>,
    parts: Vec<u32>,
    min_part: u32,
    distinct: bool,
    pending_pop: bool,
}

impl SizePartitions {
    fn new(n: u32, max_part: u32, restriction: Restriction) -> Self {
        let (min_part, distinct) = restriction_params(restriction);
        Self {
            frames: vec![SizeFrame {
                remaining: n,
                next: max_part.min(n),
            }],
            parts: Vec::new(),
            min_part,
            distinct,
            pending_pop: false,
        }
    }

    fn pop(&mut self) {
        self.frames.pop();
        if !self.frames.is_empty() {
            self.parts.pop();
        }
    }

    /// Core step; the returned slice is the next partition's parts in
    /// nonincreasing order, valid until the following call.
    pub(crate) fn next_parts(&mut self) -> Option<&[u32]> {
        if self.pending_pop {
            self.pending_pop = false;
            self.pop();
        }
        loop {
            let min_part = self.min_part;
            let distinct = self.distinct;
            let top = self.frames.last_mut()?;
            if top.remaining == 0 {
                // leaf: parts sum to n exactly
                self.pending_pop = true;
                return Some(&self.parts);
            }
            let c = top.next;
            if c < min_part {
                self.pop();
                continue;
            }
            top.next = c - 1;
            let remaining = top.remaining - c;
            let cap = if distinct { c - 1 } else { c };
            self.parts.push(c);
            self.frames.push(SizeFrame {
                remaining,
                next: cap.min(remaining),
            });
        }
    }
}

impl Iterator for SizePartitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        self.next_parts().map(Partition::from_sorted_desc)
    }
}

/// All partitions of n under the restriction, in reverse lexicographic
/// order (largest first).  `enumerate_by_size(0, _)` yields exactly the
/// empty partition.
pub fn enumerate_by_size(n: u32, restriction: Restriction) -> SizePartitions {
    SizePartitions::new(n, n, restriction)
}

/// As [`enumerate_by_size`], additionally capping the largest part.
pub fn enumerate_by_size_with_max_part(
    n: u32,
    restriction: Restriction,
    max_part: u32,
) -> SizePartitions {
    SizePartitions::new(n, max_part, restriction)
}

struct PerimeterFrame {
    slots: u32,
    next: u32,
}

/// Iterator over partitions of a fixed perimeter.  See
/// [`enumerate_by_perimeter`].
pub struct PerimeterPartitions {
    n: u32,
    lead: u32, // next lead part to expand, counting down; 0 = exhausted
    lead_stop: u32,
    frames: Vec<PerimeterFrame>,
    parts: Vec<u32>,
    min_part: u32,
    distinct: bool,
    pending_pop: bool,
}

impl PerimeterPartitions {
    fn new(n: u32, restriction: Restriction) -> Self {
        let (min_part, distinct) = restriction_params(restriction);
        Self {
            n,
            lead: n,
            lead_stop: min_part,
            frames: Vec::new(),
            parts: Vec::new(),
            min_part,
            distinct,
            pending_pop: false,
        }
    }

    fn pop(&mut self) {
        self.frames.pop();
        if self.frames.is_empty() {
            self.parts.clear();
        } else {
            self.parts.pop();
        }
    }

    pub(crate) fn next_parts(&mut self) -> Option<&[u32]> {
        if self.pending_pop {
            self.pending_pop = false;
            self.pop();
        }
        loop {
            if self.frames.is_empty() {
                // start the block of partitions whose largest part is `lead`;
                // each needs n - lead further parts
                if self.lead < self.lead_stop {
                    return None;
                }
                let m = self.lead;
                self.lead -= 1;
                self.parts.push(m);
                self.frames.push(PerimeterFrame {
                    slots: self.n - m,
                    next: if self.distinct { m - 1 } else { m },
                });
                continue;
            }
            let min_part = self.min_part;
            let distinct = self.distinct;
            let top = self.frames.last_mut().unwrap();
            if top.slots == 0 {
                self.pending_pop = true;
                return Some(&self.parts);
            }
            let c = top.next;
            if c < min_part {
                self.pop();
                continue;
            }
            top.next = c - 1;
            let slots = top.slots - 1;
            self.parts.push(c);
            self.frames.push(PerimeterFrame {
                slots,
                next: if distinct { c - 1 } else { c },
            });
        }
    }
}

impl Iterator for PerimeterPartitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        self.next_parts().map(Partition::from_sorted_desc)
    }
}

/// All partitions with largest part + length - 1 = n, grouped by
/// decreasing largest part and reverse lexicographic within each group.
/// Yields nothing for n = 0 (no partition has perimeter 0).
pub fn enumerate_by_perimeter(n: u32, restriction: Restriction) -> PerimeterPartitions {
    PerimeterPartitions::new(n, restriction)
}

struct BudgetFrame {
    budget: u64,
    next: u32,
}

/// Iterator over partitions with bounded supernorm.  See
/// [`enumerate_by_supernorm_bound`].
pub struct SupernormBoundedPartitions<'a> {
    primes: &'a [u64],
    frames: Vec<BudgetFrame>,
    parts: Vec<u32>,
    started: bool,
}

impl SupernormBoundedPartitions<'_> {
    pub(crate) fn next_parts(&mut self) -> Option<&[u32]> {
        if !self.started {
            // the empty partition has supernorm 1 <= bound
            self.started = true;
            return Some(&self.parts);
        }
        loop {
            let top = self.frames.last_mut()?;
            let c = top.next;
            if c == 0 {
                self.frames.pop();
                if !self.frames.is_empty() {
                    self.parts.pop();
                }
                continue;
            }
            top.next = c - 1;
            let p = self.primes[c as usize - 1];
            debug_assert!(p <= top.budget);
            let budget = top.budget / p;
            // candidates for the next part: at most c, and affordable
            let reach = self.primes.partition_point(|&q| q <= budget) as u32;
            self.parts.push(c);
            self.frames.push(BudgetFrame {
                budget,
                next: c.min(reach),
            });
            return Some(&self.parts);
        }
    }
}

impl Iterator for SupernormBoundedPartitions<'_> {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        self.next_parts().map(Partition::from_sorted_desc)
    }
}

/// All partitions whose supernorm is at most `bound`, the empty partition
/// first, then depth-first with parts tried in decreasing order.  The
/// supernorm is a bijection onto the positive integers, so exactly `bound`
/// partitions stream out.  The table must cover primes up to `bound`.
pub fn enumerate_by_supernorm_bound(
    table: &PrimeTable,
    bound: u64,
) -> Result<SupernormBoundedPartitions<'_>> {
    if bound == 0 {
        return Err(Error::InvalidArgument(
            "supernorm bound must be at least 1".into(),
        ));
    }
    if bound > table.limit() {
        return Err(Error::OutOfRange(format!(
            "supernorm bound {bound} exceeds the sieve limit {}; rebuild the table with at \
             least that limit",
            table.limit()
        )));
    }
    let primes = table.primes();
    let affordable = primes.partition_point(|&q| q <= bound) as u32;
    Ok(SupernormBoundedPartitions {
        primes,
        frames: vec![BudgetFrame {
            budget: bound,
            next: affordable,
        }],
        parts: Vec::new(),
        started: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::partition_count;
    use num_traits::ToPrimitive;
    use std::collections::BTreeSet;

    fn collect_strings<I: Iterator<Item = Partition>>(it: I) -> Vec<String> {
        it.map(|p| p.to_string()).collect()
    }

    #[test]
    fn size_enumeration_order_and_edge_cases() {
        assert_eq!(collect_strings(enumerate_by_size(0, Restriction::All)), ["[]"]);
        assert_eq!(
            collect_strings(enumerate_by_size(4, Restriction::All)),
            ["[4]", "[3,1]", "[2,2]", "[2,1,1]", "[1,1,1,1]"]
        );
        assert_eq!(
            collect_strings(enumerate_by_size(4, Restriction::NoOnes)),
            ["[4]", "[2,2]"]
        );
        assert_eq!(
            collect_strings(enumerate_by_size(6, Restriction::Distinct)),
            ["[6]", "[5,1]", "[4,2]", "[3,2,1]"]
        );
    }

    #[test]
    fn size_counts_match_the_pentagonal_recurrence() {
        for n in 0..=25u32 {
            let count = enumerate_by_size(n, Restriction::All).count();
            assert_eq!(
                partition_count(n).to_usize().unwrap(),
                count,
                "count mismatch at {n}"
            );
        }
    }

    #[test]
    fn restricted_size_counts_match_references() {
        let distinct: Vec<usize> = (0..=10)
            .map(|n| enumerate_by_size(n, Restriction::Distinct).count())
            .collect();
        assert_eq!(distinct, [1, 1, 1, 2, 2, 3, 4, 5, 6, 8, 10]);
        let no_ones: Vec<usize> = (0..=10)
            .map(|n| enumerate_by_size(n, Restriction::NoOnes).count())
            .collect();
        assert_eq!(no_ones, [1, 0, 1, 1, 2, 2, 4, 4, 7, 8, 12]);
    }

    #[test]
    fn max_part_cap_is_respected() {
        let got = collect_strings(enumerate_by_size_with_max_part(6, Restriction::All, 2));
        assert_eq!(got, ["[2,2,2]", "[2,2,1,1]", "[2,1,1,1,1]", "[1,1,1,1,1,1]"]);
    }

    #[test]
    fn perimeter_enumeration_order() {
        assert_eq!(
            collect_strings(enumerate_by_perimeter(0, Restriction::All)),
            Vec::<String>::new()
        );
        assert_eq!(
            collect_strings(enumerate_by_perimeter(1, Restriction::All)),
            ["[1]"]
        );
        assert_eq!(
            collect_strings(enumerate_by_perimeter(4, Restriction::All)),
            [
                "[4]",
                "[3,3]",
                "[3,2]",
                "[3,1]",
                "[2,2,2]",
                "[2,2,1]",
                "[2,1,1]",
                "[1,1,1,1]"
            ]
        );
    }

    #[test]
    fn perimeter_counts_follow_the_doubling_law() {
        for n in 1..=12u32 {
            let count = enumerate_by_perimeter(n, Restriction::All).count();
            assert_eq!(count, 1usize << (n - 1), "perimeter {n}");
        }
        // distinct perimeter counts are Fibonacci numbers
        let fib: Vec<usize> = (1..=8)
            .map(|n| enumerate_by_perimeter(n, Restriction::Distinct).count())
            .collect();
        assert_eq!(fib, [1, 1, 2, 3, 5, 8, 13, 21]);
    }

    #[test]
    fn perimeter_enumeration_agrees_with_size_enumeration() {
        // a perimeter-n partition has size at most ((n+1)/2)^2, so sweeping
        // sizes and filtering must reproduce the same set
        for n in 1..=8u32 {
            for restriction in [Restriction::All, Restriction::NoOnes, Restriction::Distinct] {
                let direct: BTreeSet<Partition> =
                    enumerate_by_perimeter(n, restriction).collect();
                let max_size = (n + 1) * (n + 1) / 4;
                let mut swept = BTreeSet::new();
                for s in 1..=max_size {
                    for p in enumerate_by_size(s, restriction) {
                        if p.perimeter() == n as u64 {
                            swept.insert(p);
                        }
                    }
                }
                assert_eq!(direct, swept, "n={n} {restriction:?}");
            }
        }
    }

    #[test]
    fn all_partitions_yielded_have_the_right_statistics() {
        for p in enumerate_by_size(9, Restriction::NoOnes) {
            assert_eq!(p.size(), 9);
            assert!(!p.has_ones());
        }
        for p in enumerate_by_perimeter(7, Restriction::Distinct) {
            assert_eq!(p.perimeter(), 7);
            assert!(p.is_distinct());
        }
    }

    #[test]
    fn supernorm_enumeration_is_a_bijection_onto_initial_segments() {
        let table = PrimeTable::build(10_000).unwrap();
        let order = collect_strings(enumerate_by_supernorm_bound(&table, 6).unwrap());
        assert_eq!(order, ["[]", "[3]", "[2]", "[2,1]", "[1]", "[1,1]"]);

        for bound in [1u64, 2, 30, 1000] {
            let mut seen = BTreeSet::new();
            for p in enumerate_by_supernorm_bound(&table, bound).unwrap() {
                let v = p.supernorm(&table).unwrap().to_u64().unwrap();
                assert!(v >= 1 && v <= bound, "supernorm {v} out of [1, {bound}]");
                assert!(seen.insert(v), "duplicate supernorm {v}");
            }
            assert_eq!(seen.len() as u64, bound, "bound {bound}");
        }
    }

    #[test]
    fn supernorm_enumeration_validates_its_inputs() {
        let table = PrimeTable::build(100).unwrap();
        assert!(enumerate_by_supernorm_bound(&table, 0).is_err());
        assert!(enumerate_by_supernorm_bound(&table, 101).is_err());
    }
}
