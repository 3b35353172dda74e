//! Exact and floating-point statistics of integer partitions weighted by
//! reciprocal norms.
//!
//! The norm of a partition is the product of its parts; the supernorm is the
//! product of the primes indexed by its parts, so the supernorm maps the set
//! of all partitions bijectively onto the positive integers.  This crate
//! computes sums of reciprocal norms and supernorms over three partition
//! ensembles (fixed size, fixed perimeter, fixed largest part), both per
//! ensemble and cumulatively, and verifies the explicit prime-counting bounds
//! that control the cumulative supernorm statistic.
//!
//! Modules:
//!
//! * [`primes`]: segmented sieve, Mertens sums and products, explicit bound
//!   verifiers with margin reports.
//! * [`partitions`]: the [`Partition`] type, additive and multiplicative
//!   statistics, ensemble enumerators, exact cardinalities.
//! * [`oracle`]: brute-force reference sums by direct enumeration.
//! * [`genfun`]: generating-function coefficient extraction for the same
//!   sums, exact or floating-point, plus closed forms for the largest-part
//!   ensemble.
//! * [`asymptotics`]: comparison of computed statistics against their
//!   limiting shapes, inequality suites, and the Mertens window check.
//!
//! Exact arithmetic uses arbitrary-precision rationals kept in lowest terms.
//! All public types are `Send + Sync`; nothing here spawns threads, and
//! repeated runs produce identical results bit for bit.

#![forbid(unsafe_code)]

pub mod asymptotics;
pub mod constants;
mod error;
pub mod genfun;
mod kahan;
pub mod oracle;
pub mod partitions;
pub mod primes;
pub mod rational;

pub use asymptotics::AsymptoticModel;
pub use constants::MathConstants;
pub use error::{Error, Result};
pub use genfun::{Backend, CoeffSeries};
pub use kahan::KahanSum;
pub use partitions::{Ensemble, EnsembleSpec, Mode, Partition, Restriction, Weight};
pub use primes::{BoundReport, PrimeTable};

/// Arbitrary-precision rational in lowest terms with positive denominator.
pub type BigRational = num_rational::BigRational;

#[cfg(test)]
mod send_sync_checks {
    use super::*;

    fn assert_send_sync<T: Send + Sync>() {}

    #[test]
    fn public_types_are_send_sync() {
        assert_send_sync::<PrimeTable>();
        assert_send_sync::<Partition>();
        assert_send_sync::<EnsembleSpec>();
        assert_send_sync::<genfun::CoeffSeries>();
        assert_send_sync::<BoundReport>();
        assert_send_sync::<MathConstants>();
    }
}
