//! Mathematical constants used throughout the crate.
//!
//! The Euler-Mascheroni constant and the Mertens constant are embedded as
//! 40-digit literature values rather than computed at startup; a cross-check
//! routine recomputes the Mertens constant from a prime table and asserts
//! agreement, so a corrupted literal cannot go unnoticed.

use crate::kahan::KahanSum;
use crate::primes::PrimeTable;

/// Euler-Mascheroni constant, 40 significant digits.
pub const GAMMA_DIGITS: &str = "0.5772156649015328606065120900824024310422";

/// Mertens constant (the limit of sum(1/p) - log log x), 40 significant digits.
pub const MERTENS_DIGITS: &str = "0.2614972128476427837554268386086958590516";

/// Shared constants: gamma, the Mertens constant, and exp(+/-gamma).
#[derive(Clone, Copy, Debug)]
pub struct MathConstants {
    /// Euler-Mascheroni constant gamma.
    pub gamma: f64,
    /// Mertens constant M.
    pub mertens_m: f64,
    /// exp(gamma).
    pub e_gamma: f64,
    /// exp(-gamma).
    pub e_neg_gamma: f64,
}

impl Default for MathConstants {
    fn default() -> Self {
        Self::new()
    }
}

impl MathConstants {
    pub fn new() -> Self {
        let gamma: f64 = GAMMA_DIGITS.parse().expect("valid gamma literal");
        let mertens_m: f64 = MERTENS_DIGITS.parse().expect("valid Mertens literal");
        Self {
            gamma,
            mertens_m,
            e_gamma: gamma.exp(),
            e_neg_gamma: (-gamma).exp(),
        }
    }

    /// Recompute the Mertens constant as gamma + sum over primes p <= limit of
    /// (log(1 - 1/p) + 1/p) and return the absolute difference from the
    /// embedded literal.
    ///
    /// The truncation error of the tail is about 1/(2L log L) at limit L, so
    /// a table sieved to 1e6 pins six digits.
    pub fn mertens_residual(&self, table: &PrimeTable) -> f64 {
        let mut acc = KahanSum::new();
        for &p in table.primes() {
            let x = p as f64;
            acc.add((-1.0 / x).ln_1p() + 1.0 / x);
        }
        (self.gamma + acc.value() - self.mertens_m).abs()
    }
}
