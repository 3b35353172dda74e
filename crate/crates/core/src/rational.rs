//! Exact-rational helpers: correctly rounded conversion to f64 and a plain
//! text record format for series of rationals.
//!
//! `BigRational::to_f64` in the underlying crate rounds the numerator and
//! denominator separately and can be off by several ulp; the statistics
//! here are compared at 1 ulp, so [`rational_to_f64`] reimplements the
//! conversion with round-half-even on the true quotient.

use std::io::{BufRead, Write};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::BigRational;

/// weight^(-beta) as an exact rational, for positive integer weights.
pub(crate) fn reciprocal_power(weight: BigUint, beta: i32) -> BigRational {
    let mag = BigInt::from(weight.pow(beta.unsigned_abs()));
    if beta >= 0 {
        BigRational::new(BigInt::one(), mag)
    } else {
        BigRational::new(mag, BigInt::one())
    }
}

/// Convert an exact rational to the nearest f64, ties to even.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let negative = r.is_negative();
    let a = r.numer().magnitude();
    let b = r.denom().magnitude();

    // Scale so the integer quotient q = floor(a * 2^k / b) carries 55 or 56
    // bits: enough for 53 mantissa bits, a round bit, and slack.
    let k = 55 - (a.bits() as i64 - b.bits() as i64);
    let (q, rem) = if k >= 0 {
        (a << k as u64).div_rem(b)
    } else {
        a.div_rem(&(b << (-k) as u64))
    };
    let mut q = q.to_u64().expect("quotient sized to 55..56 bits");
    let mut sticky = !rem.is_zero();
    // exact value = (q + tail) * 2^exp with tail in [0,1), tail > 0 iff sticky
    let mut exp = -k;

    let bits = 64 - q.leading_zeros() as i64;
    let shift = bits - 54;
    debug_assert!((1..=2).contains(&shift));
    sticky |= q & ((1 << shift) - 1) != 0;
    q >>= shift;
    exp += shift;

    // q now holds 53 mantissa bits plus a round bit at the bottom
    let round = q & 1 == 1;
    let mut mantissa = q >> 1;
    if round && (sticky || mantissa & 1 == 1) {
        mantissa += 1; // may carry to 2^53, still exactly representable
    }
    let magnitude = mantissa as f64 * pow2((exp + 1) as i32);
    if negative {
        -magnitude
    } else {
        magnitude
    }
}

/// 2^e as an f64 for |e| within the normal range of the format.
fn pow2(e: i32) -> f64 {
    debug_assert!((-1022..=1023).contains(&e), "exponent {e} out of range");
    f64::from_bits(((e + 1023) as u64) << 52)
}

/// Render one `index;numerator/denominator` record.
pub fn format_record(index: u32, value: &BigRational) -> String {
    format!("{index};{}/{}", value.numer(), value.denom())
}

/// Parse a record produced by [`format_record`].
pub fn parse_record(line: &str) -> Result<(u32, BigRational)> {
    let bad = || Error::MalformedData(format!("expected 'n;num/den', got {line:?}"));
    let (idx, frac) = line.trim().split_once(';').ok_or_else(bad)?;
    let index: u32 = idx.trim().parse().map_err(|_| bad())?;
    let (num, den) = frac.split_once('/').ok_or_else(bad)?;
    let numer = num.trim().parse().map_err(|_| bad())?;
    let denom: num_bigint::BigInt = den.trim().parse().map_err(|_| bad())?;
    if denom.is_zero() {
        return Err(Error::MalformedData(format!(
            "zero denominator in {line:?}"
        )));
    }
    Ok((index, BigRational::new(numer, denom)))
}

/// Write values as consecutive records starting at index 0.
pub fn write_records<W: Write>(mut w: W, values: &[BigRational]) -> Result<()> {
    for (i, v) in values.iter().enumerate() {
        writeln!(w, "{}", format_record(i as u32, v))?;
    }
    Ok(())
}

/// Read records written by [`write_records`], enforcing consecutive
/// indices from 0.
pub fn read_records<R: BufRead>(r: R) -> Result<Vec<BigRational>> {
    let mut values = Vec::new();
    for line in r.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let (index, value) = parse_record(&line)?;
        if index as usize != values.len() {
            return Err(Error::MalformedData(format!(
                "record index {index} out of order, expected {}",
                values.len()
            )));
        }
        values.push(value);
    }
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn small_fractions_round_like_hardware_division() {
        for (n, d) in [(1i64, 3), (2, 3), (15, 4), (649, 720), (-7, 11), (22, 7)] {
            assert_eq!(rational_to_f64(&rat(n, d)), n as f64 / d as f64);
        }
        assert_eq!(rational_to_f64(&rat(0, 5)), 0.0);
        assert_eq!(rational_to_f64(&rat(6, 3)), 2.0);
        assert_eq!(rational_to_f64(&rat(1, 1 << 20)), 2f64.powi(-20));
    }

    #[test]
    fn ties_round_to_even() {
        let one_ulp = 2f64.powi(-52);
        // 1 + 2^-53 is halfway between 1 and 1 + ulp: down to even
        let v = BigRational::new(BigInt::from((1i64 << 53) + 1), BigInt::from(1i64 << 53));
        assert_eq!(rational_to_f64(&v), 1.0);
        // 1 + 3*2^-53 is halfway as well: up to even
        let v = BigRational::new(BigInt::from((1i64 << 53) + 3), BigInt::from(1i64 << 53));
        assert_eq!(rational_to_f64(&v), 1.0 + 2.0 * one_ulp);
        // just above the first tie: up
        let v = BigRational::new(
            BigInt::from(((1i128 << 53) + 1) * 4 + 1),
            BigInt::from(1i128 << 55),
        );
        assert_eq!(rational_to_f64(&v), 1.0 + one_ulp);
    }

    #[test]
    fn scaling_by_powers_of_two_is_exact() {
        let base = rat(22, 7);
        let scaled = base * BigRational::new(BigInt::from(1i64) << 60, BigInt::from(1));
        assert_eq!(rational_to_f64(&scaled), (22.0 / 7.0) * 2f64.powi(60));
    }

    #[test]
    fn record_round_trip() {
        let values: Vec<BigRational> = vec![rat(1, 1), rat(3, 2), rat(11, 6), rat(-5, 7)];
        let mut buf = Vec::new();
        write_records(&mut buf, &values).unwrap();
        let back = read_records(&buf[..]).unwrap();
        assert_eq!(values, back);
    }

    #[test]
    fn malformed_records_are_rejected() {
        assert!(parse_record("3;1/0").is_err());
        assert!(parse_record("x;1/2").is_err());
        assert!(parse_record("3:1/2").is_err());
        assert!(read_records(&b"0;1/1\n2;1/2\n"[..]).is_err());
    }
}
