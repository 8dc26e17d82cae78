//! Exact decimal literals.
//!
//! CLI inputs arrive as decimal text. Parsing keeps them as exact rationals
//! `digits / 10^frac_len` so that encoding to Q16.16 and the reported
//! encoding error involve no floating point at any step.

use num_bigint::{BigInt, BigUint};

use crate::error::{Error, Result};
use crate::fix::{Fix32, RoundMode, SCALE};

/// An exactly-parsed decimal literal: `(-1)^neg * digits / 10^frac_len`.
#[derive(Clone, Debug)]
pub struct DecimalLit {
    neg: bool,
    digits: BigUint,
    frac_len: usize,
}

/// Parses plain decimal notation: optional sign, digits, optional fraction.
/// The decimal separator is '.' regardless of locale.
pub fn parse_decimal(s: &str) -> Result<DecimalLit> {
    let bad = || Error::Parse(format!("{s:?} is not a plain decimal number"));
    let (neg, body) = match s.as_bytes().first() {
        Some(b'-') => (true, &s[1..]),
        Some(b'+') => (false, &s[1..]),
        _ => (false, s),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit())
        || !frac_part.bytes().all(|b| b.is_ascii_digit())
    {
        return Err(bad());
    }
    let mut digits = BigUint::from(0u32);
    for b in int_part.bytes().chain(frac_part.bytes()) {
        digits = digits * 10u32 + u32::from(b - b'0');
    }
    Ok(DecimalLit {
        neg,
        digits,
        frac_len: frac_part.len(),
    })
}

impl DecimalLit {
    /// Q16.16 encoding under `mode`: floor of `value * 2^16` for Trunc,
    /// ceiling for CeilPosInf. Errors if the rounded word leaves i32.
    pub fn encode(&self, mode: RoundMode) -> Result<Fix32> {
        let scaled = &self.digits * BigUint::from(SCALE as u64);
        let den = BigUint::from(10u32).pow(self.frac_len as u32);
        let q = &scaled / &den;
        let rem_nonzero = (&scaled % &den) != BigUint::from(0u32);
        // Round the magnitude, minding which direction the sign flips.
        let round_up = match (self.neg, mode) {
            (false, RoundMode::Trunc) => false,
            (false, RoundMode::CeilPosInf) => rem_nonzero,
            (true, RoundMode::Trunc) => rem_nonzero,
            (true, RoundMode::CeilPosInf) => false,
        };
        let mag = if round_up { q + 1u32 } else { q };
        let signed = if self.neg {
            -BigInt::from(mag)
        } else {
            BigInt::from(mag)
        };
        i32::try_from(&signed).map(Fix32::from_raw).map_err(|_| {
            Error::Range(format!(
                "value scales to raw {signed}, outside the 32-bit Q16.16 range"
            ))
        })
    }

    /// Exact signed difference `self - encoded`, as decimal text.
    ///
    /// The denominator is `10^frac_len * 2^16`, whose expansion terminates,
    /// so the result is exact. Small magnitudes render in scientific form.
    pub fn encoding_error(&self, encoded: Fix32) -> String {
        let mut lit = BigInt::from(self.digits.clone());
        if self.neg {
            lit = -lit;
        }
        let ten_k = BigInt::from(10u32).pow(self.frac_len as u32);
        // self - encoded = (digits * 2^16 - raw * 10^k) / (10^k * 2^16)
        let numer = lit * SCALE - BigInt::from(encoded.raw()) * &ten_k;
        // Scale by 5^16 to make the denominator a power of ten.
        let numer = numer * BigInt::from(5u32).pow(16);
        format_scaled_decimal(&numer, self.frac_len + 16)
    }
}

/// Renders the exact value `numer / 10^scale`. Magnitudes below 10^-3 use
/// scientific notation, everything else plain decimal.
fn format_scaled_decimal(numer: &BigInt, scale: usize) -> String {
    if numer == &BigInt::from(0u32) {
        return "0".to_string();
    }
    let neg = numer < &BigInt::from(0u32);
    let digits = numer.magnitude().to_str_radix(10);
    let sign = if neg { "-" } else { "" };
    let point_exp = digits.len() as i64 - 1 - scale as i64;
    if point_exp < -3 {
        let mantissa = digits.trim_end_matches('0');
        let (head, tail) = mantissa.split_at(1);
        if tail.is_empty() {
            format!("{sign}{head}e{point_exp}")
        } else {
            format!("{sign}{head}.{tail}e{point_exp}")
        }
    } else if digits.len() > scale {
        let (int_part, frac_part) = digits.split_at(digits.len() - scale);
        let frac_part = frac_part.trim_end_matches('0');
        if frac_part.is_empty() {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac_part}")
        }
    } else {
        let frac = format!("{}{}", "0".repeat(scale - digits.len()), digits);
        let frac = frac.trim_end_matches('0');
        format!("{sign}0.{frac}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_shapes() {
        assert!(parse_decimal("0.1").is_ok());
        assert!(parse_decimal("-3.25").is_ok());
        assert!(parse_decimal("+4").is_ok());
        assert!(parse_decimal(".5").is_ok());
        assert!(parse_decimal("5.").is_ok());
        assert!(parse_decimal("").is_err());
        assert!(parse_decimal(".").is_err());
        assert!(parse_decimal("0,1").is_err());
        assert!(parse_decimal("1e-3").is_err());
        assert!(parse_decimal("nan").is_err());
    }

    #[test]
    fn encode_error_for_tenth() {
        let lit = parse_decimal("0.1").unwrap();
        let x = lit.encode(RoundMode::Trunc).unwrap();
        assert_eq!(x.raw(), 6553);
        assert_eq!(lit.encoding_error(x), "9.1552734375e-6");
        let x_up = lit.encode(RoundMode::CeilPosInf).unwrap();
        assert_eq!(x_up.raw(), 6554);
        assert_eq!(lit.encoding_error(x_up), "-6.103515625e-6");
    }

    #[test]
    fn encode_error_zero_when_exact() {
        let lit = parse_decimal("0.5").unwrap();
        let x = lit.encode(RoundMode::Trunc).unwrap();
        assert_eq!(lit.encoding_error(x), "0");
    }

    #[test]
    fn long_literals_stay_exact() {
        // 2^-17 = 0.762939453125e-5, exactly half an ulp: Trunc drops it,
        // CeilPosInf rounds up a full ulp.
        let lit = parse_decimal("0.00000762939453125").unwrap();
        assert_eq!(lit.encode(RoundMode::Trunc).unwrap().raw(), 0);
        assert_eq!(lit.encode(RoundMode::CeilPosInf).unwrap().raw(), 1);
        // Far more digits than any machine word holds.
        let lit = parse_decimal("0.10000000000000000000000000000000000000000000000000000000000001")
            .unwrap();
        assert_eq!(lit.encode(RoundMode::Trunc).unwrap().raw(), 6553);
    }

    #[test]
    fn negative_rounding_direction() {
        let lit = parse_decimal("-0.1").unwrap();
        // floor(-6553.6) = -6554, ceil = -6553
        assert_eq!(lit.encode(RoundMode::Trunc).unwrap().raw(), -6554);
        assert_eq!(lit.encode(RoundMode::CeilPosInf).unwrap().raw(), -6553);
    }
}
