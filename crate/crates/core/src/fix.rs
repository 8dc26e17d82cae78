//! Q16.16 fixed-point arithmetic: encoding, exact subtraction from one, and
//! the widening multiply / rounding 64-to-32 conversion pair that the
//! datapath instantiates twice per iteration.
//!
//! A [`Fix32`] is a signed 32-bit two's-complement word interpreted as
//! `raw / 2^16`. Products are held exactly in a [`Wide64`] (Q32.32) and
//! brought back to 32 bits by [`convert`], which rounds per [`RoundMode`],
//! saturates on overflow and collapses to zero on underflow, reporting both
//! conditions as flags.

use std::fmt;
use std::str::FromStr;

use crate::decimal;
use crate::error::{Error, Result};

/// Scale factor between raw integer and represented value: 2^16.
pub const SCALE: i64 = 1 << 16;

const FRAC_BITS: u32 = 16;
const FRAC_MASK: i64 = 0xFFFF;
// 5^16; raw / 2^16 = raw * 5^16 / 10^16, so fractional expansions terminate.
const FIVE_POW_16: i128 = 152_587_890_625;

/// A Q16.16 fixed-point number: signed 32-bit raw word, value `raw / 2^16`.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fix32(i32);

impl Fix32 {
    pub const ZERO: Fix32 = Fix32(0);
    pub const ONE: Fix32 = Fix32(1 << FRAC_BITS);
    /// Positive saturation bound, 2^31 - 1 raw.
    pub const MAX: Fix32 = Fix32(i32::MAX);
    /// Negative saturation bound, -2^31 raw.
    pub const MIN: Fix32 = Fix32(i32::MIN);

    pub const fn from_raw(raw: i32) -> Fix32 {
        Fix32(raw)
    }

    pub const fn raw(self) -> i32 {
        self.0
    }

    /// Encodes an integer; errors if it exceeds the Q16.16 integer range.
    pub fn from_int(n: i32) -> Result<Fix32> {
        Self::from_ratio(n as i64, 1, RoundMode::Trunc)
    }

    /// Encodes a decimal literal such as `"0.1"` or `"-3.25"` under `mode`.
    ///
    /// Trunc takes the floor (toward minus infinity) of `d * 2^16`,
    /// CeilPosInf the ceiling. Exact for any number of digits.
    pub fn from_decimal_str(s: &str, mode: RoundMode) -> Result<Fix32> {
        decimal::parse_decimal(s).and_then(|lit| lit.encode(mode))
    }

    /// Encodes the exact rational `num / den` under `mode`.
    pub fn from_ratio(num: i64, den: i64, mode: RoundMode) -> Result<Fix32> {
        if den == 0 {
            return Err(Error::Parse("denominator must be nonzero".into()));
        }
        let scaled_num = num as i128 * SCALE as i128;
        let rounded = match mode {
            RoundMode::Trunc => div_floor(scaled_num, den as i128),
            RoundMode::CeilPosInf => div_ceil(scaled_num, den as i128),
        };
        i32::try_from(rounded)
            .map(Fix32)
            .map_err(|_| Error::Range(format!("{num}/{den} is outside the Q16.16 range")))
    }

    /// Exact value as a double. Lossless: |raw| < 2^31 <= 2^53.
    pub fn to_f64(self) -> f64 {
        self.0 as f64 / SCALE as f64
    }

    /// Canonical hex form of the raw word, e.g. `0x00001999`.
    pub fn to_hex(self) -> String {
        format!("0x{:08X}", self.0 as u32)
    }

    /// Exact decimal expansion, e.g. `0.0999908447265625`. Binary fractions
    /// terminate in decimal, so this is never an approximation.
    pub fn to_decimal_string(self) -> String {
        decimal_of_scaled(self.0 as i64)
    }

    /// Computes `1 - x` exactly on the raw word (a 32-bit subtractor).
    ///
    /// Exact and flag-free on the map domain `x in [0, 1]`; callers enforce
    /// the domain, this stays total via two's-complement wrapping.
    pub fn one_minus(self) -> Fix32 {
        Fix32((Self::ONE.0).wrapping_sub(self.0))
    }
}

impl fmt::Debug for Fix32 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fix32({} = {})", self.to_hex(), self.to_decimal_string())
    }
}

impl fmt::Display for Fix32 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal_string())
    }
}

/// Exact decimal expansion of `raw / 2^16` for any i64 raw value.
///
/// Also serves 33-bit differences of two raw words, which is why it is wider
/// than [`Fix32`] itself.
pub(crate) fn decimal_of_scaled(raw: i64) -> String {
    let neg = raw < 0;
    let mag = (raw as i128).unsigned_abs();
    let int_part = mag >> FRAC_BITS;
    let frac_part = mag & FRAC_MASK as u128;
    // frac/2^16 = frac * 5^16 / 10^16
    let mut frac_digits = format!("{:016}", frac_part * FIVE_POW_16 as u128);
    while frac_digits.len() > 1 && frac_digits.ends_with('0') {
        frac_digits.pop();
    }
    let sign = if neg { "-" } else { "" };
    format!("{sign}{int_part}.{frac_digits}")
}

/// Rounding mode select of the conversion units: the `i_round` input.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RoundMode {
    /// Drop the low 16 bits: floor toward minus infinity. Signal '0'.
    Trunc,
    /// Round toward plus infinity: add one ulp if any dropped bit is set.
    /// Signal '1'.
    CeilPosInf,
}

impl RoundMode {
    /// The hardware select-line value: Trunc = 0, CeilPosInf = 1.
    pub const fn bit(self) -> u8 {
        match self {
            RoundMode::Trunc => 0,
            RoundMode::CeilPosInf => 1,
        }
    }

    pub const fn from_bit(bit: u8) -> Option<RoundMode> {
        match bit {
            0 => Some(RoundMode::Trunc),
            1 => Some(RoundMode::CeilPosInf),
            _ => None,
        }
    }

    /// Stable lowercase name used in CLI flags and file outputs.
    pub const fn name(self) -> &'static str {
        match self {
            RoundMode::Trunc => "trunc",
            RoundMode::CeilPosInf => "ceil",
        }
    }
}

impl fmt::Display for RoundMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RoundMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<RoundMode> {
        match s {
            "trunc" => Ok(RoundMode::Trunc),
            "ceil" => Ok(RoundMode::CeilPosInf),
            other => Err(Error::Parse(format!(
                "unknown rounding mode {other:?}, expected \"trunc\" or \"ceil\""
            ))),
        }
    }
}

/// A full-width product: signed 64-bit raw word, value `raw / 2^32` (Q32.32).
///
/// Any Fix32 x Fix32 product fits: |a.raw * b.raw| <= 2^62.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Wide64(i64);

impl Wide64 {
    pub const fn from_raw(raw: i64) -> Wide64 {
        Wide64(raw)
    }

    pub const fn raw(self) -> i64 {
        self.0
    }
}

/// A 64-to-32 conversion result with its overflow/underflow indicators
/// (the `o_over` / `o_under` signals). The flags are mutually exclusive:
/// overflow means the value saturated, underflow means a nonzero input
/// collapsed to zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Flagged {
    pub value: Fix32,
    pub overflow: bool,
    pub underflow: bool,
}

impl Flagged {
    const fn exact(value: Fix32) -> Flagged {
        Flagged {
            value,
            overflow: false,
            underflow: false,
        }
    }
}

/// Exact widening multiply: Q16.16 x Q16.16 -> Q32.32 in one 64-bit product.
pub fn mul_wide(a: Fix32, b: Fix32) -> Wide64 {
    Wide64(a.raw() as i64 * b.raw() as i64)
}

/// The same product built from four 16x16 partial products, mirroring the
/// decomposition onto narrow hardware multipliers.
///
/// Split each word as `x = hi * 2^16 + lo` with `hi` signed (arithmetic
/// shift) and `lo` unsigned; then
/// `a * b = hh * 2^32 + (hl + lh) * 2^16 + ll`.
/// Bit-identical to [`mul_wide`] for every input pair.
pub fn mul_wide_decomposed(a: Fix32, b: Fix32) -> Wide64 {
    let a_hi = (a.raw() >> 16) as i64;
    let a_lo = (a.raw() as u32 & 0xFFFF) as i64;
    let b_hi = (b.raw() >> 16) as i64;
    let b_lo = (b.raw() as u32 & 0xFFFF) as i64;

    let hh = a_hi * b_hi;
    let hl = a_hi * b_lo;
    let lh = a_lo * b_hi;
    let ll = a_lo * b_lo;

    // |sum| <= 2^62, so the i64 accumulation cannot overflow.
    Wide64((hh << 32) + ((hl + lh) << 16) + ll)
}

/// The 64-to-32 conversion unit: rounds away the low 16 bits per `mode`,
/// saturates out-of-range results (overflow flag) and reports nonzero
/// inputs that round to zero (underflow flag).
pub fn convert(w: Wide64, mode: RoundMode) -> Flagged {
    // Arithmetic shift right is floor division by 2^16.
    let floor = w.raw() >> FRAC_BITS;
    let rounded = match mode {
        RoundMode::Trunc => floor,
        RoundMode::CeilPosInf => floor + ((w.raw() & FRAC_MASK != 0) as i64),
    };
    if rounded > i32::MAX as i64 {
        Flagged {
            value: Fix32::MAX,
            overflow: true,
            underflow: false,
        }
    } else if rounded < i32::MIN as i64 {
        Flagged {
            value: Fix32::MIN,
            overflow: true,
            underflow: false,
        }
    } else if rounded == 0 && w.raw() != 0 {
        Flagged {
            value: Fix32::ZERO,
            overflow: false,
            underflow: true,
        }
    } else {
        Flagged::exact(Fix32::from_raw(rounded as i32))
    }
}

/// One multiply-convert unit: decomposed widening multiply followed by the
/// rounding conversion. The iteration datapath chains two of these.
pub fn mul_convert(a: Fix32, b: Fix32, mode: RoundMode) -> Flagged {
    convert(mul_wide_decomposed(a, b), mode)
}

fn div_floor(num: i128, den: i128) -> i128 {
    let q = num / den;
    let r = num % den;
    if r != 0 && (r < 0) != (den < 0) {
        q - 1
    } else {
        q
    }
}

fn div_ceil(num: i128, den: i128) -> i128 {
    let q = num / den;
    let r = num % den;
    if r != 0 && (r < 0) == (den < 0) {
        q + 1
    } else {
        q
    }
}
