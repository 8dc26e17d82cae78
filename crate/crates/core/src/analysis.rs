//! Offline orbit analysis: Lyapunov exponent estimation and rounding-mode
//! divergence profiling.
//!
//! Analysis runs in double precision on decoded orbit values; the
//! fixed-point discipline applies only to orbit generation. Decoding is
//! lossless (raw words are 31 bits, well under the 53-bit mantissa).

use crate::error::{Error, Result};
use crate::map::Orbit;

/// Derivative of the map: `f'(x) = r * (1 - 2x)`.
pub fn derivative(x: f64, r: f64) -> f64 {
    r * (1.0 - 2.0 * x)
}

/// A Lyapunov exponent estimate in natural-log units.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LyapunovEstimate {
    pub lambda: f64,
    /// Number of terms actually averaged.
    pub n_used: usize,
    /// Terms dropped because the derivative was exactly zero (x = 0.5).
    pub skipped: usize,
    /// Literature value for the parameter, when one is known (ln 2 at r = 4).
    pub reference: Option<f64>,
}

fn estimate(orbit: &Orbit, term: impl Fn(f64) -> f64) -> Result<LyapunovEstimate> {
    if orbit.records.len() < 2 {
        return Err(Error::InsufficientData(
            "Lyapunov estimation needs an orbit with at least one iteration".into(),
        ));
    }
    let r = orbit.params.r.to_f64();
    let n_terms = orbit.records.len() - 1;
    let mut sum = 0.0;
    let mut skipped = 0usize;
    for record in &orbit.records[..n_terms] {
        let d = derivative(record.x.to_f64(), r);
        if d == 0.0 {
            skipped += 1;
            continue;
        }
        sum += term(d.abs().ln());
    }
    let n_used = n_terms - skipped;
    if n_used == 0 {
        return Err(Error::InsufficientData(
            "every term had zero derivative; no data to average".into(),
        ));
    }
    let reference = (orbit.params.r.raw() == 4 << 16).then_some(std::f64::consts::LN_2);
    Ok(LyapunovEstimate {
        lambda: sum / n_used as f64,
        n_used,
        skipped,
        reference,
    })
}

/// Lyapunov exponent over the orbit: `(1/N) sum ln |f'(x_n)|` for
/// `n = 0..N-1`. Zero-derivative terms (x exactly 0.5) are skipped and
/// counted, shrinking N.
pub fn lyapunov(orbit: &Orbit) -> Result<LyapunovEstimate> {
    estimate(orbit, |t| t)
}

/// Diagnostic variant averaging `|ln f'(x_n)|` instead, with the absolute
/// value outside the logarithm. Biased upward whenever |f'| dips below one;
/// exposed so the two readings can be compared side by side.
pub fn lyapunov_abs_log(orbit: &Orbit) -> Result<LyapunovEstimate> {
    estimate(orbit, f64::abs)
}

/// One per-iteration difference between two orbits.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DivergenceRow {
    pub n: u32,
    /// Absolute difference of the decoded values; exact in f64.
    pub abs_diff: f64,
    /// Signed difference of the raw words, first orbit minus second.
    pub raw_diff: i64,
}

/// Per-iteration divergence of two orbits sharing parameters but not
/// necessarily the rounding mode.
#[derive(Clone, Debug)]
pub struct DivergenceProfile {
    pub rows: Vec<DivergenceRow>,
    /// Smallest n at which the raw words differ.
    pub first_bit_divergence: Option<u32>,
}

impl DivergenceProfile {
    /// Smallest n at which the decoded difference exceeds `epsilon`.
    pub fn first_visible_divergence(&self, epsilon: f64) -> Option<u32> {
        self.rows
            .iter()
            .find(|row| row.abs_diff > epsilon)
            .map(|row| row.n)
    }
}

/// Compares two orbits record by record. The orbits must share r, x0 and
/// iteration count; only the rounding mode may differ.
pub fn divergence(a: &Orbit, b: &Orbit) -> Result<DivergenceProfile> {
    if a.params.r != b.params.r || a.params.x0 != b.params.x0 {
        return Err(Error::Comparison(
            "orbits have different r or x0; only the rounding mode may differ".into(),
        ));
    }
    if a.params.n_iter != b.params.n_iter || a.records.len() != b.records.len() {
        return Err(Error::Comparison(format!(
            "orbit lengths differ: {} vs {} records",
            a.records.len(),
            b.records.len()
        )));
    }
    let mut rows = Vec::with_capacity(a.records.len());
    let mut first_bit = None;
    for (ra, rb) in a.records.iter().zip(&b.records) {
        let raw_diff = i64::from(ra.x.raw()) - i64::from(rb.x.raw());
        if raw_diff != 0 && first_bit.is_none() {
            first_bit = Some(ra.n);
        }
        rows.push(DivergenceRow {
            n: ra.n,
            abs_diff: raw_diff.unsigned_abs() as f64 / 65536.0,
            raw_diff,
        });
    }
    Ok(DivergenceProfile {
        rows,
        first_bit_divergence: first_bit,
    })
}
