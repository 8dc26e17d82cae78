//! Deterministic CSV and JSON writers for orbits, traces, comparisons and
//! analysis reports. The schemas are frozen in `docs/formats.md`; identical
//! inputs produce byte-identical files.
//!
//! Every fixed-point quantity is emitted twice: the 8-digit uppercase hex of
//! the raw word and its exact decimal expansion. Flags are 0/1 in CSV and
//! booleans in JSON.

use std::io::Write;

use serde::Serialize;

use crate::analysis::{DivergenceProfile, LyapunovEstimate};
use crate::error::{Error, Result};
use crate::fix::{decimal_of_scaled, Fix32, RoundMode};
use crate::map::Orbit;
use crate::sim::TraceEvent;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Error {
        Error::Io(std::io::Error::other(e))
    }
}

fn bit(b: bool) -> u8 {
    b as u8
}

#[derive(Serialize)]
struct ParamsJson {
    r_hex: String,
    r_decimal: String,
    x0_hex: String,
    x0_decimal: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    rounding: Option<&'static str>,
    n_iter: u32,
}

impl ParamsJson {
    fn new(orbit: &Orbit, with_mode: bool) -> ParamsJson {
        ParamsJson {
            r_hex: orbit.params.r.to_hex(),
            r_decimal: orbit.params.r.to_decimal_string(),
            x0_hex: orbit.params.x0.to_hex(),
            x0_decimal: orbit.params.x0.to_decimal_string(),
            rounding: with_mode.then(|| orbit.params.mode.name()),
            n_iter: orbit.params.n_iter,
        }
    }
}

fn to_json_writer<T: Serialize>(mut w: impl Write, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    Ok(())
}

/// Orbit CSV: `n,x_hex,x_decimal,overflow,underflow`, one row per record.
pub fn write_orbit_csv(mut w: impl Write, orbit: &Orbit) -> Result<()> {
    writeln!(w, "n,x_hex,x_decimal,overflow,underflow")?;
    for rec in &orbit.records {
        writeln!(
            w,
            "{},{},{},{},{}",
            rec.n,
            rec.x.to_hex(),
            rec.x.to_decimal_string(),
            bit(rec.overflow),
            bit(rec.underflow)
        )?;
    }
    Ok(())
}

#[derive(Serialize)]
struct OrbitRecordJson {
    n: u32,
    x_hex: String,
    x_decimal: String,
    overflow: bool,
    underflow: bool,
}

#[derive(Serialize)]
struct OrbitJson {
    params: ParamsJson,
    records: Vec<OrbitRecordJson>,
}

pub fn write_orbit_json(w: impl Write, orbit: &Orbit) -> Result<()> {
    let doc = OrbitJson {
        params: ParamsJson::new(orbit, true),
        records: orbit
            .records
            .iter()
            .map(|rec| OrbitRecordJson {
                n: rec.n,
                x_hex: rec.x.to_hex(),
                x_decimal: rec.x.to_decimal_string(),
                overflow: rec.overflow,
                underflow: rec.underflow,
            })
            .collect(),
    };
    to_json_writer(w, &doc)
}

/// Trace CSV: a `#` note line on the modeling conventions, the column
/// header, then one row per clock cycle.
pub fn write_trace_csv(mut w: impl Write, trace: &[TraceEvent]) -> Result<()> {
    writeln!(
        w,
        "# cycle-level trace: done_all stretched to one full cycle; reset sampled at \
         cycle boundaries; counter increments on the x_reg load cycle"
    )?;
    writeln!(
        w,
        "cycle,fsm_state,counter,ready,o_done,done_all,x_reg_hex,x_reg_decimal,o_over,o_under"
    )?;
    for ev in trace {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{}",
            ev.cycle,
            ev.fsm,
            ev.counter,
            bit(ev.ready),
            bit(ev.o_done),
            bit(ev.done_all),
            ev.x.to_hex(),
            ev.x.to_decimal_string(),
            bit(ev.o_over),
            bit(ev.o_under)
        )?;
    }
    Ok(())
}

fn fmt_index(n: Option<u32>) -> String {
    n.map_or_else(|| "none".to_string(), |v| v.to_string())
}

/// Two-mode comparison CSV plus summary footer lines. The first orbit must
/// be the truncation run, the second the round-to-plus-infinity run.
pub fn write_compare_csv(
    mut w: impl Write,
    trunc: &Orbit,
    ceil: &Orbit,
    profile: &DivergenceProfile,
    epsilon: f64,
) -> Result<()> {
    writeln!(
        w,
        "n,x_trunc_hex,x_trunc_decimal,x_ceil_hex,x_ceil_decimal,abs_diff,raw_diff"
    )?;
    for ((rt, rc), row) in trunc.records.iter().zip(&ceil.records).zip(&profile.rows) {
        writeln!(
            w,
            "{},{},{},{},{},{},{}",
            row.n,
            rt.x.to_hex(),
            rt.x.to_decimal_string(),
            rc.x.to_hex(),
            rc.x.to_decimal_string(),
            decimal_of_scaled(row.raw_diff.abs()),
            row.raw_diff
        )?;
    }
    writeln!(
        w,
        "# first_bit_divergence,{}",
        fmt_index(profile.first_bit_divergence)
    )?;
    writeln!(
        w,
        "# first_visible_divergence,{}",
        fmt_index(profile.first_visible_divergence(epsilon))
    )?;
    writeln!(w, "# epsilon,{epsilon}")?;
    Ok(())
}

#[derive(Serialize)]
struct CompareRowJson {
    n: u32,
    x_trunc_hex: String,
    x_trunc_decimal: String,
    x_ceil_hex: String,
    x_ceil_decimal: String,
    abs_diff: String,
    raw_diff: i64,
}

#[derive(Serialize)]
struct CompareJson {
    params: ParamsJson,
    epsilon: f64,
    rows: Vec<CompareRowJson>,
    first_bit_divergence: Option<u32>,
    first_visible_divergence: Option<u32>,
}

pub fn write_compare_json(
    w: impl Write,
    trunc: &Orbit,
    ceil: &Orbit,
    profile: &DivergenceProfile,
    epsilon: f64,
) -> Result<()> {
    let rows = trunc
        .records
        .iter()
        .zip(&ceil.records)
        .zip(&profile.rows)
        .map(|((rt, rc), row)| CompareRowJson {
            n: row.n,
            x_trunc_hex: rt.x.to_hex(),
            x_trunc_decimal: rt.x.to_decimal_string(),
            x_ceil_hex: rc.x.to_hex(),
            x_ceil_decimal: rc.x.to_decimal_string(),
            abs_diff: decimal_of_scaled(row.raw_diff.abs()),
            raw_diff: row.raw_diff,
        })
        .collect();
    let doc = CompareJson {
        params: ParamsJson::new(trunc, false),
        epsilon,
        rows,
        first_bit_divergence: profile.first_bit_divergence,
        first_visible_divergence: profile.first_visible_divergence(epsilon),
    };
    to_json_writer(w, &doc)
}

/// Lyapunov report CSV: `metric,value` rows. The reference row carries the
/// literature value when one is known for the parameter, otherwise `none`.
pub fn write_lyapunov_csv(
    mut w: impl Write,
    est: &LyapunovEstimate,
    alt_form: Option<&LyapunovEstimate>,
) -> Result<()> {
    writeln!(w, "metric,value")?;
    writeln!(w, "lambda,{}", est.lambda)?;
    writeln!(w, "n_used,{}", est.n_used)?;
    writeln!(w, "skipped,{}", est.skipped)?;
    match est.reference {
        Some(r) => {
            writeln!(w, "reference,{r}")?;
            writeln!(w, "deviation,{}", est.lambda - r)?;
        }
        None => {
            writeln!(w, "reference,none")?;
            writeln!(w, "deviation,none")?;
        }
    }
    if let Some(alt) = alt_form {
        writeln!(w, "lambda_abs_log,{}", alt.lambda)?;
    }
    Ok(())
}

#[derive(Serialize)]
struct LyapunovJson {
    lambda: f64,
    n_used: usize,
    skipped: usize,
    reference: Option<f64>,
    deviation: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lambda_abs_log: Option<f64>,
}

pub fn write_lyapunov_json(
    w: impl Write,
    est: &LyapunovEstimate,
    alt_form: Option<&LyapunovEstimate>,
) -> Result<()> {
    let doc = LyapunovJson {
        lambda: est.lambda,
        n_used: est.n_used,
        skipped: est.skipped,
        reference: est.reference,
        deviation: est.reference.map(|r| est.lambda - r),
        lambda_abs_log: alt_form.map(|a| a.lambda),
    };
    to_json_writer(w, &doc)
}

/// Report for a single encoded literal.
pub struct EncodeReport {
    pub input: String,
    pub rounding: RoundMode,
    pub value: Fix32,
    /// Exact signed difference `input - decode(value)`, as decimal text.
    pub error: String,
}

pub fn write_encode_csv(mut w: impl Write, report: &EncodeReport) -> Result<()> {
    writeln!(w, "field,value")?;
    writeln!(w, "input,{}", report.input)?;
    writeln!(w, "rounding,{}", report.rounding)?;
    writeln!(w, "hex,{}", report.value.to_hex())?;
    writeln!(w, "decimal,{}", report.value.to_decimal_string())?;
    writeln!(w, "error,{}", report.error)?;
    Ok(())
}

#[derive(Serialize)]
struct EncodeJson<'a> {
    input: &'a str,
    rounding: &'static str,
    hex: String,
    decimal: String,
    error: &'a str,
}

pub fn write_encode_json(w: impl Write, report: &EncodeReport) -> Result<()> {
    let doc = EncodeJson {
        input: &report.input,
        rounding: report.rounding.name(),
        hex: report.value.to_hex(),
        decimal: report.value.to_decimal_string(),
        error: &report.error,
    };
    to_json_writer(w, &doc)
}
