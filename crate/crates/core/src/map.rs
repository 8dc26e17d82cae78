//! The logistic map iteration unit and whole-orbit runs.
//!
//! One iteration of `x' = r*x*(1-x)` is computed the way the datapath does:
//! `(r*x)` and `(1-x)` in parallel, each 32 bits wide, then one product of
//! the two. Both multiplies go through their own multiply-convert unit, so
//! the intermediate `r*x` is rounded to 32 bits before the final product.
//! That double rounding is the defining fidelity property of this model; a
//! single 64-bit accumulation would produce different orbits.

use crate::error::{Error, Result};
use crate::fix::{mul_convert, Fix32, RoundMode};

/// Per-stage overflow/underflow indicators of one multiply-convert unit.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StageFlags {
    pub overflow: bool,
    pub underflow: bool,
}

/// Output of one iteration: the new value plus aggregated and per-stage
/// flags. The aggregate is the OR of both stages; per-stage flags are kept
/// for trace output.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StepResult {
    pub value: Fix32,
    pub overflow: bool,
    pub underflow: bool,
    /// Flags of the `r*x` conversion stage.
    pub rx_flags: StageFlags,
    /// Flags of the final `(r*x)*(1-x)` conversion stage.
    pub product_flags: StageFlags,
}

/// Parameters of an orbit run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MapParams {
    pub r: Fix32,
    pub x0: Fix32,
    pub mode: RoundMode,
    pub n_iter: u32,
}

impl MapParams {
    pub fn new(r: Fix32, x0: Fix32, mode: RoundMode, n_iter: u32) -> Result<MapParams> {
        let params = MapParams {
            r,
            x0,
            mode,
            n_iter,
        };
        params.validate()?;
        Ok(params)
    }

    /// Domain check: `x0 in [0, 1]`, `r in (0, 4]`.
    pub fn validate(&self) -> Result<()> {
        check_domain(self.x0, self.r)
    }
}

/// One orbit record: iteration index, value, and the OR of that iteration's
/// stage flags. Record 0 carries `x0` with clear flags.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IterationRecord {
    pub n: u32,
    pub x: Fix32,
    pub overflow: bool,
    pub underflow: bool,
}

/// A complete orbit: `n_iter + 1` records including the initial condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub params: MapParams,
    pub records: Vec<IterationRecord>,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Raw words of the sequence, `x0` first.
    pub fn raw_values(&self) -> impl Iterator<Item = i32> + '_ {
        self.records.iter().map(|rec| rec.x.raw())
    }
}

fn check_domain(x: Fix32, r: Fix32) -> Result<()> {
    if x.raw() < 0 || x.raw() > Fix32::ONE.raw() {
        return Err(Error::Domain(format!(
            "x = {} is outside the map domain [0, 1]",
            x.to_decimal_string()
        )));
    }
    if r.raw() <= 0 || r.raw() > 4 * Fix32::ONE.raw() {
        return Err(Error::Domain(format!(
            "r = {} is outside the map domain (0, 4]",
            r.to_decimal_string()
        )));
    }
    Ok(())
}

/// One iteration without the domain check; total on all raw words.
/// The simulator core uses this directly, having validated its config.
pub(crate) fn step_unchecked(x: Fix32, r: Fix32, mode: RoundMode) -> StepResult {
    let rx = mul_convert(r, x, mode);
    let complement = x.one_minus();
    let product = mul_convert(rx.value, complement, mode);
    StepResult {
        value: product.value,
        overflow: rx.overflow || product.overflow,
        underflow: rx.underflow || product.underflow,
        rx_flags: StageFlags {
            overflow: rx.overflow,
            underflow: rx.underflow,
        },
        product_flags: StageFlags {
            overflow: product.overflow,
            underflow: product.underflow,
        },
    }
}

/// Runs one iteration of the map on in-domain operands.
pub fn iterate_once(x: Fix32, r: Fix32, mode: RoundMode) -> Result<StepResult> {
    check_domain(x, r)?;
    Ok(step_unchecked(x, r, mode))
}

/// Runs a whole orbit. Deterministic: identical params give bit-identical
/// records. `n_iter` is unbounded here; the 2047 cap belongs to the control
/// unit and is enforced only on the simulator path.
pub fn run_orbit(params: MapParams) -> Result<Orbit> {
    params.validate()?;
    let mut records = Vec::with_capacity(params.n_iter as usize + 1);
    records.push(IterationRecord {
        n: 0,
        x: params.x0,
        overflow: false,
        underflow: false,
    });
    let mut x = params.x0;
    for n in 1..=params.n_iter {
        let step = iterate_once(x, params.r, params.mode)?;
        x = step.value;
        records.push(IterationRecord {
            n,
            x,
            overflow: step.overflow,
            underflow: step.underflow,
        });
    }
    Ok(Orbit { params, records })
}
