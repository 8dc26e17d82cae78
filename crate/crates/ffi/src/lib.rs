//! C ABI for the Q16.16 logistic map reference model.
//!
//! Fixed-point values cross the boundary as their raw `int32_t` words;
//! orbits are opaque handles created by `qlm_orbit_run` /
//! `qlm_orbit_run_sim` and released with `qlm_orbit_free`. Every fallible
//! call returns a [`QlmStatus`] and writes results through out-pointers.
//! The committed header lives at `include/qlogmap.h`; rebuild it with
//! `cargo build -p qlogmap-ffi --features generate-header`.

use std::ffi::{c_char, CStr};

use qlogmap::{analysis, map, sim};
use qlogmap::{Error, Fix32, MapParams, Orbit, RoundMode, SimConfig};

/// Call outcome. `Ok` is zero; everything else identifies the failure class.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QlmStatus {
    Ok = 0,
    NullPointer = 1,
    ParseError = 2,
    RangeError = 3,
    DomainError = 4,
    ConfigError = 5,
    InsufficientData = 6,
    ComparisonError = 7,
    IndexOutOfRange = 8,
    BufferTooSmall = 9,
    IoError = 10,
}

impl From<&Error> for QlmStatus {
    fn from(e: &Error) -> QlmStatus {
        match e {
            Error::Parse(_) => QlmStatus::ParseError,
            Error::Range(_) => QlmStatus::RangeError,
            Error::Domain(_) => QlmStatus::DomainError,
            Error::Config(_) => QlmStatus::ConfigError,
            Error::InsufficientData(_) => QlmStatus::InsufficientData,
            Error::Comparison(_) => QlmStatus::ComparisonError,
            Error::Io(_) => QlmStatus::IoError,
        }
    }
}

/// Rounding mode select; values match the hardware select line.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QlmRoundMode {
    Trunc = 0,
    CeilPosInf = 1,
}

impl From<QlmRoundMode> for RoundMode {
    fn from(mode: QlmRoundMode) -> RoundMode {
        match mode {
            QlmRoundMode::Trunc => RoundMode::Trunc,
            QlmRoundMode::CeilPosInf => RoundMode::CeilPosInf,
        }
    }
}

/// Opaque orbit handle.
pub struct QlmOrbit {
    inner: Orbit,
}

/// Static name of a status code, e.g. `"ok"` or `"domain-error"`.
#[no_mangle]
pub extern "C" fn qlm_status_name(status: QlmStatus) -> *const c_char {
    let name: &'static CStr = match status {
        QlmStatus::Ok => c"ok",
        QlmStatus::NullPointer => c"null-pointer",
        QlmStatus::ParseError => c"parse-error",
        QlmStatus::RangeError => c"range-error",
        QlmStatus::DomainError => c"domain-error",
        QlmStatus::ConfigError => c"config-error",
        QlmStatus::InsufficientData => c"insufficient-data",
        QlmStatus::ComparisonError => c"comparison-error",
        QlmStatus::IndexOutOfRange => c"index-out-of-range",
        QlmStatus::BufferTooSmall => c"buffer-too-small",
        QlmStatus::IoError => c"io-error",
    };
    name.as_ptr()
}

/// Encodes a plain decimal literal into a Q16.16 raw word.
///
/// # Safety
/// `text` must point to a NUL-terminated string and `out_raw` to a writable
/// `int32_t`; both stay valid for the duration of the call.
#[no_mangle]
pub unsafe extern "C" fn qlm_encode(
    text: *const c_char,
    mode: QlmRoundMode,
    out_raw: *mut i32,
) -> QlmStatus {
    if text.is_null() || out_raw.is_null() {
        return QlmStatus::NullPointer;
    }
    let Ok(text) = CStr::from_ptr(text).to_str() else {
        return QlmStatus::ParseError;
    };
    match Fix32::from_decimal_str(text, mode.into()) {
        Ok(value) => {
            *out_raw = value.raw();
            QlmStatus::Ok
        }
        Err(e) => (&e).into(),
    }
}

/// Writes the exact decimal expansion of `raw / 2^16`, NUL-terminated.
/// 64 bytes always suffice.
///
/// # Safety
/// `buf` must point to at least `cap` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn qlm_decode(raw: i32, buf: *mut c_char, cap: usize) -> QlmStatus {
    if buf.is_null() {
        return QlmStatus::NullPointer;
    }
    let text = Fix32::from_raw(raw).to_decimal_string();
    if text.len() + 1 > cap {
        return QlmStatus::BufferTooSmall;
    }
    std::ptr::copy_nonoverlapping(text.as_ptr(), buf.cast(), text.len());
    *buf.add(text.len()) = 0;
    QlmStatus::Ok
}

/// Exact `1 - x` on the raw word.
#[no_mangle]
pub extern "C" fn qlm_one_minus(raw: i32) -> i32 {
    Fix32::from_raw(raw).one_minus().raw()
}

/// One multiply-convert unit: `a * b` rounded back to 32 bits with
/// saturation and flagging.
///
/// # Safety
/// `out_raw`, `out_overflow` and `out_underflow` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qlm_mul_convert(
    a: i32,
    b: i32,
    mode: QlmRoundMode,
    out_raw: *mut i32,
    out_overflow: *mut bool,
    out_underflow: *mut bool,
) -> QlmStatus {
    if out_raw.is_null() || out_overflow.is_null() || out_underflow.is_null() {
        return QlmStatus::NullPointer;
    }
    let f = qlogmap::mul_convert(Fix32::from_raw(a), Fix32::from_raw(b), mode.into());
    *out_raw = f.value.raw();
    *out_overflow = f.overflow;
    *out_underflow = f.underflow;
    QlmStatus::Ok
}

/// One map iteration `r*x*(1-x)` on in-domain operands; flags are the OR of
/// both conversion stages.
///
/// # Safety
/// `out_raw`, `out_overflow` and `out_underflow` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qlm_step(
    x: i32,
    r: i32,
    mode: QlmRoundMode,
    out_raw: *mut i32,
    out_overflow: *mut bool,
    out_underflow: *mut bool,
) -> QlmStatus {
    if out_raw.is_null() || out_overflow.is_null() || out_underflow.is_null() {
        return QlmStatus::NullPointer;
    }
    match map::iterate_once(Fix32::from_raw(x), Fix32::from_raw(r), mode.into()) {
        Ok(step) => {
            *out_raw = step.value.raw();
            *out_overflow = step.overflow;
            *out_underflow = step.underflow;
            QlmStatus::Ok
        }
        Err(e) => (&e).into(),
    }
}

unsafe fn orbit_out(out: *mut *mut QlmOrbit, orbit: Orbit) -> QlmStatus {
    *out = Box::into_raw(Box::new(QlmOrbit { inner: orbit }));
    QlmStatus::Ok
}

/// Runs an orbit of `n_iter` iterations from `x0`; the handle owns
/// `n_iter + 1` records including the initial condition.
///
/// # Safety
/// `out_orbit` must be writable. The returned handle must be released with
/// `qlm_orbit_free`.
#[no_mangle]
pub unsafe extern "C" fn qlm_orbit_run(
    r: i32,
    x0: i32,
    mode: QlmRoundMode,
    n_iter: u32,
    out_orbit: *mut *mut QlmOrbit,
) -> QlmStatus {
    if out_orbit.is_null() {
        return QlmStatus::NullPointer;
    }
    let params = match MapParams::new(Fix32::from_raw(r), Fix32::from_raw(x0), mode.into(), n_iter)
    {
        Ok(p) => p,
        Err(e) => return (&e).into(),
    };
    match map::run_orbit(params) {
        Ok(orbit) => orbit_out(out_orbit, orbit),
        Err(e) => (&e).into(),
    }
}

/// Runs the cycle-level control-unit simulation and returns its orbit of
/// register load events (bit-identical to `qlm_orbit_run` with
/// `n_iter = it_max`). `it_max` is limited to 2047 by the 11-bit counter;
/// `latency` is the datapath latency in cycles, at least 1.
///
/// # Safety
/// `out_orbit` must be writable. The returned handle must be released with
/// `qlm_orbit_free`.
#[no_mangle]
pub unsafe extern "C" fn qlm_orbit_run_sim(
    r: i32,
    x0: i32,
    mode: QlmRoundMode,
    it_max: u16,
    latency: u32,
    out_orbit: *mut *mut QlmOrbit,
) -> QlmStatus {
    if out_orbit.is_null() {
        return QlmStatus::NullPointer;
    }
    let result = MapParams::new(
        Fix32::from_raw(r),
        Fix32::from_raw(x0),
        mode.into(),
        u32::from(it_max),
    )
    .and_then(|params| SimConfig::new(params, it_max, latency))
    .and_then(|config| sim::run_sim(&config));
    match result {
        Ok((orbit, _trace)) => orbit_out(out_orbit, orbit),
        Err(e) => (&e).into(),
    }
}

/// Number of records in the orbit (`n_iter + 1`); zero for a null handle.
///
/// # Safety
/// `orbit` must be a live handle from this library, or null.
#[no_mangle]
pub unsafe extern "C" fn qlm_orbit_len(orbit: *const QlmOrbit) -> usize {
    orbit.as_ref().map_or(0, |o| o.inner.len())
}

/// Raw word of record `index` (0 is the initial condition).
///
/// # Safety
/// `orbit` must be a live handle; `out_raw` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qlm_orbit_value(
    orbit: *const QlmOrbit,
    index: usize,
    out_raw: *mut i32,
) -> QlmStatus {
    let Some(orbit) = orbit.as_ref() else {
        return QlmStatus::NullPointer;
    };
    if out_raw.is_null() {
        return QlmStatus::NullPointer;
    }
    match orbit.inner.records.get(index) {
        Some(rec) => {
            *out_raw = rec.x.raw();
            QlmStatus::Ok
        }
        None => QlmStatus::IndexOutOfRange,
    }
}

/// Overflow/underflow flags of record `index`.
///
/// # Safety
/// `orbit` must be a live handle; both out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn qlm_orbit_flags(
    orbit: *const QlmOrbit,
    index: usize,
    out_overflow: *mut bool,
    out_underflow: *mut bool,
) -> QlmStatus {
    let Some(orbit) = orbit.as_ref() else {
        return QlmStatus::NullPointer;
    };
    if out_overflow.is_null() || out_underflow.is_null() {
        return QlmStatus::NullPointer;
    }
    match orbit.inner.records.get(index) {
        Some(rec) => {
            *out_overflow = rec.overflow;
            *out_underflow = rec.underflow;
            QlmStatus::Ok
        }
        None => QlmStatus::IndexOutOfRange,
    }
}

/// Releases an orbit handle. Null is ignored.
///
/// # Safety
/// `orbit` must have come from this library and not been freed already.
#[no_mangle]
pub unsafe extern "C" fn qlm_orbit_free(orbit: *mut QlmOrbit) {
    if !orbit.is_null() {
        drop(Box::from_raw(orbit));
    }
}

/// Lyapunov exponent of the orbit; `out_skipped` counts zero-derivative
/// terms excluded from the average.
///
/// # Safety
/// `orbit` must be a live handle; the out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn qlm_lyapunov(
    orbit: *const QlmOrbit,
    out_lambda: *mut f64,
    out_n_used: *mut usize,
    out_skipped: *mut usize,
) -> QlmStatus {
    let Some(orbit) = orbit.as_ref() else {
        return QlmStatus::NullPointer;
    };
    if out_lambda.is_null() || out_n_used.is_null() || out_skipped.is_null() {
        return QlmStatus::NullPointer;
    }
    match analysis::lyapunov(&orbit.inner) {
        Ok(est) => {
            *out_lambda = est.lambda;
            *out_n_used = est.n_used;
            *out_skipped = est.skipped;
            QlmStatus::Ok
        }
        Err(e) => (&e).into(),
    }
}

unsafe fn divergence_index(
    a: *const QlmOrbit,
    b: *const QlmOrbit,
    out_n: *mut i64,
    pick: impl Fn(&analysis::DivergenceProfile) -> Option<u32>,
) -> QlmStatus {
    let (Some(a), Some(b)) = (a.as_ref(), b.as_ref()) else {
        return QlmStatus::NullPointer;
    };
    if out_n.is_null() {
        return QlmStatus::NullPointer;
    }
    match analysis::divergence(&a.inner, &b.inner) {
        Ok(profile) => {
            *out_n = pick(&profile).map_or(-1, i64::from);
            QlmStatus::Ok
        }
        Err(e) => (&e).into(),
    }
}

/// First iteration at which the two orbits differ at the raw-bit level,
/// or -1 if they never do. The orbits must share r, x0 and length.
///
/// # Safety
/// `a` and `b` must be live handles; `out_n` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qlm_first_bit_divergence(
    a: *const QlmOrbit,
    b: *const QlmOrbit,
    out_n: *mut i64,
) -> QlmStatus {
    divergence_index(a, b, out_n, |p| p.first_bit_divergence)
}

/// First iteration at which the decoded difference exceeds `epsilon`,
/// or -1 if it never does.
///
/// # Safety
/// `a` and `b` must be live handles; `out_n` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qlm_first_visible_divergence(
    a: *const QlmOrbit,
    b: *const QlmOrbit,
    epsilon: f64,
    out_n: *mut i64,
) -> QlmStatus {
    divergence_index(a, b, out_n, |p| p.first_visible_divergence(epsilon))
}
