//! C ABI for the spherepair calculator.
//!
//! Expressions and series cross the boundary as opaque handles that the
//! caller frees with the matching `*_free` function. Every fallible call
//! returns an [`SpStatus`]; on failure the message is available from
//! [`sp_last_error`] until the next call on the same thread. Strings
//! returned through out-parameters are owned by the caller and released with
//! [`sp_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use spherepair::cli::{run_job, JobDocument};
use spherepair::graded::{CoefficientRing, PowerSeries};
use spherepair::space::{homology, loop_series, normalize, poincare_series, SpaceExpr};
use spherepair::Error;

/// Outcome of an FFI call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpStatus {
    Ok = 0,
    Parse = 1,
    Validation = 2,
    Hypothesis = 3,
    Truncation = 4,
    NonInvertible = 5,
    UnsupportedCoefficient = 6,
    Unsupported = 7,
    Resource = 8,
    Verification = 9,
    NullPointer = 10,
    InvalidUtf8 = 11,
    Overflow = 12,
    Panic = 13,
}

impl From<&Error> for SpStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Parse(_) => SpStatus::Parse,
            Error::Validation(_) => SpStatus::Validation,
            Error::Hypothesis { .. } => SpStatus::Hypothesis,
            Error::Truncation { .. } => SpStatus::Truncation,
            Error::NonInvertible(_) => SpStatus::NonInvertible,
            Error::UnsupportedCoefficient(_) => SpStatus::UnsupportedCoefficient,
            Error::Unsupported(_) => SpStatus::Unsupported,
            Error::Resource(_) => SpStatus::Resource,
            Error::Verification(_) => SpStatus::Verification,
        }
    }
}

/// Opaque space expression.
pub struct SpExpr(SpaceExpr);

/// Opaque truncated power series with integer coefficients.
pub struct SpSeries(PowerSeries);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn fail(status: SpStatus, msg: &str) -> SpStatus {
    set_error(msg);
    status
}

fn fail_with(e: &Error) -> SpStatus {
    fail(SpStatus::from(e), &e.to_string())
}

/// Runs `f`, converting panics into [`SpStatus::Panic`].
fn guard(f: impl FnOnce() -> SpStatus) -> SpStatus {
    set_error("");
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(SpStatus::Panic, "internal panic"))
}

/// # Safety
/// `s` is null or a nul-terminated string valid for the call.
unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, SpStatus> {
    if s.is_null() {
        return Err(fail(SpStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(SpStatus::InvalidUtf8, "argument is not UTF-8"))
}

/// # Safety
/// `out` is null or valid for one pointer write.
unsafe fn write_string(out: *mut *mut c_char, s: String) -> SpStatus {
    if out.is_null() {
        return fail(SpStatus::NullPointer, "null output pointer");
    }
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            SpStatus::Ok
        }
        Err(_) => fail(SpStatus::Parse, "output contains a nul byte"),
    }
}

fn parse_ring(s: &str) -> Result<CoefficientRing, SpStatus> {
    s.parse::<CoefficientRing>().map_err(|e| fail_with(&e))
}

/// Message of the last failed call on this thread; empty after success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn sp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Process exit code the CLI uses for `status` (0 for success).
#[no_mangle]
pub extern "C" fn sp_status_exit_code(status: SpStatus) -> i32 {
    match status {
        SpStatus::Ok => 0,
        SpStatus::Verification => 2,
        SpStatus::Unsupported | SpStatus::UnsupportedCoefficient => 3,
        SpStatus::Resource => 4,
        _ => 1,
    }
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` is null or a pointer returned through a `char **` out-parameter of
/// this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn sp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses and validates a JSON space expression.
///
/// # Safety
/// `json` is a nul-terminated string; `out` is valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn sp_expr_from_json(json: *const c_char, out: *mut *mut SpExpr) -> SpStatus {
    guard(|| {
        if out.is_null() {
            return fail(SpStatus::NullPointer, "null output pointer");
        }
        let text = match read_str(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match SpaceExpr::from_json_str(text) {
            Ok(e) => {
                *out = Box::into_raw(Box::new(SpExpr(e)));
                SpStatus::Ok
            }
            Err(e) => fail_with(&e),
        }
    })
}

/// # Safety
/// `expr` is null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn sp_expr_free(expr: *mut SpExpr) {
    if !expr.is_null() {
        drop(Box::from_raw(expr));
    }
}

/// Normal form of `expr` as a new handle.
///
/// # Safety
/// `expr` is a live handle; `out` is valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn sp_expr_normalize(expr: *const SpExpr, out: *mut *mut SpExpr) -> SpStatus {
    guard(|| {
        if expr.is_null() || out.is_null() {
            return fail(SpStatus::NullPointer, "null handle or output pointer");
        }
        *out = Box::into_raw(Box::new(SpExpr(normalize(&(*expr).0))));
        SpStatus::Ok
    })
}

/// Display form, for example `(S^3 ∨ P^4(2))`.
///
/// # Safety
/// `expr` is a live handle; `out` is valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn sp_expr_to_string(expr: *const SpExpr, out: *mut *mut c_char) -> SpStatus {
    guard(|| {
        if expr.is_null() {
            return fail(SpStatus::NullPointer, "null handle");
        }
        write_string(out, (*expr).0.to_string())
    })
}

/// Canonical homology text through degree `trunc` over `ring`
/// (`z`, `q`, `fp:<p>` or `zloc:<p,...>`).
///
/// # Safety
/// `expr` is a live handle; `ring` is a nul-terminated string; `out` is valid
/// for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn sp_homology(
    expr: *const SpExpr,
    ring: *const c_char,
    trunc: usize,
    out: *mut *mut c_char,
) -> SpStatus {
    guard(|| {
        if expr.is_null() {
            return fail(SpStatus::NullPointer, "null handle");
        }
        let ring = match read_str(ring).and_then(parse_ring) {
            Ok(r) => r,
            Err(s) => return s,
        };
        match homology(&(*expr).0, &ring, trunc) {
            Ok(h) => write_string(out, h.to_string()),
            Err(e) => fail_with(&e),
        }
    })
}

/// # Safety
/// Same contract as [`sp_poincare_series`].
unsafe fn series_call(
    expr: *const SpExpr,
    field: *const c_char,
    trunc: usize,
    out: *mut *mut SpSeries,
    looped: bool,
) -> SpStatus {
    guard(|| {
        if expr.is_null() || out.is_null() {
            return fail(SpStatus::NullPointer, "null handle or output pointer");
        }
        let ring = match read_str(field).and_then(parse_ring) {
            Ok(r) => r,
            Err(s) => return s,
        };
        let f = match ring.require_field() {
            Ok(f) => f,
            Err(e) => return fail_with(&e),
        };
        let e = &(*expr).0;
        let s = if looped { loop_series(e, f, trunc) } else { poincare_series(e, f, trunc) };
        match s {
            Ok(s) => {
                *out = Box::into_raw(Box::new(SpSeries(s)));
                SpStatus::Ok
            }
            Err(e) => fail_with(&e),
        }
    })
}

/// Poincaré series of `expr` over the field `field` (`q` or `fp:<p>`).
///
/// # Safety
/// `expr` is a live handle; `field` is a nul-terminated string; `out` is
/// valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn sp_poincare_series(
    expr: *const SpExpr,
    field: *const c_char,
    trunc: usize,
    out: *mut *mut SpSeries,
) -> SpStatus {
    series_call(expr, field, trunc, out, false)
}

/// Poincaré series of the loop space of `expr`.
///
/// # Safety
/// Same contract as [`sp_poincare_series`].
#[no_mangle]
pub unsafe extern "C" fn sp_loop_series(
    expr: *const SpExpr,
    field: *const c_char,
    trunc: usize,
    out: *mut *mut SpSeries,
) -> SpStatus {
    series_call(expr, field, trunc, out, true)
}

/// Truncation degree of the series; coefficients `0..=trunc` are exact.
///
/// # Safety
/// `series` is a live handle.
#[no_mangle]
pub unsafe extern "C" fn sp_series_trunc(series: *const SpSeries) -> usize {
    if series.is_null() {
        return 0;
    }
    (*series).0.trunc()
}

/// Coefficient of `t^degree` as a 64-bit integer.
///
/// # Safety
/// `series` is a live handle; `out` is valid for one write.
#[no_mangle]
pub unsafe extern "C" fn sp_series_coeff(series: *const SpSeries, degree: usize, out: *mut i64) -> SpStatus {
    guard(|| {
        if series.is_null() || out.is_null() {
            return fail(SpStatus::NullPointer, "null handle or output pointer");
        }
        let s = &(*series).0;
        if degree > s.trunc() {
            return fail_with(&Error::Truncation {
                needed: degree,
                available: s.trunc(),
            });
        }
        match i64::try_from(s.coeff(degree)) {
            Ok(c) => {
                *out = c;
                SpStatus::Ok
            }
            Err(_) => fail(SpStatus::Overflow, "coefficient does not fit in 64 bits; use sp_series_to_string"),
        }
    })
}

/// Exact text form, for example `1 + t^2 + O(t^5)`.
///
/// # Safety
/// `series` is a live handle; `out` is valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn sp_series_to_string(series: *const SpSeries, out: *mut *mut c_char) -> SpStatus {
    guard(|| {
        if series.is_null() {
            return fail(SpStatus::NullPointer, "null handle");
        }
        write_string(out, (*series).0.to_string())
    })
}

/// # Safety
/// `series` is null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn sp_series_free(series: *mut SpSeries) {
    if !series.is_null() {
        drop(Box::from_raw(series));
    }
}

/// Runs one CLI job document (`{"command", "payload", "options"}`) and
/// writes the JSON report. `exit_code` receives the CLI exit status; the
/// return value is `SP_STATUS_OK` whenever a report was produced, including
/// reports of failed hypotheses or verifications.
///
/// # Safety
/// `job_json` is a nul-terminated string; `out_json` and `exit_code` are
/// valid for one write each.
#[no_mangle]
pub unsafe extern "C" fn sp_run_job(
    job_json: *const c_char,
    out_json: *mut *mut c_char,
    exit_code: *mut i32,
) -> SpStatus {
    guard(|| {
        if exit_code.is_null() {
            return fail(SpStatus::NullPointer, "null exit code pointer");
        }
        let text = match read_str(job_json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let job: JobDocument = match serde_json::from_str(text) {
            Ok(j) => j,
            Err(e) => return fail(SpStatus::Parse, &format!("line {} column {}: {e}", e.line(), e.column())),
        };
        let outcome = run_job(&job);
        *exit_code = outcome.exit_code;
        write_string(out_json, outcome.json.to_string())
    })
}

/// Library version, static storage.
#[no_mangle]
pub extern "C" fn sp_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr().cast()
}
