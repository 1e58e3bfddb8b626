//! C interface to the theta-crystal verification suite.
//!
//! Every entry point returns a [`TcStatus`]. On anything other than
//! `TC_STATUS_OK`, `TC_STATUS_CLAIM_FAILED` or `TC_STATUS_INCONCLUSIVE`,
//! [`tc_last_error`] describes what went wrong on the calling thread.
//! Panics never cross the boundary; they come back as `TC_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use theta_crystal::error::Error;
use theta_crystal::group::Group;
use theta_crystal::report::Report;
use theta_crystal::verify::{self, RunParams};
use theta_crystal::{ehrhart, hilbert};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TcStatus {
    Ok = 0,
    ClaimFailed = 1,
    InvalidArgument = 2,
    Inconclusive = 3,
    NullPointer = 4,
    Panic = 5,
}

/// Holds the group, which is expensive to build. Not thread-safe to free
/// while another call is using it; concurrent `tc_run` calls are fine.
pub struct TcContext {
    group: Group,
}

/// A finished report and its JSON rendering.
pub struct TcReport {
    report: Report,
    json: CString,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn guard(f: impl FnOnce() -> TcStatus) -> TcStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            TcStatus::Panic
        }
    }
}

fn status_of(e: &Error) -> TcStatus {
    match e {
        Error::InvalidArgument(_) | Error::OddDegree(_) => TcStatus::InvalidArgument,
        Error::InsufficientPrecision(_) | Error::Inconclusive(_) => TcStatus::Inconclusive,
        _ => TcStatus::ClaimFailed,
    }
}

fn fail(e: Error) -> TcStatus {
    set_error(e.to_string());
    status_of(&e)
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, TcStatus> {
    if p.is_null() {
        set_error(format!("{what} is null"));
        return Err(TcStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error(format!("{what} is not valid UTF-8"));
        TcStatus::InvalidArgument
    })
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next call on the same thread that returns a
/// [`TcStatus`].
#[no_mangle]
pub extern "C" fn tc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn tc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds a context. Free it with `tc_context_free`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage.
#[no_mangle]
pub unsafe extern "C" fn tc_context_new(out: *mut *mut TcContext) -> TcStatus {
    guard(|| {
        if out.is_null() {
            set_error("out is null");
            return TcStatus::NullPointer;
        }
        let ctx = Box::new(TcContext { group: Group::build() });
        *out = Box::into_raw(ctx);
        TcStatus::Ok
    })
}

/// # Safety
/// `ctx` must come from `tc_context_new` and not be freed twice. Null is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn tc_context_free(ctx: *mut TcContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// Runs one command (`"group"`, `"rep"`, `"jacobian"`, ..., `"verify-all"`).
///
/// `params_json` may be null or a JSON object with any of `degree`, `max`,
/// `precision`, `cutoff` (string, `"7/2"` or `"3.5"`) and `seed`.
///
/// When a report is produced it is stored in `*out_report` and the return
/// value reflects its claims: `OK`, `CLAIM_FAILED` or `INCONCLUSIVE`.
/// Otherwise `*out_report` is set to null.
///
/// # Safety
/// `ctx` must be a live context, `command` and `params_json` (if not null)
/// NUL-terminated strings, and `out_report` writable.
#[no_mangle]
pub unsafe extern "C" fn tc_run(
    ctx: *const TcContext,
    command: *const c_char,
    params_json: *const c_char,
    out_report: *mut *mut TcReport,
) -> TcStatus {
    guard(|| {
        if out_report.is_null() {
            set_error("out_report is null");
            return TcStatus::NullPointer;
        }
        *out_report = ptr::null_mut();
        if ctx.is_null() {
            set_error("ctx is null");
            return TcStatus::NullPointer;
        }
        let command = match str_arg(command, "command") {
            Ok(s) => s,
            Err(s) => return s,
        };
        let params: RunParams = if params_json.is_null() {
            RunParams::default()
        } else {
            let text = match str_arg(params_json, "params_json") {
                Ok(s) => s,
                Err(s) => return s,
            };
            match serde_json::from_str(text) {
                Ok(p) => p,
                Err(e) => {
                    set_error(format!("params_json: {e}"));
                    return TcStatus::InvalidArgument;
                }
            }
        };
        let report = match verify::run_command(&(*ctx).group, command, &params) {
            Ok(r) => r,
            Err(e) if status_of(&e) == TcStatus::InvalidArgument => return fail(e),
            Err(e) => {
                set_error(e.to_string());
                verify::error_report(command, &e)
            }
        };
        let status = match report.exit_code() {
            0 => TcStatus::Ok,
            3 => TcStatus::Inconclusive,
            _ => TcStatus::ClaimFailed,
        };
        let json = CString::new(report.to_json()).expect("JSON has no NUL");
        *out_report = Box::into_raw(Box::new(TcReport { report, json }));
        status
    })
}

/// The report as JSON. Owned by the report; valid until `tc_report_free`.
///
/// # Safety
/// `report` must be a live report or null.
#[no_mangle]
pub unsafe extern "C" fn tc_report_json(report: *const TcReport) -> *const c_char {
    report.as_ref().map_or(ptr::null(), |r| r.json.as_ptr())
}

/// Same convention as the command-line tool: 0, 1 (a claim failed) or 3
/// (inconclusive). Returns -1 for null.
///
/// # Safety
/// `report` must be a live report or null.
#[no_mangle]
pub unsafe extern "C" fn tc_report_exit_code(report: *const TcReport) -> i32 {
    report.as_ref().map_or(-1, |r| r.report.exit_code())
}

/// Number of claims in the report, 0 for null.
///
/// # Safety
/// `report` must be a live report or null.
#[no_mangle]
pub unsafe extern "C" fn tc_report_claim_count(report: *const TcReport) -> usize {
    report.as_ref().map_or(0, |r| r.report.claims.len())
}

/// # Safety
/// `report` must come from `tc_run` and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn tc_report_free(report: *mut TcReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Lattice points of the fundamental domain at level `k`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tc_h_f(k: i64, out: *mut i64) -> TcStatus {
    guard(|| {
        if out.is_null() {
            set_error("out is null");
            return TcStatus::NullPointer;
        }
        if k < 0 {
            set_error("k must be non-negative");
            return TcStatus::InvalidArgument;
        }
        match ehrhart::h_f(k) {
            Ok(v) => {
                *out = v;
                TcStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Sections of `k D_i` on the toric model, `i` in `0..4`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tc_toric_h0(i: u32, k: i64, out: *mut u64) -> TcStatus {
    guard(|| {
        if out.is_null() {
            set_error("out is null");
            return TcStatus::NullPointer;
        }
        if i > 3 || k < 0 {
            set_error("need i in 0..4 and k >= 0");
            return TcStatus::InvalidArgument;
        }
        match ehrhart::toric_h0(i as usize, k) {
            Ok(v) => {
                *out = v;
                TcStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Dimension of the invariant theta functions of even degree `k`, from the
/// closed formula.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tc_hilbert(k: i64, out: *mut i64) -> TcStatus {
    guard(|| {
        if out.is_null() {
            set_error("out is null");
            return TcStatus::NullPointer;
        }
        match hilbert::invariant_hilbert_formula(k) {
            Ok(v) => {
                *out = v;
                TcStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}
