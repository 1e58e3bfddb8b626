use std::ffi::{CStr, CString};
use std::ptr;

use theta_crystal::report::{Report, Status};
use theta_crystal_ffi::*;

fn last_error() -> String {
    let p = tc_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

struct Ctx(*mut TcContext);

impl Ctx {
    fn new() -> Ctx {
        let mut p = ptr::null_mut();
        assert_eq!(unsafe { tc_context_new(&mut p) }, TcStatus::Ok);
        assert!(!p.is_null());
        Ctx(p)
    }

    fn run(&self, cmd: &str, params: Option<&str>) -> (TcStatus, *mut TcReport) {
        let cmd = CString::new(cmd).unwrap();
        let params = params.map(|s| CString::new(s).unwrap());
        let mut out = ptr::null_mut();
        let s = unsafe {
            tc_run(
                self.0,
                cmd.as_ptr(),
                params.as_ref().map_or(ptr::null(), |p| p.as_ptr()),
                &mut out,
            )
        };
        (s, out)
    }
}

impl Drop for Ctx {
    fn drop(&mut self) {
        unsafe { tc_context_free(self.0) }
    }
}

fn report_of(r: *mut TcReport) -> Report {
    let json = unsafe { CStr::from_ptr(tc_report_json(r)) }.to_str().unwrap().to_owned();
    let rep = Report::from_json(&json).unwrap();
    assert_eq!(unsafe { tc_report_claim_count(r) }, rep.claims.len());
    unsafe { tc_report_free(r) };
    rep
}

#[test]
fn version_is_crate_version() {
    let v = unsafe { CStr::from_ptr(tc_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn group_report_passes() {
    let ctx = Ctx::new();
    let (s, r) = ctx.run("group", None);
    assert_eq!(s, TcStatus::Ok);
    assert_eq!(unsafe { tc_report_exit_code(r) }, 0);
    let rep = report_of(r);
    assert_eq!(rep.command, "group");
    assert!(rep.claims.iter().all(|c| c.status == Status::Pass));
    assert!(tc_last_error().is_null());
}

#[test]
fn params_are_forwarded() {
    let ctx = Ctx::new();
    let (s, r) = ctx.run("toric", Some(r#"{"max": 6}"#));
    assert_eq!(s, TcStatus::Ok);
    assert_eq!(report_of(r).params["max"], "6");
}

#[test]
fn failing_claims_still_return_a_report() {
    // The degree-14 character table lists g7 and g7^-1 swapped relative to the
    // computed representation, so this report carries a failure.
    let ctx = Ctx::new();
    let (s, r) = ctx.run("character", Some(r#"{"degree": 14}"#));
    assert_eq!(s, TcStatus::ClaimFailed);
    assert!(!r.is_null());
    assert_eq!(unsafe { tc_report_exit_code(r) }, 1);
    let rep = report_of(r);
    assert!(rep.count(Status::Fail) > 0);
}

#[test]
fn bad_arguments() {
    let ctx = Ctx::new();
    for (cmd, params) in [
        ("nope", None),
        ("rep", Some(r#"{"degree": 3}"#)),
        ("rep", Some(r#"{"degre": 2}"#)),
        ("jacobian", Some(r#"{"cutoff": "x"}"#)),
        ("group", Some("not json")),
    ] {
        let (s, r) = ctx.run(cmd, params);
        assert_eq!(s, TcStatus::InvalidArgument, "{cmd} {params:?}");
        assert!(r.is_null());
        assert!(!last_error().is_empty());
    }
}

#[test]
fn null_pointers() {
    let mut out = ptr::null_mut();
    let cmd = CString::new("group").unwrap();
    assert_eq!(
        unsafe { tc_run(ptr::null(), cmd.as_ptr(), ptr::null(), &mut out) },
        TcStatus::NullPointer
    );
    assert!(last_error().contains("ctx"));
    let ctx = Ctx::new();
    assert_eq!(
        unsafe { tc_run(ctx.0, ptr::null(), ptr::null(), &mut out) },
        TcStatus::NullPointer
    );
    assert_eq!(unsafe { tc_context_new(ptr::null_mut()) }, TcStatus::NullPointer);
    assert_eq!(unsafe { tc_h_f(3, ptr::null_mut()) }, TcStatus::NullPointer);
    assert_eq!(unsafe { tc_report_exit_code(ptr::null()) }, -1);
    assert_eq!(unsafe { tc_report_claim_count(ptr::null()) }, 0);
    assert!(unsafe { tc_report_json(ptr::null()) }.is_null());
    unsafe {
        tc_report_free(ptr::null_mut());
        tc_context_free(ptr::null_mut());
    }
}

#[test]
fn direct_counts() {
    let h_f = [1, 1, 3, 4, 8, 10, 16, 20, 29, 35, 47, 56, 72];
    for (k, &want) in h_f.iter().enumerate() {
        let mut v = 0;
        assert_eq!(unsafe { tc_h_f(k as i64, &mut v) }, TcStatus::Ok);
        assert_eq!(v, want);
        let mut t = 0u64;
        assert_eq!(unsafe { tc_toric_h0(0, k as i64, &mut t) }, TcStatus::Ok);
        assert_eq!(t, want as u64);
    }
    let mut v = 0;
    assert_eq!(unsafe { tc_h_f(-1, &mut v) }, TcStatus::InvalidArgument);
    let mut t = 0;
    assert_eq!(unsafe { tc_toric_h0(4, 1, &mut t) }, TcStatus::InvalidArgument);

    let mut d = 0;
    assert_eq!(unsafe { tc_hilbert(8, &mut d) }, TcStatus::Ok);
    assert_eq!(d, 1 + 9);
    assert_eq!(unsafe { tc_hilbert(3, &mut d) }, TcStatus::InvalidArgument);
}

#[test]
fn context_is_shareable_across_threads() {
    fn assert_sync<T: Sync>() {}
    assert_sync::<theta_crystal::group::Group>();
}

#[test]
fn header_declares_every_entry_point() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/theta_crystal.h")).unwrap();
    for f in [
        "tc_last_error",
        "tc_version",
        "tc_context_new",
        "tc_context_free",
        "tc_run",
        "tc_report_json",
        "tc_report_exit_code",
        "tc_report_claim_count",
        "tc_report_free",
        "tc_h_f",
        "tc_toric_h0",
        "tc_hilbert",
    ] {
        assert!(h.contains(&format!("{f}(")), "{f} missing from header");
    }
    assert!(h.contains("TC_STATUS_PANIC = 5"));
}
