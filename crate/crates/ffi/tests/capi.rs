use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use spherepair_ffi::*;

fn take(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { sp_string_free(s) };
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(sp_last_error()) }.to_str().unwrap().to_owned()
}

fn expr(json: &str) -> *mut SpExpr {
    let c = CString::new(json).unwrap();
    let mut e = ptr::null_mut();
    assert_eq!(unsafe { sp_expr_from_json(c.as_ptr(), &mut e) }, SpStatus::Ok, "{}", last_error());
    e
}

#[test]
fn loop_series_of_a_sphere() {
    // ΩS^3 has one class in each even degree.
    let e = expr(r#"{"sphere":3}"#);
    let field = CString::new("q").unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { sp_loop_series(e, field.as_ptr(), 10, &mut s) }, SpStatus::Ok);
    assert_eq!(unsafe { sp_series_trunc(s) }, 10);
    for d in 0..=10 {
        let mut c = -1;
        assert_eq!(unsafe { sp_series_coeff(s, d, &mut c) }, SpStatus::Ok);
        assert_eq!(c, i64::from(d % 2 == 0));
    }
    let mut c = 0;
    assert_eq!(unsafe { sp_series_coeff(s, 11, &mut c) }, SpStatus::Truncation);
    assert!(!last_error().is_empty());
    let mut text = ptr::null_mut();
    assert_eq!(unsafe { sp_series_to_string(s, &mut text) }, SpStatus::Ok);
    assert!(take(text).starts_with("1 + t^2"));
    unsafe {
        sp_series_free(s);
        sp_expr_free(e);
    }
}

#[test]
fn homology_and_normal_form() {
    let e = expr(r#"{"wedge":[{"moore":[4,6]},"point"]}"#);
    let mut n = ptr::null_mut();
    assert_eq!(unsafe { sp_expr_normalize(e, &mut n) }, SpStatus::Ok);
    let mut text = ptr::null_mut();
    assert_eq!(unsafe { sp_expr_to_string(n, &mut text) }, SpStatus::Ok);
    let normal = take(text);
    assert!(!normal.contains('*'), "{normal}");

    let ring = CString::new("z").unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { sp_homology(e, ring.as_ptr(), 6, &mut h) }, SpStatus::Ok);
    let h = take(h);
    assert!(h.contains("Z/2") && h.contains("Z/3"), "{h}");
    unsafe {
        sp_expr_free(n);
        sp_expr_free(e);
    }
}

#[test]
fn errors_carry_status_and_message() {
    let bad = CString::new(r#"{"sphere":0}"#).unwrap();
    let mut e = ptr::null_mut();
    let status = unsafe { sp_expr_from_json(bad.as_ptr(), &mut e) };
    assert_eq!(status, SpStatus::Validation);
    assert!(e.is_null());
    assert!(!last_error().is_empty());

    let garbage = CString::new("{").unwrap();
    assert_eq!(unsafe { sp_expr_from_json(garbage.as_ptr(), &mut e) }, SpStatus::Parse);
    assert_eq!(unsafe { sp_expr_from_json(ptr::null(), &mut e) }, SpStatus::NullPointer);

    let s = expr(r#"{"sphere":3}"#);
    let z = CString::new("z").unwrap();
    let mut series = ptr::null_mut();
    let status = unsafe { sp_poincare_series(s, z.as_ptr(), 5, &mut series) };
    assert_eq!(sp_status_exit_code(status), 3);
    assert!(series.is_null());
    unsafe { sp_expr_free(s) };

    // A later success clears the message.
    let v = CString::new(r#""point""#).unwrap();
    assert_eq!(unsafe { sp_expr_from_json(v.as_ptr(), &mut e) }, SpStatus::Ok);
    assert!(last_error().is_empty());
    unsafe { sp_expr_free(e) };
}

#[test]
fn jobs_report_cli_exit_codes() {
    let job = CString::new(r#"{"command":"inertness","payload":{"k":6}}"#).unwrap();
    let mut out = ptr::null_mut();
    let mut code = -1;
    assert_eq!(unsafe { sp_run_job(job.as_ptr(), &mut out, &mut code) }, SpStatus::Ok);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["status"], "ok");

    let job = CString::new(r#"{"command":"series","payload":{"sphere":3},"options":{"field":"z"}}"#)
        .unwrap();
    assert_eq!(unsafe { sp_run_job(job.as_ptr(), &mut out, &mut code) }, SpStatus::Ok);
    assert_eq!(code, 3);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["status"], "error");

    let job = CString::new("not json").unwrap();
    assert_eq!(unsafe { sp_run_job(job.as_ptr(), &mut out, &mut code) }, SpStatus::Parse);
}

fn header() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/spherepair.h")
}

#[test]
fn header_declares_the_api() {
    let h = std::fs::read_to_string(header()).unwrap();
    for name in [
        "sp_expr_from_json",
        "sp_expr_free",
        "sp_expr_normalize",
        "sp_homology",
        "sp_poincare_series",
        "sp_loop_series",
        "sp_series_coeff",
        "sp_series_free",
        "sp_run_job",
        "sp_string_free",
        "sp_last_error",
        "sp_version",
        "SP_STATUS_VERIFICATION",
        "typedef struct SpExpr SpExpr;",
    ] {
        assert!(h.contains(name), "header lacks {name}");
    }
}

/// Compiles a small C program against the header and the static library.
/// Skipped when no C compiler or static archive is present.
#[test]
fn c_program_links_and_runs() {
    let Some(cc) = ["cc", "gcc", "clang"]
        .into_iter()
        .find(|c| Command::new(c).arg("--version").output().is_ok())
    else {
        eprintln!("no C compiler; skipping");
        return;
    };
    let test_exe = std::env::current_exe().unwrap();
    let profile_dir = test_exe.parent().and_then(|p| p.parent()).unwrap();
    let archive = profile_dir.join("libspherepair_ffi.a");
    if !archive.exists() {
        eprintln!("{} missing; skipping", archive.display());
        return;
    }
    let dir = std::env::temp_dir().join(format!("spherepair-capi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("main.c");
    std::fs::write(
        &src,
        r#"
#include <stdio.h>
#include "spherepair.h"

int main(void) {
    SpExpr *e = NULL;
    if (sp_expr_from_json("{\"sphere\":3}", &e) != SP_STATUS_OK) return 10;
    SpSeries *s = NULL;
    if (sp_loop_series(e, "q", 8, &s) != SP_STATUS_OK) return 11;
    int64_t c = -1;
    if (sp_series_coeff(s, 4, &c) != SP_STATUS_OK || c != 1) return 12;
    if (sp_series_coeff(s, 9, &c) != SP_STATUS_TRUNCATION) return 13;
    char *text = NULL;
    if (sp_homology(e, "z", 4, &text) != SP_STATUS_OK) return 14;
    printf("%s|%s\n", sp_version(), text);
    sp_string_free(text);
    sp_series_free(s);
    sp_expr_free(e);
    return 0;
}
"#,
    )
    .unwrap();
    let exe = dir.join("capi");
    let status = Command::new(cc)
        .arg(&src)
        .arg("-I")
        .arg(header().parent().unwrap())
        .arg(&archive)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let out = Command::new(&exe).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("3: Z"), "{stdout}");
    std::fs::remove_dir_all(&dir).ok();
}
