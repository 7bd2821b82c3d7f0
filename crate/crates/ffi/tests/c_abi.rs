use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use alpha_cheeger_ffi::*;

fn classify(length: f64, alpha: f64) -> *mut AcClassification {
    let mut h = ptr::null_mut();
    let st = unsafe { ac_classify_rectangle(length, alpha, &mut h) };
    assert_eq!(st, AcStatus::Ok);
    assert!(!h.is_null());
    h
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(ac_last_error_message()) }
        .to_string_lossy()
        .into_owned()
}

#[test]
fn stadium_family_through_handle() {
    let h = classify(10.0, 1.5);
    unsafe {
        let mut case = AcCase::AnnulusTie;
        assert_eq!(ac_classification_case(h, &mut case), AcStatus::Ok);
        assert_eq!(case, AcCase::ToppedFamily);
        let mut kind = AcSetKind::WholeDomain;
        assert_eq!(ac_classification_set_kind(h, &mut kind), AcStatus::Ok);
        assert_eq!(kind, AcSetKind::ToppedSubstrip);
        let m = ac_classification_radius_or_m(h);
        assert!((m - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        assert!(!ac_classification_unique(h));
        assert_eq!(ac_classification_placement_count(h), 1);
        let (mut lo, mut hi) = (0.0, 0.0);
        assert_eq!(ac_classification_placement(h, 0, &mut lo, &mut hi), AcStatus::Ok);
        assert_eq!(lo, 1.0);
        assert!((hi - (9.0 - m)).abs() < 1e-12);
        assert_eq!(
            ac_classification_placement(h, 1, &mut lo, &mut hi),
            AcStatus::OutOfBounds
        );
        let report = CStr::from_ptr(ac_classification_report(h)).to_str().unwrap();
        assert!(report.starts_with("case: topped_family"));
        let json = CStr::from_ptr(ac_classification_json(h)).to_str().unwrap();
        let v: serde_json::Value = serde_json::from_str(json).unwrap();
        assert_eq!(v["case"], "topped_family");
        ac_classification_free(h);
    }
}

#[test]
fn cut_corners_agree_with_analytic_calls() {
    let h = classify(3.0, 1.5);
    unsafe {
        let (mut r, mut hv) = (0.0, 0.0);
        assert_eq!(ac_corner_radius(3.0, 1.5, &mut r), AcStatus::Ok);
        assert_eq!(ac_h_alpha_rectangle(3.0, 1.5, &mut hv), AcStatus::Ok);
        assert_eq!(ac_classification_radius_or_m(h), r);
        assert_eq!(ac_classification_h_alpha(h), hv);
        assert!(ac_classification_unique(h));
        assert_eq!(ac_classification_placement_count(h), 0);
        let mut oracle = 0.0;
        assert_eq!(ac_oracle_rectangle(3.0, 1.5, 400, &mut oracle), AcStatus::Ok);
        assert!(((oracle - hv) / hv).abs() < 1e-4);
        ac_classification_free(h);
    }
}

#[test]
fn sides_are_reported_in_user_units() {
    let mut h = ptr::null_mut();
    unsafe {
        assert_eq!(ac_classify_sides(2.0, 20.0, 1.5, &mut h), AcStatus::Ok);
        let base = classify(20.0, 1.5);
        assert!((ac_classification_area(h) - ac_classification_area(base)).abs() < 1e-12);
        ac_classification_free(base);
        ac_classification_free(h);
    }
}

#[test]
fn failures_set_status_and_message() {
    let mut h = ptr::null_mut();
    unsafe {
        assert_eq!(ac_classify_rectangle(10.0, 2.5, &mut h), AcStatus::InvalidAlpha);
        assert!(h.is_null());
        assert!(last_error().contains("alpha"));
        assert_eq!(ac_classify_rectangle(1.0, 1.5, &mut h), AcStatus::InvalidArgument);
        let bad = CString::new(r#"{"primitive":"circle"}"#).unwrap();
        assert_eq!(
            ac_classify_curve_json(bad.as_ptr(), 1.5, 0, &mut h),
            AcStatus::InvalidCurve
        );
        assert!(!last_error().is_empty());
        assert_eq!(
            ac_classify_curve_json(ptr::null(), 1.5, 0, &mut h),
            AcStatus::NullPointer
        );
        let mut m = 0.0;
        assert_eq!(ac_m_of_alpha(1.5, &mut m), AcStatus::Ok);
        assert!(last_error().is_empty());
        assert_eq!(ac_alpha_bar(1.0, &mut m), AcStatus::InvalidArgument);
        ac_classification_free(ptr::null_mut());
    }
}

#[test]
fn annulus_from_json() {
    let json = CString::new(r#"{"primitive":"circle","radius":6}"#).unwrap();
    let mut h = ptr::null_mut();
    unsafe {
        assert_eq!(ac_classify_curve_json(json.as_ptr(), 1.9, 0, &mut h), AcStatus::Ok);
        let mut case = AcCase::AnnulusTie;
        ac_classification_case(h, &mut case);
        assert_eq!(case, AcCase::AnnulusFamily);
        ac_classification_free(h);
    }
}

fn header() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/alpha_cheeger.h")
}

#[test]
fn header_declares_every_export() {
    let text = std::fs::read_to_string(header()).unwrap();
    for name in [
        "ac_classify_rectangle",
        "ac_classify_sides",
        "ac_classify_curve_json",
        "ac_classification_free",
        "ac_classification_h_alpha",
        "ac_classification_placement",
        "ac_last_error_message",
        "ac_status_message",
        "ac_oracle_rectangle",
        "AC_STATUS_INVALID_ALPHA",
        "typedef struct AcClassification AcClassification",
    ] {
        assert!(text.contains(name), "{name} missing from header");
    }
}

/// Compiles and runs a C client against the static library when a C
/// compiler is available.
#[test]
fn c_client_links_and_runs() {
    let Ok(exe) = std::env::current_exe() else { return };
    // target/<profile>/deps/<test binary>
    let profile_dir = exe.parent().and_then(|d| d.parent()).unwrap().to_path_buf();
    let lib = profile_dir.join("libalpha_cheeger_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler or static library");
        return;
    }
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let src = dir.join("client.c");
    std::fs::write(
        &src,
        r#"
#include <math.h>
#include <stdio.h>
#include "alpha_cheeger.h"
int main(void) {
    AcClassification *h = NULL;
    if (ac_classify_rectangle(20.0, 1.5, &h) != AC_STATUS_OK) return 1;
    AcCase c;
    ac_classification_case(h, &c);
    double m = ac_classification_radius_or_m(h);
    ac_classification_free(h);
    if (c != AC_CASE_TOPPED_FAMILY) return 2;
    if (fabs(m - 1.5707963267948966) > 1e-12) return 3;
    if (ac_classify_rectangle(20.0, 3.0, &h) != AC_STATUS_INVALID_ALPHA) return 4;
    printf("%s\n", ac_last_error_message());
    return 0;
}
"#,
    )
    .unwrap();
    let bin = dir.join("client");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(header().parent().unwrap())
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success(), "C client failed to build");
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "C client exited with {:?}", out.status);
    assert!(String::from_utf8_lossy(&out.stdout).contains("alpha"));
}
