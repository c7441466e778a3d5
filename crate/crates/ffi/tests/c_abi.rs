use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use schubreg_ffi::*;

fn perm(s: &str) -> *mut SchubregPerm {
    let text = CString::new(s).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { schubreg_perm_parse(text.as_ptr(), &mut out) }, SchubregStatus::Ok);
    out
}

fn last_error() -> String {
    let p = schubreg_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn golden_pair_through_the_abi() {
    let v = perm("1423576");
    let w = perm("7314562");
    let mut len = 0;
    let mut cov = false;
    unsafe {
        assert_eq!(schubreg_perm_length(w, &mut len), SchubregStatus::Ok);
        assert_eq!(schubreg_perm_is_covexillary(w, &mut cov), SchubregStatus::Ok);
    }
    assert_eq!(len, 11);
    assert!(cov);

    let mut report = ptr::null_mut();
    let mut reg = 0;
    let mut proven = false;
    let mut discrepant = true;
    let mut json = ptr::null_mut();
    unsafe {
        assert_eq!(schubreg_regularity(v, w, SchubregMethod::Both, 0, &mut report), SchubregStatus::Ok);
        assert_eq!(schubreg_report_reg(report, &mut reg, &mut proven), SchubregStatus::Ok);
        assert_eq!(schubreg_report_is_discrepant(report, &mut discrepant), SchubregStatus::Ok);
        assert_eq!(schubreg_report_to_json(report, &mut json), SchubregStatus::Ok);
    }
    assert_eq!(reg, 2);
    assert!(proven && !discrepant);
    let text = unsafe { CStr::from_ptr(json) }.to_str().unwrap().to_owned();
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value["h_coeffs"], serde_json::json!([1, 3, 1]));
    unsafe {
        schubreg_string_free(json);
        schubreg_report_free(report);
        schubreg_perm_free(v);
        schubreg_perm_free(w);
    }
}

#[test]
fn error_codes() {
    let mut out = ptr::null_mut();
    let bad = CString::new("12x").unwrap();
    unsafe {
        assert_eq!(schubreg_perm_parse(ptr::null(), &mut out), SchubregStatus::NullPointer);
        assert_eq!(schubreg_perm_parse(bad.as_ptr(), &mut out), SchubregStatus::ParseError);
    }
    assert!(last_error().contains("12x"));
    let invalid = [0xffu8, 0];
    unsafe {
        assert_eq!(schubreg_perm_parse(invalid.as_ptr().cast(), &mut out), SchubregStatus::InvalidUtf8);
    }

    let id = perm("1234567");
    let w = perm("7314562");
    let nc = perm("6734512");
    let small = perm("4321");
    let mut report = ptr::null_mut();
    unsafe {
        assert_eq!(
            schubreg_regularity(w, id, SchubregMethod::Auto, 0, &mut report),
            SchubregStatus::NotBruhatComparable
        );
        assert_eq!(
            schubreg_regularity(small, w, SchubregMethod::Auto, 0, &mut report),
            SchubregStatus::NotBruhatComparable
        );
        assert_eq!(
            schubreg_regularity(id, nc, SchubregMethod::Formula, 0, &mut report),
            SchubregStatus::FormulaInapplicable
        );
        assert_eq!(
            schubreg_regularity(ptr::null(), nc, SchubregMethod::Auto, 0, &mut report),
            SchubregStatus::NullPointer
        );
        for p in [id, w, nc, small] {
            schubreg_perm_free(p);
        }
        schubreg_perm_free(ptr::null_mut());
        schubreg_report_free(ptr::null_mut());
        schubreg_string_free(ptr::null_mut());
    }
    assert!(report.is_null());
}

#[test]
fn non_covexillary_is_not_proven() {
    let id = perm("1234567");
    let w = perm("6734512");
    let mut report = ptr::null_mut();
    let mut reg = 0;
    let mut proven = true;
    unsafe {
        assert_eq!(schubreg_regularity(id, w, SchubregMethod::Auto, 0, &mut report), SchubregStatus::Ok);
        assert_eq!(schubreg_report_reg(report, &mut reg, &mut proven), SchubregStatus::Ok);
        schubreg_report_free(report);
        schubreg_perm_free(id);
        schubreg_perm_free(w);
    }
    assert_eq!(reg, 5);
    assert!(!proven);
}

fn target_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn header_compiles_and_links_from_c() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let lib = target_dir().join("libschubreg_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler or static library");
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("smoke.c");
    let exe = dir.path().join("smoke");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include "schubreg.h"

int main(void) {
    SchubregPerm *v = NULL, *w = NULL;
    SchubregReport *r = NULL;
    size_t reg = 0;
    bool proven = false;
    if (schubreg_perm_parse("1423576", &v) != SCHUBREG_STATUS_OK) return 10;
    if (schubreg_perm_parse("7314562", &w) != SCHUBREG_STATUS_OK) return 11;
    if (schubreg_regularity(v, w, SCHUBREG_METHOD_BOTH, 0, &r) != SCHUBREG_STATUS_OK) return 12;
    if (schubreg_report_reg(r, &reg, &proven) != SCHUBREG_STATUS_OK) return 13;
    if (schubreg_regularity(w, v, SCHUBREG_METHOD_AUTO, 0, &r) != SCHUBREG_STATUS_NOT_BRUHAT_COMPARABLE) return 14;
    printf("reg=%zu proven=%d error=%s\n", reg, proven, schubreg_last_error_message());
    schubreg_report_free(r);
    schubreg_perm_free(v);
    schubreg_perm_free(w);
    return reg == 2 && proven ? 0 : 15;
}
"#,
    )
    .unwrap();
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("reg=2 proven=1"));
}
