use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use acx_ffi::*;

const EXAMPLE: &str = r#"{"r":2,"c":1,"n":[2,1,1],"m":0,"l":[[2,1],[2],[3]],
    "A":[["-1","1","0"],["-1","0","1"]],"D":[[-1,-2,1,2]]}"#;

fn handle(json: &str) -> *mut AcxArrangement {
    let text = CString::new(json).unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { acx_arrangement_from_json(text.as_ptr(), &mut h) }, AcxStatus::Ok);
    h
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(acx_last_error()) }.to_string_lossy().into_owned()
}

#[test]
fn index_by_every_method() {
    let h = handle(EXAMPLE);
    for method in [AcxMethod::Complex, AcxMethod::Cones, AcxMethod::Both] {
        let mut index = 0u64;
        assert_eq!(unsafe { acx_gorenstein_index(h, method, &mut index) }, AcxStatus::Ok);
        assert_eq!(index, 12);
    }
    unsafe { acx_arrangement_free(h) };
}

#[test]
fn reports_are_json() {
    let h = handle(EXAMPLE);
    for kind in [AcxReport::Validation, AcxReport::Info, AcxReport::Fan, AcxReport::Trop, AcxReport::Complex, AcxReport::Gorenstein] {
        let mut out = ptr::null_mut();
        assert_eq!(unsafe { acx_report_json(h, kind, &mut out) }, AcxStatus::Ok);
        let text = unsafe { CStr::from_ptr(out) }.to_str().unwrap().to_owned();
        serde_json::from_str::<serde_json::Value>(&text).unwrap();
        unsafe { acx_string_free(out) };
    }
    unsafe { acx_arrangement_free(h) };
}

#[test]
fn invalid_data_is_reported() {
    let dup = r#"{"r":2,"c":1,"n":[2,1,1],"l":[[1,1],[2],[3]],"A":[["-1","1","0"],["-1","0","1"]],"D":[[1,1,1,2]]}"#;
    let h = handle(dup);
    let mut valid = true;
    assert_eq!(unsafe { acx_arrangement_validate(h, &mut valid) }, AcxStatus::Ok);
    assert!(!valid);
    assert!(last_error().contains("pairwise different"));
    let mut index = 0u64;
    assert_eq!(unsafe { acx_gorenstein_index(h, AcxMethod::Both, &mut index) }, AcxStatus::InvalidInput);
    unsafe { acx_arrangement_free(h) };
}

#[test]
fn parse_errors_and_null_pointers() {
    let text = CString::new("{\"r\": 2,").unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { acx_arrangement_from_json(text.as_ptr(), &mut h) }, AcxStatus::InvalidInput);
    assert!(h.is_null());
    assert!(last_error().contains("parse error"));
    assert_eq!(unsafe { acx_arrangement_from_json(ptr::null(), &mut h) }, AcxStatus::NullPointer);
    let mut index = 0u64;
    assert_eq!(unsafe { acx_gorenstein_index(ptr::null(), AcxMethod::Both, &mut index) }, AcxStatus::NullPointer);
    unsafe { acx_arrangement_free(ptr::null_mut()) };
    unsafe { acx_string_free(ptr::null_mut()) };
}

#[test]
fn toric_index() {
    let plane = CString::new(r#"{"rays":[[1,0],[0,1],[-1,-1]],"cones":[[0,1],[1,2],[0,2]]}"#).unwrap();
    let mut index = 0u64;
    assert_eq!(unsafe { acx_toric_gorenstein_index(plane.as_ptr(), &mut index) }, AcxStatus::Ok);
    assert_eq!(index, 1);
    // P(1,1,3) has a 1/3(1,1) point
    let weighted = CString::new(r#"{"rays":[[1,0],[0,1],[-1,-3]],"cones":[[0,1],[1,2],[0,2]]}"#).unwrap();
    assert_eq!(unsafe { acx_toric_gorenstein_index(weighted.as_ptr(), &mut index) }, AcxStatus::Ok);
    assert_eq!(index, 3);
}

#[test]
fn classify_setting_five() {
    let settings = [5u8];
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { acx_classify_json(1, settings.as_ptr(), 1, 1, &mut out) }, AcxStatus::Ok);
    let report: serde_json::Value = serde_json::from_str(unsafe { CStr::from_ptr(out) }.to_str().unwrap()).unwrap();
    unsafe { acx_string_free(out) };
    assert_eq!(report["settings"][0]["accepted_count"], 2);
    assert_eq!(unsafe { acx_classify_json(99, settings.as_ptr(), 1, 1, &mut out) }, AcxStatus::InvalidInput);
}

fn target_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn c_smoke_test() {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let lib = target_dir().join("libacx_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let exe = Path::new(env!("CARGO_TARGET_TMPDIR")).join("acx_smoke");
    let compiled = Command::new("cc")
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status();
    match compiled {
        Err(e) => eprintln!("skipping C smoke test, no C compiler: {e}"),
        Ok(status) => {
            assert!(status.success(), "C compilation failed");
            let run = Command::new(&exe).output().unwrap();
            assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
            assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "gorenstein index 12");
        }
    }
}
