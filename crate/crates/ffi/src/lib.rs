//! C interface to `acx`.
//!
//! Arrangement data lives behind the opaque [`AcxArrangement`] handle.
//! Every fallible call returns an [`AcxStatus`]; the message of the most
//! recent failure on the calling thread is available from
//! [`acx_last_error`]. Strings handed out by the library must be released
//! with [`acx_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use acx::cli::{self, InputDocument, Method, ToricDocument};
use acx::Error;

/// Outcome of a library call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AcxStatus {
    Ok = 0,
    InvalidInput = 1,
    NotQGorenstein = 2,
    NotFano = 3,
    InvariantBreach = 4,
    NullPointer = 5,
    Overflow = 6,
    Panic = 7,
}

/// Which index computation [`acx_gorenstein_index`] runs.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AcxMethod {
    Complex = 0,
    Cones = 1,
    Both = 2,
}

/// Report selector for [`acx_report_json`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AcxReport {
    Validation = 0,
    Info = 1,
    Fan = 2,
    Trop = 3,
    Complex = 4,
    Gorenstein = 5,
}

/// Opaque handle to shape-checked arrangement data.
pub struct AcxArrangement {
    doc: InputDocument,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: &str) {
    let text = CString::new(message.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(text));
}

fn status_of(e: &Error) -> AcxStatus {
    match e {
        Error::NotQGorensteinOnCone { .. } => AcxStatus::NotQGorenstein,
        Error::NotFano(_) | Error::NotAmple => AcxStatus::NotFano,
        Error::InvariantBreach(_) => AcxStatus::InvariantBreach,
        _ => AcxStatus::InvalidInput,
    }
}

/// Runs `f`, recording failures and converting panics into a status.
fn guard(f: impl FnOnce() -> Result<(), (AcxStatus, String)>) -> AcxStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => AcxStatus::Ok,
        Ok(Err((status, message))) => {
            set_error(&message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            AcxStatus::Panic
        }
    }
}

fn lift(e: Error) -> (AcxStatus, String) {
    (status_of(&e), e.to_string())
}

fn null() -> (AcxStatus, String) {
    (AcxStatus::NullPointer, "null pointer argument".into())
}

unsafe fn read_str<'a>(text: *const c_char) -> Result<&'a str, (AcxStatus, String)> {
    if text.is_null() {
        return Err(null());
    }
    CStr::from_ptr(text).to_str().map_err(|_| (AcxStatus::InvalidInput, "string is not valid UTF-8".into()))
}

fn to_c_string(text: String) -> Result<*mut c_char, (AcxStatus, String)> {
    CString::new(text).map(CString::into_raw).map_err(|_| (AcxStatus::InvalidInput, "output contains nul".into()))
}

fn index_to_u64(text: &str) -> Result<u64, (AcxStatus, String)> {
    text.parse::<u64>().map_err(|_| (AcxStatus::Overflow, "index does not fit into 64 bits".into()))
}

/// Message of the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn acx_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses a JSON input document and checks its shape.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn acx_arrangement_from_json(json: *const c_char, out: *mut *mut AcxArrangement) -> AcxStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let doc = InputDocument::from_json(read_str(json)?).map_err(lift)?;
        doc.to_data().map_err(lift)?;
        *out = Box::into_raw(Box::new(AcxArrangement { doc }));
        Ok(())
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `handle` must come from [`acx_arrangement_from_json`] and not be used
/// afterwards.
#[no_mangle]
pub unsafe extern "C" fn acx_arrangement_free(handle: *mut AcxArrangement) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Writes whether the data satisfies all conditions on `(A, P)`.
///
/// # Safety
/// `handle` must be a live handle and `valid` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn acx_arrangement_validate(handle: *const AcxArrangement, valid: *mut bool) -> AcxStatus {
    guard(|| {
        let (Some(h), false) = (handle.as_ref(), valid.is_null()) else { return Err(null()) };
        let report = cli::validation_report(&h.doc).map_err(lift)?;
        *valid = report.valid;
        if !report.valid {
            set_error(&report.violations.join("; "));
        }
        Ok(())
    })
}

/// Gorenstein index of the data with its listed fan, or `Σ(−K)` when the
/// document lists none.
///
/// # Safety
/// `handle` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn acx_gorenstein_index(
    handle: *const AcxArrangement,
    method: AcxMethod,
    out: *mut u64,
) -> AcxStatus {
    guard(|| {
        let (Some(h), false) = (handle.as_ref(), out.is_null()) else { return Err(null()) };
        let method = match method {
            AcxMethod::Complex => Method::Complex,
            AcxMethod::Cones => Method::Cones,
            AcxMethod::Both => Method::Both,
        };
        let report = cli::gorenstein_report(&h.doc, method).map_err(lift)?;
        *out = index_to_u64(&report.gorenstein_index)?;
        Ok(())
    })
}

/// Serialises one of the reports as JSON into a fresh string.
///
/// # Safety
/// `handle` must be a live handle and `out` a writable pointer. The string
/// written to `out` must be released with [`acx_string_free`].
#[no_mangle]
pub unsafe extern "C" fn acx_report_json(
    handle: *const AcxArrangement,
    kind: AcxReport,
    out: *mut *mut c_char,
) -> AcxStatus {
    guard(|| {
        let (Some(h), false) = (handle.as_ref(), out.is_null()) else { return Err(null()) };
        let doc = &h.doc;
        let json = match kind {
            AcxReport::Validation => serde_json::to_string(&cli::validation_report(doc).map_err(lift)?),
            AcxReport::Info => serde_json::to_string(&cli::info_report(doc).map_err(lift)?),
            AcxReport::Fan => serde_json::to_string(&cli::fan_report(doc).map_err(lift)?),
            AcxReport::Trop => serde_json::to_string(&cli::trop_report(doc).map_err(lift)?),
            AcxReport::Complex => serde_json::to_string(&cli::complex_report(doc).map_err(lift)?),
            AcxReport::Gorenstein => serde_json::to_string(&cli::gorenstein_report(doc, Method::Both).map_err(lift)?),
        }
        .expect("reports serialise");
        *out = to_c_string(json)?;
        Ok(())
    })
}

/// Gorenstein index of a bare fan `{"rays": …, "cones": …}`.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn acx_toric_gorenstein_index(json: *const c_char, out: *mut u64) -> AcxStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let doc: ToricDocument = serde_json::from_str(read_str(json)?)
            .map_err(|e| (AcxStatus::InvalidInput, format!("parse error: {e}")))?;
        let report = cli::toric_report(&doc).map_err(lift)?;
        *out = index_to_u64(&report.gorenstein_index)?;
        Ok(())
    })
}

/// Classification report at index `index` for the families in
/// `settings[0..len]` (all five when `len` is 0), using `jobs` threads.
///
/// # Safety
/// `settings` must point to `len` readable bytes (or be null with
/// `len == 0`) and `out` must be writable. Release the result with
/// [`acx_string_free`].
#[no_mangle]
pub unsafe extern "C" fn acx_classify_json(
    index: i64,
    settings: *const u8,
    len: usize,
    jobs: usize,
    out: *mut *mut c_char,
) -> AcxStatus {
    guard(|| {
        if out.is_null() || (settings.is_null() && len > 0) {
            return Err(null());
        }
        let ids: &[u8] = if len == 0 { &[] } else { std::slice::from_raw_parts(settings, len) };
        let report = cli::classify_report(index, ids, jobs).map_err(lift)?;
        *out = to_c_string(serde_json::to_string(&report).expect("reports serialise"))?;
        Ok(())
    })
}

/// Releases a string returned by the library; null is ignored.
///
/// # Safety
/// `text` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn acx_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}
