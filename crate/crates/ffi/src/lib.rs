//! C ABI over the schubreg library.
//!
//! Every fallible call returns a [`SchubregStatus`]; on failure the message is
//! kept per thread and read back with [`schubreg_last_error_message`].
//! Handles are opaque and must be released with their `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use schubreg::gb::{Budget, GbError};
use schubreg::reg::{regularity, CmStatus, Method, RegError, RegOptions, RegularityReport};
use schubreg::{PermError, Permutation};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchubregStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    NotBruhatComparable = 4,
    FormulaInapplicable = 5,
    Budget = 6,
    /// The report exists but holds no value for the requested field.
    Absent = 7,
    Internal = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchubregMethod {
    Auto = 0,
    Formula = 1,
    Groebner = 2,
    Both = 3,
}

/// Opaque permutation handle.
pub struct SchubregPerm(Permutation);

/// Opaque regularity report handle.
pub struct SchubregReport(RegularityReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn fail(status: SchubregStatus, msg: impl Into<String>) -> SchubregStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> SchubregStatus) -> SchubregStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(SchubregStatus::Internal, "panic inside schubreg"))
}

fn status_of(err: &RegError) -> SchubregStatus {
    match err {
        RegError::Perm(PermError::NotBelow { .. } | PermError::SizeMismatch(..)) => {
            SchubregStatus::NotBruhatComparable
        }
        RegError::Perm(_) => SchubregStatus::ParseError,
        RegError::FormulaInapplicable(_) => SchubregStatus::FormulaInapplicable,
        RegError::Gb(GbError::Budget { .. }) => SchubregStatus::Budget,
        _ => SchubregStatus::Internal,
    }
}

/// Message of the last failed call on this thread, or NULL. Valid until the
/// next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn schubreg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses `7314562` or `7,3,1,4,5,6,2`.
///
/// # Safety
/// `text` must be NULL or a NUL-terminated string; `out` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn schubreg_perm_parse(text: *const c_char, out: *mut *mut SchubregPerm) -> SchubregStatus {
    guard(|| {
        if text.is_null() || out.is_null() {
            return fail(SchubregStatus::NullPointer, "null argument");
        }
        let Ok(s) = CStr::from_ptr(text).to_str() else {
            return fail(SchubregStatus::InvalidUtf8, "permutation text is not UTF-8");
        };
        match s.parse::<Permutation>() {
            Ok(p) => {
                *out = Box::into_raw(Box::new(SchubregPerm(p)));
                SchubregStatus::Ok
            }
            Err(e) => fail(SchubregStatus::ParseError, e.to_string()),
        }
    })
}

/// # Safety
/// `perm` must be NULL or come from [`schubreg_perm_parse`], freed once.
#[no_mangle]
pub unsafe extern "C" fn schubreg_perm_free(perm: *mut SchubregPerm) {
    if !perm.is_null() {
        drop(Box::from_raw(perm));
    }
}

/// Number of inversions.
///
/// # Safety
/// Pointers must be NULL or valid.
#[no_mangle]
pub unsafe extern "C" fn schubreg_perm_length(perm: *const SchubregPerm, out: *mut usize) -> SchubregStatus {
    guard(|| match (perm.as_ref(), out.as_mut()) {
        (Some(p), Some(out)) => {
            *out = p.0.length();
            SchubregStatus::Ok
        }
        _ => fail(SchubregStatus::NullPointer, "null argument"),
    })
}

/// Whether the permutation avoids 3412.
///
/// # Safety
/// Pointers must be NULL or valid.
#[no_mangle]
pub unsafe extern "C" fn schubreg_perm_is_covexillary(perm: *const SchubregPerm, out: *mut bool) -> SchubregStatus {
    guard(|| match (perm.as_ref(), out.as_mut()) {
        (Some(p), Some(out)) => {
            *out = p.0.is_covexillary();
            SchubregStatus::Ok
        }
        _ => fail(SchubregStatus::NullPointer, "null argument"),
    })
}

/// Regularity of the tangent cone of `X_w` at `e_v`. `budget_ms = 0` means
/// no time limit.
///
/// # Safety
/// Pointers must be NULL or valid; `out` receives a handle to free with
/// [`schubreg_report_free`].
#[no_mangle]
pub unsafe extern "C" fn schubreg_regularity(
    v: *const SchubregPerm,
    w: *const SchubregPerm,
    method: SchubregMethod,
    budget_ms: u64,
    out: *mut *mut SchubregReport,
) -> SchubregStatus {
    guard(|| {
        let (Some(v), Some(w)) = (v.as_ref(), w.as_ref()) else {
            return fail(SchubregStatus::NullPointer, "null permutation");
        };
        if out.is_null() {
            return fail(SchubregStatus::NullPointer, "null output");
        }
        let opts = RegOptions {
            method: match method {
                SchubregMethod::Auto => Method::Auto,
                SchubregMethod::Formula => Method::Formula,
                SchubregMethod::Groebner => Method::Groebner,
                SchubregMethod::Both => Method::Both,
            },
            budget: if budget_ms == 0 { Budget::UNLIMITED } else { Budget::ms(budget_ms) },
            ..Default::default()
        };
        match regularity(&v.0, &w.0, &opts) {
            Ok(r) => {
                *out = Box::into_raw(Box::new(SchubregReport(r)));
                SchubregStatus::Ok
            }
            Err(e) => fail(status_of(&e), e.to_string()),
        }
    })
}

/// # Safety
/// `report` must be NULL or come from [`schubreg_regularity`], freed once.
#[no_mangle]
pub unsafe extern "C" fn schubreg_report_free(report: *mut SchubregReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// The regularity; `proven` is false when it rests on Cohen-Macaulayness that
/// is only conjectured (non-covexillary `w`).
///
/// # Safety
/// `report` and `reg` must be valid; `proven` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn schubreg_report_reg(
    report: *const SchubregReport,
    reg: *mut usize,
    proven: *mut bool,
) -> SchubregStatus {
    guard(|| {
        let (Some(r), Some(reg)) = (report.as_ref(), reg.as_mut()) else {
            return fail(SchubregStatus::NullPointer, "null argument");
        };
        let Some(value) = r.0.reg else {
            return fail(SchubregStatus::Absent, "no regularity in this report");
        };
        *reg = value;
        if let Some(proven) = proven.as_mut() {
            *proven = r.0.cm_status == CmStatus::Proven;
        }
        SchubregStatus::Ok
    })
}

/// Whether the formula and the Groebner route disagreed.
///
/// # Safety
/// Pointers must be NULL or valid.
#[no_mangle]
pub unsafe extern "C" fn schubreg_report_is_discrepant(report: *const SchubregReport, out: *mut bool) -> SchubregStatus {
    guard(|| match (report.as_ref(), out.as_mut()) {
        (Some(r), Some(out)) => {
            *out = r.0.discrepant;
            SchubregStatus::Ok
        }
        _ => fail(SchubregStatus::NullPointer, "null argument"),
    })
}

/// The whole report as JSON. Free the string with [`schubreg_string_free`].
///
/// # Safety
/// Pointers must be NULL or valid.
#[no_mangle]
pub unsafe extern "C" fn schubreg_report_to_json(report: *const SchubregReport, out: *mut *mut c_char) -> SchubregStatus {
    guard(|| {
        let (Some(r), false) = (report.as_ref(), out.is_null()) else {
            return fail(SchubregStatus::NullPointer, "null argument");
        };
        match serde_json::to_string(&r.0).map(CString::new) {
            Ok(Ok(s)) => {
                *out = s.into_raw();
                SchubregStatus::Ok
            }
            Ok(Err(e)) => fail(SchubregStatus::Internal, e.to_string()),
            Err(e) => fail(SchubregStatus::Internal, e.to_string()),
        }
    })
}

/// # Safety
/// `s` must be NULL or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn schubreg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
