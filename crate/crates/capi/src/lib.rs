//! C ABI for the certification engine.
//!
//! The engine is exposed through an opaque handle that owns a completed
//! closure; callers query statuses and certificates by `(d, g)`. All
//! functions return an error code; outputs go through out-pointers.
//! Strings returned by the library must be released with
//! [`bnstab_string_free`].

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use bnstab::closure::verify_certificate;
use bnstab::number_theory;
use bnstab::{
    compute_closure, CertificateNode, Characteristic, Grid, RuleSet, Status, StatusMap, Triple,
};

/// Error codes returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BnstabError {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    /// The triple has negative Brill-Noether number.
    NotBrillNoether = 3,
    /// The point lies outside the engine's grid.
    OutOfGrid = 4,
    ClosureFailed = 5,
    BadCertificate = 6,
    NoCertificate = 7,
    InternalPanic = 8,
}

/// Certification status codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BnstabStatus {
    Unknown = 0,
    Semistable = 1,
    Stable = 2,
    KnownUnstable = 3,
    KnownStrictlySemistable = 4,
}

impl From<Status> for BnstabStatus {
    fn from(s: Status) -> Self {
        match s {
            Status::Unknown => BnstabStatus::Unknown,
            Status::CertSemistable => BnstabStatus::Semistable,
            Status::CertStable => BnstabStatus::Stable,
            Status::KnownUnstable => BnstabStatus::KnownUnstable,
            Status::KnownStrictlySemistable => BnstabStatus::KnownStrictlySemistable,
        }
    }
}

/// Opaque engine handle owning a completed closure.
pub struct BnstabEngine {
    map: StatusMap,
}

fn characteristic(char_two: bool) -> Characteristic {
    if char_two {
        Characteristic::Two
    } else {
        Characteristic::Generic
    }
}

/// Brill-Noether number `g - (r+1)(g - d + r)`; total on all integers.
#[no_mangle]
pub extern "C" fn bnstab_rho(d: i64, g: i64, r: i64) -> i64 {
    g - (r + 1) * (g - d + r)
}

/// Split threshold `b2(r)`; requires `r >= 4`.
///
/// # Safety
/// `out` must be valid for writing one `int64_t`.
#[no_mangle]
pub unsafe extern "C" fn bnstab_b2(r: i64, out: *mut i64) -> BnstabError {
    if out.is_null() {
        return BnstabError::NullPointer;
    }
    if r < 4 {
        return BnstabError::InvalidArgument;
    }
    unsafe { *out = number_theory::b2(r) };
    BnstabError::Ok
}

/// Builds an engine by running the full closure on the grid
/// `1 <= g <= g_max`, `d <= d_max`, `rho >= 0`. The handle must be
/// released with [`bnstab_engine_free`].
///
/// # Safety
/// `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn bnstab_engine_new(
    r: i64,
    d_max: i64,
    g_max: i64,
    char_two: bool,
    out: *mut *mut BnstabEngine,
) -> BnstabError {
    if out.is_null() {
        return BnstabError::NullPointer;
    }
    let Ok(grid) = Grid::new(r, d_max, g_max, characteristic(char_two)) else {
        return BnstabError::InvalidArgument;
    };
    let result = catch_unwind(AssertUnwindSafe(|| compute_closure(grid, RuleSet::full())));
    match result {
        Ok(Ok(map)) => {
            let engine = Box::new(BnstabEngine { map });
            unsafe { *out = Box::into_raw(engine) };
            BnstabError::Ok
        }
        Ok(Err(_)) => BnstabError::ClosureFailed,
        Err(_) => BnstabError::InternalPanic,
    }
}

/// Releases an engine handle. Accepts null.
///
/// # Safety
/// `engine` must be null or a handle from [`bnstab_engine_new`] that
/// has not been freed.
#[no_mangle]
pub unsafe extern "C" fn bnstab_engine_free(engine: *mut BnstabEngine) {
    if !engine.is_null() {
        drop(unsafe { Box::from_raw(engine) });
    }
}

/// Status of the point `(d, g)` in the engine's grid.
///
/// # Safety
/// `engine` must be a live handle; `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn bnstab_engine_status(
    engine: *const BnstabEngine,
    d: i64,
    g: i64,
    out: *mut BnstabStatus,
) -> BnstabError {
    if engine.is_null() || out.is_null() {
        return BnstabError::NullPointer;
    }
    let engine = unsafe { &*engine };
    if d < 0 || g < 1 {
        return BnstabError::InvalidArgument;
    }
    let t = Triple {
        d,
        g,
        r: engine.map.grid().r,
    };
    if !t.is_bn() {
        return BnstabError::NotBrillNoether;
    }
    match engine.map.status(d, g) {
        Some(status) => {
            unsafe { *out = status.into() };
            BnstabError::Ok
        }
        None => BnstabError::OutOfGrid,
    }
}

/// Certificate of a certified point, serialized as JSON. The returned
/// string is owned by the caller; release it with
/// [`bnstab_string_free`].
///
/// # Safety
/// `engine` must be a live handle; `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn bnstab_engine_certificate_json(
    engine: *const BnstabEngine,
    d: i64,
    g: i64,
    out: *mut *mut c_char,
) -> BnstabError {
    if engine.is_null() || out.is_null() {
        return BnstabError::NullPointer;
    }
    let engine = unsafe { &*engine };
    if !engine.map.grid().contains(d, g) {
        return BnstabError::OutOfGrid;
    }
    match engine.map.certificate(d, g) {
        Some(cert) => {
            let json = cert.to_json();
            let c = CString::new(json).expect("JSON contains no interior NUL");
            unsafe { *out = c.into_raw() };
            BnstabError::Ok
        }
        None => {
            unsafe { *out = ptr::null_mut() };
            BnstabError::NoCertificate
        }
    }
}

/// Re-checks a certificate JSON tree rule by rule.
///
/// # Safety
/// `json` must be a valid NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn bnstab_verify_certificate_json(
    json: *const c_char,
    char_two: bool,
) -> BnstabError {
    if json.is_null() {
        return BnstabError::NullPointer;
    }
    let Ok(text) = unsafe { CStr::from_ptr(json) }.to_str() else {
        return BnstabError::InvalidArgument;
    };
    let Ok(cert) = CertificateNode::from_json(text) else {
        return BnstabError::BadCertificate;
    };
    match verify_certificate(&cert, characteristic(char_two)) {
        Ok(()) => BnstabError::Ok,
        Err(_) => BnstabError::BadCertificate,
    }
}

/// Number of pairs with unknown status at a level (`stable_level` false
/// for semistability, true for stability), genus at least `min_genus`.
///
/// # Safety
/// `engine` must be a live handle; `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn bnstab_engine_unknown_pair_count(
    engine: *const BnstabEngine,
    min_genus: i64,
    stable_level: bool,
    out: *mut usize,
) -> BnstabError {
    if engine.is_null() || out.is_null() {
        return BnstabError::NullPointer;
    }
    let engine = unsafe { &*engine };
    let level = if stable_level {
        bnstab::Level::Stable
    } else {
        bnstab::Level::Semistable
    };
    let pairs = bnstab::closure::unknown_pairs(&engine.map, min_genus, level);
    unsafe { *out = pairs.len() };
    BnstabError::Ok
}

/// Releases a string returned by this library. Accepts null.
///
/// # Safety
/// `s` must be null or a string returned by this library that has not
/// been freed.
#[no_mangle]
pub unsafe extern "C" fn bnstab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}
