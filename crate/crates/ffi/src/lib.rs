//! C interface to the cluster-capacity engine.
//!
//! Objects are opaque handles created by `*_from_json` / `*_compute` calls
//! and released with the matching `*_free`. Every fallible call returns a
//! [`CcStatus`]; on failure `cc_last_error_message` describes the problem.
//! Strings handed out by the library must be released with `cc_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use cluster_capacity::capacity::{capacity, capacity_spectral, CapacityEstimate};
use cluster_capacity::report::{genfun_from_json, genfun_to_json, CapacityReport};
use cluster_capacity::series::count;
use cluster_capacity::{cluster_genfun, ConstraintSpec, Error, ForbiddenSet, GenFun};

/// Result codes. Values are stable.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CcStatus {
    Ok = 0,
    /// Malformed input: bad JSON, bad words, bad parameters.
    Input = 1,
    /// The forbidden set breaks a structural requirement.
    Validation = 2,
    /// Only finitely many strings avoid the set; capacity is undefined.
    Degenerate = 3,
    /// A size or enumeration guard was hit.
    Resource = 4,
    /// No positive root where one was required.
    NoRoot = 5,
    /// Broken internal invariant; please report.
    Internal = 6,
    /// A required pointer argument was null.
    NullPointer = 7,
    /// The library panicked; the call had no effect.
    Panic = 8,
}

impl From<&Error> for CcStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Input(_) => CcStatus::Input,
            Error::Validation(_) => CcStatus::Validation,
            Error::Degenerate(_) => CcStatus::Degenerate,
            Error::Resource(_) => CcStatus::Resource,
            Error::NoRoot(_) => CcStatus::NoRoot,
            Error::Internal(_) => CcStatus::Internal,
        }
    }
}

/// A reduced forbidden set.
pub struct CcForbiddenSet(ForbiddenSet);

/// A generating function `T(x) / S(x)`.
pub struct CcGenFun(GenFun);

/// Capacity estimate: `value` is within `eps` of the true capacity.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct CcCapacity {
    pub value: f64,
    pub eps: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

/// Runs `body`, turning errors and panics into status codes.
fn guard(body: impl FnOnce() -> Result<(), CcStatus>) -> CcStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error("");
            CcStatus::Ok
        }
        Ok(Err(status)) => status,
        Err(_) => {
            set_error("panic inside the library");
            CcStatus::Panic
        }
    }
}

fn fail(e: Error) -> CcStatus {
    set_error(&e.to_string());
    CcStatus::from(&e)
}

fn null(what: &str) -> CcStatus {
    set_error(&format!("{what} is null"));
    CcStatus::NullPointer
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, CcStatus> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(Error::Input(format!("{what} is not valid UTF-8"))))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, CcStatus> {
    p.as_ref().ok_or_else(|| null(what))
}

fn give_string(s: String, out: *mut *mut c_char) -> Result<(), CcStatus> {
    let c = CString::new(s).map_err(|_| fail(Error::Internal("NUL in output".into())))?;
    unsafe { *out = c.into_raw() };
    Ok(())
}

/// Parses a JSON constraint spec and reduces it.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_forbidden_set_from_json(
    json: *const c_char,
    out: *mut *mut CcForbiddenSet,
) -> CcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let text = read_str(json, "json")?;
        let set = ConstraintSpec::from_json(text)
            .and_then(|s| s.resolve())
            .map_err(fail)?;
        *out = Box::into_raw(Box::new(CcForbiddenSet(set)));
        Ok(())
    })
}

/// Number of words in the (reduced) set.
///
/// # Safety
/// `set` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cc_forbidden_set_len(set: *const CcForbiddenSet) -> usize {
    set.as_ref().map_or(0, |s| s.0.len())
}

/// Releases a set. Null is ignored.
///
/// # Safety
/// `set` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cc_forbidden_set_free(set: *mut CcForbiddenSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// Computes the generating function of the strings avoiding `set`.
///
/// # Safety
/// `set` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_genfun_compute(
    set: *const CcForbiddenSet,
    out: *mut *mut CcGenFun,
) -> CcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let set = deref(set, "set")?;
        let (_, f) = cluster_genfun(&set.0).map_err(fail)?;
        *out = Box::into_raw(Box::new(CcGenFun(f)));
        Ok(())
    })
}

/// Parses `{"T": [...], "S": [...], "q": q, "ellF": l}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_genfun_from_json(
    json: *const c_char,
    out: *mut *mut CcGenFun,
) -> CcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let f = genfun_from_json(read_str(json, "json")?).map_err(fail)?;
        *out = Box::into_raw(Box::new(CcGenFun(f)));
        Ok(())
    })
}

/// Serializes a generating function; free the result with `cc_string_free`.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_genfun_to_json(f: *const CcGenFun, out: *mut *mut c_char) -> CcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        give_string(genfun_to_json(&deref(f, "genfun")?.0), out)
    })
}

/// Releases a generating function. Null is ignored.
///
/// # Safety
/// `f` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cc_genfun_free(f: *mut CcGenFun) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// `N(n)` as a decimal string; free the result with `cc_string_free`.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_count(f: *const CcGenFun, n: usize, out: *mut *mut c_char) -> CcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let value = count(&deref(f, "genfun")?.0, n).map_err(fail)?;
        give_string(value.to_string(), out)
    })
}

unsafe fn write_capacity(
    est: Result<CapacityEstimate, Error>,
    out: *mut CcCapacity,
) -> Result<(), CcStatus> {
    let est = est.map_err(fail)?;
    *out = CcCapacity {
        value: est.value,
        eps: est.eps,
    };
    Ok(())
}

/// Capacity from the generating function's denominator.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_capacity(
    f: *const CcGenFun,
    eps: f64,
    out: *mut CcCapacity,
) -> CcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        write_capacity(capacity(&deref(f, "genfun")?.0, eps), out)
    })
}

/// Capacity from the de Bruijn graph of the set.
///
/// # Safety
/// `set` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_capacity_spectral(
    set: *const CcForbiddenSet,
    eps: f64,
    out: *mut CcCapacity,
) -> CcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        write_capacity(capacity_spectral(&deref(set, "set")?.0, eps), out)
    })
}

/// Capacity report as JSON, including the exact root enclosure; free the
/// result with `cc_string_free`.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cc_capacity_json(
    f: *const CcGenFun,
    eps: f64,
    out: *mut *mut c_char,
) -> CcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let est = capacity(&deref(f, "genfun")?.0, eps).map_err(fail)?;
        give_string(CapacityReport::from(&est).to_json(), out)
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or "" after a success.
/// Valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn cc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version, e.g. "0.1.0".
#[no_mangle]
pub extern "C" fn cc_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr().cast()
}
