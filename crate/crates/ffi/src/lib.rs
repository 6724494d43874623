//! C ABI over the structure registry.
//!
//! Structures are opaque handles created by [`ha_structure_new`] and released
//! with [`ha_structure_free`]. Elements and sets cross the boundary as UTF-8
//! text in the same syntax as the command line. Every fallible call returns an
//! [`HaStatus`]; on failure [`ha_last_error`] describes the problem. Strings
//! returned through `out` parameters are owned by the caller and must be
//! released with [`ha_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use hyperalg::axioms::CheckOptions;
use hyperalg::registry::{lookup, DynStructure, VerifyLevel};
use hyperalg::Error;

/// Status codes. `HA_STATUS_OK` is zero; everything else is an error.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HaStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    UnknownStructure = 4,
    Unsupported = 5,
    Domain = 6,
    Closure = 7,
    Indeterminate = 8,
    Structural = 9,
    Io = 10,
    Panic = 11,
}

/// Opaque structure handle.
pub struct HaStructure {
    inner: Box<dyn DynStructure>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> HaStatus {
    match e {
        Error::Parse(_) | Error::InvalidSet(_) | Error::CarrierMismatch(_) => HaStatus::Parse,
        Error::Invalid(_) | Error::Unsupported(_) => HaStatus::Unsupported,
        Error::Domain(_) => HaStatus::Domain,
        Error::Closure(_) => HaStatus::Closure,
        Error::Indeterminate(_) => HaStatus::Indeterminate,
        Error::Structural(_) => HaStatus::Structural,
        Error::Io(_) => HaStatus::Io,
    }
}

struct Fail(HaStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> HaStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HaStatus::Ok,
        Ok(Err(Fail(code, msg))) => {
            set_error(&msg);
            code
        }
        Err(_) => {
            set_error("internal panic");
            HaStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(HaStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(HaStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a>(s: *const HaStructure) -> Result<&'a dyn DynStructure, Fail> {
    s.as_ref()
        .map(|h| h.inner.as_ref())
        .ok_or_else(|| Fail(HaStatus::NullArgument, "structure handle is null".into()))
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(HaStatus::NullArgument, "output pointer is null".into()));
    }
    out.write(v);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| Fail(HaStatus::Panic, "output contains a nul byte".into()))?;
    if out.is_null() {
        return Err(Fail(HaStatus::NullArgument, "output pointer is null".into()));
    }
    out.write(c.into_raw());
    Ok(())
}

/// Message for the last failed call on this thread. Valid until the next
/// failing call on the same thread; never null.
#[no_mangle]
pub extern "C" fn ha_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn ha_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Release a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ha_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Look up a structure by name (`"TC"`, `"K"`, `"padic:5:8"`, ...).
///
/// # Safety
/// `name` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ha_structure_new(name: *const c_char, out: *mut *mut HaStructure) -> HaStatus {
    guard(|| {
        let name = text(name, "name")?;
        let inner = lookup(name).map_err(|e| match e {
            Error::Parse(m) | Error::Invalid(m) => Fail(HaStatus::UnknownStructure, m),
            e => e.into(),
        })?;
        put(out, Box::into_raw(Box::new(HaStructure { inner })))
    })
}

/// Release a handle. Null is ignored.
///
/// # Safety
/// `s` must come from [`ha_structure_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn ha_structure_free(s: *mut HaStructure) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Canonical name of the structure.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ha_structure_name(s: *const HaStructure, out: *mut *mut c_char) -> HaStatus {
    guard(|| put_string(out, handle(s)?.name()))
}

/// Whether the structure carries a multiplication.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ha_structure_has_mul(s: *const HaStructure, out: *mut bool) -> HaStatus {
    guard(|| put(out, handle(s)?.has_mul()))
}

/// The value set of `a + b`, as text.
///
/// # Safety
/// `s` must be a live handle, `a` and `b` nul-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ha_add(
    s: *const HaStructure,
    a: *const c_char,
    b: *const c_char,
    out: *mut *mut c_char,
) -> HaStatus {
    guard(|| {
        let x = handle(s)?;
        put_string(out, x.add(text(a, "a")?, text(b, "b")?)?)
    })
}

/// The product `a * b`, as text.
///
/// # Safety
/// `s` must be a live handle, `a` and `b` nul-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ha_mul(
    s: *const HaStructure,
    a: *const c_char,
    b: *const c_char,
    out: *mut *mut c_char,
) -> HaStatus {
    guard(|| {
        let x = handle(s)?;
        put_string(out, x.mul(text(a, "a")?, text(b, "b")?)?)
    })
}

/// Whether element `x` lies in the set written as `set`.
///
/// # Safety
/// `s` must be a live handle, `x` and `set` nul-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ha_member(
    s: *const HaStructure,
    x: *const c_char,
    set: *const c_char,
    out: *mut bool,
) -> HaStatus {
    guard(|| {
        let st = handle(s)?;
        put(out, st.member(text(x, "x")?, text(set, "set")?)?)
    })
}

/// Run an axiom check. `level` is one of `multigroup`, `minimal`,
/// `multiring`, `hyperring`, `hyperfield`, `dd`. `report` may be null;
/// otherwise it receives the per-axiom text report.
///
/// # Safety
/// `s` must be a live handle, `level` nul-terminated, `passed` writable and
/// `report` null or writable.
#[no_mangle]
pub unsafe extern "C" fn ha_verify(
    s: *const HaStructure,
    level: *const c_char,
    budget: usize,
    seed: u64,
    passed: *mut bool,
    report: *mut *mut c_char,
) -> HaStatus {
    guard(|| {
        let x = handle(s)?;
        let level: VerifyLevel = text(level, "level")?.parse()?;
        let v = x.verify(level, &CheckOptions::sampled(budget, seed))?;
        put(passed, v.passed)?;
        if !report.is_null() {
            put_string(report, v.text)?;
        }
        Ok(())
    })
}

/// Characteristic and C-characteristic, summing at most `cap` terms. A zero
/// result means none was found within the cap.
///
/// # Safety
/// `s` must be a live handle; `chr` and `cchr` writable.
#[no_mangle]
pub unsafe extern "C" fn ha_characteristics(
    s: *const HaStructure,
    cap: usize,
    chr: *mut usize,
    cchr: *mut usize,
) -> HaStatus {
    guard(|| {
        let (a, b) = handle(s)?.characteristics(cap)?;
        put(chr, a.value())?;
        put(cchr, b.value())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    fn c(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    unsafe fn take(p: *mut c_char) -> String {
        let s = CStr::from_ptr(p).to_str().unwrap().to_string();
        ha_string_free(p);
        s
    }

    #[test]
    fn add_through_handle() {
        unsafe {
            let mut h = ptr::null_mut();
            assert_eq!(ha_structure_new(c("tri").as_ptr(), &mut h), HaStatus::Ok);
            let mut out = ptr::null_mut();
            assert_eq!(ha_add(h, c("2").as_ptr(), c("1").as_ptr(), &mut out), HaStatus::Ok);
            assert_eq!(take(out), "interval [1,3]");
            ha_structure_free(h);
        }
    }

    #[test]
    fn errors_set_message() {
        unsafe {
            let mut h = ptr::null_mut();
            assert_eq!(ha_structure_new(c("nope").as_ptr(), &mut h), HaStatus::UnknownStructure);
            assert!(h.is_null());
            assert!(!CStr::from_ptr(ha_last_error()).to_bytes().is_empty());
            assert_eq!(ha_structure_new(ptr::null(), &mut h), HaStatus::NullArgument);
        }
    }
}
