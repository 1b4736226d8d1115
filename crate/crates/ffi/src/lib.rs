//! C ABI for the kstab verifier.
//!
//! Objects cross the boundary as opaque handles owned by the caller and
//! released with the matching `*_free` function. Every fallible function
//! returns a [`KstabStatus`]; on failure `kstab_last_error` describes the
//! problem. Strings returned through `char **` out-parameters are
//! heap-allocated and must be released with `kstab_string_free`. Exact
//! rationals are exchanged as `"p/q"` strings.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use kstab_core::algebra::parse_rational_lenient;
use kstab_core::io::{parse_input_str, InputDocument, Resolved};
use kstab_core::registry::Registry;
use kstab_core::stability::{check_stability, ke_barycenter, stability_threshold, StabilityReport, Verdict};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KstabStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    UnknownExample = 4,
    /// The operation needs a concrete polarization but got a ray, or vice versa.
    WrongShape = 5,
    Computation = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KstabVerdict {
    Stable = 0,
    Unstable = 1,
    FutakiObstructed = 2,
    SemistableBoundary = 3,
}

impl From<Verdict> for KstabVerdict {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::Stable => KstabVerdict::Stable,
            Verdict::Unstable => KstabVerdict::Unstable,
            Verdict::FutakiObstructed => KstabVerdict::FutakiObstructed,
            Verdict::SemistableBoundary => KstabVerdict::SemistableBoundary,
        }
    }
}

/// A parsed input document: a concrete polarization or a ray of them.
pub struct KstabData {
    document: InputDocument,
    resolved: Resolved,
}

pub struct KstabReport {
    report: StabilityReport,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

struct Failure(KstabStatus, String);

type Outcome = Result<(), Failure>;

fn fail<T>(status: KstabStatus, msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure(status, msg.into()))
}

/// Runs `body`, turning errors and panics into a status and a stored message.
fn guard(body: impl FnOnce() -> Outcome) -> KstabStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error("");
            KstabStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            KstabStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return fail(KstabStatus::NullPointer, format!("{what} is NULL"));
    }
    CStr::from_ptr(p).to_str().or_else(|_| fail(KstabStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().map_or_else(|| fail(KstabStatus::NullPointer, format!("{what} is NULL")), Ok)
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Outcome {
    if out.is_null() {
        return fail(KstabStatus::NullPointer, "output pointer is NULL");
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Outcome {
    if out.is_null() {
        return fail(KstabStatus::NullPointer, "output pointer is NULL");
    }
    *out = CString::new(s).expect("no interior NUL in generated text").into_raw();
    Ok(())
}

fn concrete(data: &KstabData) -> Result<&kstab_core::variety::SphericalData, Failure> {
    match &data.resolved {
        Resolved::Data(d) => Ok(d),
        Resolved::Family(_) => fail(KstabStatus::WrongShape, "document is a ray; instantiate it first"),
    }
}

fn computation<E: std::fmt::Display>(e: E) -> Failure {
    Failure(KstabStatus::Computation, e.to_string())
}

/// Message for the last failed call on this thread; empty after a success.
/// Valid until the next kstab call on the same thread.
#[no_mangle]
pub extern "C" fn kstab_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn kstab_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses an input document.
///
/// # Safety
/// `json` must be NULL or a NUL-terminated string; `out` must be NULL or
/// point to writable storage for a handle.
#[no_mangle]
pub unsafe extern "C" fn kstab_data_from_json(json: *const c_char, out: *mut *mut KstabData) -> KstabStatus {
    guard(|| {
        let text = read_str(json, "json")?;
        let document = parse_input_str(text).map_err(|e| Failure(KstabStatus::InvalidInput, e.to_string()))?;
        let resolved = document.resolve().map_err(|e| Failure(KstabStatus::InvalidInput, e.to_string()))?;
        put(out, KstabData { document, resolved })
    })
}

/// Loads a built-in example (or `KSTAB_REGISTRY` override) by name;
/// `NAME-family` selects the ray form.
///
/// # Safety
/// As for `kstab_data_from_json`.
#[no_mangle]
pub unsafe extern "C" fn kstab_data_from_registry(name: *const c_char, out: *mut *mut KstabData) -> KstabStatus {
    guard(|| {
        let name = read_str(name, "name")?;
        let registry = Registry::from_env().map_err(|e| Failure(KstabStatus::InvalidInput, e.to_string()))?;
        let document = registry.lookup(name).map_err(|e| Failure(KstabStatus::UnknownExample, e.to_string()))?;
        let resolved = document.resolve().map_err(|e| Failure(KstabStatus::InvalidInput, e.to_string()))?;
        put(out, KstabData { document, resolved })
    })
}

/// Member of a ray with upper endpoint `s` (`"p/q"` or a decimal).
///
/// # Safety
/// `data` must be NULL or a live handle; `s` and `out` as above.
#[no_mangle]
pub unsafe extern "C" fn kstab_data_instantiate(
    data: *const KstabData,
    s: *const c_char,
    out: *mut *mut KstabData,
) -> KstabStatus {
    guard(|| {
        let data = handle(data, "data")?;
        let s = parse_rational_lenient(read_str(s, "s")?).map_err(|e| Failure(KstabStatus::InvalidInput, e.to_string()))?;
        let family = match &data.resolved {
            Resolved::Family(f) => f,
            Resolved::Data(_) => return fail(KstabStatus::WrongShape, "document is already a concrete polarization"),
        };
        let member = family.instantiate(&s).map_err(|e| Failure(KstabStatus::InvalidInput, e.to_string()))?;
        put(out, KstabData { document: data.document.clone(), resolved: Resolved::Data(member) })
    })
}

/// Writes whether the handle is a ray of polarizations.
///
/// # Safety
/// `data` must be NULL or a live handle; `out` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn kstab_data_is_family(data: *const KstabData, out: *mut bool) -> KstabStatus {
    guard(|| {
        let data = handle(data, "data")?;
        if out.is_null() {
            return fail(KstabStatus::NullPointer, "output pointer is NULL");
        }
        *out = matches!(data.resolved, Resolved::Family(_));
        Ok(())
    })
}

/// # Safety
/// `data` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn kstab_data_free(data: *mut KstabData) {
    if !data.is_null() {
        drop(Box::from_raw(data));
    }
}

/// Stability verdict of a concrete polarization.
///
/// # Safety
/// `data` must be NULL or a live handle; `out` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn kstab_check(data: *const KstabData, out: *mut *mut KstabReport) -> KstabStatus {
    guard(|| {
        let report = check_stability(concrete(handle(data, "data")?)?).map_err(computation)?;
        put(out, KstabReport { report })
    })
}

/// # Safety
/// `report` must be NULL or a live handle; `out` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn kstab_report_verdict(report: *const KstabReport, out: *mut KstabVerdict) -> KstabStatus {
    guard(|| {
        let report = handle(report, "report")?;
        if out.is_null() {
            return fail(KstabStatus::NullPointer, "output pointer is NULL");
        }
        *out = report.report.verdict.into();
        Ok(())
    })
}

/// The Futaki value `L(t ↦ t)` as an exact `"p/q"` string.
///
/// # Safety
/// `report` must be NULL or a live handle; `out` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn kstab_report_futaki(report: *const KstabReport, out: *mut *mut c_char) -> KstabStatus {
    guard(|| put_string(out, handle(report, "report")?.report.futaki.to_string()))
}

/// The full report as JSON.
///
/// # Safety
/// `report` must be NULL or a live handle; `out` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn kstab_report_to_json(report: *const KstabReport, out: *mut *mut c_char) -> KstabStatus {
    guard(|| put_string(out, handle(report, "report")?.report.to_json().to_string()))
}

/// # Safety
/// `report` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn kstab_report_free(report: *mut KstabReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Threshold report of a ray as JSON; `precision` is the bracket width.
///
/// # Safety
/// `data` must be NULL or a live handle; strings NUL-terminated; `out` NULL
/// or writable.
#[no_mangle]
pub unsafe extern "C" fn kstab_threshold_json(
    data: *const KstabData,
    precision: *const c_char,
    out: *mut *mut c_char,
) -> KstabStatus {
    guard(|| {
        let data = handle(data, "data")?;
        let precision = parse_rational_lenient(read_str(precision, "precision")?)
            .map_err(|e| Failure(KstabStatus::InvalidInput, e.to_string()))?;
        let family = match &data.resolved {
            Resolved::Family(f) => f,
            Resolved::Data(_) => return fail(KstabStatus::WrongShape, "threshold needs a ray of polarizations"),
        };
        let report = stability_threshold(family, &precision).map_err(computation)?;
        put_string(out, report.to_json().to_string())
    })
}

/// `∫ ℓ P` for the document's `ke_weight`, as a `"p/q"` string.
///
/// # Safety
/// `data` must be NULL or a live handle; `out` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn kstab_ke_barycenter(data: *const KstabData, out: *mut *mut c_char) -> KstabStatus {
    guard(|| {
        let data = handle(data, "data")?;
        let ell = match data.document.ke_weight_polynomial() {
            Some(ell) => ell,
            None => return fail(KstabStatus::InvalidInput, "document has no ke_weight"),
        };
        let value = ke_barycenter(concrete(data)?, &ell).map_err(computation)?;
        put_string(out, value.to_string())
    })
}

/// # Safety
/// `s` must be NULL or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn kstab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
