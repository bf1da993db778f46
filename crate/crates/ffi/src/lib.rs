//! C ABI over `tmh-core`.
//!
//! Every fallible call returns a [`TmhStatus`] and writes its result through
//! an out-pointer. On failure the message is kept per thread and can be read
//! with [`tmh_last_error`]. Handles and strings returned here must be freed
//! with the matching `*_free` function. Panics never cross the boundary; they
//! come back as `TMH_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use tmh_core::invariants::{a_hat, alpha, report, spin_check, PscVerdict};
use tmh_core::record::OutputRecord;
use tmh_core::{Error, TwistSpec};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TmhStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// Bad shape: `n1` or `n2` is zero, or the twist length differs from `n2`.
    InvalidInput = 2,
    /// The hypersurface is not spin and the quantity needs a spin structure.
    NotSpin = 3,
    /// Any other mathematical precondition failed.
    Domain = 4,
    /// An internal panic was caught.
    Panic = 5,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TmhPsc {
    Exists = 0,
    Obstructed = 1,
    /// Not spin, or real dimension below 5.
    Inapplicable = 2,
}

/// Opaque hypersurface description.
pub struct TmhSpec {
    inner: TwistSpec,
}

/// Opaque bundle of every computed invariant of one hypersurface.
pub struct TmhReport {
    record: OutputRecord,
    psc: PscVerdict,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure {
    status: TmhStatus,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::TwistLength { .. } | Error::Dimension { .. } => TmhStatus::InvalidInput,
            Error::NotSpin { .. } => TmhStatus::NotSpin,
            _ => TmhStatus::Domain,
        };
        Failure {
            status,
            message: e.to_string(),
        }
    }
}

fn null(what: &str) -> Failure {
    Failure {
        status: TmhStatus::NullPointer,
        message: format!("null pointer: {what}"),
    }
}

fn set_last_error(message: &str) {
    // interior NULs cannot occur in our messages, but never panic here
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> TmhStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TmhStatus::Ok,
        Ok(Err(fail)) => {
            set_last_error(&fail.message);
            fail.status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(&format!("internal panic: {msg}"));
            TmhStatus::Panic
        }
    }
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("no interior NUL").into_raw()
}

unsafe fn spec_ref<'a>(spec: *const TmhSpec) -> Result<&'a TwistSpec, Failure> {
    spec.as_ref().map(|s| &s.inner).ok_or_else(|| null("spec"))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

/// Message of the last failed call on this thread, or NULL. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn tmh_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds a hypersurface spec. `twist` may be NULL when `twist_len` is 0.
///
/// # Safety
/// `twist` must point to `twist_len` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tmh_spec_new(
    n1: u32,
    n2: u32,
    twist: *const i64,
    twist_len: usize,
    d1: i64,
    d2: i64,
    out: *mut *mut TmhSpec,
) -> TmhStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let twist = if twist_len == 0 {
            Vec::new()
        } else if twist.is_null() {
            return Err(null("twist"));
        } else {
            std::slice::from_raw_parts(twist, twist_len).to_vec()
        };
        let inner = TwistSpec::new(n1, n2, twist, d1, d2)?;
        out.write(Box::into_raw(Box::new(TmhSpec { inner })));
        Ok(())
    })
}

/// # Safety
/// `spec` must be NULL or a handle from `tmh_spec_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tmh_spec_free(spec: *mut TmhSpec) {
    if !spec.is_null() {
        drop(Box::from_raw(spec));
    }
}

/// # Safety
/// `spec` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tmh_spec_is_spin(spec: *const TmhSpec, out: *mut bool) -> TmhStatus {
    guard(|| {
        let s = spec_ref(spec)?;
        write_out(out, spin_check(s).is_spin(), "out")
    })
}

/// Real dimension `2(n1 + n2) - 2`.
///
/// # Safety
/// `spec` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tmh_spec_dim_real(spec: *const TmhSpec, out: *mut u64) -> TmhStatus {
    guard(|| {
        let s = spec_ref(spec)?;
        write_out(out, s.dim_real(), "out")
    })
}

/// Â-genus as a decimal string, `"p"` or `"p/q"`. Free with
/// `tmh_string_free`.
///
/// # Safety
/// `spec` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tmh_a_hat(spec: *const TmhSpec, out: *mut *mut c_char) -> TmhStatus {
    guard(|| {
        let s = spec_ref(spec)?;
        if out.is_null() {
            return Err(null("out"));
        }
        out.write(into_c_string(a_hat(s)?.to_string()));
        Ok(())
    })
}

/// α-invariant: writes the degree mod 8 and the value as a string (an
/// integer for Z, `"0"`/`"1"` for Z/2), or NULL when the group is trivial.
/// Returns `TMH_STATUS_NOT_SPIN` for non-spin hypersurfaces.
///
/// # Safety
/// `spec` must be a live handle; both out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn tmh_alpha(
    spec: *const TmhSpec,
    out_n_mod_8: *mut u8,
    out_value: *mut *mut c_char,
) -> TmhStatus {
    guard(|| {
        let s = spec_ref(spec)?;
        if out_n_mod_8.is_null() || out_value.is_null() {
            return Err(null("out"));
        }
        let k = alpha(s)?;
        out_n_mod_8.write(k.n_mod_8());
        out_value.write(k.value_string().map_or(ptr::null_mut(), into_c_string));
        Ok(())
    })
}

/// Computes every invariant at once.
///
/// # Safety
/// `spec` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tmh_report_new(
    spec: *const TmhSpec,
    out: *mut *mut TmhReport,
) -> TmhStatus {
    guard(|| {
        let s = spec_ref(spec)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let rep = report(s)?;
        let handle = TmhReport {
            record: OutputRecord::from_report(&rep),
            psc: rep.psc,
        };
        out.write(Box::into_raw(Box::new(handle)));
        Ok(())
    })
}

/// # Safety
/// `report` must be NULL or a handle from `tmh_report_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tmh_report_free(report: *mut TmhReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// The report as one compact JSON object. Free with `tmh_string_free`.
///
/// # Safety
/// `report` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tmh_report_json(
    report: *const TmhReport,
    out: *mut *mut c_char,
) -> TmhStatus {
    guard(|| {
        let r = report.as_ref().ok_or_else(|| null("report"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        out.write(into_c_string(r.record.to_json()));
        Ok(())
    })
}

/// # Safety
/// `report` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tmh_report_psc(report: *const TmhReport, out: *mut TmhPsc) -> TmhStatus {
    guard(|| {
        let r = report.as_ref().ok_or_else(|| null("report"))?;
        let v = match r.psc {
            PscVerdict::Exists => TmhPsc::Exists,
            PscVerdict::Obstructed => TmhPsc::Obstructed,
            PscVerdict::Inapplicable => TmhPsc::Inapplicable,
        };
        write_out(out, v, "out")
    })
}

/// True when a nontrivial smooth circle action is ruled out (spin and
/// Â ≠ 0).
///
/// # Safety
/// `report` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tmh_report_no_circle_action(
    report: *const TmhReport,
    out: *mut bool,
) -> TmhStatus {
    guard(|| {
        let r = report.as_ref().ok_or_else(|| null("report"))?;
        write_out(out, r.record.no_circle_action, "out")
    })
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tmh_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
