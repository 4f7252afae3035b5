//! C interface to `dgframes`.
//!
//! Simplices and complexes cross the boundary as opaque handles. Every
//! fallible call returns a [`DgfStatus`]; on anything other than
//! `DGF_STATUS_OK` the message is available from [`dgf_last_error`] until
//! the next call on the same thread. Strings handed out by the library are
//! owned by the caller and must be released with [`dgf_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use dgframes::complex::{homology, ChainComplex};
use dgframes::frames::{build_frame_object, check_all};
use dgframes::gen::{random_simplex, rng, Params};
use dgframes::json::{parse_complex, parse_simplex, simplex_to_string, ComplexJson, FrameJson};
use dgframes::nerve::NerveSimplex;
use dgframes::report::Report;
use dgframes::simplicial::OrderMap;
use dgframes::Error;

/// Result of a library call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DgfStatus {
    Ok = 0,
    /// The call ran and a check failed; any report output is still written.
    CheckFailed = 1,
    /// Malformed or invalid input.
    InputError = 2,
    NullPointer = 3,
    /// A panic was caught at the boundary.
    Internal = 4,
}

/// A validated-shape nerve simplex.
pub struct DgfSimplex(NerveSimplex);

/// A bounded free chain complex.
pub struct DgfComplex(Arc<ChainComplex>);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = CString::new(message.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

struct Failure(DgfStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::InvalidSimplex(_) => DgfStatus::CheckFailed,
            _ => DgfStatus::InputError,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(DgfStatus::NullPointer, format!("{what} is null"))
}

fn guard(body: impl FnOnce() -> Result<DgfStatus, Failure>) -> DgfStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(status)) => status,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(panic) => {
            let message = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {message}"));
            DgfStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(DgfStatus::InputError, format!("{what} is not valid UTF-8")))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, text: String) -> Result<(), Failure> {
    let c = CString::new(text).map_err(|_| Failure(DgfStatus::Internal, "output contains a nul byte".into()))?;
    write_out(out, c.into_raw())
}

fn report_status(report: &Report) -> DgfStatus {
    if report.passed() {
        DgfStatus::Ok
    } else {
        DgfStatus::CheckFailed
    }
}

/// Message of the last failed call on this thread, or null. The pointer
/// stays valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn dgf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string produced by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dgf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a simplex from its JSON form. Shape errors are reported here;
/// the Maurer–Cartan equation is only checked by [`dgf_simplex_validate`].
///
/// # Safety
/// `json` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dgf_simplex_from_json(json: *const c_char, out: *mut *mut DgfSimplex) -> DgfStatus {
    guard(|| {
        let text = read_str(json, "json")?;
        let s = parse_simplex(text)?;
        write_out(out, Box::into_raw(Box::new(DgfSimplex(s))))?;
        Ok(DgfStatus::Ok)
    })
}

/// Generates a random valid simplex of dimension `dim` from `seed`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dgf_simplex_generate(
    seed: u64,
    dim: usize,
    perturbed: bool,
    out: *mut *mut DgfSimplex,
) -> DgfStatus {
    guard(|| {
        let s = random_simplex(&mut rng(seed), dim, perturbed, &Params::default());
        write_out(out, Box::into_raw(Box::new(DgfSimplex(s))))?;
        Ok(DgfStatus::Ok)
    })
}

/// Releases a simplex handle. Null is ignored.
///
/// # Safety
/// `s` must be null or a handle from this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dgf_simplex_free(s: *mut DgfSimplex) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Writes the dimension of the simplex to `out`.
///
/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dgf_simplex_dim(s: *const DgfSimplex, out: *mut usize) -> DgfStatus {
    guard(|| {
        write_out(out, deref(s, "simplex")?.0.n())?;
        Ok(DgfStatus::Ok)
    })
}

/// Serializes the simplex to JSON.
///
/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dgf_simplex_to_json(s: *const DgfSimplex, out: *mut *mut c_char) -> DgfStatus {
    guard(|| {
        write_string(out, simplex_to_string(&deref(s, "simplex")?.0))?;
        Ok(DgfStatus::Ok)
    })
}

/// Checks the Maurer–Cartan equation. Returns `DGF_STATUS_CHECK_FAILED` if
/// any sequence fails. The JSON report is written to `report` when it is
/// not null.
///
/// # Safety
/// `s` must be a live handle; `report` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn dgf_simplex_validate(s: *const DgfSimplex, report: *mut *mut c_char) -> DgfStatus {
    guard(|| {
        let r = deref(s, "simplex")?.0.validate_maurer_cartan();
        if !report.is_null() {
            write_string(report, r.to_json())?;
        }
        Ok(report_status(&r))
    })
}

/// Runs the full structural check suite on the frame diagram truncated at
/// sequences of length `max_len`.
///
/// # Safety
/// `s` must be a live handle; `report` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn dgf_simplex_check(s: *const DgfSimplex, max_len: usize, report: *mut *mut c_char) -> DgfStatus {
    guard(|| {
        if max_len == 0 {
            return Err(Failure(DgfStatus::InputError, "max_len must be positive".into()));
        }
        let r = check_all(&deref(s, "simplex")?.0, max_len)?;
        if !report.is_null() {
            write_string(report, r.to_json())?;
        }
        Ok(report_status(&r))
    })
}

/// Builds the frame object at `alpha`, given as comma-separated vertices
/// such as `"0,1,1"`. Fails with `DGF_STATUS_CHECK_FAILED` if the simplex
/// does not satisfy the Maurer–Cartan equation.
///
/// # Safety
/// `s` must be a live handle, `alpha` nul-terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dgf_frame_build(
    s: *const DgfSimplex,
    alpha: *const c_char,
    out: *mut *mut DgfComplex,
) -> DgfStatus {
    guard(|| {
        let s = &deref(s, "simplex")?.0;
        let alpha = OrderMap::parse(read_str(alpha, "alpha")?, s.n())?;
        let o = build_frame_object(s, &alpha)?;
        write_out(out, Box::into_raw(Box::new(DgfComplex(o.complex().clone()))))?;
        Ok(DgfStatus::Ok)
    })
}

/// Frame object at `alpha` as JSON, with its homology.
///
/// # Safety
/// As for [`dgf_frame_build`].
#[no_mangle]
pub unsafe extern "C" fn dgf_frame_json(s: *const DgfSimplex, alpha: *const c_char, out: *mut *mut c_char) -> DgfStatus {
    guard(|| {
        let s = &deref(s, "simplex")?.0;
        let alpha = OrderMap::parse(read_str(alpha, "alpha")?, s.n())?;
        let o = build_frame_object(s, &alpha)?;
        let text = serde_json::to_string_pretty(&FrameJson::from_frame(&o)).expect("frames serialize");
        write_string(out, text)?;
        Ok(DgfStatus::Ok)
    })
}

/// Parses a chain complex from JSON.
///
/// # Safety
/// `json` must be nul-terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dgf_complex_from_json(json: *const c_char, out: *mut *mut DgfComplex) -> DgfStatus {
    guard(|| {
        let x = parse_complex(read_str(json, "json")?)?;
        write_out(out, Box::into_raw(Box::new(DgfComplex(Arc::new(x)))))?;
        Ok(DgfStatus::Ok)
    })
}

/// Releases a complex handle. Null is ignored.
///
/// # Safety
/// `c` must be null or a handle from this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dgf_complex_free(c: *mut DgfComplex) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Writes the rank of the complex in degree `degree` to `out`.
///
/// # Safety
/// `c` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dgf_complex_rank(c: *const DgfComplex, degree: i64, out: *mut usize) -> DgfStatus {
    guard(|| {
        write_out(out, deref(c, "complex")?.0.rank(degree))?;
        Ok(DgfStatus::Ok)
    })
}

/// Writes the total rank of the complex to `out`.
///
/// # Safety
/// `c` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dgf_complex_total_rank(c: *const DgfComplex, out: *mut usize) -> DgfStatus {
    guard(|| {
        write_out(out, deref(c, "complex")?.0.total_rank())?;
        Ok(DgfStatus::Ok)
    })
}

/// Serializes the complex to JSON.
///
/// # Safety
/// `c` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dgf_complex_to_json(c: *const DgfComplex, out: *mut *mut c_char) -> DgfStatus {
    guard(|| {
        let text = serde_json::to_string_pretty(&ComplexJson::from_complex(&deref(c, "complex")?.0)).expect("complexes serialize");
        write_string(out, text)?;
        Ok(DgfStatus::Ok)
    })
}

/// Homology as a JSON object from degree to group, e.g. `{"0": "Z/2"}`.
/// Acyclic complexes give `{}`.
///
/// # Safety
/// `c` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dgf_complex_homology(c: *const DgfComplex, out: *mut *mut c_char) -> DgfStatus {
    guard(|| {
        let h = homology(&deref(c, "complex")?.0);
        let table: serde_json::Map<String, serde_json::Value> =
            h.groups.iter().map(|(d, g)| (d.to_string(), g.to_string().into())).collect();
        write_string(out, serde_json::Value::Object(table).to_string())?;
        Ok(DgfStatus::Ok)
    })
}
