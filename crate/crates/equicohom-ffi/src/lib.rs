//! C ABI for the engine: parse a bundle once into an opaque handle, run
//! commands against it, get JSON reports back as C strings.
//!
//! Every function returns a status code; `equicohom_last_error` carries the
//! detail message of the most recent failure on the calling thread. Strings
//! returned through out-parameters are owned by the caller and must be
//! released with `equicohom_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use equicohom::bundle::{compile, parse, CompiledBundle};
use equicohom::cohomology::Flavor;
use equicohom::commands::{
    cmd_classify, cmd_cohomology, cmd_compare, cmd_homotopy, cmd_validate, HomotopyInput,
};
use equicohom::Error;

/// Opaque compiled bundle.
pub struct EquicohomBundle {
    inner: CompiledBundle,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquicohomStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    ValidationError = 4,
    HypothesisError = 5,
    InternalError = 6,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn status_of(err: &Error) -> EquicohomStatus {
    match err {
        Error::Parse(_) => EquicohomStatus::ParseError,
        Error::Validation(_)
        | Error::IndexOutOfRange(_)
        | Error::DimensionMismatch(_)
        | Error::ComplexNotExact(_) => EquicohomStatus::ValidationError,
        Error::HypothesisViolation(_) | Error::PathMissing(_) | Error::NotCohomologous(_) => {
            EquicohomStatus::HypothesisError
        }
        Error::LiftInvariantViolation(_) | Error::Internal(_) => EquicohomStatus::InternalError,
    }
}

fn guarded(body: impl FnOnce() -> EquicohomStatus) -> EquicohomStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            EquicohomStatus::InternalError
        }
    }
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, EquicohomStatus> {
    if ptr.is_null() {
        set_error("null string argument");
        return Err(EquicohomStatus::NullArgument);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        EquicohomStatus::InvalidUtf8
    })
}

fn write_out(report: String, out: *mut *mut c_char) -> EquicohomStatus {
    let c = match CString::new(report) {
        Ok(c) => c,
        Err(_) => {
            set_error("report contained an interior NUL");
            return EquicohomStatus::InternalError;
        }
    };
    unsafe {
        *out = c.into_raw();
    }
    EquicohomStatus::Ok
}

/// Detail message of the most recent failure on this thread. Valid until
/// the next failing call; never null.
#[no_mangle]
pub extern "C" fn equicohom_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Parse and fully validate a bundle from JSON. On success the handle must
/// be released with `equicohom_bundle_free`.
#[no_mangle]
pub unsafe extern "C" fn equicohom_bundle_parse(
    json: *const c_char,
    out: *mut *mut EquicohomBundle,
) -> EquicohomStatus {
    guarded(|| {
        if out.is_null() {
            set_error("null output argument");
            return EquicohomStatus::NullArgument;
        }
        let text = match read_str(json) {
            Ok(t) => t,
            Err(status) => return status,
        };
        match parse(text).and_then(|spec| compile(&spec, None)) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(EquicohomBundle { inner }));
                EquicohomStatus::Ok
            }
            Err(e) => {
                set_error(&e.to_string());
                status_of(&e)
            }
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn equicohom_bundle_free(bundle: *mut EquicohomBundle) {
    if !bundle.is_null() {
        drop(Box::from_raw(bundle));
    }
}

unsafe fn with_bundle<'a>(
    bundle: *const EquicohomBundle,
) -> Result<&'a CompiledBundle, EquicohomStatus> {
    if bundle.is_null() {
        set_error("null bundle handle");
        return Err(EquicohomStatus::NullArgument);
    }
    Ok(&(*bundle).inner)
}

unsafe fn read_degrees(
    degrees: *const u32,
    len: usize,
) -> Result<Option<Vec<usize>>, EquicohomStatus> {
    if degrees.is_null() {
        if len != 0 {
            set_error("null degree list with nonzero length");
            return Err(EquicohomStatus::NullArgument);
        }
        return Ok(None);
    }
    let slice = std::slice::from_raw_parts(degrees, len);
    Ok(Some(slice.iter().map(|&d| d as usize).collect()))
}

/// Structural validation report (JSON).
#[no_mangle]
pub unsafe extern "C" fn equicohom_validate(
    bundle: *const EquicohomBundle,
    out_report: *mut *mut c_char,
) -> EquicohomStatus {
    guarded(|| {
        if out_report.is_null() {
            set_error("null output argument");
            return EquicohomStatus::NullArgument;
        }
        let b = match with_bundle(bundle) {
            Ok(b) => b,
            Err(s) => return s,
        };
        write_out(cmd_validate(b, "bundle").to_json(), out_report)
    })
}

/// Invariant factors in one flavor: "bredon" or "twisted". Pass a null
/// degree list to use the bundle's requested degrees.
#[no_mangle]
pub unsafe extern "C" fn equicohom_cohomology(
    bundle: *const EquicohomBundle,
    flavor: *const c_char,
    degrees: *const u32,
    degrees_len: usize,
    out_report: *mut *mut c_char,
) -> EquicohomStatus {
    guarded(|| {
        if out_report.is_null() {
            set_error("null output argument");
            return EquicohomStatus::NullArgument;
        }
        let b = match with_bundle(bundle) {
            Ok(b) => b,
            Err(s) => return s,
        };
        let flavor = match read_str(flavor) {
            Ok("bredon") => Flavor::Bredon,
            Ok("twisted") => Flavor::Twisted,
            Ok(other) => {
                set_error(&format!("unknown flavor {other:?}"));
                return EquicohomStatus::ValidationError;
            }
            Err(s) => return s,
        };
        let degs = match read_degrees(degrees, degrees_len) {
            Ok(d) => d,
            Err(s) => return s,
        };
        match cmd_cohomology(b, "bundle", flavor, degs) {
            Ok(report) => write_out(report.to_json(), out_report),
            Err(e) => {
                set_error(&e.to_string());
                status_of(&e)
            }
        }
    })
}

/// Both pipelines plus the degreewise comparison verdicts.
#[no_mangle]
pub unsafe extern "C" fn equicohom_compare(
    bundle: *const EquicohomBundle,
    degrees: *const u32,
    degrees_len: usize,
    samples: usize,
    seed: u64,
    out_report: *mut *mut c_char,
) -> EquicohomStatus {
    guarded(|| {
        if out_report.is_null() {
            set_error("null output argument");
            return EquicohomStatus::NullArgument;
        }
        let b = match with_bundle(bundle) {
            Ok(b) => b,
            Err(s) => return s,
        };
        let degs = match read_degrees(degrees, degrees_len) {
            Ok(d) => d,
            Err(s) => return s,
        };
        match cmd_compare(b, "bundle", degs, samples, seed) {
            Ok(report) => write_out(report.to_json(), out_report),
            Err(e) => {
                set_error(&e.to_string());
                status_of(&e)
            }
        }
    })
}

/// Classification round-trip verdicts at one degree.
#[no_mangle]
pub unsafe extern "C" fn equicohom_classify(
    bundle: *const EquicohomBundle,
    degree: u32,
    samples: usize,
    seed: u64,
    out_report: *mut *mut c_char,
) -> EquicohomStatus {
    guarded(|| {
        if out_report.is_null() {
            set_error("null output argument");
            return EquicohomStatus::NullArgument;
        }
        let b = match with_bundle(bundle) {
            Ok(b) => b,
            Err(s) => return s,
        };
        match cmd_classify(b, "bundle", degree as usize, samples, seed) {
            Ok(report) => write_out(report.to_json(), out_report),
            Err(e) => {
                set_error(&e.to_string());
                status_of(&e)
            }
        }
    })
}

/// Vertical-homotopy verdicts for generated cohomologous pairs.
#[no_mangle]
pub unsafe extern "C" fn equicohom_homotopy(
    bundle: *const EquicohomBundle,
    degree: u32,
    pairs: usize,
    seed: u64,
    out_report: *mut *mut c_char,
) -> EquicohomStatus {
    guarded(|| {
        if out_report.is_null() {
            set_error("null output argument");
            return EquicohomStatus::NullArgument;
        }
        let b = match with_bundle(bundle) {
            Ok(b) => b,
            Err(s) => return s,
        };
        let input = HomotopyInput::Generate { pairs, seed };
        match cmd_homotopy(b, "bundle", degree as usize, input) {
            Ok(report) => write_out(report.to_json(), out_report),
            Err(e) => {
                set_error(&e.to_string());
                status_of(&e)
            }
        }
    })
}

/// Release a string returned through an out-parameter.
#[no_mangle]
pub unsafe extern "C" fn equicohom_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
