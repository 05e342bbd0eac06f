//! C ABI over the ejalab verification workbench: run suites and the
//! acceptance battery, validate model documents, and read back structured
//! reports, all through opaque handles and status codes.
//!
//! Conventions:
//! - every function returning [`EjalabStatus`] writes its result through an
//!   out-pointer only on `EJALAB_STATUS_OK`;
//! - strings returned as `char*` are owned by the caller and must be
//!   released with [`ejalab_string_free`];
//! - report handles must be released with [`ejalab_report_free`];
//! - all entry points catch panics and convert them to
//!   `EJALAB_STATUS_INTERNAL`.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use ejalab::jordan::FamilySpec;
use ejalab::modelfile::{parse_model, LoadedModel};
use ejalab::report::{CheckResult, VerificationReport};
use ejalab::suites::{
    acceptance_report, ball_samples_csv, run_suite, validate_finite_model, SuiteConfig,
};
use ejalab::Tolerances;

/// Status codes for every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EjalabStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// An argument was outside its domain (unknown suite, family, size...).
    InvalidArgument = 2,
    /// A model document failed to parse or validate.
    ParseError = 3,
    /// A panic escaped the library.
    Internal = 4,
}

/// Opaque verification-report handle (forward-declared in the header).
pub struct EjalabReport {
    report: VerificationReport,
}

fn into_handle(report: VerificationReport) -> *mut EjalabReport {
    Box::into_raw(Box::new(EjalabReport { report }))
}

unsafe fn inner<'a>(handle: *const EjalabReport) -> Option<&'a EjalabReport> {
    handle.as_ref()
}

fn config(seed: u64, samples: u32) -> SuiteConfig {
    SuiteConfig {
        seed,
        samples: if samples == 0 { 1000 } else { samples as usize },
        tols: Tolerances::default(),
    }
}

unsafe fn cstr<'a>(ptr: *const c_char) -> Result<&'a str, EjalabStatus> {
    if ptr.is_null() {
        return Err(EjalabStatus::NullArgument);
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| EjalabStatus::InvalidArgument)
}

fn to_owned_cstring(s: String) -> *mut c_char {
    // interior NULs cannot appear in report text; fall back defensively
    CString::new(s)
        .unwrap_or_else(|_| CString::new("invalid string").unwrap())
        .into_raw()
}

fn guarded(f: impl FnOnce() -> EjalabStatus) -> EjalabStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(EjalabStatus::Internal)
}

/// Library version as a static string (do not free).
#[no_mangle]
pub extern "C" fn ejalab_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Run a named suite (`lemma1`, `theorem2`, `snake`, `bitball`,
/// `appendixB`, `report`). `family` may be null for the default battery;
/// when present it must name a supported family and `size` its parameter.
/// `samples = 0` selects the default sample count.
#[no_mangle]
pub extern "C" fn ejalab_run_suite(
    suite: *const c_char,
    family: *const c_char,
    size: u32,
    seed: u64,
    samples: u32,
    out: *mut *mut EjalabReport,
) -> EjalabStatus {
    guarded(|| {
        if out.is_null() {
            return EjalabStatus::NullArgument;
        }
        let suite = match unsafe { cstr(suite) } {
            Ok(s) => s,
            Err(status) => return status,
        };
        let algebra = if family.is_null() {
            None
        } else {
            let name = match unsafe { cstr(family) } {
                Ok(s) => s,
                Err(status) => return status,
            };
            match FamilySpec::parse(name) {
                Some(f) => Some((f, size as usize)),
                None => return EjalabStatus::InvalidArgument,
            }
        };
        match run_suite(suite, algebra, &config(seed, samples)) {
            Ok(report) => {
                unsafe { *out = into_handle(report) };
                EjalabStatus::Ok
            }
            Err(_) => EjalabStatus::InvalidArgument,
        }
    })
}

/// Run the full acceptance battery.
#[no_mangle]
pub extern "C" fn ejalab_acceptance(
    seed: u64,
    samples: u32,
    out: *mut *mut EjalabReport,
) -> EjalabStatus {
    guarded(|| {
        if out.is_null() {
            return EjalabStatus::NullArgument;
        }
        let report = acceptance_report(&config(seed, samples));
        unsafe { *out = into_handle(report) };
        EjalabStatus::Ok
    })
}

/// Validate a model document (the JSON format described in the repository
/// docs) supplied as text.
#[no_mangle]
pub extern "C" fn ejalab_validate_model(
    json: *const c_char,
    seed: u64,
    out: *mut *mut EjalabReport,
) -> EjalabStatus {
    guarded(|| {
        if out.is_null() {
            return EjalabStatus::NullArgument;
        }
        let text = match unsafe { cstr(json) } {
            Ok(s) => s,
            Err(status) => return status,
        };
        let cfg = config(seed, 200);
        let checks: Vec<CheckResult> = match parse_model(text) {
            Ok(LoadedModel::Finite { model, .. }) => validate_finite_model(&model, &cfg.tols),
            Ok(LoadedModel::Jordan(j)) => {
                vec![CheckResult::new("validate.algebra", "algebra summary").with_detail(
                    format!("{}: dim {}, rank {}", j.label(), j.dim(), j.rank()),
                )]
            }
            Err(_) => return EjalabStatus::ParseError,
        };
        unsafe { *out = into_handle(VerificationReport::new("validate", seed, checks)) };
        EjalabStatus::Ok
    })
}

/// Sampled rank-2 state-space coordinates as CSV text (caller frees).
#[no_mangle]
pub extern "C" fn ejalab_ball_samples_csv(
    family: *const c_char,
    size: u32,
    count: u32,
    seed: u64,
    out: *mut *mut c_char,
) -> EjalabStatus {
    guarded(|| {
        if out.is_null() {
            return EjalabStatus::NullArgument;
        }
        let name = match unsafe { cstr(family) } {
            Ok(s) => s,
            Err(status) => return status,
        };
        let Some(f) = FamilySpec::parse(name) else {
            return EjalabStatus::InvalidArgument;
        };
        match ball_samples_csv(f, size as usize, count as usize, seed) {
            Ok(csv) => {
                unsafe { *out = to_owned_cstring(csv) };
                EjalabStatus::Ok
            }
            Err(_) => EjalabStatus::InvalidArgument,
        }
    })
}

/// Whether every check in the report passed.
#[no_mangle]
pub extern "C" fn ejalab_report_passed(report: *const EjalabReport) -> bool {
    catch_unwind(AssertUnwindSafe(|| unsafe {
        inner(report).map(|r| r.report.all_passed()).unwrap_or(false)
    }))
    .unwrap_or(false)
}

/// Number of checks in the report (0 for a null handle).
#[no_mangle]
pub extern "C" fn ejalab_report_check_count(report: *const EjalabReport) -> u32 {
    catch_unwind(AssertUnwindSafe(|| unsafe {
        inner(report).map(|r| r.report.checks.len() as u32).unwrap_or(0)
    }))
    .unwrap_or(0)
}

/// Canonical JSON rendering (byte-stable for a fixed seed; caller frees).
#[no_mangle]
pub extern "C" fn ejalab_report_json(report: *const EjalabReport) -> *mut c_char {
    catch_unwind(AssertUnwindSafe(|| unsafe {
        match inner(report) {
            Some(r) => to_owned_cstring(r.report.to_json()),
            None => std::ptr::null_mut(),
        }
    }))
    .unwrap_or(std::ptr::null_mut())
}

/// Markdown rendering (caller frees).
#[no_mangle]
pub extern "C" fn ejalab_report_markdown(report: *const EjalabReport) -> *mut c_char {
    catch_unwind(AssertUnwindSafe(|| unsafe {
        match inner(report) {
            Some(r) => to_owned_cstring(r.report.to_markdown()),
            None => std::ptr::null_mut(),
        }
    }))
    .unwrap_or(std::ptr::null_mut())
}

/// Release a report handle.
///
/// # Safety
/// `report` must have come from this library and not been freed before.
#[no_mangle]
pub unsafe extern "C" fn ejalab_report_free(report: *mut EjalabReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Release a string returned by this library.
///
/// # Safety
/// `s` must have come from this library and not been freed before.
#[no_mangle]
pub unsafe extern "C" fn ejalab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
