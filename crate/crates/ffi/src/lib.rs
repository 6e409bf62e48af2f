//! C ABI for the fdclab workbench.
//!
//! The surface is deliberately small: parse a spec into an opaque
//! handle, run experiments against it, and get JSON back. All strings
//! returned by this library are heap-allocated and must be released
//! with `fdclab_string_free`; handles with `fdclab_spec_free`. Every
//! fallible call returns an error code and leaves a human-readable
//! message retrievable through `fdclab_last_error`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use fdclab::config::GroupSpec;
use fdclab::experiments::{run_experiment, RunOptions, EXPERIMENTS};

/// Error codes returned by fallible functions.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FdclabStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    UnknownExperiment = 4,
    RunError = 5,
}

/// Opaque handle to a parsed group spec.
pub struct FdclabSpec {
    spec: GroupSpec,
    source: String,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(msg: &str) {
    let cleaned = msg.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(cleaned).unwrap_or_default();
    });
}

fn alloc_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .map(CString::into_raw)
        .unwrap_or(ptr::null_mut())
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn fdclab_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Message for the most recent error on this thread; do not free.
/// The pointer stays valid until the next failing call on the thread.
#[no_mangle]
pub extern "C" fn fdclab_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Number of known experiments.
#[no_mangle]
pub extern "C" fn fdclab_experiment_count() -> usize {
    EXPERIMENTS.len()
}

/// Name of experiment `index`, or null when out of range; do not free.
#[no_mangle]
pub extern "C" fn fdclab_experiment_name(index: usize) -> *const c_char {
    // static storage with embedded terminators, index-matched to EXPERIMENTS
    const NAMES: &[&str] = &[
        "balls\0",
        "axioms\0",
        "quotient-family\0",
        "asdim-scan\0",
        "fdc-pipeline\0",
        "th-factorize\0",
        "triangularize\0",
        "hirsch\0",
        "equivariant\0",
    ];
    match NAMES.get(index) {
        Some(name) => name.as_ptr() as *const c_char,
        None => ptr::null(),
    }
}

/// Parses a spec from UTF-8 text into a new handle.
///
/// # Safety
/// `text` must be a valid NUL-terminated string and `out` a valid
/// pointer; on success `*out` owns the handle.
#[no_mangle]
pub unsafe extern "C" fn fdclab_spec_parse(
    text: *const c_char,
    out: *mut *mut FdclabSpec,
) -> FdclabStatus {
    if text.is_null() || out.is_null() {
        set_error("null argument");
        return FdclabStatus::NullArgument;
    }
    let raw = unsafe { CStr::from_ptr(text) };
    let Ok(source) = raw.to_str() else {
        set_error("spec text is not valid UTF-8");
        return FdclabStatus::InvalidUtf8;
    };
    match GroupSpec::parse(source) {
        Ok(spec) => {
            let handle = Box::new(FdclabSpec {
                spec,
                source: source.to_string(),
            });
            unsafe { *out = Box::into_raw(handle) };
            FdclabStatus::Ok
        }
        Err(e) => {
            set_error(&e.to_string());
            unsafe { *out = ptr::null_mut() };
            FdclabStatus::ParseError
        }
    }
}

/// Releases a handle produced by `fdclab_spec_parse`. Null is a no-op.
///
/// # Safety
/// `spec` must have come from `fdclab_spec_parse` and not been freed.
#[no_mangle]
pub unsafe extern "C" fn fdclab_spec_free(spec: *mut FdclabSpec) {
    if !spec.is_null() {
        drop(unsafe { Box::from_raw(spec) });
    }
}

/// JSON summary of a parsed spec (field, dimension, generators, ...).
/// The caller frees the string with `fdclab_string_free`.
///
/// # Safety
/// `spec` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn fdclab_spec_summary(spec: *const FdclabSpec) -> *mut c_char {
    if spec.is_null() {
        set_error("null argument");
        return ptr::null_mut();
    }
    let handle = unsafe { &*spec };
    let s = &handle.spec;
    let summary = serde_json::json!({
        "p": s.field.modulus(),
        "dim": s.dim,
        "generators": s.generators.iter().map(|(n, _)| n.clone()).collect::<Vec<_>>(),
        "norms": s.profile.norms().iter().map(|n| n.to_string()).collect::<Vec<_>>(),
        "subgroups": s.subgroups.iter().map(|(n, e)| serde_json::json!({"name": n, "order": e.len()})).collect::<Vec<_>>(),
        "series": s.series.iter().map(|(n, _)| n.clone()).collect::<Vec<_>>(),
        "window": { "radius": s.window.radius, "cap": s.window.cap, "scales": s.window.scales },
    });
    alloc_string(serde_json::to_string_pretty(&summary).unwrap_or_default())
}

/// Runs an experiment against the spec. On success `*out_json` holds a
/// JSON envelope `{"report": ..., "files": {name: contents}, "exit_code": n}`
/// to free with `fdclab_string_free`.
///
/// # Safety
/// `spec` must be a live handle, `experiment` a valid NUL-terminated
/// string, `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fdclab_run_experiment(
    spec: *const FdclabSpec,
    experiment: *const c_char,
    seed: u64,
    out_json: *mut *mut c_char,
) -> FdclabStatus {
    if spec.is_null() || experiment.is_null() || out_json.is_null() {
        set_error("null argument");
        return FdclabStatus::NullArgument;
    }
    unsafe { *out_json = ptr::null_mut() };
    let handle = unsafe { &*spec };
    let Ok(name) = unsafe { CStr::from_ptr(experiment) }.to_str() else {
        set_error("experiment name is not valid UTF-8");
        return FdclabStatus::InvalidUtf8;
    };
    if !EXPERIMENTS.contains(&name) {
        set_error(&format!(
            "unknown experiment {name:?}; expected one of {EXPERIMENTS:?}"
        ));
        return FdclabStatus::UnknownExperiment;
    }
    let opts = RunOptions {
        seed,
        ..Default::default()
    };
    match run_experiment(&handle.spec, &handle.source, name, &opts) {
        Ok(output) => {
            let files: serde_json::Map<String, serde_json::Value> = output
                .files
                .iter()
                .map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone())))
                .collect();
            let report_value: serde_json::Value =
                serde_json::from_str(&output.report.to_json()).unwrap_or_default();
            let envelope = serde_json::json!({
                "report": report_value,
                "files": files,
                "exit_code": output.report.verdict.exit_code(),
            });
            unsafe {
                *out_json = alloc_string(
                    serde_json::to_string_pretty(&envelope).unwrap_or_default(),
                );
            }
            FdclabStatus::Ok
        }
        Err(e) => {
            set_error(&e.to_string());
            FdclabStatus::RunError
        }
    }
}

/// Frees a string allocated by this library. Null is a no-op.
///
/// # Safety
/// `s` must have been returned by an fdclab function that allocates.
#[no_mangle]
pub unsafe extern "C" fn fdclab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SPEC: &str = "\
[group]
p = 2
dim = 2

[norms]
norm = t_adic
norm = degree

[generators]
a = [[1, t], [0, 1]]

[window]
radius = 2
cap = 100
scales = 1,2
";

    fn parse(text: &str) -> (FdclabStatus, *mut FdclabSpec) {
        let c = CString::new(text).unwrap();
        let mut handle: *mut FdclabSpec = ptr::null_mut();
        let status = unsafe { fdclab_spec_parse(c.as_ptr(), &mut handle) };
        (status, handle)
    }

    #[test]
    fn parse_run_free_roundtrip() {
        let (status, handle) = parse(SPEC);
        assert_eq!(status, FdclabStatus::Ok);
        assert!(!handle.is_null());

        let summary = unsafe { fdclab_spec_summary(handle) };
        assert!(!summary.is_null());
        let text = unsafe { CStr::from_ptr(summary) }.to_str().unwrap();
        assert!(text.contains("\"dim\": 2"));
        unsafe { fdclab_string_free(summary) };

        let name = CString::new("balls").unwrap();
        let mut out: *mut c_char = ptr::null_mut();
        let status = unsafe { fdclab_run_experiment(handle, name.as_ptr(), 0, &mut out) };
        assert_eq!(status, FdclabStatus::Ok);
        let envelope = unsafe { CStr::from_ptr(out) }.to_str().unwrap();
        let value: serde_json::Value = serde_json::from_str(envelope).unwrap();
        assert_eq!(value["exit_code"], 0);
        assert_eq!(value["report"]["verdict"], "pass");
        unsafe { fdclab_string_free(out) };
        unsafe { fdclab_spec_free(handle) };
    }

    #[test]
    fn parse_error_sets_message() {
        let (status, handle) = parse("[group]\np = 6\ndim = 2\n");
        assert_eq!(status, FdclabStatus::ParseError);
        assert!(handle.is_null());
        let msg = unsafe { CStr::from_ptr(fdclab_last_error()) }
            .to_str()
            .unwrap();
        assert!(msg.contains("not prime"), "{msg}");
    }

    #[test]
    fn unknown_experiment_rejected() {
        let (_, handle) = parse(SPEC);
        let name = CString::new("nope").unwrap();
        let mut out: *mut c_char = ptr::null_mut();
        let status = unsafe { fdclab_run_experiment(handle, name.as_ptr(), 0, &mut out) };
        assert_eq!(status, FdclabStatus::UnknownExperiment);
        assert!(out.is_null());
        unsafe { fdclab_spec_free(handle) };
    }

    #[test]
    fn null_arguments_are_safe() {
        let mut handle: *mut FdclabSpec = ptr::null_mut();
        assert_eq!(
            unsafe { fdclab_spec_parse(ptr::null(), &mut handle) },
            FdclabStatus::NullArgument
        );
        unsafe { fdclab_spec_free(ptr::null_mut()) };
        unsafe { fdclab_string_free(ptr::null_mut()) };
        assert!(unsafe { fdclab_spec_summary(ptr::null()) }.is_null());
    }

    #[test]
    fn experiment_listing_matches() {
        assert_eq!(fdclab_experiment_count(), EXPERIMENTS.len());
        for i in 0..EXPERIMENTS.len() {
            let name = unsafe { CStr::from_ptr(fdclab_experiment_name(i)) };
            assert_eq!(name.to_str().unwrap(), EXPERIMENTS[i]);
        }
        assert!(fdclab_experiment_name(999).is_null());
    }

    #[test]
    fn version_is_a_c_string() {
        let v = unsafe { CStr::from_ptr(fdclab_version()) };
        assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
    }
}
