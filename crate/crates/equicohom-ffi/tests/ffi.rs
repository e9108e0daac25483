//! Exercise the C surface exactly the way a foreign caller would: through
//! raw pointers and status codes.

use std::ffi::{CStr, CString};
use std::ptr;

use equicohom_ffi::{
    equicohom_bundle_free, equicohom_bundle_parse, equicohom_classify, equicohom_cohomology,
    equicohom_compare, equicohom_homotopy, equicohom_last_error, equicohom_string_free,
    equicohom_validate, EquicohomBundle, EquicohomStatus,
};

const THETA: &str = include_str!("../../equicohom/fixtures/theta_z2.json");
const FREE: &str = include_str!("../../equicohom/fixtures/free_circles.json");

unsafe fn parse(json: &str) -> *mut EquicohomBundle {
    let c = CString::new(json).unwrap();
    let mut handle: *mut EquicohomBundle = ptr::null_mut();
    let status = equicohom_bundle_parse(c.as_ptr(), &mut handle);
    assert_eq!(status, EquicohomStatus::Ok);
    assert!(!handle.is_null());
    handle
}

unsafe fn take_report(out: *mut std::ffi::c_char) -> serde_json::Value {
    assert!(!out.is_null());
    let text = CStr::from_ptr(out).to_str().unwrap().to_owned();
    equicohom_string_free(out);
    serde_json::from_str(&text).unwrap()
}

#[test]
fn full_pipeline_through_the_c_surface() {
    unsafe {
        let handle = parse(THETA);

        let mut out: *mut std::ffi::c_char = ptr::null_mut();
        assert_eq!(equicohom_validate(handle, &mut out), EquicohomStatus::Ok);
        let report = take_report(out);
        assert_eq!(report["status"], "pass");

        let flavor = CString::new("twisted").unwrap();
        let degrees = [0u32, 1];
        let mut out = ptr::null_mut();
        assert_eq!(
            equicohom_cohomology(handle, flavor.as_ptr(), degrees.as_ptr(), 2, &mut out),
            EquicohomStatus::Ok
        );
        let report = take_report(out);
        assert_eq!(report["degrees"][1]["twisted"]["pretty"], "Z/2");

        let mut out = ptr::null_mut();
        assert_eq!(
            equicohom_compare(handle, ptr::null(), 0, 10, 0, &mut out),
            EquicohomStatus::Ok
        );
        let report = take_report(out);
        assert_eq!(report["status"], "pass");
        assert_eq!(report["degrees"][0]["equal"], true);

        let mut out = ptr::null_mut();
        assert_eq!(
            equicohom_classify(handle, 1, 10, 0, &mut out),
            EquicohomStatus::Ok
        );
        assert_eq!(take_report(out)["status"], "pass");

        let mut out = ptr::null_mut();
        assert_eq!(
            equicohom_homotopy(handle, 1, 3, 0, &mut out),
            EquicohomStatus::Ok
        );
        assert_eq!(take_report(out)["status"], "pass");

        equicohom_bundle_free(handle);
    }
}

#[test]
fn error_paths_and_messages() {
    unsafe {
        // Broken JSON.
        let bad = CString::new("{ not json").unwrap();
        let mut handle: *mut EquicohomBundle = ptr::null_mut();
        assert_eq!(
            equicohom_bundle_parse(bad.as_ptr(), &mut handle),
            EquicohomStatus::ParseError
        );
        assert!(!CStr::from_ptr(equicohom_last_error())
            .to_str()
            .unwrap()
            .is_empty());

        // Structurally broken bundle: twisting naturality violation.
        let broken = THETA.replace("\"e2\": 1", "\"e2\": 0");
        let c = CString::new(broken).unwrap();
        assert_eq!(
            equicohom_bundle_parse(c.as_ptr(), &mut handle),
            EquicohomStatus::ValidationError
        );
        assert!(CStr::from_ptr(equicohom_last_error())
            .to_str()
            .unwrap()
            .contains("naturality"));

        // Hypothesis failure surfaces with its own status.
        let mut handle = parse(FREE);
        let mut out = ptr::null_mut();
        assert_eq!(
            equicohom_compare(handle, ptr::null(), 0, 5, 0, &mut out),
            EquicohomStatus::HypothesisError
        );
        equicohom_bundle_free(handle);

        // Null arguments are refused, not dereferenced.
        assert_eq!(
            equicohom_bundle_parse(ptr::null(), &mut handle),
            EquicohomStatus::NullArgument
        );
        let mut out = ptr::null_mut();
        assert_eq!(
            equicohom_validate(ptr::null(), &mut out),
            EquicohomStatus::NullArgument
        );
        equicohom_string_free(ptr::null_mut());
        equicohom_bundle_free(ptr::null_mut());
    }
}
