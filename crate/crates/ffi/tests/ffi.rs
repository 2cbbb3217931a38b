use std::ffi::{c_char, CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use qdiff_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { qdiff_string_free(s) };
    out
}

fn catalog(name: &str) -> *mut QdiffAlgebra {
    let name = CString::new(name).unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { qdiff_algebra_from_catalog(name.as_ptr(), &mut h) }, QdiffStatus::Ok);
    h
}

#[test]
fn normal_form_through_the_handle() {
    let h = catalog("aiii(2)");
    assert_eq!(unsafe { qdiff_algebra_gens(h) }, 4);
    let expr = CString::new("X4.X1").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { qdiff_normal_form(h, expr.as_ptr(), &mut out) }, QdiffStatus::Ok);
    assert_eq!(take(out), "1q^0 * X1.X4 + -1q^1+1q^-1 * X2.X3");
    let mut passed = false;
    assert_eq!(unsafe { qdiff_validate(h, &mut passed) }, QdiffStatus::Ok);
    assert!(passed);
    unsafe { qdiff_algebra_free(h) };
}

#[test]
fn qsym_star_and_derivative() {
    let h = catalog("symmetric(2)");
    let expr = CString::new("X2.X1").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { qdiff_qsym(h, expr.as_ptr(), &mut out) }, QdiffStatus::Ok);
    assert_eq!(take(out), "1/2q^0 * X1.X2 + 1/2q^0 * X2.X1");
    unsafe { qdiff_algebra_free(h) };

    let h = catalog("aiii(2)");
    let f = CString::new("z2^1z3^1").unwrap();
    assert_eq!(unsafe { qdiff_derive(h, 4, f.as_ptr(), &mut out) }, QdiffStatus::Ok);
    assert_eq!(take(out), "-1q^1+1q^-1 * z1^1");
    let (a, b) = (CString::new("z2").unwrap(), CString::new("z1").unwrap());
    assert_eq!(unsafe { qdiff_star(h, a.as_ptr(), b.as_ptr(), &mut out) }, QdiffStatus::Ok);
    assert_eq!(take(out), "1q^1 * z1^1z2^1");
    unsafe { qdiff_algebra_free(h) };
}

#[test]
fn qalg_text_and_parse_errors() {
    let text = CString::new("qalg 1\nname plane\ngens 2\nrel 2 1 : 1q^-1 ;\n").unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { qdiff_algebra_from_qalg(text.as_ptr(), &mut h) }, QdiffStatus::Ok);
    let bad = CString::new("X1.Y2").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { qdiff_normal_form(h, bad.as_ptr(), &mut out) }, QdiffStatus::ParseError);
    assert!(out.is_null());
    assert!(take(qdiff_last_error()).contains("column"));
    let big = CString::new("X3").unwrap();
    assert_eq!(unsafe { qdiff_normal_form(h, big.as_ptr(), &mut out) }, QdiffStatus::InvalidSpec);
    unsafe { qdiff_algebra_free(h) };
}

#[test]
fn null_and_wrong_inputs_are_reported() {
    let mut out = ptr::null_mut();
    let e = CString::new("X1").unwrap();
    assert_eq!(unsafe { qdiff_normal_form(ptr::null(), e.as_ptr(), &mut out) }, QdiffStatus::NullPointer);
    let mut h = ptr::null_mut();
    let bad = CString::new("nope(3)").unwrap();
    assert_eq!(unsafe { qdiff_algebra_from_catalog(bad.as_ptr(), &mut h) }, QdiffStatus::InvalidSpec);
    assert!(h.is_null());
    let plane = catalog("quantum-plane");
    let f = CString::new("z1").unwrap();
    assert_eq!(unsafe { qdiff_derive(plane, 9, f.as_ptr(), &mut out) }, QdiffStatus::InvalidSpec);
    unsafe {
        qdiff_algebra_free(plane);
        qdiff_algebra_free(ptr::null_mut());
        qdiff_string_free(ptr::null_mut());
    }
}

#[test]
fn generated_header_declares_the_interface() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/qdiff.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in [
        "qdiff_algebra_from_qalg",
        "qdiff_algebra_from_catalog",
        "qdiff_algebra_free",
        "qdiff_normal_form",
        "qdiff_qsym",
        "qdiff_star",
        "qdiff_derive",
        "qdiff_last_error",
        "qdiff_string_free",
        "QDIFF_STATUS_PARSE_ERROR = 3",
        "typedef struct QdiffAlgebra QdiffAlgebra",
    ] {
        assert!(text.contains(name), "{name} missing from header");
    }
    // the header must compile as C when a compiler is around
    if let Ok(st) = Command::new("cc").args(["-fsyntax-only", "-xc"]).arg(&header).status() {
        assert!(st.success());
    }
}
