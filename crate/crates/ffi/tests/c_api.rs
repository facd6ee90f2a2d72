#![allow(clippy::excessive_precision)]

use std::ffi::CStr;
use std::process::Command;
use std::ptr;

use ellzeta_ffi::*;

fn c(re: f64, im: f64) -> EzComplex {
    EzComplex { re, im }
}

fn empty() -> EzEvalResult {
    EzEvalResult { value: c(0.0, 0.0), abs_error_estimate: 0.0, terms_used: 0, radius: 0.0 }
}

fn lattice(tau: EzComplex) -> *mut EzLattice {
    let mut l = ptr::null_mut();
    assert_eq!(unsafe { ez_lattice_from_tau(tau, &mut l) }, EzStatus::Ok);
    assert!(!l.is_null());
    l
}

#[test]
fn zeta_matches_reference_value() {
    let l = lattice(c(0.3, 1.2));
    let mut out = empty();
    assert_eq!(unsafe { ez_zeta(l, c(0.21, 0.37), 1e-12, &mut out) }, EzStatus::Ok);
    assert!((out.value.re - 1.3092916100476106257).abs() < 1e-12);
    assert!((out.value.im + 1.9951706910745026632).abs() < 1e-12);
    assert!(out.terms_used > 0 && out.radius > 0.0);
    unsafe { ez_lattice_free(l) };
}

#[test]
fn every_evaluator_succeeds_off_lattice() {
    let l = lattice(c(0.0, 1.0));
    let x = c(0.3, 0.2);
    let mut out = empty();
    unsafe {
        assert_eq!(ez_hecke_z(l, x, 1e-12, &mut out), EzStatus::Ok);
        assert_eq!(ez_wp(l, x, 1e-12, &mut out), EzStatus::Ok);
        assert_eq!(ez_wp_prime(l, x, 1e-12, &mut out), EzStatus::Ok);
        let mut area = 0.0;
        assert_eq!(ez_lattice_area(l, &mut area), EzStatus::Ok);
        assert_eq!(area, 1.0);
        ez_lattice_free(l);
    }
    let mut f = empty();
    assert_eq!(unsafe { ez_kronecker_f(c(0.3, 1.2), c(0.2, 0.3), c(0.1, 0.4), 1e-12, &mut f) }, EzStatus::Ok);
    assert!((f.value.re + 1.0496131927932510727).abs() < 1e-12);
    assert!((f.value.im + 0.20942384247108226681).abs() < 1e-12);
}

#[test]
fn pole_and_null_are_reported() {
    let l = lattice(c(0.0, 1.0));
    let mut out = empty();
    unsafe {
        assert_eq!(ez_zeta(l, c(1.0, 1.0), 1e-12, &mut out), EzStatus::TooCloseToPole);
        let msg = CStr::from_ptr(ez_last_error_message()).to_str().unwrap();
        assert!(msg.contains("pole guard"), "{msg}");
        assert_eq!(ez_zeta(ptr::null(), c(0.3, 0.2), 1e-12, &mut out), EzStatus::NullPointer);
        assert_eq!(ez_zeta(l, c(0.3, 0.2), 1e-12, ptr::null_mut()), EzStatus::NullPointer);
        assert_eq!(ez_zeta(l, c(0.3, 0.2), -1.0, &mut out), EzStatus::InvalidArgument);
        ez_lattice_free(l);
        ez_lattice_free(ptr::null_mut());
    }
}

#[test]
fn orientation_is_checked() {
    let mut l = ptr::null_mut();
    let s = unsafe { ez_lattice_new(c(1.0, 0.0), c(0.0, -1.0), &mut l) };
    assert_eq!(s, EzStatus::WrongOrientation);
    assert!(l.is_null());
    assert_eq!(unsafe { ez_lattice_from_tau(c(0.0, -1.0), &mut l) }, EzStatus::BadModulus);
}

#[test]
fn status_messages_are_static_and_distinct() {
    let all = [
        EzStatus::Ok,
        EzStatus::NullPointer,
        EzStatus::DegenerateLattice,
        EzStatus::WrongOrientation,
        EzStatus::ShellTooLarge,
        EzStatus::TooCloseToPole,
        EzStatus::ToleranceNotReached,
        EzStatus::BadModulus,
        EzStatus::ConsistencyFailure,
        EzStatus::SlowConvergence,
        EzStatus::OutsideStrip,
        EzStatus::InvalidArgument,
        EzStatus::Panic,
    ];
    let mut seen = std::collections::HashSet::new();
    for s in all {
        let m = unsafe { CStr::from_ptr(ez_status_message(s)) }.to_str().unwrap().to_owned();
        assert!(!m.is_empty());
        assert!(seen.insert(m));
    }
}

const HEADER: &str = include_str!("../include/ellzeta.h");

#[test]
fn header_declares_the_api() {
    for name in [
        "ez_lattice_new",
        "ez_lattice_from_tau",
        "ez_lattice_free",
        "ez_lattice_area",
        "ez_quasi_periods",
        "ez_zeta",
        "ez_hecke_z",
        "ez_wp",
        "ez_wp_prime",
        "ez_kronecker_f",
        "ez_status_message",
        "ez_last_error_message",
        "typedef struct EzLattice EzLattice;",
        "EZ_STATUS_TOO_CLOSE_TO_POLE = 5",
        "size_t terms_used;",
    ] {
        assert!(HEADER.contains(name), "header lacks {name}");
    }
}

#[test]
fn header_compiles_as_c() {
    let Ok(cc) = which_cc() else { return };
    let dir = std::env::temp_dir().join(format!("ellzeta-header-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("use.c");
    std::fs::write(
        &src,
        "#include \"ellzeta.h\"\nint main(void) { EzLattice *l = 0; EzComplex t = {0.0, 1.0};\n\
         EzStatus s = ez_lattice_from_tau(t, &l); ez_lattice_free(l); return (int)s; }\n",
    )
    .unwrap();
    let include = concat!(env!("CARGO_MANIFEST_DIR"), "/include");
    let status = Command::new(cc)
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I", include])
        .arg(&src)
        .status()
        .unwrap();
    assert!(status.success());
}

fn which_cc() -> Result<&'static str, ()> {
    for cc in ["cc", "gcc", "clang"] {
        if Command::new(cc).arg("--version").output().is_ok() {
            return Ok(cc);
        }
    }
    Err(())
}
