//! C ABI for `ellzeta`.
//!
//! Every function returns an [`EzStatus`] and writes its result through an
//! out-pointer. Lattices are opaque handles created by `ez_lattice_new` or
//! `ez_lattice_from_tau` and released with `ez_lattice_free`. After a
//! non-`EZ_STATUS_OK` return, `ez_last_error_message` describes the failure
//! on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::OnceLock;

use ellzeta::{quasiperiods, series, Complex64, Error, EvalResult, Lattice, QuasiPeriods};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EzStatus {
    Ok = 0,
    NullPointer = 1,
    DegenerateLattice = 2,
    WrongOrientation = 3,
    ShellTooLarge = 4,
    TooCloseToPole = 5,
    ToleranceNotReached = 6,
    BadModulus = 7,
    ConsistencyFailure = 8,
    SlowConvergence = 9,
    OutsideStrip = 10,
    InvalidArgument = 11,
    Panic = 12,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EzComplex {
    pub re: f64,
    pub im: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EzEvalResult {
    pub value: EzComplex,
    pub abs_error_estimate: f64,
    pub terms_used: usize,
    pub radius: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EzQuasiPeriods {
    pub eta1: EzComplex,
    pub eta2: EzComplex,
    pub c: EzComplex,
}

/// Opaque lattice handle. Quasi-periods are computed on first use.
pub struct EzLattice {
    lattice: Lattice,
    quasi: OnceLock<Result<QuasiPeriods, Error>>,
}

impl EzLattice {
    fn quasi_periods(&self) -> Result<&QuasiPeriods, Error> {
        self.quasi.get_or_init(|| quasiperiods::quasi_periods(&self.lattice)).as_ref().map_err(Clone::clone)
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

impl From<EzComplex> for Complex64 {
    fn from(z: EzComplex) -> Self {
        Complex64::new(z.re, z.im)
    }
}

impl From<Complex64> for EzComplex {
    fn from(z: Complex64) -> Self {
        EzComplex { re: z.re, im: z.im }
    }
}

impl From<EvalResult> for EzEvalResult {
    fn from(r: EvalResult) -> Self {
        EzEvalResult {
            value: r.value.into(),
            abs_error_estimate: r.abs_error_estimate,
            terms_used: r.terms_used,
            radius: r.radius,
        }
    }
}

fn status_of(e: &Error) -> EzStatus {
    match e {
        Error::DegenerateLattice => EzStatus::DegenerateLattice,
        Error::WrongOrientation { .. } => EzStatus::WrongOrientation,
        Error::ShellTooLarge { .. } => EzStatus::ShellTooLarge,
        Error::TooCloseToPole { .. } => EzStatus::TooCloseToPole,
        Error::ToleranceNotReached { .. } => EzStatus::ToleranceNotReached,
        Error::BadModulus { .. } => EzStatus::BadModulus,
        Error::ConsistencyFailure { .. } => EzStatus::ConsistencyFailure,
        Error::SlowConvergence { .. } => EzStatus::SlowConvergence,
        Error::OutsideStrip { .. } => EzStatus::OutsideStrip,
        Error::BadExponent { .. } | Error::InvalidArgument(_) | Error::Parse { .. } => EzStatus::InvalidArgument,
    }
}

enum Failure {
    Null(&'static str),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> EzStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => EzStatus::Ok,
        Ok(Err(Failure::Null(what))) => {
            set_last_error(format!("null pointer passed as {what}"));
            EzStatus::NullPointer
        }
        Ok(Err(Failure::Lib(e))) => {
            set_last_error(e.to_string());
            status_of(&e)
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("internal panic: {msg}"));
            EzStatus::Panic
        }
    }
}

unsafe fn handle<'a>(lattice: *const EzLattice) -> Result<&'a EzLattice, Failure> {
    lattice.as_ref().ok_or(Failure::Null("lattice"))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null("out"));
    }
    out.write(value);
    Ok(())
}

unsafe fn new_handle(lattice: Result<Lattice, Error>, out: *mut *mut EzLattice) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null("out"));
    }
    out.write(ptr::null_mut());
    let lattice = lattice?;
    out.write(Box::into_raw(Box::new(EzLattice { lattice, quasi: OnceLock::new() })));
    Ok(())
}

/// Creates the lattice `Z*omega1 + Z*omega2`; requires `Im(conj(omega1)*omega2) > 0`.
/// On failure `*out` is set to NULL.
///
/// # Safety
/// `out` must be NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ez_lattice_new(omega1: EzComplex, omega2: EzComplex, out: *mut *mut EzLattice) -> EzStatus {
    guard(|| new_handle(Lattice::new(omega1.into(), omega2.into()), out))
}

/// Creates the lattice `Z + Z*tau`; requires `Im(tau) > 0`.
///
/// # Safety
/// `out` must be NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ez_lattice_from_tau(tau: EzComplex, out: *mut *mut EzLattice) -> EzStatus {
    guard(|| new_handle(Lattice::from_tau(tau.into()), out))
}

/// Releases a handle. NULL is ignored.
///
/// # Safety
/// `lattice` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ez_lattice_free(lattice: *mut EzLattice) {
    if !lattice.is_null() {
        drop(Box::from_raw(lattice));
    }
}

/// # Safety
/// `lattice` must be a live handle and `out` valid for writes (NULL is reported).
#[no_mangle]
pub unsafe extern "C" fn ez_lattice_area(lattice: *const EzLattice, out: *mut f64) -> EzStatus {
    guard(|| write(out, handle(lattice)?.lattice.area()))
}

/// Quasi-periods `eta1`, `eta2` and the constant `c`.
///
/// # Safety
/// `lattice` must be a live handle and `out` valid for writes (NULL is reported).
#[no_mangle]
pub unsafe extern "C" fn ez_quasi_periods(lattice: *const EzLattice, out: *mut EzQuasiPeriods) -> EzStatus {
    guard(|| {
        let qp = handle(lattice)?.quasi_periods()?;
        write(out, EzQuasiPeriods { eta1: qp.eta1.into(), eta2: qp.eta2.into(), c: qp.c.into() })
    })
}

/// Weierstrass zeta.
///
/// # Safety
/// `lattice` must be a live handle and `out` valid for writes (NULL is reported).
#[no_mangle]
pub unsafe extern "C" fn ez_zeta(
    lattice: *const EzLattice,
    x: EzComplex,
    tol: f64,
    out: *mut EzEvalResult,
) -> EzStatus {
    guard(|| {
        let h = handle(lattice)?;
        let r = quasiperiods::zeta_with(&h.lattice, h.quasi_periods()?, x.into(), tol)?;
        write(out, r.into())
    })
}

/// Hecke's non-holomorphic Z.
///
/// # Safety
/// `lattice` must be a live handle and `out` valid for writes (NULL is reported).
#[no_mangle]
pub unsafe extern "C" fn ez_hecke_z(
    lattice: *const EzLattice,
    x: EzComplex,
    tol: f64,
    out: *mut EzEvalResult,
) -> EzStatus {
    guard(|| {
        let r = series::zee(&handle(lattice)?.lattice, x.into(), tol)?;
        write(out, r.into())
    })
}

/// Weierstrass p.
///
/// # Safety
/// `lattice` must be a live handle and `out` valid for writes (NULL is reported).
#[no_mangle]
pub unsafe extern "C" fn ez_wp(lattice: *const EzLattice, x: EzComplex, tol: f64, out: *mut EzEvalResult) -> EzStatus {
    guard(|| {
        let h = handle(lattice)?;
        let r = series::wp_with_constant(&h.lattice, h.quasi_periods()?.c, x.into(), tol)?;
        write(out, r.into())
    })
}

/// Derivative of Weierstrass p.
///
/// # Safety
/// `lattice` must be a live handle and `out` valid for writes (NULL is reported).
#[no_mangle]
pub unsafe extern "C" fn ez_wp_prime(
    lattice: *const EzLattice,
    x: EzComplex,
    tol: f64,
    out: *mut EzEvalResult,
) -> EzStatus {
    guard(|| {
        let r = series::wp_prime(&handle(lattice)?.lattice, x.into(), tol)?;
        write(out, r.into())
    })
}

/// Kronecker function `F(x, y)` on `Z + Z*tau`.
///
/// # Safety
/// `out` must be NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ez_kronecker_f(
    tau: EzComplex,
    x: EzComplex,
    y: EzComplex,
    tol: f64,
    out: *mut EzEvalResult,
) -> EzStatus {
    guard(|| {
        let r = series::kronecker_f(tau.into(), x.into(), y.into(), tol)?;
        write(out, r.into())
    })
}

/// Static description of a status code; never NULL, never freed by the caller.
#[no_mangle]
pub extern "C" fn ez_status_message(status: EzStatus) -> *const c_char {
    let s: &'static std::ffi::CStr = match status {
        EzStatus::Ok => c"ok",
        EzStatus::NullPointer => c"null pointer argument",
        EzStatus::DegenerateLattice => c"degenerate lattice",
        EzStatus::WrongOrientation => c"lattice generators have the wrong orientation",
        EzStatus::ShellTooLarge => c"lattice shell exceeds the point cap",
        EzStatus::TooCloseToPole => c"point too close to a lattice point",
        EzStatus::ToleranceNotReached => c"requested tolerance not reached",
        EzStatus::BadModulus => c"Im(tau) must be positive",
        EzStatus::ConsistencyFailure => c"quasi-period consistency check failed",
        EzStatus::SlowConvergence => c"q-series converges too slowly",
        EzStatus::OutsideStrip => c"argument outside the q-series strip",
        EzStatus::InvalidArgument => c"invalid argument",
        EzStatus::Panic => c"internal panic",
    };
    s.as_ptr()
}

/// Message for the most recent failure on this thread, or NULL if none.
/// Valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ez_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CStr;

    #[test]
    fn round_trip_through_handle() {
        let mut l = ptr::null_mut();
        unsafe {
            assert_eq!(ez_lattice_from_tau(EzComplex { re: 0.0, im: 1.0 }, &mut l), EzStatus::Ok);
            let mut qp = EzQuasiPeriods {
                eta1: EzComplex { re: 0.0, im: 0.0 },
                eta2: EzComplex { re: 0.0, im: 0.0 },
                c: EzComplex { re: 0.0, im: 0.0 },
            };
            assert_eq!(ez_quasi_periods(l, &mut qp), EzStatus::Ok);
            assert!((qp.eta1.re - std::f64::consts::PI).abs() < 1e-12);
            ez_lattice_free(l);
        }
    }

    #[test]
    fn errors_map_to_status_and_message() {
        let mut l = ptr::null_mut();
        let s = unsafe { ez_lattice_new(EzComplex { re: 1.0, im: 0.0 }, EzComplex { re: 2.0, im: 0.0 }, &mut l) };
        assert_eq!(s, EzStatus::DegenerateLattice);
        assert!(l.is_null());
        let msg = unsafe { CStr::from_ptr(ez_last_error_message()) }.to_str().unwrap();
        assert!(msg.contains("degenerate"));
    }
}
