//! C interface to the `qdiff` engine.
//!
//! Algebras are opaque handles created by `qdiff_algebra_from_qalg` or
//! `qdiff_algebra_from_catalog` and released with `qdiff_algebra_free`.
//! Every call returns a `QdiffStatus`; results come back through out
//! parameters as NUL-terminated strings owned by the caller, to be released
//! with `qdiff_string_free`. The message of the last failure on the calling
//! thread is available from `qdiff_last_error`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use qdiff::catalog::Family;
use qdiff::diffop::q_derivative;
use qdiff::dual::{star_poly, PolyRep, RepScheme};
use qdiff::qsym::q_symmetrize;
use qdiff::{Algebra, AlgebraSpec, Error, TensorElement};

/// Status codes returned by every function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QdiffStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidSpec = 4,
    WrongAlgebra = 5,
    BudgetExceeded = 6,
    ComputationFailed = 7,
    Panic = 8,
}

/// An algebra with its rewriting tables and caches.
pub struct QdiffAlgebra {
    inner: Algebra,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> QdiffStatus {
    match e {
        Error::Parse { .. } => QdiffStatus::ParseError,
        Error::InvalidSpec(_) | Error::MissingRelation(..) => QdiffStatus::InvalidSpec,
        Error::WrongAlgebra(_) | Error::InhomogeneousAlgebra => QdiffStatus::WrongAlgebra,
        Error::DegreeBudgetExceeded { .. } => QdiffStatus::BudgetExceeded,
        _ => QdiffStatus::ComputationFailed,
    }
}

struct Failure(QdiffStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

/// Runs `f`, records any failure and converts panics into `Panic`.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> QdiffStatus {
    match std::panic::catch_unwind(std::panic::AssertUnwindSafe(f)) {
        Ok(Ok(())) => QdiffStatus::Ok,
        Ok(Err(Failure(s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic".into());
            QdiffStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(QdiffStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(QdiffStatus::InvalidUtf8, "argument is not valid UTF-8".into()))
}

unsafe fn alg_arg<'a>(p: *const QdiffAlgebra) -> Result<&'a Algebra, Failure> {
    p.as_ref()
        .map(|a| &a.inner)
        .ok_or_else(|| Failure(QdiffStatus::NullPointer, "null algebra handle".into()))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(QdiffStatus::NullPointer, "null out pointer".into()));
    }
    *out = CString::new(s).unwrap_or_default().into_raw();
    Ok(())
}

unsafe fn write_handle(out: *mut *mut QdiffAlgebra, alg: Algebra) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(QdiffStatus::NullPointer, "null out pointer".into()));
    }
    *out = Box::into_raw(Box::new(QdiffAlgebra { inner: alg }));
    Ok(())
}

/// Parses a `.qalg` document into a new handle.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qdiff_algebra_from_qalg(text: *const c_char, out: *mut *mut QdiffAlgebra) -> QdiffStatus {
    guard(|| {
        let spec = AlgebraSpec::from_qalg(str_arg(text)?)?;
        write_handle(out, Algebra::new(spec)?)
    })
}

/// Builds a catalog algebra from a name such as `aiii(2)` or `quantum-plane`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qdiff_algebra_from_catalog(name: *const c_char, out: *mut *mut QdiffAlgebra) -> QdiffStatus {
    guard(|| {
        let family: Family = str_arg(name)?.parse()?;
        write_handle(out, Algebra::new(family.spec())?)
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `alg` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qdiff_algebra_free(alg: *mut QdiffAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

/// Number of generators, or 0 for a null handle.
///
/// # Safety
/// `alg` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qdiff_algebra_gens(alg: *const QdiffAlgebra) -> usize {
    alg.as_ref().map_or(0, |a| a.inner.n_gens())
}

/// Runs both confluence certificates; `*passed` receives the verdict.
///
/// # Safety
/// `alg` must be a live handle and `passed` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qdiff_validate(alg: *const QdiffAlgebra, passed: *mut bool) -> QdiffStatus {
    guard(|| {
        let a = alg_arg(alg)?;
        if passed.is_null() {
            return Err(Failure(QdiffStatus::NullPointer, "null out pointer".into()));
        }
        *passed = a.validate().passed();
        Ok(())
    })
}

/// Normal form of a tensor expression such as `X4.X1`.
///
/// # Safety
/// Pointers must be valid; `expr` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn qdiff_normal_form(
    alg: *const QdiffAlgebra,
    expr: *const c_char,
    out: *mut *mut c_char,
) -> QdiffStatus {
    guard(|| {
        let a = alg_arg(alg)?;
        let t: TensorElement = str_arg(expr)?.parse()?;
        a.check_letters(&t)?;
        write_string(out, a.normal_form(&t).to_string())
    })
}

/// The q-symmetrization projector applied to a tensor expression.
///
/// # Safety
/// Pointers must be valid; `expr` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn qdiff_qsym(alg: *const QdiffAlgebra, expr: *const c_char, out: *mut *mut c_char) -> QdiffStatus {
    guard(|| {
        let a = alg_arg(alg)?;
        let t: TensorElement = str_arg(expr)?.parse()?;
        for d in t.degrees() {
            qdiff::qsym::check_budget(a.n_gens(), d, false)?;
        }
        write_string(out, q_symmetrize(a, &t)?.to_string())
    })
}

/// Star product of two polynomials under the default dual scheme.
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn qdiff_star(
    alg: *const QdiffAlgebra,
    f: *const c_char,
    g: *const c_char,
    out: *mut *mut c_char,
) -> QdiffStatus {
    guard(|| {
        let a = alg_arg(alg)?;
        let f = PolyRep::parse(str_arg(f)?, a.n_gens())?;
        let g = PolyRep::parse(str_arg(g)?, a.n_gens())?;
        write_string(out, star_poly(a, &f, &g, RepScheme::F2)?.to_string())
    })
}

/// The q-derivative along generator `gen` (1-based) of a polynomial.
///
/// # Safety
/// Pointers must be valid; `poly` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn qdiff_derive(
    alg: *const QdiffAlgebra,
    gen: usize,
    poly: *const c_char,
    out: *mut *mut c_char,
) -> QdiffStatus {
    guard(|| {
        let a = alg_arg(alg)?;
        let f = PolyRep::parse(str_arg(poly)?, a.n_gens())?;
        write_string(out, q_derivative(a, gen, &f, RepScheme::F2)?.to_string())
    })
}

/// Copy of the last failure message on this thread, or null if none.
/// Release with `qdiff_string_free`.
#[no_mangle]
pub extern "C" fn qdiff_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |c| c.clone().into_raw()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qdiff_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
