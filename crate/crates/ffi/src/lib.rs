//! C interface to `qsylv`. Objects are opaque handles released by their `*_free` function;
//! every fallible call returns a [`QsStatus`] and records a message for [`qs_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qsylv::config::Settings;
use qsylv::cramer::Form;
use qsylv::pinv::{mp_cramer, mp_oracle, Side};
use qsylv::solvers::{check_consistency, solve, EquationKind, Method, PairSolution, Problem, Slot, Slots, SolveOptions, SolveReport};
use qsylv::{Error, QMatrix, Quaternion};

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DimensionMismatch = 3,
    Inconsistent = 4,
    Numeric = 5,
    Parse = 6,
    Panic = 7,
}

/// Equation kinds, in the order of the library's `EquationKind::ALL`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QsKind {
    GenSylvester = 0,
    OneSidedLeft = 1,
    OneSidedRight = 2,
    Stein = 3,
    ClassicalSylvester = 4,
    SylvesterMirror = 5,
    TwoLeft = 6,
    TwoRight = 7,
    LyapunovLike = 8,
    LyapunovStar = 9,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QsMethod {
    Direct = 0,
    Cramer = 1,
    CramerRowForm = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QsPinvMethod {
    CramerLeft = 0,
    CramerRight = 1,
    Oracle = 2,
}

/// Dense quaternion matrix.
pub struct QsMatrix(QMatrix);

/// Validated equation instance.
pub struct QsProblem(Problem);

/// Solution with its report.
pub struct QsSolution {
    sol: PairSolution,
    report: SolveReport,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> QsStatus {
    match e {
        Error::DimensionMismatch { .. } | Error::NotSquare(..) => QsStatus::DimensionMismatch,
        Error::Inconsistent(_) => QsStatus::Inconsistent,
        Error::InvalidIndex { .. } | Error::InvalidSize { .. } | Error::MissingSlot { .. } | Error::InvalidMatrix(_) => {
            QsStatus::InvalidArgument
        }
        _ => QsStatus::Numeric,
    }
}

fn fail(status: QsStatus, msg: &str) -> QsStatus {
    set_error(msg);
    status
}

/// Runs `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), QsStatus>) -> QsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            QsStatus::Ok
        }
        Ok(Err(s)) => s,
        Err(_) => fail(QsStatus::Panic, "internal panic"),
    }
}

fn lib(e: Error) -> QsStatus {
    fail(status_of(&e), &e.to_string())
}

fn null() -> QsStatus {
    fail(QsStatus::NullPointer, "null pointer argument")
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, QsStatus> {
    p.as_ref().ok_or_else(null)
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), QsStatus> {
    if out.is_null() {
        return Err(null());
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

fn kind_of(k: QsKind) -> EquationKind {
    EquationKind::ALL[k as usize]
}

/// Message of the last failed call on this thread, or NULL. Valid until the next call.
#[no_mangle]
pub extern "C" fn qs_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds a `rows x cols` matrix from `rows * cols * 4` doubles, row-major, each entry `w, x, y, z`.
///
/// # Safety
/// `data` must point to `rows * cols * 4` readable doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qs_matrix_new(rows: usize, cols: usize, data: *const f64, out: *mut *mut QsMatrix) -> QsStatus {
    guard(|| {
        if data.is_null() {
            return Err(null());
        }
        let len = rows.checked_mul(cols).and_then(|n| n.checked_mul(4)).ok_or_else(|| fail(QsStatus::InvalidArgument, "size overflow"))?;
        let raw = std::slice::from_raw_parts(data, len);
        let entries = raw.chunks_exact(4).map(|c| Quaternion::new(c[0], c[1], c[2], c[3])).collect();
        let m = QMatrix::new(rows, cols, entries).map_err(lib)?;
        put(out, QsMatrix(m))
    })
}

/// Parses `{"rows", "cols", "data"}` JSON.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qs_matrix_from_json(json: *const c_char, out: *mut *mut QsMatrix) -> QsStatus {
    guard(|| {
        if json.is_null() {
            return Err(null());
        }
        let text = CStr::from_ptr(json).to_str().map_err(|_| fail(QsStatus::Parse, "input is not UTF-8"))?;
        let m: QMatrix = serde_json::from_str(text).map_err(|e| fail(QsStatus::Parse, &e.to_string()))?;
        put(out, QsMatrix(m))
    })
}

/// Serializes a matrix; release the string with [`qs_string_free`].
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qs_matrix_to_json(m: *const QsMatrix, out: *mut *mut c_char) -> QsStatus {
    guard(|| {
        let m = deref(m)?;
        if out.is_null() {
            return Err(null());
        }
        let s = serde_json::to_string(&m.0).map_err(|e| fail(QsStatus::Parse, &e.to_string()))?;
        *out = CString::new(s).expect("JSON has no NUL").into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library or be NULL.
#[no_mangle]
pub unsafe extern "C" fn qs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `m` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn qs_matrix_rows(m: *const QsMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.0.rows())
}

/// # Safety
/// `m` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn qs_matrix_cols(m: *const QsMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.0.cols())
}

/// Copies the entries into `out`, which holds `len` doubles (at least `rows * cols * 4`).
///
/// # Safety
/// `m` must be a live handle; `out` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn qs_matrix_data(m: *const QsMatrix, out: *mut f64, len: usize) -> QsStatus {
    guard(|| {
        let m = deref(m)?;
        if out.is_null() {
            return Err(null());
        }
        let need = m.0.rows() * m.0.cols() * 4;
        if len < need {
            return Err(fail(QsStatus::InvalidArgument, &format!("buffer holds {len} doubles, {need} needed")));
        }
        let dst = std::slice::from_raw_parts_mut(out, need);
        for (chunk, q) in dst.chunks_exact_mut(4).zip(m.0.entries()) {
            chunk.copy_from_slice(&q.to_array());
        }
        Ok(())
    })
}

/// # Safety
/// `m` must be a live handle or NULL; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn qs_matrix_free(m: *mut QsMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Moore-Penrose inverse.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qs_pinv(a: *const QsMatrix, method: QsPinvMethod, out: *mut *mut QsMatrix) -> QsStatus {
    guard(|| {
        let a = deref(a)?;
        let s = Settings::from_env();
        let r = match method {
            QsPinvMethod::CramerLeft => mp_cramer(&a.0, Some(Side::Left), &s).map_err(lib)?,
            QsPinvMethod::CramerRight => mp_cramer(&a.0, Some(Side::Right), &s).map_err(lib)?,
            QsPinvMethod::Oracle => mp_oracle(&a.0, &s.rank),
        };
        put(out, QsMatrix(r.pinv))
    })
}

unsafe fn det_with(
    a: *const QsMatrix,
    index: usize,
    out: *mut f64,
    f: fn(&Settings, &QMatrix, usize) -> qsylv::Result<Quaternion>,
) -> QsStatus {
    guard(|| {
        let a = deref(a)?;
        if out.is_null() {
            return Err(null());
        }
        let q = f(&Settings::from_env(), &a.0, index).map_err(lib)?;
        std::slice::from_raw_parts_mut(out, 4).copy_from_slice(&q.to_array());
        Ok(())
    })
}

/// Row determinant anchored at 1-based row `index`, written to `out[0..4]`.
///
/// # Safety
/// `a` must be a live handle; `out` must point to 4 writable doubles.
#[no_mangle]
pub unsafe extern "C" fn qs_rdet(a: *const QsMatrix, index: usize, out: *mut f64) -> QsStatus {
    det_with(a, index, out, |s, a, i| s.det.rdet(a, i))
}

/// Column determinant anchored at 1-based column `index`, written to `out[0..4]`.
///
/// # Safety
/// `a` must be a live handle; `out` must point to 4 writable doubles.
#[no_mangle]
pub unsafe extern "C" fn qs_cdet(a: *const QsMatrix, index: usize, out: *mut f64) -> QsStatus {
    det_with(a, index, out, |s, a, i| s.det.cdet(a, i))
}

/// Builds an equation from the slots its kind uses; the others must be NULL. Inputs are copied.
///
/// # Safety
/// Non-NULL matrix arguments must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qs_problem_new(
    kind: QsKind,
    a1: *const QsMatrix,
    b1: *const QsMatrix,
    a2: *const QsMatrix,
    b2: *const QsMatrix,
    c: *const QsMatrix,
    out: *mut *mut QsProblem,
) -> QsStatus {
    guard(|| {
        let mut slots = Slots::default();
        for (slot, m) in [(Slot::A1, a1), (Slot::B1, b1), (Slot::A2, a2), (Slot::B2, b2), (Slot::C, c)] {
            if let Some(m) = m.as_ref() {
                slots.set(slot, m.0.clone());
            }
        }
        let p = Problem::new(kind_of(kind), slots).map_err(lib)?;
        put(out, QsProblem(p))
    })
}

/// # Safety
/// `p` must be a live handle or NULL; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn qs_problem_free(p: *mut QsProblem) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Evaluates the solvability criteria; `*consistent` receives 1 or 0.
///
/// # Safety
/// `p` must be a live handle; `consistent` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qs_check(p: *const QsProblem, consistent: *mut i32) -> QsStatus {
    guard(|| {
        let p = deref(p)?;
        if consistent.is_null() {
            return Err(null());
        }
        let r = check_consistency(&p.0, &Settings::from_env()).map_err(lib)?;
        *consistent = i32::from(r.consistent);
        Ok(())
    })
}

/// Solves the equation. Inconsistent equations yield `Inconsistent` unless `force` is non-zero.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qs_solve(p: *const QsProblem, method: QsMethod, force: i32, out: *mut *mut QsSolution) -> QsStatus {
    guard(|| {
        let p = deref(p)?;
        let (method, form) = match method {
            QsMethod::Direct => (Method::Direct, Form::Column),
            QsMethod::Cramer => (Method::Cramer, Form::Column),
            QsMethod::CramerRowForm => (Method::Cramer, Form::Row),
        };
        let opts = SolveOptions { method, form, force: force != 0 };
        let (sol, report) = solve(&p.0, opts, &Settings::from_env()).map_err(lib)?;
        put(out, QsSolution { sol, report })
    })
}

/// Copy of `X1`.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qs_solution_x1(s: *const QsSolution, out: *mut *mut QsMatrix) -> QsStatus {
    guard(|| put(out, QsMatrix(deref(s)?.sol.x1.clone())))
}

/// Copy of `X2`; `*out` is set to NULL for single-unknown kinds.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qs_solution_x2(s: *const QsSolution, out: *mut *mut QsMatrix) -> QsStatus {
    guard(|| {
        let s = deref(s)?;
        match &s.sol.x2 {
            Some(x2) => put(out, QsMatrix(x2.clone())),
            None if out.is_null() => Err(null()),
            None => {
                *out = ptr::null_mut();
                Ok(())
            }
        }
    })
}

/// Frobenius norm of `LHS - RHS`; NaN for a NULL handle.
///
/// # Safety
/// `s` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn qs_solution_residual(s: *const QsSolution) -> f64 {
    s.as_ref().map_or(f64::NAN, |s| s.report.residual_norm)
}

/// Solve report as JSON; release the string with [`qs_string_free`].
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qs_solution_report_json(s: *const QsSolution, out: *mut *mut c_char) -> QsStatus {
    guard(|| {
        let s = deref(s)?;
        if out.is_null() {
            return Err(null());
        }
        let text = serde_json::to_string(&s.report).map_err(|e| fail(QsStatus::Parse, &e.to_string()))?;
        *out = CString::new(text).expect("JSON has no NUL").into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must be a live handle or NULL; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn qs_solution_free(s: *mut QsSolution) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}
