//! C interface to `expclass`. Matrices cross the boundary as opaque
//! handles; every function returns an [`ExpclassStatus`] and writes results
//! through out-pointers.

use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};

use expclass::bounds::{departure_upper, f_eval, h_eval, hausdorff_distance, resolvent_bound, spectral_distance_bound};
use expclass::class::operator_gauge;
use expclass::gallery::{make_convolution_diagonal, make_cyclic, make_shift};
use expclass::linalg::{eigenvalues, operator_norm, resolvent_norm, ComplexMatrix};
use expclass::sequence::ClassParams;
use expclass::Error;
use num_complex::Complex64;

/// Result code of every exported function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpclassStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NotSquare = 3,
    DimensionMismatch = 4,
    NumericalFailure = 5,
    Overflow = 6,
    Panic = 7,
}

/// Opaque dense complex matrix.
pub struct ExpclassMatrix {
    inner: ComplexMatrix,
}

fn status_of(e: &Error) -> ExpclassStatus {
    match e {
        Error::NotSquare { .. } => ExpclassStatus::NotSquare,
        Error::DimensionMismatch(_) => ExpclassStatus::DimensionMismatch,
        Error::Overflow(_) => ExpclassStatus::Overflow,
        Error::SchurFailed(_)
        | Error::SvdFailed(_)
        | Error::Convergence(_)
        | Error::ResolventBlowUp { .. }
        | Error::InversionOutOfRange => ExpclassStatus::NumericalFailure,
        _ => ExpclassStatus::InvalidArgument,
    }
}

/// Runs `f`, mapping errors and panics to status codes.
fn guard(f: impl FnOnce() -> Result<(), ExpclassStatus>) -> ExpclassStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ExpclassStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => ExpclassStatus::Panic,
    }
}

trait IntoStatus<T> {
    fn st(self) -> Result<T, ExpclassStatus>;
}

impl<T> IntoStatus<T> for expclass::Result<T> {
    fn st(self) -> Result<T, ExpclassStatus> {
        self.map_err(|e| status_of(&e))
    }
}

unsafe fn matrix_ref<'a>(m: *const ExpclassMatrix) -> Result<&'a ComplexMatrix, ExpclassStatus> {
    // SAFETY: the caller passes a handle from `expclass_matrix_*` or null.
    unsafe { m.as_ref() }.map(|h| &h.inner).ok_or(ExpclassStatus::NullPointer)
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), ExpclassStatus> {
    if out.is_null() {
        return Err(ExpclassStatus::NullPointer);
    }
    // SAFETY: non-null and, per the contract, valid for writes.
    unsafe { out.write(value) };
    Ok(())
}

fn params(a: f64, alpha: f64) -> Result<ClassParams, ExpclassStatus> {
    ClassParams::new(a, alpha).st()
}

fn boxed(m: ComplexMatrix) -> *mut ExpclassMatrix {
    Box::into_raw(Box::new(ExpclassMatrix { inner: m }))
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn expclass_status_message(status: ExpclassStatus) -> *const c_char {
    let s: &'static CStr = match status {
        ExpclassStatus::Ok => c"ok",
        ExpclassStatus::NullPointer => c"null pointer argument",
        ExpclassStatus::InvalidArgument => c"invalid argument",
        ExpclassStatus::NotSquare => c"matrix is not square",
        ExpclassStatus::DimensionMismatch => c"dimension mismatch",
        ExpclassStatus::NumericalFailure => c"numerical failure",
        ExpclassStatus::Overflow => c"numeric overflow",
        ExpclassStatus::Panic => c"internal panic",
    };
    s.as_ptr()
}

/// Builds a `rows × cols` matrix from row-major real and imaginary parts.
/// `im` may be null for a real matrix.
///
/// # Safety
/// `re` (and `im` if non-null) must point to `rows * cols` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn expclass_matrix_new(
    rows: usize,
    cols: usize,
    re: *const f64,
    im: *const f64,
    out: *mut *mut ExpclassMatrix,
) -> ExpclassStatus {
    guard(|| {
        if re.is_null() || out.is_null() {
            return Err(ExpclassStatus::NullPointer);
        }
        let len = rows.checked_mul(cols).ok_or(ExpclassStatus::InvalidArgument)?;
        // SAFETY: the caller guarantees `len` readable doubles.
        let re = unsafe { std::slice::from_raw_parts(re, len) };
        let im = if im.is_null() { None } else { Some(unsafe { std::slice::from_raw_parts(im, len) }) };
        let data = (0..len).map(|i| Complex64::new(re[i], im.map_or(0.0, |v| v[i]))).collect();
        let m = ComplexMatrix::new(rows, cols, data).st()?;
        unsafe { write(out, boxed(m)) }
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `m` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn expclass_matrix_free(m: *mut ExpclassMatrix) {
    if !m.is_null() {
        // SAFETY: created by `Box::into_raw` in this crate.
        drop(unsafe { Box::from_raw(m) });
    }
}

/// # Safety
/// `m` must be a valid handle; `rows` and `cols` must be writable.
#[no_mangle]
pub unsafe extern "C" fn expclass_matrix_dims(
    m: *const ExpclassMatrix,
    rows: *mut usize,
    cols: *mut usize,
) -> ExpclassStatus {
    guard(|| {
        let m = unsafe { matrix_ref(m) }?;
        unsafe {
            write(rows, m.rows())?;
            write(cols, m.cols())
        }
    })
}

/// Entry `(i, j)` as real and imaginary parts.
///
/// # Safety
/// `m` must be a valid handle; `re` and `im` must be writable.
#[no_mangle]
pub unsafe extern "C" fn expclass_matrix_get(
    m: *const ExpclassMatrix,
    i: usize,
    j: usize,
    re: *mut f64,
    im: *mut f64,
) -> ExpclassStatus {
    guard(|| {
        let m = unsafe { matrix_ref(m) }?;
        if i >= m.rows() || j >= m.cols() {
            return Err(ExpclassStatus::InvalidArgument);
        }
        let z = m[(i, j)];
        unsafe {
            write(re, z.re)?;
            write(im, z.im)
        }
    })
}

/// Weighted shift with subdiagonal `e^{−a n^α}`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn expclass_gallery_shift(
    a: f64,
    alpha: f64,
    dim: usize,
    out: *mut *mut ExpclassMatrix,
) -> ExpclassStatus {
    guard(|| {
        let m = make_shift(params(a, alpha)?, dim).st()?;
        unsafe { write(out, boxed(m)) }
    })
}

/// Cyclic matrix with nonincreasing weights `taus[0..n]`.
///
/// # Safety
/// `taus` must point to `n` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn expclass_gallery_cyclic(
    taus: *const f64,
    n: usize,
    out: *mut *mut ExpclassMatrix,
) -> ExpclassStatus {
    guard(|| {
        if taus.is_null() {
            return Err(ExpclassStatus::NullPointer);
        }
        let taus = unsafe { std::slice::from_raw_parts(taus, n) };
        let m = make_cyclic(taus).st()?;
        unsafe { write(out, boxed(m)) }
    })
}

/// Diagonal matrix with entries `e^{−a|m|}`, `m = 0, −1, 1, −2, 2, …`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn expclass_gallery_convolution(
    a: f64,
    dim: usize,
    out: *mut *mut ExpclassMatrix,
) -> ExpclassStatus {
    guard(|| {
        let m = make_convolution_diagonal(a, dim).st()?;
        unsafe { write(out, boxed(m)) }
    })
}

/// `|A|_{a,α} = max_n s_n(A) e^{a n^α}`.
///
/// # Safety
/// `m` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn expclass_operator_gauge(
    m: *const ExpclassMatrix,
    a: f64,
    alpha: f64,
    out: *mut f64,
) -> ExpclassStatus {
    guard(|| {
        let m = unsafe { matrix_ref(m) }?;
        let g = operator_gauge(m, params(a, alpha)?).st()?;
        unsafe { write(out, g.gauge) }
    })
}

/// Upper bound for the departure from normality and its rate `b`.
///
/// # Safety
/// `m` must be a valid handle; `nu` and `b` must be writable.
#[no_mangle]
pub unsafe extern "C" fn expclass_departure_upper(
    m: *const ExpclassMatrix,
    a: f64,
    alpha: f64,
    nu: *mut f64,
    b: *mut f64,
) -> ExpclassStatus {
    guard(|| {
        let m = unsafe { matrix_ref(m) }?;
        let dep = departure_upper(m, params(a, alpha)?).st()?;
        unsafe {
            write(nu, dep.upper)?;
            write(b, dep.params.a())
        }
    })
}

/// `‖(zI − A)⁻¹‖`.
///
/// # Safety
/// `m` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn expclass_resolvent_norm(
    m: *const ExpclassMatrix,
    z_re: f64,
    z_im: f64,
    out: *mut f64,
) -> ExpclassStatus {
    guard(|| {
        let m = unsafe { matrix_ref(m) }?;
        let v = resolvent_norm(m, Complex64::new(z_re, z_im)).st()?;
        unsafe { write(out, v) }
    })
}

/// Resolvent bound `(1/d) f_{b,α}(ν/d)` at `z`; may be `+∞`.
///
/// # Safety
/// `m` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn expclass_resolvent_bound(
    m: *const ExpclassMatrix,
    a: f64,
    alpha: f64,
    z_re: f64,
    z_im: f64,
    out: *mut f64,
) -> ExpclassStatus {
    guard(|| {
        let m = unsafe { matrix_ref(m) }?;
        let dep = departure_upper(m, params(a, alpha)?).st()?;
        let d = eigenvalues(m).st()?.distance_to(Complex64::new(z_re, z_im));
        let v = resolvent_bound(d, &dep).st()?;
        unsafe { write(out, v) }
    })
}

/// Spectral-distance bound for `A`, `B` and the exact Hausdorff distance of their spectra.
///
/// # Safety
/// `ma`, `mb` must be valid handles; `bound` and `hausdorff` must be writable.
#[no_mangle]
pub unsafe extern "C" fn expclass_spectral_distance(
    ma: *const ExpclassMatrix,
    mb: *const ExpclassMatrix,
    a: f64,
    alpha: f64,
    bound: *mut f64,
    hausdorff: *mut f64,
) -> ExpclassStatus {
    guard(|| {
        let (ma, mb) = unsafe { (matrix_ref(ma)?, matrix_ref(mb)?) };
        if ma.rows() != mb.rows() || ma.cols() != mb.cols() {
            return Err(ExpclassStatus::DimensionMismatch);
        }
        let p = params(a, alpha)?;
        let (da, db) = (departure_upper(ma, p).st()?, departure_upper(mb, p).st()?);
        let norm_e = operator_norm(&(ma - mb)).st()?;
        let b = spectral_distance_bound(norm_e, &da, &db).st()?;
        let h = hausdorff_distance(&eigenvalues(ma).st()?, &eigenvalues(mb).st()?).st()?;
        unsafe {
            write(bound, b)?;
            write(hausdorff, h)
        }
    })
}

/// `f_{a,α}(r)` with its certified error radius.
///
/// # Safety
/// `value` must be writable; `radius` may be null.
#[no_mangle]
pub unsafe extern "C" fn expclass_f(a: f64, alpha: f64, r: f64, value: *mut f64, radius: *mut f64) -> ExpclassStatus {
    guard(|| {
        let v = f_eval(params(a, alpha)?, r, 1e-12).st()?;
        unsafe {
            write(value, v.value)?;
            if !radius.is_null() {
                write(radius, v.error_radius)?;
            }
        }
        Ok(())
    })
}

/// `h_{a,α}(r)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn expclass_h(a: f64, alpha: f64, r: f64, out: *mut f64) -> ExpclassStatus {
    guard(|| {
        let v = h_eval(params(a, alpha)?, r).st()?;
        unsafe { write(out, v) }
    })
}
