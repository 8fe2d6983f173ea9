use std::ffi::CStr;
use std::ptr;

use expclass_ffi::*;

fn shift(dim: usize) -> *mut ExpclassMatrix {
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { expclass_gallery_shift(1.0, 1.0, dim, &mut m) }, ExpclassStatus::Ok);
    m
}

#[test]
fn matrix_lifecycle() {
    let re = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0];
    let im = [0.0, -1.0, 0.0, 0.0, 0.0, 0.5];
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { expclass_matrix_new(2, 3, re.as_ptr(), im.as_ptr(), &mut m) }, ExpclassStatus::Ok);
    let (mut r, mut c) = (0, 0);
    assert_eq!(unsafe { expclass_matrix_dims(m, &mut r, &mut c) }, ExpclassStatus::Ok);
    assert_eq!((r, c), (2, 3));
    let (mut x, mut y) = (0.0, 0.0);
    assert_eq!(unsafe { expclass_matrix_get(m, 0, 1, &mut x, &mut y) }, ExpclassStatus::Ok);
    assert_eq!((x, y), (2.0, -1.0));
    assert_eq!(unsafe { expclass_matrix_get(m, 2, 0, &mut x, &mut y) }, ExpclassStatus::InvalidArgument);
    let mut g = 0.0;
    let mut nu = 0.0;
    let mut b = 0.0;
    assert_eq!(unsafe { expclass_operator_gauge(m, 1.0, 1.0, &mut g) }, ExpclassStatus::Ok);
    assert_eq!(unsafe { expclass_departure_upper(m, 1.0, 1.0, &mut nu, &mut b) }, ExpclassStatus::NotSquare);
    unsafe { expclass_matrix_free(m) };
    unsafe { expclass_matrix_free(ptr::null_mut()) };
}

#[test]
fn error_codes() {
    let mut m = ptr::null_mut();
    let nan = [f64::NAN];
    assert_eq!(
        unsafe { expclass_matrix_new(1, 1, nan.as_ptr(), ptr::null(), &mut m) },
        ExpclassStatus::InvalidArgument
    );
    assert_eq!(unsafe { expclass_matrix_new(1, 1, ptr::null(), ptr::null(), &mut m) }, ExpclassStatus::NullPointer);
    assert_eq!(unsafe { expclass_gallery_shift(-1.0, 1.0, 4, &mut m) }, ExpclassStatus::InvalidArgument);
    let taus = [0.5, 1.0];
    assert_eq!(unsafe { expclass_gallery_cyclic(taus.as_ptr(), 2, &mut m) }, ExpclassStatus::InvalidArgument);
    let mut out = 0.0;
    assert_eq!(unsafe { expclass_operator_gauge(ptr::null(), 1.0, 1.0, &mut out) }, ExpclassStatus::NullPointer);
    let s = shift(4);
    assert_eq!(unsafe { expclass_resolvent_norm(s, 0.0, 0.0, &mut out) }, ExpclassStatus::NumericalFailure);
    let c = unsafe { expclass_gallery_convolution(1.0, 5, &mut m) };
    assert_eq!(c, ExpclassStatus::Ok);
    let (mut bound, mut hd) = (0.0, 0.0);
    assert_eq!(
        unsafe { expclass_spectral_distance(s, m, 1.0, 1.0, &mut bound, &mut hd) },
        ExpclassStatus::DimensionMismatch
    );
    unsafe {
        expclass_matrix_free(s);
        expclass_matrix_free(m);
    }
    let msg = unsafe { CStr::from_ptr(expclass_status_message(ExpclassStatus::NotSquare)) };
    assert_eq!(msg.to_str().unwrap(), "matrix is not square");
}

#[test]
fn bounds_through_the_abi() {
    let s = shift(12);
    let (mut true_norm, mut bound) = (0.0, 0.0);
    assert_eq!(unsafe { expclass_resolvent_norm(s, 0.3, 0.2, &mut true_norm) }, ExpclassStatus::Ok);
    assert_eq!(unsafe { expclass_resolvent_bound(s, 1.0, 1.0, 0.3, 0.2, &mut bound) }, ExpclassStatus::Ok);
    assert!(true_norm <= bound);

    let (mut f, mut radius, mut h) = (0.0, 0.0, 0.0);
    assert_eq!(unsafe { expclass_f(std::f64::consts::LN_2, 1.0, 1.0, &mut f, &mut radius) }, ExpclassStatus::Ok);
    assert!((f - 2.384_231_029_031_371).abs() <= radius + 1e-15);
    assert_eq!(unsafe { expclass_h(1.0, 1.0, 0.1, &mut h) }, ExpclassStatus::Ok);
    assert!((h - 0.351_188_546_876_403_94).abs() < 1e-10);

    let mut a = ptr::null_mut();
    let mut b = ptr::null_mut();
    unsafe {
        expclass_gallery_convolution(1.0, 5, &mut a);
        expclass_gallery_convolution(1.1, 5, &mut b);
    }
    let (mut sb, mut hd) = (0.0, 0.0);
    assert_eq!(unsafe { expclass_spectral_distance(a, b, 0.5, 1.0, &mut sb, &mut hd) }, ExpclassStatus::Ok);
    assert!(hd <= sb);
    unsafe {
        expclass_matrix_free(a);
        expclass_matrix_free(b);
        expclass_matrix_free(s);
    }
}
