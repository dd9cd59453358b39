use std::ffi::{CStr, CString};
use std::ptr;

use trunca_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn datum(ty: &str) -> *mut TruncaDatum {
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { trunca_datum_new(c(ty).as_ptr(), &mut d) }, TruncaStatus::Ok);
    d
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(trunca_last_error()) }.to_str().unwrap().to_string()
}

#[test]
fn datum_queries() {
    for (ty, rank, roots, order) in [("A2", 2, 6, 6), ("B2", 2, 8, 8), ("G2", 2, 12, 12), ("A3", 3, 12, 24), ("A1xA1", 2, 4, 4)] {
        let d = datum(ty);
        let (mut r, mut n, mut w) = (0usize, 0usize, 0usize);
        unsafe {
            assert_eq!(trunca_datum_rank(d, &mut r), TruncaStatus::Ok);
            assert_eq!(trunca_datum_root_count(d, &mut n), TruncaStatus::Ok);
            assert_eq!(trunca_datum_weyl_order(d, &mut w), TruncaStatus::Ok);
            trunca_datum_free(d);
        }
        assert_eq!((r, n, w), (rank, roots, order), "{ty}");
    }
}

#[test]
fn bad_type_reports_error() {
    let mut d = ptr::null_mut();
    let s = unsafe { trunca_datum_new(c("Q7").as_ptr(), &mut d) };
    assert_eq!(s, TruncaStatus::InvalidArgument);
    assert!(d.is_null());
    assert!(last_error().contains("Q7"));
    assert_eq!(unsafe { trunca_datum_new(ptr::null(), &mut d) }, TruncaStatus::NullPointer);
}

#[test]
fn gamma_values() {
    let d = datum("A1");
    let mut out = 7i64;
    unsafe {
        // Γ_B(H, X) = 1 exactly for 0 < α(H) ≤ α(X).
        assert_eq!(trunca_gamma(d, 0, c("1").as_ptr(), c("3").as_ptr(), &mut out), TruncaStatus::Ok);
        assert_eq!(out, 1);
        assert_eq!(trunca_gamma(d, 0, c("4").as_ptr(), c("3").as_ptr(), &mut out), TruncaStatus::Ok);
        assert_eq!(out, 0);
        assert_eq!(trunca_gamma(d, 0, c("1/2").as_ptr(), c("0").as_ptr(), &mut out), TruncaStatus::Ok);
        assert_eq!(out, 0);
        assert_eq!(trunca_gamma(d, 4, c("1").as_ptr(), c("0").as_ptr(), &mut out), TruncaStatus::InvalidArgument);
        assert_eq!(trunca_gamma(d, 0, c("1,2").as_ptr(), c("0").as_ptr(), &mut out), TruncaStatus::InvalidArgument);
        trunca_datum_free(d);
    }
}

#[test]
fn qpsum_strings() {
    let d = datum("A1");
    let (mut b, mut p) = (ptr::null_mut(), ptr::null_mut());
    unsafe {
        assert_eq!(trunca_qpsum(d, 0, c("5").as_ptr(), 3, &mut b, &mut p), TruncaStatus::Ok);
        assert_eq!(CStr::from_ptr(b).to_str().unwrap(), "2");
        assert_eq!(CStr::from_ptr(p).to_str().unwrap(), "2");
        trunca_string_free(b);
        trunca_string_free(p);
        assert_eq!(trunca_qpsum(d, 0, c("5").as_ptr(), 6, &mut b, &mut p), TruncaStatus::InvalidArgument);
        trunca_datum_free(d);
    }
}

#[test]
fn sl_trace_and_filter() {
    let (mut s, mut j) = (0i64, 0i64);
    unsafe {
        assert_eq!(trunca_sl_trace(2, 3, 1, 3, &mut s, &mut j), TruncaStatus::Ok);
        assert_eq!((s, j), (12, 1));
        assert_eq!(trunca_sl_trace(2, 3, 1, 1, &mut s, &mut j), TruncaStatus::Ok);
        assert_eq!((s, j), (-9, 0));
        assert_eq!(trunca_sl_trace(3, 3, 1, 1, &mut s, &mut j), TruncaStatus::InvalidArgument);
        let mut ok = false;
        let (a, b) = ([1u64], [2u64]);
        assert_eq!(trunca_filter_check(c("SL2").as_ptr(), 5, a.as_ptr(), 1, b.as_ptr(), 1, &mut ok), TruncaStatus::Ok);
        assert!(ok);
        assert_eq!(trunca_filter_check(c("SL2").as_ptr(), 5, a.as_ptr(), 1, a.as_ptr(), 1, &mut ok), TruncaStatus::Ok);
        assert!(!ok);
        assert_eq!(trunca_filter_check(c("GL2").as_ptr(), 5, a.as_ptr(), 1, b.as_ptr(), 1, &mut ok), TruncaStatus::ComputationFailed);
    }
}

#[test]
fn null_out_pointers() {
    unsafe {
        assert_eq!(trunca_datum_rank(ptr::null(), ptr::null_mut()), TruncaStatus::NullPointer);
        assert_eq!(trunca_sl_trace(2, 3, 1, 3, ptr::null_mut(), ptr::null_mut()), TruncaStatus::NullPointer);
        trunca_datum_free(ptr::null_mut());
        trunca_string_free(ptr::null_mut());
    }
}
