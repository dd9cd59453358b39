//! C ABI over the trunca library.
//!
//! Every function returns a [`TruncaStatus`]; results go through out
//! pointers. On failure the message is available from
//! [`trunca_last_error`] on the calling thread. Strings returned through out
//! pointers are owned by the caller and released with [`trunca_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use trunca::charfield::{self, TorusCharacter};
use trunca::linalg::{fmt_q, parse_q_list};
use trunca::parabolic::StandardParabolic;
use trunca::quasipoly::{brute_sum, product_eval, LatticeSpec};
use trunca::rootdata::{AVector, RootDatum, WeylGroup};
use trunca::truncation::TruncationContext;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TruncaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ComputationFailed = 3,
    Panic = 4,
}

/// A root datum with its truncation tables and Weyl group.
pub struct TruncaDatum {
    ctx: TruncationContext,
    weyl: WeylGroup,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: TruncaStatus, msg: impl Into<String>) -> TruncaStatus {
    set_error(msg.into());
    status
}

fn from_lib(e: trunca::Error) -> TruncaStatus {
    let status = match e {
        trunca::Error::UnknownType(_) | trunca::Error::Parse(_) | trunca::Error::DimensionMismatch { .. } => TruncaStatus::InvalidArgument,
        trunca::Error::InvalidCartan(_) | trunca::Error::InvalidTorus(_) | trunca::Error::Precondition(_) => TruncaStatus::InvalidArgument,
        _ => TruncaStatus::ComputationFailed,
    };
    fail(status, e.to_string())
}

fn guard(f: impl FnOnce() -> TruncaStatus) -> TruncaStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(TruncaStatus::Panic, "panic inside trunca"),
    }
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, TruncaStatus> {
    if p.is_null() {
        return Err(fail(TruncaStatus::NullPointer, format!("{name} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(TruncaStatus::InvalidArgument, format!("{name} is not UTF-8")))
}

fn out_string(s: String, out: *mut *mut c_char) {
    unsafe { *out = CString::new(s).unwrap().into_raw() };
}

macro_rules! nonnull {
    ($($p:ident),+) => {
        $(if $p.is_null() {
            return fail(TruncaStatus::NullPointer, concat!(stringify!($p), " is null"));
        })+
    };
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) => return from_lib(e),
        }
    };
}

/// Message of the last failure on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn trunca_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn trunca_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds the datum of a Cartan type such as "A2", "B2", "A1xA1".
///
/// # Safety
/// `cartan_type` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn trunca_datum_new(cartan_type: *const c_char, out: *mut *mut TruncaDatum) -> TruncaStatus {
    guard(|| {
        nonnull!(out);
        let ty = match str_arg(cartan_type, "cartan_type") {
            Ok(s) => s,
            Err(s) => return s,
        };
        let d = tri!(RootDatum::new(ty, 0));
        let weyl = tri!(WeylGroup::new(&d));
        *out = Box::into_raw(Box::new(TruncaDatum { ctx: TruncationContext::new(d), weyl }));
        TruncaStatus::Ok
    })
}

/// # Safety
/// `d` must come from [`trunca_datum_new`] or be null; it is invalid after.
#[no_mangle]
pub unsafe extern "C" fn trunca_datum_free(d: *mut TruncaDatum) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// # Safety
/// `d` must be a live datum and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn trunca_datum_rank(d: *const TruncaDatum, out: *mut usize) -> TruncaStatus {
    guard(|| {
        nonnull!(d, out);
        *out = (*d).ctx.datum().rank_ss();
        TruncaStatus::Ok
    })
}

/// # Safety
/// `d` must be a live datum and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn trunca_datum_root_count(d: *const TruncaDatum, out: *mut usize) -> TruncaStatus {
    guard(|| {
        nonnull!(d, out);
        *out = (*d).ctx.datum().roots().len();
        TruncaStatus::Ok
    })
}

/// # Safety
/// `d` must be a live datum and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn trunca_datum_weyl_order(d: *const TruncaDatum, out: *mut usize) -> TruncaStatus {
    guard(|| {
        nonnull!(d, out);
        *out = (*d).weyl.order();
        TruncaStatus::Ok
    })
}

unsafe fn parabolic(d: &TruncaDatum, mask: u32) -> Result<StandardParabolic, TruncaStatus> {
    if mask & !d.ctx.datum().full_mask() != 0 {
        return Err(fail(TruncaStatus::InvalidArgument, format!("mask {mask:#x} exceeds the rank")));
    }
    Ok(StandardParabolic { mask })
}

unsafe fn vector(d: &TruncaDatum, p: *const c_char, name: &str) -> Result<AVector, TruncaStatus> {
    let s = str_arg(p, name)?;
    let v = AVector(parse_q_list(s).map_err(from_lib)?);
    d.ctx.datum().check_vector(&v).map_err(from_lib)?;
    Ok(v)
}

/// Γ_P(H, X). `p_mask` has bit i set when α_{i+1} is in P; `h` and `x` are
/// comma-separated rationals such as "1/2,-3".
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn trunca_gamma(
    d: *const TruncaDatum,
    p_mask: u32,
    h: *const c_char,
    x: *const c_char,
    out: *mut i64,
) -> TruncaStatus {
    guard(|| {
        nonnull!(d, out);
        let d = &*d;
        let run = || -> Result<i64, TruncaStatus> {
            let p = parabolic(d, p_mask)?;
            let h = vector(d, h, "h")?;
            let x = vector(d, x, "x")?;
            d.ctx.gamma(&p, &h, &x).map_err(from_lib)
        };
        match run() {
            Ok(v) => {
                *out = v;
                TruncaStatus::Ok
            }
            Err(s) => s,
        }
    })
}

/// Σ_{H∈Λ} Γ_P(H, X) over the coroot lattice of 𝔞_P^G, by brute force and
/// by the product formula with base q. Both results are written as "n/d"
/// strings to be released with [`trunca_string_free`].
///
/// # Safety
/// Pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn trunca_qpsum(
    d: *const TruncaDatum,
    p_mask: u32,
    x: *const c_char,
    q: u64,
    brute_out: *mut *mut c_char,
    product_out: *mut *mut c_char,
) -> TruncaStatus {
    guard(|| {
        nonnull!(d, brute_out, product_out);
        let d = &*d;
        let run = || -> Result<(String, String), TruncaStatus> {
            let p = parabolic(d, p_mask)?;
            let x = vector(d, x, "x")?;
            let spec = LatticeSpec::coroot(&d.ctx, p).map_err(from_lib)?;
            let b = brute_sum(&d.ctx, &spec, &x).map_err(from_lib)?;
            let pe = product_eval(&d.ctx, &spec, &x, q).map_err(from_lib)?;
            Ok((fmt_q(&b), fmt_q(&pe)))
        };
        match run() {
            Ok((b, pe)) => {
                out_string(b, brute_out);
                out_string(pe, product_out);
                TruncaStatus::Ok
            }
            Err(s) => s,
        }
    })
}

/// The elliptic SL_l multiplicity for characters k_λ, k_μ of the norm-one
/// torus over F_q. Writes the regular character sum and J ∈ {0, 1}.
///
/// # Safety
/// Out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn trunca_sl_trace(
    q: u64,
    l: u64,
    k_lambda: u64,
    k_mu: u64,
    char_sum_out: *mut i64,
    j_out: *mut i64,
) -> TruncaStatus {
    guard(|| {
        nonnull!(char_sum_out, j_out);
        let t = tri!(charfield::build_torus(q, l));
        let (a, b) = (TorusCharacter { k: k_lambda }, TorusCharacter { k: k_mu });
        let s = tri!(charfield::char_sum_regular(a, b, &t));
        let j = tri!(charfield::assemble_j(a, b, &t));
        *char_sum_out = s;
        *j_out = if j == trunca::linalg::q(1) { 1 } else { 0 };
        TruncaStatus::Ok
    })
}

/// Levi-centre criterion for split SL_n; exponent arrays have n − 1 entries.
///
/// # Safety
/// `group` NUL-terminated; arrays readable for the given lengths.
#[no_mangle]
pub unsafe extern "C" fn trunca_filter_check(
    group: *const c_char,
    q: u64,
    theta_lambda: *const u64,
    lambda_len: usize,
    theta_mu: *const u64,
    mu_len: usize,
    out: *mut bool,
) -> TruncaStatus {
    guard(|| {
        nonnull!(theta_lambda, theta_mu, out);
        let g = match str_arg(group, "group") {
            Ok(s) => s,
            Err(s) => return s,
        };
        let l = std::slice::from_raw_parts(theta_lambda, lambda_len);
        let m = std::slice::from_raw_parts(theta_mu, mu_len);
        *out = tri!(charfield::cuspidal_filter_check(g, q, l, m));
        TruncaStatus::Ok
    })
}
