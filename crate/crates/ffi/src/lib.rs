//! C ABI for `rankin-periods`.
//!
//! Conventions:
//! - every fallible function returns an [`RpStatus`] and writes results
//!   through out-pointers; on failure `rp_last_error()` describes the error;
//! - weights are opaque [`RpWeight`] handles released with `rp_weight_free`;
//! - strings returned through `char **` are owned by the caller and released
//!   with `rp_string_free`;
//! - fourth roots of unity are exchanged as exponents `k` of `i^k`, `0..=3`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use rankin_periods::characters::{ArchCharacter, EpsilonChoice};
use rankin_periods::cyclotomic::{dirichlet_characters, gauss_sum};
use rankin_periods::gamma::{GammaProduct, Reduced};
use rankin_periods::orbit::z_matrix;
use rankin_periods::period::{verify_archimedean, Case};
use rankin_periods::weights::{balanced_places, FieldKind, Weight};
use rankin_periods::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    MalformedWeight = 4,
    DimensionMismatch = 5,
    NotPure = 6,
    NotBalanced = 7,
    InvalidCharacter = 8,
    InvalidArgument = 9,
    Internal = 10,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RpField {
    Real = 0,
    Complex = 1,
}

/// Opaque weight handle.
pub struct RpWeight(Weight);

/// A closed integer interval; `lo`, `hi` are meaningless when `empty`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RpInterval {
    pub empty: bool,
    pub lo: i64,
    pub hi: i64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RpVerifyResult {
    pub exact_match: bool,
    /// Exponent of the reduced constant, or -1 if the ratio is not constant.
    pub constant: i32,
    pub omega: u8,
    /// Relative spread at the sample points; NaN if evaluation failed.
    pub constancy_residual: f64,
    /// Distance from Omega at the sample points; NaN if evaluation failed.
    pub match_residual: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> RpStatus {
    match e {
        Error::MalformedWeight(_) => RpStatus::MalformedWeight,
        Error::DimensionMismatch(_) | Error::FieldMismatch | Error::NotSquare(..) => RpStatus::DimensionMismatch,
        Error::NotPure => RpStatus::NotPure,
        Error::NotBalanced(_) => RpStatus::NotBalanced,
        Error::VariantMismatch
        | Error::NotFiniteOrder
        | Error::InvalidCharacter(_)
        | Error::InvalidEpsilon(_)
        | Error::DegenerateDiscrete => RpStatus::InvalidCharacter,
        Error::Parse(_) => RpStatus::Parse,
        Error::PoleProximity(_) | Error::NotCoprime(..) | Error::InvalidArgument(_) => RpStatus::InvalidArgument,
    }
}

/// Runs `f`, recording errors and converting panics into `Internal`.
fn guard(f: impl FnOnce() -> Result<(), (RpStatus, String)>) -> RpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            RpStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            RpStatus::Internal
        }
    }
}

fn lib_err(e: Error) -> (RpStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(name: &str) -> (RpStatus, String) {
    (RpStatus::NullPointer, format!("{name} is null"))
}

unsafe fn weight_ref<'a>(p: *const RpWeight, name: &str) -> Result<&'a Weight, (RpStatus, String)> {
    p.as_ref().map(|w| &w.0).ok_or_else(|| null(name))
}

unsafe fn read_str<'a>(p: *const c_char, name: &str) -> Result<&'a str, (RpStatus, String)> {
    if p.is_null() {
        return Err(null(name));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (RpStatus::InvalidUtf8, format!("{name} is not UTF-8")))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), (RpStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = CString::new(s).map_err(|_| (RpStatus::Internal, "output contains nul".into()))?.into_raw();
    Ok(())
}

/// Message of the last failed call on this thread, or NULL. Valid until the
/// next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn rp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds a weight from `embeddings * n` entries in row-major order, where
/// `embeddings` is 1 for `Real` and 2 for `Complex`.
///
/// # Safety
/// `entries` must point to that many `int64_t`; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rp_weight_new(
    field: RpField,
    entries: *const i64,
    n: usize,
    out: *mut *mut RpWeight,
) -> RpStatus {
    guard(|| {
        if entries.is_null() {
            return Err(null("entries"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let field = match field {
            RpField::Real => FieldKind::Real,
            RpField::Complex => FieldKind::Complex,
        };
        let flat = std::slice::from_raw_parts(entries, field.degree() * n);
        let rows = if n == 0 { vec![vec![]; field.degree()] } else { flat.chunks(n).map(<[i64]>::to_vec).collect() };
        let w = Weight::new(field, rows).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(RpWeight(w)));
        Ok(())
    })
}

/// Parses a weight from `{"field": "R"|"C", "rows": [[...], ...]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rp_weight_from_json(json: *const c_char, out: *mut *mut RpWeight) -> RpStatus {
    guard(|| {
        let text = read_str(json, "json")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let w: Weight = serde_json::from_str(text).map_err(|e| (RpStatus::Parse, e.to_string()))?;
        *out = Box::into_raw(Box::new(RpWeight(w)));
        Ok(())
    })
}

/// # Safety
/// `w` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rp_weight_free(w: *mut RpWeight) {
    if !w.is_null() {
        drop(Box::from_raw(w));
    }
}

/// Size `n` of the weight, 0 for NULL.
///
/// # Safety
/// `w` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rp_weight_n(w: *const RpWeight) -> usize {
    w.as_ref().map_or(0, |w| w.0.n())
}

/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rp_balanced_places(
    mu: *const RpWeight,
    nu: *const RpWeight,
    out: *mut RpInterval,
) -> RpStatus {
    guard(|| {
        let (mu, nu) = (weight_ref(mu, "mu")?, weight_ref(nu, "nu")?);
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let iv = balanced_places(mu, nu).map_err(lib_err)?;
        *out = match (iv.lo(), iv.hi()) {
            (Some(lo), Some(hi)) => RpInterval { empty: false, lo, hi },
            _ => RpInterval { empty: true, lo: 0, hi: 0 },
        };
        Ok(())
    })
}

/// `Omega` for `(mu, nu, j)` as an exponent of `i`. Does not require `j` to
/// be balanced.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rp_omega(
    mu: *const RpWeight,
    nu: *const RpWeight,
    j: i64,
    eps_psi: i8,
    out: *mut u8,
) -> RpStatus {
    guard(|| {
        let (mu, nu) = (weight_ref(mu, "mu")?, weight_ref(nu, "nu")?);
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = rankin_periods::period::omega_constant(mu, nu, j, eps_psi).map_err(lib_err)?.exponent();
        Ok(())
    })
}

/// Verifies one case. `chi_sign` is the power of `sgn` (ignored over `C`);
/// `eps_n`, `eps_n1` select the sign characters where they are allowed.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn rp_verify(
    mu: *const RpWeight,
    nu: *const RpWeight,
    j: i64,
    chi_sign: u8,
    eps_n: u8,
    eps_n1: u8,
    eps_psi: i8,
    out: *mut RpVerifyResult,
) -> RpStatus {
    guard(|| {
        let (mu, nu) = (weight_ref(mu, "mu")?, weight_ref(nu, "nu")?);
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let case = Case {
            mu: mu.clone(),
            nu: nu.clone(),
            j,
            chi: ArchCharacter::quadratic(mu.field(), chi_sign),
            eps: EpsilonChoice::new(eps_n, eps_n1),
            eps_psi,
        };
        let r = verify_archimedean(&case).map_err(lib_err)?;
        *out = RpVerifyResult {
            exact_match: r.exact_match,
            constant: match r.constant {
                Reduced::Constant(u) => u.exponent() as i32,
                Reduced::NotConstant => -1,
            },
            omega: r.omega.exponent(),
            constancy_residual: r.residuals.constancy.unwrap_or(f64::NAN),
            match_residual: r.residuals.match_.unwrap_or(f64::NAN),
        };
        Ok(())
    })
}

/// Verifies a case given as JSON and returns the full report as JSON.
///
/// # Safety
/// `case_json` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rp_verify_json(case_json: *const c_char, out: *mut *mut c_char) -> RpStatus {
    guard(|| {
        let case: Case = serde_json::from_str(read_str(case_json, "case_json")?)
            .map_err(|e| (RpStatus::Parse, e.to_string()))?;
        let r = verify_archimedean(&case).map_err(lib_err)?;
        write_string(out, serde_json::to_string(&r).expect("serializable"))
    })
}

/// Decides whether a rendered Gamma product is constant. Writes the exponent
/// of the constant, or -1 if it is not constant.
///
/// # Safety
/// `expr` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rp_reduce_gamma(expr: *const c_char, out: *mut i32) -> RpStatus {
    guard(|| {
        let p: GammaProduct = read_str(expr, "expr")?.parse().map_err(lib_err)?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = match p.reduce_to_constant() {
            Reduced::Constant(u) => u.exponent() as i32,
            Reduced::NotConstant => -1,
        };
        Ok(())
    })
}

/// `z_k` as a JSON array of integer rows.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rp_zmatrix_json(k: usize, out: *mut *mut c_char) -> RpStatus {
    guard(|| write_string(out, serde_json::to_string(&z_matrix(k)).expect("serializable")))
}

/// Gauss sum of character `index` modulo `modulus` as
/// `{"level": M, "coeffs": [...]}`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rp_gauss_json(modulus: u64, index: usize, normalized: bool, out: *mut *mut c_char) -> RpStatus {
    guard(|| {
        let chars = dirichlet_characters(modulus).map_err(lib_err)?;
        let chi = chars.get(index).ok_or_else(|| {
            (RpStatus::InvalidArgument, format!("index {index} out of range for modulus {modulus}"))
        })?;
        write_string(out, serde_json::to_string(&gauss_sum(chi, normalized)).expect("serializable"))
    })
}

/// # Safety
/// `s` must be NULL or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
