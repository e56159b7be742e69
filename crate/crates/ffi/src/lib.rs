//! C interface to `brieskorn`.
//!
//! Every fallible function returns a [`BkStatus`] and writes its result
//! through an out pointer. Integers that may exceed 64 bits are returned as
//! decimal strings allocated here; release them with [`bk_string_free`].
//! Links are opaque [`BkLink`] handles released with [`bk_link_free`].
//! The message of the most recent error on the calling thread is available
//! from [`bk_last_error_message`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use brieskorn::classify::{bp_order, diffeo_count, diffeo_offset, table_emit};
use brieskorn::link_model::{make_link, BrieskornLink};
use brieskorn::monodromy::{cover_homology, link_homology};
use brieskorn::signature::{signature, tau};
use brieskorn::Error;

/// Result codes. `BK_STATUS_OK` is zero; every other value names a failure.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BkStatus {
    Ok = 0,
    NullPointer = 1,
    EmptyExponents = 2,
    InvalidExponent = 3,
    InvalidFamily = 4,
    OddDimension = 5,
    BudgetExceeded = 6,
    NotCommonMultiple = 7,
    AmbiguousRounding = 8,
    NotFiniteOrder = 9,
    IncomparableLinks = 10,
    NotDivisibleByEight = 11,
    InvalidArgument = 12,
    Panic = 13,
}

impl From<&Error> for BkStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::EmptyExponents => BkStatus::EmptyExponents,
            Error::InvalidExponent { .. } => BkStatus::InvalidExponent,
            Error::InvalidFamily(_) => BkStatus::InvalidFamily,
            Error::OddDimension { .. } => BkStatus::OddDimension,
            Error::BudgetExceeded { .. } => BkStatus::BudgetExceeded,
            Error::NotCommonMultiple { .. } => BkStatus::NotCommonMultiple,
            Error::AmbiguousRounding { .. } => BkStatus::AmbiguousRounding,
            Error::NotFiniteOrder { .. } => BkStatus::NotFiniteOrder,
            Error::IncomparableLinks(_) => BkStatus::IncomparableLinks,
            Error::NotDivisibleBy8 { .. } => BkStatus::NotDivisibleByEight,
            Error::InvalidArgument(_) => BkStatus::InvalidArgument,
        }
    }
}

/// Opaque link handle.
pub struct BkLink {
    inner: BrieskornLink,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

enum Failure {
    Null,
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// Runs `f`, mapping errors and panics to status codes.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> BkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            BkStatus::Ok
        }
        Ok(Err(Failure::Null)) => {
            set_last_error("null pointer argument");
            BkStatus::NullPointer
        }
        Ok(Err(Failure::Lib(e))) => {
            set_last_error(&e.to_string());
            BkStatus::from(&e)
        }
        Err(_) => {
            set_last_error("internal panic");
            BkStatus::Panic
        }
    }
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn link_ref<'a>(p: *const BkLink) -> Result<&'a BrieskornLink, Failure> {
    p.as_ref().map(|l| &l.inner).ok_or(Failure::Null)
}

unsafe fn slice<'a, T>(p: *const T, len: usize) -> Result<&'a [T], Failure> {
    if len == 0 {
        Ok(&[])
    } else if p.is_null() {
        Err(Failure::Null)
    } else {
        Ok(std::slice::from_raw_parts(p, len))
    }
}

/// Builds a link from `len` exponents. On success `*out` owns a new handle.
///
/// # Safety
/// `exponents` must point to `len` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bk_link_new(
    exponents: *const i64,
    len: usize,
    out: *mut *mut BkLink,
) -> BkStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure::Null);
        }
        let link = make_link(slice(exponents, len)?)?;
        *out = Box::into_raw(Box::new(BkLink { inner: link }));
        Ok(())
    })
}

/// Releases a handle from [`bk_link_new`]. Null is ignored.
///
/// # Safety
/// `link` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bk_link_free(link: *mut BkLink) {
    if !link.is_null() {
        drop(Box::from_raw(link));
    }
}

/// Real dimension of the link.
///
/// # Safety
/// `link` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bk_link_dimension(link: *const BkLink, out: *mut i64) -> BkStatus {
    guard(|| {
        let l = link_ref(link)?;
        let out = out.as_mut().ok_or(Failure::Null)?;
        *out = l.link_dimension();
        Ok(())
    })
}

/// Milnor number as a decimal string.
///
/// # Safety
/// `link` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bk_link_milnor_number(
    link: *const BkLink,
    out: *mut *mut c_char,
) -> BkStatus {
    guard(|| {
        let l = link_ref(link)?;
        if out.is_null() {
            return Err(Failure::Null);
        }
        write_string(out, l.milnor_number().to_string())
    })
}

/// Whether the weighted-homogeneous positivity condition holds.
///
/// # Safety
/// `link` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bk_link_is_positive(link: *const BkLink, out: *mut bool) -> BkStatus {
    guard(|| {
        let l = link_ref(link)?;
        let out = out.as_mut().ok_or(Failure::Null)?;
        *out = l.is_ricci_positive();
        Ok(())
    })
}

/// Signature of the Milnor fibre as a decimal string.
///
/// # Safety
/// `link` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bk_link_signature(link: *const BkLink, out: *mut *mut c_char) -> BkStatus {
    guard(|| {
        let l = link_ref(link)?;
        if out.is_null() {
            return Err(Failure::Null);
        }
        write_string(out, signature(l.exponents())?.to_string())
    })
}

/// Middle homology of the link, e.g. `"Z^2"` or `"Z_3"`.
///
/// # Safety
/// `link` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bk_link_homology(link: *const BkLink, out: *mut *mut c_char) -> BkStatus {
    guard(|| {
        let l = link_ref(link)?;
        if out.is_null() {
            return Err(Failure::Null);
        }
        write_string(out, link_homology(l.exponents())?.to_string())
    })
}

/// Middle homology of the `fold`-fold cyclic branched cover along `branch`.
///
/// # Safety
/// `branch` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bk_cover_homology(
    branch: *const BkLink,
    fold: u64,
    out: *mut *mut c_char,
) -> BkStatus {
    guard(|| {
        let l = link_ref(branch)?;
        if out.is_null() {
            return Err(Failure::Null);
        }
        write_string(out, cover_homology(l.exponents(), fold)?.to_string())
    })
}

/// `tau_k` as a decimal string.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bk_tau(k: u32, out: *mut *mut c_char) -> BkStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure::Null);
        }
        write_string(out, tau(k)?.to_string())
    })
}

/// `|bP_4m|` as a decimal string.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bk_bp_order(m: u32, out: *mut *mut c_char) -> BkStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure::Null);
        }
        write_string(out, bp_order(m)?.order.to_string())
    })
}

/// Number of distinct diffeomorphism types `D_n(k)` as a decimal string.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bk_diffeo_count(n: u32, k: u32, out: *mut *mut c_char) -> BkStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure::Null);
        }
        write_string(out, diffeo_count(n, k)?.to_string())
    })
}

/// Offset of `a` relative to `b` in dimension `4n - 1`, as a decimal string.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bk_diffeo_offset(
    a: *const BkLink,
    b: *const BkLink,
    n: u32,
    out: *mut *mut c_char,
) -> BkStatus {
    guard(|| {
        let (a, b) = (link_ref(a)?, link_ref(b)?);
        if out.is_null() {
            return Err(Failure::Null);
        }
        write_string(out, diffeo_offset(a, b, n)?.to_string())
    })
}

/// Table rows for dimension `dim` as a JSON array.
///
/// # Safety
/// `ks` must point to `len` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bk_table_json(
    dim: u32,
    ks: *const u32,
    len: usize,
    out: *mut *mut c_char,
) -> BkStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure::Null);
        }
        let rows = table_emit(dim, slice(ks, len)?)?;
        let text =
            serde_json::to_string(&rows).map_err(|e| Error::InvalidArgument(e.to_string()))?;
        write_string(out, text)
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failure on this thread; empty after a success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn bk_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Static name of a status code.
#[no_mangle]
pub extern "C" fn bk_status_name(status: BkStatus) -> *const c_char {
    let s: &'static CStr = match status {
        BkStatus::Ok => c"OK",
        BkStatus::NullPointer => c"NullPointer",
        BkStatus::EmptyExponents => c"EmptyExponents",
        BkStatus::InvalidExponent => c"InvalidExponent",
        BkStatus::InvalidFamily => c"InvalidFamily",
        BkStatus::OddDimension => c"OddDimension",
        BkStatus::BudgetExceeded => c"BudgetExceeded",
        BkStatus::NotCommonMultiple => c"NotCommonMultiple",
        BkStatus::AmbiguousRounding => c"AmbiguousRounding",
        BkStatus::NotFiniteOrder => c"NotFiniteOrder",
        BkStatus::IncomparableLinks => c"IncomparableLinks",
        BkStatus::NotDivisibleByEight => c"NotDivisibleBy8",
        BkStatus::InvalidArgument => c"InvalidArgument",
        BkStatus::Panic => c"Panic",
    };
    s.as_ptr()
}
