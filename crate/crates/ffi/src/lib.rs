//! C ABI for `excisive-core`.
//!
//! Conventions:
//!
//! * Every fallible function returns an [`ExcStatus`] and writes its result
//!   through an out-pointer, which is left untouched on failure.
//! * After a non-`OK` status, [`exc_last_error_message`] describes the failure.
//!   The message is per thread and stays valid until the next failing call
//!   on the same thread.
//! * Strings returned through `char **` are owned by the caller and must be
//!   released with [`exc_string_free`].
//! * Handles ([`ExcPresentation`], [`ExcTruncation`]) are opaque, immutable
//!   after construction, and released with their `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use excisive_core::balmer::{self, BalmerPrime, SpectrumTruncation};
use excisive_core::burnside::BurnsidePresentation;
use excisive_core::classify;
use excisive_core::combinat::{self, MuMethod};
use excisive_core::{Error, NatInf, Prime, SpectrumPoint};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExcStatus {
    Ok = 0,
    NullPointer = 1,
    Precondition = 2,
    BudgetExceeded = 3,
    DimensionMismatch = 4,
    NotAdmissible = 5,
    IllFormedThomason = 6,
    NotRepresentable = 7,
    Internal = 8,
    OutOfRange = 9,
    Panic = 10,
}

impl From<&Error> for ExcStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => ExcStatus::BudgetExceeded,
            Error::Precondition(_) => ExcStatus::Precondition,
            Error::DimensionMismatch { .. } => ExcStatus::DimensionMismatch,
            Error::NotAdmissible(_) => ExcStatus::NotAdmissible,
            Error::IllFormedThomason { .. } => ExcStatus::IllFormedThomason,
            Error::NotRepresentable(_) => ExcStatus::NotRepresentable,
            Error::Internal(_) => ExcStatus::Internal,
        }
    }
}

/// A value of `ℕ ∪ {∞}`; `value` is ignored when `infinite` is set.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExcNatInf {
    pub value: u64,
    pub infinite: bool,
}

impl From<NatInf> for ExcNatInf {
    fn from(n: NatInf) -> Self {
        match n {
            NatInf::Finite(value) => ExcNatInf {
                value,
                infinite: false,
            },
            NatInf::Infinity => ExcNatInf {
                value: 0,
                infinite: true,
            },
        }
    }
}

impl From<ExcNatInf> for NatInf {
    fn from(n: ExcNatInf) -> Self {
        if n.infinite {
            NatInf::Infinity
        } else {
            NatInf::Finite(n.value)
        }
    }
}

/// A point of a Balmer spectrum truncation. `characteristic` is 0 for the
/// height-1 points.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExcPoint {
    pub layer: u32,
    pub characteristic: u64,
    pub height: ExcNatInf,
}

impl From<&BalmerPrime> for ExcPoint {
    fn from(p: &BalmerPrime) -> Self {
        ExcPoint {
            layer: p.layer(),
            characteristic: p.characteristic(),
            height: p.height().into(),
        }
    }
}

/// Structure constants of the Goodwillie-Burnside ring `A(d)`.
pub struct ExcPresentation(BurnsidePresentation);

/// A finite truncation of the Balmer spectrum with its inclusion order.
pub struct ExcTruncation(SpectrumTruncation);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    let c = CString::new(msg).expect("interior NULs removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = c);
}

/// Runs `f`, turning errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (ExcStatus, String)>) -> ExcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ExcStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside excisive-core");
            ExcStatus::Panic
        }
    }
}

fn core<T>(r: excisive_core::Result<T>) -> Result<T, (ExcStatus, String)> {
    r.map_err(|e| (ExcStatus::from(&e), e.to_string()))
}

fn prime(p: u64) -> Result<Prime, (ExcStatus, String)> {
    core(Prime::new(p))
}

fn null(what: &str) -> (ExcStatus, String) {
    (ExcStatus::NullPointer, format!("{what} is NULL"))
}

/// # Safety
/// `out` must be NULL or valid for writes of `T`.
unsafe fn write<T>(out: *mut T, value: T) -> Result<(), (ExcStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .expect("interior NULs removed")
        .into_raw()
}

/// Message describing the most recent failure on this thread; never NULL.
#[no_mangle]
pub extern "C" fn exc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed before.
#[no_mangle]
pub unsafe extern "C" fn exc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `δ_p(k, l)`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn exc_delta_p(p: u64, k: u64, l: u64, out: *mut ExcNatInf) -> ExcStatus {
    guard(|| {
        let d = core(combinat::delta_p(prime(p)?, k, l))?;
        write(out, d.into())
    })
}

/// Whether `k` is a sum of exactly `l` powers of `p`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn exc_ppp_exists(p: u64, k: u64, l: u64, out: *mut bool) -> ExcStatus {
    guard(|| write(out, combinat::ppp_exists(prime(p)?, k, l)))
}

/// `μ(i, j, k)` as a decimal string. `method` is 0 (brute force),
/// 1 (inclusion-exclusion) or 2 (Stirling numbers).
///
/// # Safety
/// `out` must be valid for writes; free the result with [`exc_string_free`].
#[no_mangle]
pub unsafe extern "C" fn exc_mu(
    i: u64,
    j: u64,
    k: u64,
    method: u32,
    out: *mut *mut c_char,
) -> ExcStatus {
    guard(|| {
        let m = *MuMethod::ALL
            .get(method as usize)
            .ok_or((ExcStatus::OutOfRange, format!("unknown method {method}")))?;
        let v = core(m.eval(i, j, k))?;
        write(out, into_c_string(v.to_string()))
    })
}

/// Whether `P([k], p, n+1) ⊆ P([l], p, h+1)` in the spectrum of `d`-excisive functors.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn exc_smith_holds(
    d: u32,
    p: u64,
    k: u32,
    l: u32,
    n: ExcNatInf,
    h: ExcNatInf,
    out: *mut bool,
) -> ExcStatus {
    guard(|| {
        let holds = core(balmer::smith_holds(d, prime(p)?, k, l, n.into(), h.into()))?;
        write(out, holds)
    })
}

/// Number of `p`-admissible functions on `[d]` with values in `{0..hmax, ∞}`.
/// Fails with `BudgetExceeded` when `(hmax + 2)^d > budget`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn exc_count_p_admissible(
    d: u32,
    p: u64,
    hmax: u64,
    budget: u64,
    out: *mut u64,
) -> ExcStatus {
    guard(|| {
        let n = core(classify::count_p_admissible(d, prime(p)?, hmax, budget))?;
        write(out, n)
    })
}

/// Builds the presentation of `A(d)`.
///
/// # Safety
/// `out` must be valid for writes; release the handle with [`exc_presentation_free`].
#[no_mangle]
pub unsafe extern "C" fn exc_presentation_new(
    d: usize,
    out: *mut *mut ExcPresentation,
) -> ExcStatus {
    guard(|| {
        let pres = core(BurnsidePresentation::new(d))?;
        write(out, Box::into_raw(Box::new(ExcPresentation(pres))))
    })
}

/// # Safety
/// `pres` must be NULL or a live handle from [`exc_presentation_new`].
#[no_mangle]
pub unsafe extern "C" fn exc_presentation_free(pres: *mut ExcPresentation) {
    if !pres.is_null() {
        drop(Box::from_raw(pres));
    }
}

/// The rank `d` of the ring, or 0 for NULL.
///
/// # Safety
/// `pres` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn exc_presentation_rank(pres: *const ExcPresentation) -> usize {
    pres.as_ref().map_or(0, |p| p.0.d())
}

/// The coefficient of `x_l` in `x_i x_j`, as a decimal string.
///
/// # Safety
/// `pres` must be a live handle and `out` valid for writes; free the result
/// with [`exc_string_free`].
#[no_mangle]
pub unsafe extern "C" fn exc_presentation_mu(
    pres: *const ExcPresentation,
    i: usize,
    j: usize,
    l: usize,
    out: *mut *mut c_char,
) -> ExcStatus {
    guard(|| {
        let pres = &pres.as_ref().ok_or_else(|| null("presentation"))?.0;
        let d = pres.d();
        if [i, j, l].iter().any(|&x| x == 0 || x > d) {
            return Err((
                ExcStatus::OutOfRange,
                format!("indices must lie in 1..={d}"),
            ));
        }
        write(out, into_c_string(pres.mu(i, j, l).to_string()))
    })
}

/// Builds the truncation of layers `1..=d` over `primes[0..n_primes]`, with
/// heights up to `hmax` and optionally `∞`.
///
/// # Safety
/// `primes` must point to `n_primes` readable values (or be NULL with
/// `n_primes == 0`); `out` must be valid for writes. Release with
/// [`exc_truncation_free`].
#[no_mangle]
pub unsafe extern "C" fn exc_truncation_new(
    d: u32,
    primes: *const u64,
    n_primes: usize,
    hmax: u64,
    include_infinity: bool,
    out: *mut *mut ExcTruncation,
) -> ExcStatus {
    guard(|| {
        let raw: &[u64] = if n_primes == 0 {
            &[]
        } else if primes.is_null() {
            return Err(null("primes"));
        } else {
            std::slice::from_raw_parts(primes, n_primes)
        };
        let primes = raw
            .iter()
            .map(|&p| prime(p))
            .collect::<Result<Vec<_>, _>>()?;
        let t = core(balmer::b_truncation(d, &primes, hmax, include_infinity))?;
        write(out, Box::into_raw(Box::new(ExcTruncation(t))))
    })
}

/// # Safety
/// `t` must be NULL or a live handle from [`exc_truncation_new`].
#[no_mangle]
pub unsafe extern "C" fn exc_truncation_free(t: *mut ExcTruncation) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Number of points, or 0 for NULL.
///
/// # Safety
/// `t` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn exc_truncation_len(t: *const ExcTruncation) -> usize {
    t.as_ref().map_or(0, |t| t.0.len())
}

/// The point at `index`, in the canonical (layer, characteristic, height) order.
///
/// # Safety
/// `t` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn exc_truncation_point(
    t: *const ExcTruncation,
    index: usize,
    out: *mut ExcPoint,
) -> ExcStatus {
    guard(|| {
        let t = &t.as_ref().ok_or_else(|| null("truncation"))?.0;
        let p = t.points().get(index).ok_or((
            ExcStatus::OutOfRange,
            format!("index {index} ≥ {}", t.len()),
        ))?;
        write(out, p.into())
    })
}

/// Whether point `a` is contained in point `b`.
///
/// # Safety
/// `t` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn exc_truncation_leq(
    t: *const ExcTruncation,
    a: usize,
    b: usize,
    out: *mut bool,
) -> ExcStatus {
    guard(|| {
        let t = &t.as_ref().ok_or_else(|| null("truncation"))?.0;
        if a >= t.len() || b >= t.len() {
            return Err((
                ExcStatus::OutOfRange,
                format!("indices must be < {}", t.len()),
            ));
        }
        write(out, t.leq_idx(a, b))
    })
}

/// Graphviz rendering of the Hasse diagram.
///
/// # Safety
/// `t` must be a live handle and `out` valid for writes; free the result with
/// [`exc_string_free`].
#[no_mangle]
pub unsafe extern "C" fn exc_truncation_dot(
    t: *const ExcTruncation,
    out: *mut *mut c_char,
) -> ExcStatus {
    guard(|| {
        let t = &t.as_ref().ok_or_else(|| null("truncation"))?.0;
        write(out, into_c_string(t.to_dot()))
    })
}

/// JSON rendering: points, covers and the full relation.
///
/// # Safety
/// `t` must be a live handle and `out` valid for writes; free the result with
/// [`exc_string_free`].
#[no_mangle]
pub unsafe extern "C" fn exc_truncation_json(
    t: *const ExcTruncation,
    out: *mut *mut c_char,
) -> ExcStatus {
    guard(|| {
        let t = &t.as_ref().ok_or_else(|| null("truncation"))?.0;
        write(out, into_c_string(t.poset().to_json()))
    })
}

/// Version string of the library; static, never freed.
#[no_mangle]
pub extern "C" fn exc_version() -> *const c_char {
    static VERSION: &CStr =
        match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
            Ok(v) => v,
            Err(_) => panic!("version has no interior NUL"),
        };
    VERSION.as_ptr()
}
