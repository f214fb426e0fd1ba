//! C ABI for the unising library. Verdicts travel as opaque handles with
//! accessor functions; every call returns a status code and never unwinds
//! across the boundary.
//!
//! The generated header lands in `include/unising.h` at build time.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::ptr;

use unising::cover::{unisingularity_verdict, CoveringVerdict, ScanOptions, Strategy, VerdictOptions};
use unising::error::Error;

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum UnisingStatus {
    Ok = 0,
    /// Bad arguments: non-prime input, malformed vector, unknown strategy.
    InvalidArgument = 1,
    /// An internal consistency check failed (e.g. shortcut and scan disagree).
    InternalError = 2,
    /// The requested enumeration exceeds the configured budget.
    BudgetExceeded = 3,
    /// A required pointer was null.
    NullPointer = 4,
    /// The library panicked; state may be inconsistent.
    Panic = 5,
}

fn status_of(e: &Error) -> UnisingStatus {
    match e {
        Error::Invariant(_) => UnisingStatus::InternalError,
        Error::BudgetExceeded { .. } | Error::Interrupted { .. } => UnisingStatus::BudgetExceeded,
        _ => UnisingStatus::InvalidArgument,
    }
}

fn guarded(f: impl FnOnce() -> UnisingStatus) -> UnisingStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => UnisingStatus::Panic,
    }
}

/// Opaque covering verdict handle.
pub struct UnisingVerdict {
    inner: CoveringVerdict,
    method: CString,
}

/// Scan configuration; zero/null fields select the defaults.
#[repr(C)]
pub struct UnisingScanConfig {
    /// Worker threads; 0 means 1.
    pub workers: u32,
    /// Nonzero: return the least witness in canonical order.
    pub deterministic: bool,
    /// Nonzero: run the scan even when a shortcut applies, and cross-check.
    pub force_scan: bool,
    /// Enumeration budget; 0 means the default of 2^48.
    pub budget: u64,
    /// 0 = scalar_normalized, 1 = exhaustive.
    pub strategy: u8,
    /// Optional checkpoint file path (UTF-8), or null.
    pub checkpoint_path: *const c_char,
}

fn options_from(cfg: Option<&UnisingScanConfig>) -> Result<VerdictOptions, UnisingStatus> {
    let mut opts = VerdictOptions {
        scan: ScanOptions { deterministic: false, budget: Some(1 << 48), ..ScanOptions::default() },
        ..Default::default()
    };
    let Some(cfg) = cfg else { return Ok(opts) };
    opts.scan.workers = (cfg.workers.max(1)) as usize;
    opts.scan.deterministic = cfg.deterministic;
    opts.force_scan = cfg.force_scan;
    if cfg.budget > 0 {
        opts.scan.budget = Some(cfg.budget);
    }
    opts.scan.strategy = match cfg.strategy {
        0 => Strategy::ScalarNormalized,
        1 => Strategy::Exhaustive,
        _ => return Err(UnisingStatus::InvalidArgument),
    };
    if !cfg.checkpoint_path.is_null() {
        let path = unsafe { CStr::from_ptr(cfg.checkpoint_path) };
        match path.to_str() {
            Ok(s) => opts.scan.checkpoint = Some(PathBuf::from(s)),
            Err(_) => return Err(UnisingStatus::InvalidArgument),
        }
    }
    Ok(opts)
}

/// Least d >= 1 with base^d = 1 mod modulus (modulus prime, base coprime).
///
/// # Safety
/// `out` must point to writable memory for one u64.
#[no_mangle]
pub unsafe extern "C" fn unising_multiplicative_order(
    base: u64,
    modulus: u64,
    out: *mut u64,
) -> UnisingStatus {
    if out.is_null() {
        return UnisingStatus::NullPointer;
    }
    guarded(|| match unising::ff::multiplicative_order(base, modulus) {
        Ok(d) => {
            unsafe { *out = d };
            UnisingStatus::Ok
        }
        Err(e) => status_of(&e),
    })
}

/// Unisingularity verdict for the prime pair (r, p). On success `*out` owns
/// a verdict handle that must be released with `unising_verdict_free`.
///
/// # Safety
/// `out` must be a valid pointer; `config` is either null or a valid
/// `UnisingScanConfig` whose `checkpoint_path` is null or a NUL-terminated
/// UTF-8 string.
#[no_mangle]
pub unsafe extern "C" fn unising_grp_cover(
    r: u64,
    p: u64,
    config: *const UnisingScanConfig,
    out: *mut *mut UnisingVerdict,
) -> UnisingStatus {
    if out.is_null() {
        return UnisingStatus::NullPointer;
    }
    unsafe { *out = ptr::null_mut() };
    guarded(|| {
        let cfg = unsafe { config.as_ref() };
        let opts = match options_from(cfg) {
            Ok(o) => o,
            Err(s) => return s,
        };
        match unisingularity_verdict(r, p, &opts) {
            Ok(v) => {
                let method = CString::new(v.method.clone()).unwrap_or_default();
                let handle = Box::new(UnisingVerdict { inner: v, method });
                unsafe { *out = Box::into_raw(handle) };
                UnisingStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// # Safety
/// `verdict` must be a live handle from `unising_grp_cover`.
#[no_mangle]
pub unsafe extern "C" fn unising_verdict_covered(verdict: *const UnisingVerdict) -> bool {
    unsafe { verdict.as_ref() }.map(|v| v.inner.covered).unwrap_or(false)
}

/// Rank d of the translation subgroup acted on.
///
/// # Safety
/// `verdict` must be a live handle from `unising_grp_cover`.
#[no_mangle]
pub unsafe extern "C" fn unising_verdict_dimension(verdict: *const UnisingVerdict) -> u64 {
    unsafe { verdict.as_ref() }.map(|v| v.inner.d as u64).unwrap_or(0)
}

/// # Safety
/// `verdict` must be a live handle from `unising_grp_cover`.
#[no_mangle]
pub unsafe extern "C" fn unising_verdict_vectors_scanned(verdict: *const UnisingVerdict) -> u64 {
    unsafe { verdict.as_ref() }.map(|v| v.inner.vectors_scanned).unwrap_or(0)
}

/// Length of the witness vector, 0 when covered.
///
/// # Safety
/// `verdict` must be a live handle from `unising_grp_cover`.
#[no_mangle]
pub unsafe extern "C" fn unising_verdict_witness_len(verdict: *const UnisingVerdict) -> usize {
    unsafe { verdict.as_ref() }
        .and_then(|v| v.inner.witness.as_ref())
        .map(|w| w.len())
        .unwrap_or(0)
}

/// Copy the witness digits into `buf` (length `len` >= witness_len).
///
/// # Safety
/// `verdict` must be a live handle and `buf` must point to `len` writable
/// u64 slots.
#[no_mangle]
pub unsafe extern "C" fn unising_verdict_witness(
    verdict: *const UnisingVerdict,
    buf: *mut u64,
    len: usize,
) -> UnisingStatus {
    let Some(v) = (unsafe { verdict.as_ref() }) else { return UnisingStatus::NullPointer };
    let Some(w) = v.inner.witness.as_ref() else { return UnisingStatus::InvalidArgument };
    if buf.is_null() {
        return UnisingStatus::NullPointer;
    }
    if len < w.len() {
        return UnisingStatus::InvalidArgument;
    }
    unsafe { ptr::copy_nonoverlapping(w.as_ptr(), buf, w.len()) };
    UnisingStatus::Ok
}

/// Borrowed method tag (shortcut name or scan strategy); valid while the
/// verdict handle lives.
///
/// # Safety
/// `verdict` must be a live handle from `unising_grp_cover`.
#[no_mangle]
pub unsafe extern "C" fn unising_verdict_method(verdict: *const UnisingVerdict) -> *const c_char {
    unsafe { verdict.as_ref() }.map(|v| v.method.as_ptr()).unwrap_or(ptr::null())
}

/// Render the verdict as its canonical JSON object; the returned string must
/// be released with `unising_string_free`.
///
/// # Safety
/// `verdict` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn unising_verdict_to_json(
    verdict: *const UnisingVerdict,
    out: *mut *mut c_char,
) -> UnisingStatus {
    if out.is_null() {
        return UnisingStatus::NullPointer;
    }
    let Some(v) = (unsafe { verdict.as_ref() }) else { return UnisingStatus::NullPointer };
    guarded(|| {
        let json = serde_json::to_string(&v.inner).expect("verdict serializes");
        match CString::new(json) {
            Ok(s) => {
                unsafe { *out = s.into_raw() };
                UnisingStatus::Ok
            }
            Err(_) => UnisingStatus::InternalError,
        }
    })
}

/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn unising_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// # Safety
/// `verdict` must come from `unising_grp_cover` and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn unising_verdict_free(verdict: *mut UnisingVerdict) {
    if !verdict.is_null() {
        drop(unsafe { Box::from_raw(verdict) });
    }
}

/// Certify a witness for the pair (r, p): nonzero and off all p hyperplanes.
///
/// # Safety
/// `witness` must point to `len` readable u64 values; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn unising_verify_witness(
    r: u64,
    p: u64,
    witness: *const u64,
    len: usize,
    out: *mut bool,
) -> UnisingStatus {
    if witness.is_null() || out.is_null() {
        return UnisingStatus::NullPointer;
    }
    guarded(|| {
        let w = unsafe { std::slice::from_raw_parts(witness, len) };
        let spec = match unising::grp::construct_grp(r, p) {
            Ok(s) => s,
            Err(e) => return status_of(&e),
        };
        let inst = match unising::cover::build_instance(&spec, None) {
            Ok(i) => i,
            Err(e) => return status_of(&e),
        };
        unsafe { *out = unising::cover::verify_witness(&inst, w) };
        UnisingStatus::Ok
    })
}

/// The GL_n(2) highest-weight criterion on 0/1 labels a_1..a_{n-1}.
///
/// # Safety
/// `bits` must point to `len` readable bytes; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn unising_gl2_criterion(
    n: u32,
    bits: *const u8,
    len: usize,
    out: *mut bool,
) -> UnisingStatus {
    if bits.is_null() || out.is_null() {
        return UnisingStatus::NullPointer;
    }
    guarded(|| {
        if n < 2 {
            return UnisingStatus::InvalidArgument;
        }
        let b = unsafe { std::slice::from_raw_parts(bits, len) };
        match unising::weights::gl2_unisingular_criterion(n as usize, b) {
            Ok(v) => {
                unsafe { *out = v };
                UnisingStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Root-lattice membership of a weight in fundamental coordinates. `family`
/// is one of 'A'..'G'.
///
/// # Safety
/// `coeffs` must point to `len` readable i64 values; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn unising_root_lattice(
    family: c_char,
    rank: u32,
    coeffs: *const i64,
    len: usize,
    out: *mut bool,
) -> UnisingStatus {
    if coeffs.is_null() || out.is_null() {
        return UnisingStatus::NullPointer;
    }
    guarded(|| {
        let Some(fam) = unising::weights::Family::from_char(family as u8 as char) else {
            return UnisingStatus::InvalidArgument;
        };
        let lie = match unising::weights::LieType::new(fam, rank as usize) {
            Ok(l) => l,
            Err(e) => return status_of(&e),
        };
        let c = unsafe { std::slice::from_raw_parts(coeffs, len) };
        match unising::weights::WeightVec::new(lie, c.to_vec()) {
            Ok(w) => {
                unsafe { *out = unising::weights::in_root_lattice(&w) };
                UnisingStatus::Ok
            }
            Err(e) => status_of(&e),
        }
    })
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn unising_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}
