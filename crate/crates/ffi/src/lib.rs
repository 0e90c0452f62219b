//! C ABI over the flagcoh engine.
//!
//! Every fallible function returns a [`FlagcohStatus`]. On failure the
//! message is kept per thread and can be read with
//! [`flagcoh_last_error_message`]. Strings handed out by the library must be
//! released with [`flagcoh_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use flagcoh::bwb::{line_bundle_cohomology, BwbResult};
use flagcoh::opcalc::{self, Surjectivity};
use flagcoh::rootsystem::{parse_type_spec, RootSystem, Weight};
use flagcoh::svariety::{GammaMonoid, SaturationStatus};
use flagcoh::weyl::{self, WeylElement};
use flagcoh::Error;

/// Result codes. Values 2 to 4 coincide with the command-line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlagcohStatus {
    Ok = 0,
    Internal = 1,
    Parse = 2,
    Math = 3,
    CapExceeded = 4,
    NullPointer = 5,
    InvalidUtf8 = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlagcohSurjectivity {
    Surjective = 0,
    NotSurjective = 1,
    CriterionNotApplicable = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlagcohSaturation {
    Holds = 0,
    Fails = 1,
    Inconclusive = 2,
}

/// Opaque root system handle.
pub struct FlagcohRootSystem {
    inner: RootSystem,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> FlagcohStatus {
    match e.exit_code() {
        2 => FlagcohStatus::Parse,
        3 => FlagcohStatus::Math,
        4 => FlagcohStatus::CapExceeded,
        _ => FlagcohStatus::Internal,
    }
}

struct Failure(FlagcohStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(FlagcohStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> FlagcohStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            FlagcohStatus::Ok
        }
        Ok(Err(Failure(code, msg))) => {
            set_error(msg);
            code
        }
        Err(_) => {
            set_error("panic inside flagcoh".into());
            FlagcohStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(FlagcohStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a>(rs: *const FlagcohRootSystem) -> Result<&'a RootSystem, Failure> {
    rs.as_ref()
        .map(|h| &h.inner)
        .ok_or_else(|| null("root system handle"))
}

unsafe fn weight_arg(rs: &RootSystem, p: *const i64, len: usize) -> Result<Weight, Failure> {
    if len != rs.rank() {
        return Err(Error::RankMismatch {
            expected: rs.rank(),
            got: len,
        }
        .into());
    }
    if len == 0 {
        return Ok(Weight(Vec::new()));
    }
    if p.is_null() {
        return Err(null("weight"));
    }
    Ok(Weight(std::slice::from_raw_parts(p, len).to_vec()))
}

unsafe fn put<T>(out: *mut T, v: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(v);
    Ok(())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s)
        .expect("engine output contains no NUL")
        .into_raw()
}

/// Builds a root system from a type string such as `"A2"` or `"A1xB2"`.
///
/// # Safety
/// `ty` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn flagcoh_root_system_new(
    ty: *const c_char,
    out: *mut *mut FlagcohRootSystem,
) -> FlagcohStatus {
    guard(|| {
        let s = str_arg(ty, "type string")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let inner = RootSystem::parse(s)?;
        out.write(Box::into_raw(Box::new(FlagcohRootSystem { inner })));
        Ok(())
    })
}

/// # Safety
/// `rs` must come from [`flagcoh_root_system_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn flagcoh_root_system_free(rs: *mut FlagcohRootSystem) {
    if !rs.is_null() {
        drop(Box::from_raw(rs));
    }
}

/// Rank of the root system, 0 for a null handle.
///
/// # Safety
/// `rs` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn flagcoh_root_system_rank(rs: *const FlagcohRootSystem) -> usize {
    rs.as_ref().map_or(0, |h| h.inner.rank())
}

/// Number of positive roots, 0 for a null handle.
///
/// # Safety
/// `rs` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn flagcoh_num_positive_roots(rs: *const FlagcohRootSystem) -> usize {
    rs.as_ref().map_or(0, |h| h.inner.num_positive_roots())
}

/// `|W|`.
///
/// # Safety
/// `rs` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn flagcoh_weyl_order(
    rs: *const FlagcohRootSystem,
    out: *mut u64,
) -> FlagcohStatus {
    guard(|| put(out, handle(rs)?.weyl_order(), "out"))
}

/// Coefficients of the Poincaré polynomial, written to `out[0..=N]` where
/// `N` is the number of positive roots.
///
/// # Safety
/// `out` must have room for `len` values.
#[no_mangle]
pub unsafe extern "C" fn flagcoh_poincare(
    rs: *const FlagcohRootSystem,
    out: *mut u64,
    len: usize,
) -> FlagcohStatus {
    guard(|| {
        let r = handle(rs)?;
        let p = weyl::poincare_coefficients(r);
        if len < p.len() {
            return Err(
                Error::Domain(format!("buffer of {len} too small, need {}", p.len())).into(),
            );
        }
        if out.is_null() {
            return Err(null("out"));
        }
        ptr::copy_nonoverlapping(p.as_ptr(), out, p.len());
        Ok(())
    })
}

/// `k(λ) = ⟨λ, 2ρ∨⟩`.
///
/// # Safety
/// `weight` must point to `len` values.
#[no_mangle]
pub unsafe extern "C" fn flagcoh_k_value(
    rs: *const FlagcohRootSystem,
    weight: *const i64,
    len: usize,
    out: *mut i64,
) -> FlagcohStatus {
    guard(|| {
        let r = handle(rs)?;
        let w = weight_arg(r, weight, len)?;
        put(out, opcalc::k_value(r, &w)?, "out")
    })
}

/// Cohomology of `L_λ`. When `*vanishes` is 0, `*degree` is the unique
/// nonzero degree and `mu_out[0..len]` receives the dominant weight `μ`.
///
/// # Safety
/// `lambda` and `mu_out` must each hold `len` values.
#[no_mangle]
pub unsafe extern "C" fn flagcoh_bwb(
    rs: *const FlagcohRootSystem,
    lambda: *const i64,
    len: usize,
    vanishes: *mut i32,
    degree: *mut usize,
    mu_out: *mut i64,
) -> FlagcohStatus {
    guard(|| {
        let r = handle(rs)?;
        let l = weight_arg(r, lambda, len)?;
        if vanishes.is_null() || degree.is_null() || (len > 0 && mu_out.is_null()) {
            return Err(null("output pointer"));
        }
        match line_bundle_cohomology(r, &l)? {
            BwbResult::Vanishes => {
                vanishes.write(1);
            }
            BwbResult::NonZero { degree: d, mu, .. } => {
                vanishes.write(0);
                degree.write(d);
                ptr::copy_nonoverlapping(mu.0.as_ptr(), mu_out, len);
            }
        }
        Ok(())
    })
}

/// `dim V(λ)` as a decimal string.
///
/// # Safety
/// `weight` must point to `len` values; `out` receives a string to be freed
/// with [`flagcoh_string_free`].
#[no_mangle]
pub unsafe extern "C" fn flagcoh_weyl_dimension(
    rs: *const FlagcohRootSystem,
    weight: *const i64,
    len: usize,
    out: *mut *mut c_char,
) -> FlagcohStatus {
    guard(|| {
        let r = handle(rs)?;
        let w = weight_arg(r, weight, len)?;
        let d = r.weyl_dimension(&w)?;
        put(out, owned_string(d.to_string()), "out")
    })
}

/// `P_η`, optionally twisted. `twist` is null, `"w0"`, or a 1-based word
/// such as `"1,2,1"`.
///
/// # Safety
/// `eta` must point to `len` values; `twist` must be null or NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn flagcoh_p_eta(
    rs: *const FlagcohRootSystem,
    eta: *const i64,
    len: usize,
    twist: *const c_char,
    out: *mut *mut c_char,
) -> FlagcohStatus {
    guard(|| {
        let r = handle(rs)?;
        let e = weight_arg(r, eta, len)?;
        let mut p = opcalc::p_eta(r, &e)?;
        if !twist.is_null() {
            let t = str_arg(twist, "twist")?.trim();
            let w = if t.eq_ignore_ascii_case("w0") {
                weyl::longest_element(r)
            } else {
                let word = t
                    .split(',')
                    .filter(|x| !x.trim().is_empty())
                    .map(|x| match x.trim().parse::<usize>() {
                        Ok(i) if i >= 1 => Ok(i - 1),
                        _ => Err(Error::Parse(format!("bad Weyl word letter '{x}'"))),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                WeylElement::from_word(r, &word)?
            };
            p = opcalc::fw_on_poly(r, &w, &p)?;
        }
        put(out, owned_string(p.to_string()), "out")
    })
}

/// Minimal-orbit data for a simple type.
///
/// # Safety
/// `ty` must be NUL-terminated; output pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn flagcoh_min_orbit(
    ty: *const c_char,
    k: *mut i64,
    coxeter_h: *mut i64,
    surjectivity: *mut FlagcohSurjectivity,
) -> FlagcohStatus {
    guard(|| {
        let s = str_arg(ty, "type string")?;
        let types = parse_type_spec(s)?;
        if types.len() != 1 {
            return Err(Error::Domain(format!("{s} is not simple")).into());
        }
        let rep = opcalc::min_orbit_report(types[0])?;
        put(k, rep.k, "k")?;
        put(coxeter_h, rep.coxeter_h, "coxeter_h")?;
        let v = match rep.surjectivity {
            Surjectivity::Surjective => FlagcohSurjectivity::Surjective,
            Surjectivity::NotSurjective => FlagcohSurjectivity::NotSurjective,
            Surjectivity::CriterionNotApplicable => FlagcohSurjectivity::CriterionNotApplicable,
        };
        put(surjectivity, v, "surjectivity")
    })
}

/// Tests `Γ = ZΓ ∩ Λ⁺` for the monoid generated by `count` weights stored
/// row by row in `gens` (each of length `rank`). When the result is
/// `Fails`, `witness_out[0..rank]` receives a witness.
///
/// # Safety
/// `gens` must hold `count * rank` values and `witness_out` `rank` values.
#[no_mangle]
pub unsafe extern "C" fn flagcoh_svariety_check(
    rs: *const FlagcohRootSystem,
    gens: *const i64,
    count: usize,
    hilbert_cap: u64,
    verdict: *mut FlagcohSaturation,
    witness_out: *mut i64,
) -> FlagcohStatus {
    guard(|| {
        let r = handle(rs)?;
        let l = r.rank();
        if gens.is_null() {
            return Err(null("gens"));
        }
        let flat = std::slice::from_raw_parts(gens, count * l);
        let ws: Vec<Weight> = flat.chunks(l.max(1)).map(|c| Weight(c.to_vec())).collect();
        let m = GammaMonoid::new(r, &ws)?;
        let v = m.check_saturation(r, hilbert_cap)?;
        let code = match v.status {
            SaturationStatus::Holds => FlagcohSaturation::Holds,
            SaturationStatus::Fails => FlagcohSaturation::Fails,
            SaturationStatus::Inconclusive => FlagcohSaturation::Inconclusive,
        };
        put(verdict, code, "verdict")?;
        if let Some(w) = v.witness {
            if witness_out.is_null() {
                return Err(null("witness_out"));
            }
            ptr::copy_nonoverlapping(w.0.as_ptr(), witness_out, l);
        }
        Ok(())
    })
}

/// Message of the last failure on this thread, or null. The pointer stays
/// valid until the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn flagcoh_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn flagcoh_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version, statically allocated.
#[no_mangle]
pub extern "C" fn flagcoh_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
