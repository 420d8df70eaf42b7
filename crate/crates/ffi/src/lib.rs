//! C ABI for the kopel library.
//!
//! Objects cross the boundary as opaque handles owned by the caller and
//! released with the matching `*_free`. Every fallible call returns a
//! `KopelStatus`; the message for the last failure on the calling thread is
//! available from `kopel_last_error`.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use kopel::exact::rational::{self, Rational};
use kopel::exact::{resultant, MPoly, Var};
use kopel::model::SymParams;
use kopel::snapback::{self, SnapbackCertificate, SnapbackOptions};
use kopel::solve2d::Verdict;
use kopel::Error;

/// Status codes. `KOPEL_STATUS_NO` and `KOPEL_STATUS_UNDECIDED` are
/// verdicts, not failures.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KopelStatus {
    Ok = 0,
    No = 1,
    Undecided = 2,
    NullPointer = 10,
    InvalidUtf8 = 11,
    Usage = 64,
    Parse = 65,
    Domain = 66,
    Degenerate = 67,
    Singular = 68,
    RootOnEndpoint = 69,
    Io = 74,
    Panic = 99,
}

/// Opaque polynomial with rational coefficients.
pub struct KopelPoly(MPoly);

/// Opaque snapback certificate.
pub struct KopelSnapback(SnapbackCertificate);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(s).ok());
}

fn status_of(e: &Error) -> KopelStatus {
    match e {
        Error::Usage(_) => KopelStatus::Usage,
        Error::Parse(_) => KopelStatus::Parse,
        Error::Domain(_) => KopelStatus::Domain,
        Error::Degenerate(_) => KopelStatus::Degenerate,
        Error::Singular(_) => KopelStatus::Singular,
        Error::RootOnEndpoint(_) => KopelStatus::RootOnEndpoint,
        Error::Io(_) => KopelStatus::Io,
    }
}

struct Fail(KopelStatus);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        set_error(e.to_string());
        Fail(status_of(&e))
    }
}

fn fail(status: KopelStatus, msg: &str) -> Fail {
    set_error(msg);
    Fail(status)
}

/// Runs `f`, mapping errors and panics to status codes.
fn guard(f: impl FnOnce() -> Result<KopelStatus, Fail>) -> KopelStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err(Fail(s))) => s,
        Err(_) => {
            set_error("internal panic");
            KopelStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(fail(KopelStatus::NullPointer, &format!("{name} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(KopelStatus::InvalidUtf8, &format!("{name} is not UTF-8")))
}

unsafe fn rat_arg(p: *const c_char, name: &str) -> Result<Rational, Fail> {
    Ok(rational::parse_rational(str_arg(p, name)?)?)
}

unsafe fn handle<'a, T>(p: *const T, name: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| fail(KopelStatus::NullPointer, &format!("{name} is null")))
}

fn out_ptr<T>(out: *mut T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(fail(KopelStatus::NullPointer, "output pointer is null"));
    }
    Ok(())
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// Message for the last failure on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn kopel_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn kopel_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn kopel_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a polynomial such as `"x^2 - 2*y + 1/3"`.
#[no_mangle]
pub unsafe extern "C" fn kopel_poly_parse(text: *const c_char, out: *mut *mut KopelPoly) -> KopelStatus {
    guard(|| {
        out_ptr(out)?;
        let p: MPoly = str_arg(text, "text")?.parse()?;
        *out = Box::into_raw(Box::new(KopelPoly(p)));
        Ok(KopelStatus::Ok)
    })
}

/// Canonical text of a polynomial; free with `kopel_string_free`.
#[no_mangle]
pub unsafe extern "C" fn kopel_poly_to_string(p: *const KopelPoly) -> *mut c_char {
    match p.as_ref() {
        Some(p) => c_string(p.0.to_string()),
        None => {
            set_error("poly is null");
            ptr::null_mut()
        }
    }
}

/// Sylvester resultant of `a` and `b` with respect to the variable named `var`.
#[no_mangle]
pub unsafe extern "C" fn kopel_poly_resultant(
    a: *const KopelPoly,
    b: *const KopelPoly,
    var: *const c_char,
    out: *mut *mut KopelPoly,
) -> KopelStatus {
    guard(|| {
        out_ptr(out)?;
        let (a, b) = (handle(a, "a")?, handle(b, "b")?);
        let v = Var::from_name(str_arg(var, "var")?)?;
        let r = resultant(&a.0, &b.0, v)?;
        *out = Box::into_raw(Box::new(KopelPoly(r)));
        Ok(KopelStatus::Ok)
    })
}

#[no_mangle]
pub unsafe extern "C" fn kopel_poly_free(p: *mut KopelPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Number of positive equilibria of the map with parameters mu1, mu2.
#[no_mangle]
pub unsafe extern "C" fn kopel_count_positive_equilibria(
    mu1: *const c_char,
    mu2: *const c_char,
    out: *mut u32,
) -> KopelStatus {
    guard(|| {
        out_ptr(out)?;
        let c = kopel::stability::count_positive_equilibria(&rat_arg(mu1, "mu1")?, &rat_arg(mu2, "mu2")?)?;
        *out = c.count;
        Ok(KopelStatus::Ok)
    })
}

/// Re-derives every built-in identity; `*all_hold` receives the result.
#[no_mangle]
pub unsafe extern "C" fn kopel_identities_check(all_hold: *mut bool) -> KopelStatus {
    guard(|| {
        out_ptr(all_hold)?;
        *all_hold = kopel::identities::run_all()?.all_hold;
        Ok(KopelStatus::Ok)
    })
}

fn verdict_status(v: Verdict) -> KopelStatus {
    match v {
        Verdict::Yes => KopelStatus::Ok,
        Verdict::No => KopelStatus::No,
        Verdict::Undecided => KopelStatus::Undecided,
    }
}

/// Snapback certification at the origin of the symmetric map. `radius`
/// may be NULL for the default schedule; `max_depth` 0 means the default.
/// On success `*out` holds the certificate whatever its verdict.
#[no_mangle]
pub unsafe extern "C" fn kopel_snapback_certify(
    rho: *const c_char,
    mu: *const c_char,
    m: u32,
    radius: *const c_char,
    max_depth: u32,
    out: *mut *mut KopelSnapback,
) -> KopelStatus {
    guard(|| {
        out_ptr(out)?;
        let sp = SymParams::new(rat_arg(mu, "mu")?, rat_arg(rho, "rho")?)?;
        let mut opts = SnapbackOptions::default();
        if !radius.is_null() {
            opts.radii = vec![rat_arg(radius, "radius")?];
        }
        if max_depth > 0 {
            opts.max_depth = max_depth;
        }
        if m > kopel::model::MAX_CLI_M {
            return Err(fail(KopelStatus::Usage, "m exceeds the supported limit"));
        }
        let cert = snapback::certify_snapback(&sp, &snapback::origin(), m, &opts)?;
        *out = Box::into_raw(Box::new(KopelSnapback(cert)));
        Ok(KopelStatus::Ok)
    })
}

/// `KOPEL_STATUS_OK` for YES, `_NO` or `_UNDECIDED` otherwise.
#[no_mangle]
pub unsafe extern "C" fn kopel_snapback_verdict(c: *const KopelSnapback) -> KopelStatus {
    guard(|| Ok(verdict_status(handle(c, "certificate")?.0.verdict)))
}

/// Number of candidate points inside the certified ball.
#[no_mangle]
pub unsafe extern "C" fn kopel_snapback_in_ball_count(c: *const KopelSnapback, out: *mut u32) -> KopelStatus {
    guard(|| {
        out_ptr(out)?;
        *out = handle(c, "certificate")?.0.candidates_in_ball.len() as u32;
        Ok(KopelStatus::Ok)
    })
}

/// Re-checks the certificate independently.
#[no_mangle]
pub unsafe extern "C" fn kopel_snapback_verify(c: *const KopelSnapback) -> KopelStatus {
    guard(|| {
        snapback::verify_snapback_certificate(&handle(c, "certificate")?.0)?;
        Ok(KopelStatus::Ok)
    })
}

/// The certificate as JSON; free with `kopel_string_free`.
#[no_mangle]
pub unsafe extern "C" fn kopel_snapback_to_json(c: *const KopelSnapback) -> *mut c_char {
    let Some(c) = c.as_ref() else {
        set_error("certificate is null");
        return ptr::null_mut();
    };
    match serde_json::to_string(&c.0) {
        Ok(s) => c_string(s),
        Err(e) => {
            set_error(e.to_string());
            ptr::null_mut()
        }
    }
}

#[no_mangle]
pub unsafe extern "C" fn kopel_snapback_free(c: *mut KopelSnapback) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}
