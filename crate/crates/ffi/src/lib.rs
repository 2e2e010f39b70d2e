//! C ABI for `hall-core`.
//!
//! Every fallible function returns a [`HallStatus`] and writes its result
//! through an out-pointer. On failure the out-pointer is left untouched and
//! [`hall_last_error_message`] describes the error. Handles and strings
//! returned by this library must be released with the matching `*_free`
//! function.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hall_core::families::{
    build_cubic, build_cubic_via_pell, danilov_cubic_identity, danilov_quartic_identity, verify_corpus,
    verify_quartic_k3, HallFamilyInstance, VerificationReport,
};
use hall_core::numeric::{danilov_stream, hall_compare, specialize, EpsRational, HallOrdering};
use hall_core::{Error, IntPoly};
use num_bigint::BigInt;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HallStatus {
    Ok = 0,
    InvalidArgument = 1,
    NullPointer = 2,
    InvalidK = 3,
    Parse = 4,
    NotDivisible = 5,
    Verification = 6,
    Degenerate = 7,
    Internal = 8,
}

/// Opaque integer polynomial.
pub struct HallPoly(IntPoly);

/// Opaque family member `(x, y, d)` for one odd `k`.
pub struct HallFamily(HallFamilyInstance);

/// Opaque integer witness `x^3 - y^2 = d`.
pub struct HallWitness(hall_core::HallWitness);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(e: &Error) -> HallStatus {
    match e {
        Error::InvalidK(_) | Error::IndexOutOfRange { .. } => HallStatus::InvalidK,
        Error::Parse(_) => HallStatus::Parse,
        Error::NotDivisible | Error::NotDivisibleAt { .. } | Error::DivisionByZero => HallStatus::NotDivisible,
        Error::BridgeBroken { .. }
        | Error::CrossCheckFailed { .. }
        | Error::InvariantViolated(_)
        | Error::CorpusCorrupted { .. } => HallStatus::Verification,
        Error::DegenerateInput(_) | Error::DegenerateWitness(_) => HallStatus::Degenerate,
        Error::InvalidArgument(_) | Error::ExponentTooLarge { .. } => HallStatus::InvalidArgument,
    }
}

struct Failure(HallStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(HallStatus::NullPointer, format!("{what} is null"))
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure(HallStatus::InvalidArgument, msg.into())
}

/// Runs `f`, converting errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> HallStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            HallStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {msg}"));
            HallStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| invalid(format!("{what} is not valid UTF-8")))
}

unsafe fn read_ref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s).map(CString::into_raw).map_err(|_| Failure(HallStatus::Internal, "interior NUL".into()))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(c_string(s)?);
    Ok(())
}

fn parse_int(s: &str, what: &str) -> Result<BigInt, Failure> {
    s.trim().parse().map_err(|_| Failure(HallStatus::Parse, format!("{what} is not an integer: {s:?}")))
}

fn checked_k(k: i64) -> Result<usize, Failure> {
    usize::try_from(k).map_err(|_| Failure(HallStatus::InvalidK, Error::InvalidK(k).to_string()))
}

/// Message for the last failed call on this thread, or NULL after a
/// successful call. Valid until the next call into this library on the same
/// thread; do not free.
#[no_mangle]
pub extern "C" fn hall_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string; do not free.
#[no_mangle]
pub extern "C" fn hall_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Frees a string returned by this library. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn hall_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses text such as `8*t^7 + 28*t^5 - 1`.
#[no_mangle]
pub unsafe extern "C" fn hall_poly_parse(text: *const c_char, out: *mut *mut HallPoly) -> HallStatus {
    guard(|| {
        let p: IntPoly = read_str(text, "text")?.parse()?;
        write_out(out, Box::into_raw(Box::new(HallPoly(p))), "out")
    })
}

/// Parses the JSON form `{"var":"t","coeffs":["-1","0","8"]}`.
#[no_mangle]
pub unsafe extern "C" fn hall_poly_from_json(json: *const c_char, out: *mut *mut HallPoly) -> HallStatus {
    guard(|| {
        let p: IntPoly = serde_json::from_str(read_str(json, "json")?).map_err(Error::from)?;
        write_out(out, Box::into_raw(Box::new(HallPoly(p))), "out")
    })
}

/// Text form using variable name `var` (NULL means `t`).
#[no_mangle]
pub unsafe extern "C" fn hall_poly_to_string(
    p: *const HallPoly,
    var: *const c_char,
    out: *mut *mut c_char,
) -> HallStatus {
    guard(|| {
        let p = read_ref(p, "poly")?;
        let var = if var.is_null() { "t" } else { read_str(var, "var")? };
        write_string(out, p.0.to_text(var))
    })
}

#[no_mangle]
pub unsafe extern "C" fn hall_poly_to_json(p: *const HallPoly, out: *mut *mut c_char) -> HallStatus {
    guard(|| {
        let p = read_ref(p, "poly")?;
        let s = serde_json::to_string(&p.0).map_err(Error::from)?;
        write_string(out, s)
    })
}

/// Degree of `p`, or `INT64_MIN` for the zero polynomial (and for NULL).
#[no_mangle]
pub unsafe extern "C" fn hall_poly_degree(p: *const HallPoly) -> i64 {
    match p.as_ref().and_then(|p| p.0.deg()) {
        Some(d) => d as i64,
        None => i64::MIN,
    }
}

/// Evaluates `p` at the decimal integer `t`; the value is written as a
/// decimal string.
#[no_mangle]
pub unsafe extern "C" fn hall_poly_eval(p: *const HallPoly, t: *const c_char, out: *mut *mut c_char) -> HallStatus {
    guard(|| {
        let p = read_ref(p, "poly")?;
        let t = parse_int(read_str(t, "t")?, "t")?;
        write_string(out, p.0.eval(&t).to_string())
    })
}

unsafe fn binary(
    a: *const HallPoly,
    b: *const HallPoly,
    out: *mut *mut HallPoly,
    op: impl FnOnce(&IntPoly, &IntPoly) -> IntPoly,
) -> HallStatus {
    guard(|| {
        let (a, b) = (read_ref(a, "a")?, read_ref(b, "b")?);
        write_out(out, Box::into_raw(Box::new(HallPoly(op(&a.0, &b.0)))), "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn hall_poly_add(a: *const HallPoly, b: *const HallPoly, out: *mut *mut HallPoly) -> HallStatus {
    binary(a, b, out, |a, b| a + b)
}

#[no_mangle]
pub unsafe extern "C" fn hall_poly_sub(a: *const HallPoly, b: *const HallPoly, out: *mut *mut HallPoly) -> HallStatus {
    binary(a, b, out, |a, b| a - b)
}

#[no_mangle]
pub unsafe extern "C" fn hall_poly_mul(a: *const HallPoly, b: *const HallPoly, out: *mut *mut HallPoly) -> HallStatus {
    binary(a, b, out, |a, b| a * b)
}

/// Exact quotient `a / b`; fails with `NotDivisible` on a nonzero remainder.
#[no_mangle]
pub unsafe extern "C" fn hall_poly_div_exact(
    a: *const HallPoly,
    b: *const HallPoly,
    out: *mut *mut HallPoly,
) -> HallStatus {
    guard(|| {
        let (a, b) = (read_ref(a, "a")?, read_ref(b, "b")?);
        let q = a.0.div_exact(&b.0)?;
        write_out(out, Box::into_raw(Box::new(HallPoly(q))), "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn hall_poly_free(p: *mut HallPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Builds the family member for odd `k` in `3..=200`.
#[no_mangle]
pub unsafe extern "C" fn hall_family_build(k: i64, out: *mut *mut HallFamily) -> HallStatus {
    guard(|| {
        let inst = build_cubic(checked_k(k)?)?;
        write_out(out, Box::into_raw(Box::new(HallFamily(inst))), "out")
    })
}

/// Same family member, built from the Pell recurrences instead.
#[no_mangle]
pub unsafe extern "C" fn hall_family_build_via_pell(k: i64, out: *mut *mut HallFamily) -> HallStatus {
    guard(|| {
        let inst = build_cubic_via_pell(checked_k(k)?)?;
        write_out(out, Box::into_raw(Box::new(HallFamily(inst))), "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn hall_family_k(f: *const HallFamily) -> i64 {
    f.as_ref().map_or(-1, |f| f.0.k() as i64)
}

#[no_mangle]
pub unsafe extern "C" fn hall_family_to_json(f: *const HallFamily, out: *mut *mut c_char) -> HallStatus {
    guard(|| {
        let f = read_ref(f, "family")?;
        let s = serde_json::to_string(&f.0).map_err(Error::from)?;
        write_string(out, s)
    })
}

unsafe fn family_part(
    f: *const HallFamily,
    out: *mut *mut HallPoly,
    part: impl FnOnce(&HallFamilyInstance) -> &IntPoly,
) -> HallStatus {
    guard(|| {
        let f = read_ref(f, "family")?;
        write_out(out, Box::into_raw(Box::new(HallPoly(part(&f.0).clone()))), "out")
    })
}

/// Copy of `x`; free with [`hall_poly_free`].
#[no_mangle]
pub unsafe extern "C" fn hall_family_x(f: *const HallFamily, out: *mut *mut HallPoly) -> HallStatus {
    family_part(f, out, HallFamilyInstance::x)
}

#[no_mangle]
pub unsafe extern "C" fn hall_family_y(f: *const HallFamily, out: *mut *mut HallPoly) -> HallStatus {
    family_part(f, out, HallFamilyInstance::y)
}

#[no_mangle]
pub unsafe extern "C" fn hall_family_d(f: *const HallFamily, out: *mut *mut HallPoly) -> HallStatus {
    family_part(f, out, HallFamilyInstance::d)
}

/// Evaluates the family at the decimal integer `t`.
#[no_mangle]
pub unsafe extern "C" fn hall_family_specialize(
    f: *const HallFamily,
    t: *const c_char,
    out: *mut *mut HallWitness,
) -> HallStatus {
    guard(|| {
        let f = read_ref(f, "family")?;
        let t = parse_int(read_str(t, "t")?, "t")?;
        let w = specialize(&f.0, &t)?;
        write_out(out, Box::into_raw(Box::new(HallWitness(w))), "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn hall_family_free(f: *mut HallFamily) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Builds a witness from decimal `x`, `y`, `d`; fails unless `x >= 1`,
/// `d != 0` and `d = x^3 - y^2`.
#[no_mangle]
pub unsafe extern "C" fn hall_witness_new(
    x: *const c_char,
    y: *const c_char,
    d: *const c_char,
    out: *mut *mut HallWitness,
) -> HallStatus {
    guard(|| {
        let x = parse_int(read_str(x, "x")?, "x")?;
        let y = parse_int(read_str(y, "y")?, "y")?;
        let d = parse_int(read_str(d, "d")?, "d")?;
        let w = hall_core::HallWitness::new("ffi", None, x, y, d)?;
        write_out(out, Box::into_raw(Box::new(HallWitness(w))), "out")
    })
}

/// One JSON line: `{"source",...,"x","y","d","ratio"}`.
#[no_mangle]
pub unsafe extern "C" fn hall_witness_to_json(w: *const HallWitness, out: *mut *mut c_char) -> HallStatus {
    guard(|| {
        let w = read_ref(w, "witness")?;
        let s = serde_json::to_string(&w.0).map_err(Error::from)?;
        write_string(out, s)
    })
}

/// Compares `|d|` with `x^(1/2 + p/q)`: writes -1 (below), 0 (equal) or 1
/// (above).
#[no_mangle]
pub unsafe extern "C" fn hall_witness_compare(w: *const HallWitness, p: u64, q: u64, out: *mut i32) -> HallStatus {
    guard(|| {
        let w = read_ref(w, "witness")?;
        let eps = EpsRational::new(p, q)?;
        let ord = match hall_compare(&w.0, eps) {
            HallOrdering::Below => -1,
            HallOrdering::Equal => 0,
            HallOrdering::Above => 1,
        };
        write_out(out, ord, "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn hall_witness_free(w: *mut HallWitness) {
    if !w.is_null() {
        drop(Box::from_raw(w));
    }
}

/// First `n` witnesses from `z^2 - 5w^2 = -1`, as JSON lines.
#[no_mangle]
pub unsafe extern "C" fn hall_danilov_stream_json(n: u32, out: *mut *mut c_char) -> HallStatus {
    guard(|| {
        if n == 0 {
            return Err(invalid("n must be at least 1"));
        }
        let mut s = String::new();
        for w in danilov_stream(n as usize)? {
            s.push_str(&serde_json::to_string(&w).map_err(Error::from)?);
            s.push('\n');
        }
        write_string(out, s)
    })
}

/// Runs a verification suite: `corpus`, `danilov-cubic`, `danilov-quartic`
/// or `quartic-k3`. Writes whether it passed and, if `out_json` is not
/// NULL, the reports as JSON.
#[no_mangle]
pub unsafe extern "C" fn hall_verify(
    target: *const c_char,
    verified: *mut bool,
    out_json: *mut *mut c_char,
) -> HallStatus {
    guard(|| {
        let target = read_str(target, "target")?;
        let reports: Vec<VerificationReport> = match target {
            "corpus" => verify_corpus()?,
            "danilov-cubic" => vec![danilov_cubic_identity()],
            "danilov-quartic" => vec![danilov_quartic_identity()],
            "quartic-k3" => vec![verify_quartic_k3()],
            other => return Err(invalid(format!("unknown target {other:?}"))),
        };
        write_out(verified, reports.iter().all(|r| r.verified), "verified")?;
        if !out_json.is_null() {
            out_json.write(c_string(serde_json::to_string(&reports).map_err(Error::from)?)?);
        }
        Ok(())
    })
}
