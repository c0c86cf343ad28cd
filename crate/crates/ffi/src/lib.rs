//! C ABI over the mdop library.
//!
//! A context owns a cone with its Jack table. Results come back as
//! heap strings that the caller releases with `mdop_string_free`. On any
//! status other than `MDOP_STATUS_OK` the message is available from
//! `mdop_last_error` on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use mdop::families::{evaluate, Family, FamilyParams};
use mdop::partition::parse_partition;
use mdop::rational::{format_rational, parse_rational};
use mdop::verify::conjecture::conjecture_suite;
use mdop::verify::equations::{three_term_report, Moving};
use mdop::verify::{genfunc_grid, orthogonality_krawtchouk};
use mdop::{Cone, Error, Q};

/// Status codes returned by every entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MdopStatus {
    Ok = 0,
    VerifyFailed = 1,
    Parse = 2,
    Parameter = 3,
    Domain = 4,
    LengthMismatch = 5,
    DegreeExceeded = 6,
    Pole = 7,
    Singular = 8,
    NullPointer = 9,
    InvalidUtf8 = 10,
    Internal = 11,
}

impl From<&Error> for MdopStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Parse(_) => MdopStatus::Parse,
            Error::Parameter(_) => MdopStatus::Parameter,
            Error::Domain(_) => MdopStatus::Domain,
            Error::LengthMismatch { .. } => MdopStatus::LengthMismatch,
            Error::DegreeExceeded { .. } => MdopStatus::DegreeExceeded,
            Error::Pole { .. } => MdopStatus::Pole,
            Error::Singular { .. } => MdopStatus::Singular,
            Error::Internal(_) => MdopStatus::Internal,
        }
    }
}

/// Opaque handle: a cone of rank r and multiplicity d with Jack data up to a degree.
pub struct MdopContext {
    cone: Cone,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(s).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Fail(MdopStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(MdopStatus::from(&e), e.to_string())
    }
}

type FfiResult<T> = std::result::Result<T, Fail>;

fn guard(f: impl FnOnce() -> FfiResult<MdopStatus>) -> MdopStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err(Fail(s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("panic inside mdop");
            MdopStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> FfiResult<&'a str> {
    if p.is_null() {
        return Err(Fail(MdopStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(MdopStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn read_opt_str<'a>(p: *const c_char, what: &str) -> FfiResult<&'a str> {
    if p.is_null() {
        Ok("")
    } else {
        read_str(p, what)
    }
}

unsafe fn context<'a>(ctx: *const MdopContext) -> FfiResult<&'a MdopContext> {
    ctx.as_ref()
        .ok_or_else(|| Fail(MdopStatus::NullPointer, "context is null".into()))
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> FfiResult<()> {
    if out.is_null() {
        return Err(Fail(
            MdopStatus::NullPointer,
            "output pointer is null".into(),
        ));
    }
    let c = CString::new(s).map_err(|_| Fail(MdopStatus::Internal, "interior NUL".into()))?;
    *out = c.into_raw();
    Ok(())
}

/// Parses `"alpha=7/2;c=1/3"` style parameter lists.
fn family_params(family: &str, params: &str) -> FfiResult<FamilyParams> {
    let family: Family = family.parse()?;
    let (mut alpha, mut c, mut a, mut p, mut n) = (None, None, None, None, None);
    for item in params.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected key=value, got {item:?}")))?;
        let v = v.trim();
        match k.trim() {
            "alpha" => alpha = Some(parse_rational(v)?),
            "c" => c = Some(parse_rational(v)?),
            "a" => a = Some(parse_rational(v)?),
            "p" => p = Some(parse_rational(v)?),
            "N" => {
                n = Some(v.parse::<u32>().map_err(|_| {
                    Error::Parse(format!("N must be a nonnegative integer, got {v:?}"))
                })?)
            }
            other => return Err(Error::Parameter(format!("unknown parameter {other:?}")).into()),
        }
    }
    Ok(FamilyParams::from_parts(family, alpha, c, a, p, n)?)
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn mdop_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Message for the last failed call on this thread, or NULL. Valid until the next call.
#[no_mangle]
pub extern "C" fn mdop_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn mdop_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a context for rank `r`, multiplicity `d` (e.g. "5/2") and Jack degree `max_degree`.
///
/// # Safety
/// `d` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mdop_context_new(
    r: usize,
    d: *const c_char,
    max_degree: u32,
    out: *mut *mut MdopContext,
) -> MdopStatus {
    guard(|| {
        if out.is_null() {
            return Err(Fail(
                MdopStatus::NullPointer,
                "output pointer is null".into(),
            ));
        }
        let d: Q = parse_rational(read_str(d, "d")?)?;
        let cone = Cone::new(r, &d, max_degree)?;
        *out = Box::into_raw(Box::new(MdopContext { cone }));
        Ok(MdopStatus::Ok)
    })
}

/// Releases a context. NULL is ignored.
///
/// # Safety
/// `ctx` must come from `mdop_context_new` and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn mdop_context_free(ctx: *mut MdopContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// Rank of the context.
///
/// # Safety
/// `ctx` must be a live context or NULL.
#[no_mangle]
pub unsafe extern "C" fn mdop_context_rank(ctx: *const MdopContext) -> usize {
    ctx.as_ref().map_or(0, |c| c.cone.r())
}

/// Evaluates a family at (m, x) and writes the exact value as "p/q".
///
/// `family` is "meixner", "charlier" or "krawtchouk"; `params` looks like
/// "alpha=7/2;c=1/3", "a=2" or "p=1/3;N=3"; `m` and `x` are comma-joined parts.
///
/// # Safety
/// All pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn mdop_eval(
    ctx: *const MdopContext,
    family: *const c_char,
    params: *const c_char,
    m: *const c_char,
    x: *const c_char,
    out_value: *mut *mut c_char,
) -> MdopStatus {
    guard(|| {
        let ctx = context(ctx)?;
        let fp = family_params(read_str(family, "family")?, read_opt_str(params, "params")?)?;
        if fp.family() == Family::Laguerre {
            return Err(
                Error::Parameter("laguerre is not available through mdop_eval".into()).into(),
            );
        }
        let r = ctx.cone.r();
        let m = parse_partition(read_str(m, "m")?, r)?;
        let x = parse_partition(read_str(x, "x")?, r)?;
        let v = evaluate(&fp, &m, &x, &ctx.cone)?;
        put_string(out_value, format_rational(&v))?;
        Ok(MdopStatus::Ok)
    })
}

/// Runs one identity check and writes the report as JSON.
///
/// `identity` is "difference", "recurrence", "genfunc" or "orthogonality"
/// (the last only for krawtchouk). `weight` is the grid weight or series degree.
/// Returns `MDOP_STATUS_VERIFY_FAILED` with the report still written when a case fails.
///
/// # Safety
/// All pointers must be valid; strings NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn mdop_verify_json(
    ctx: *const MdopContext,
    identity: *const c_char,
    family: *const c_char,
    params: *const c_char,
    weight: u32,
    out_json: *mut *mut c_char,
) -> MdopStatus {
    guard(|| {
        let ctx = context(ctx)?;
        let identity = read_str(identity, "identity")?;
        let fp = family_params(read_str(family, "family")?, read_opt_str(params, "params")?)?;
        let rep = match identity {
            "difference" => three_term_report(&fp, &ctx.cone, Moving::X, weight)?,
            "recurrence" => three_term_report(&fp, &ctx.cone, Moving::M, weight)?,
            "genfunc" => genfunc_grid(&fp, &ctx.cone, weight)?,
            "orthogonality" => match &fp {
                FamilyParams::Krawtchouk { p, n } => orthogonality_krawtchouk(&ctx.cone, *n, p)?,
                _ => {
                    return Err(Error::Parameter(
                        "orthogonality through the C interface is krawtchouk only".into(),
                    )
                    .into())
                }
            },
            other => return Err(Error::Parameter(format!("unknown identity {other:?}")).into()),
        };
        put_string(out_json, rep.to_json())?;
        Ok(if rep.passed() {
            MdopStatus::Ok
        } else {
            MdopStatus::VerifyFailed
        })
    })
}

/// Runs the combined evidence suite at weight budget `budget` and writes its JSON report.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn mdop_conjecture_json(
    ctx: *const MdopContext,
    budget: u32,
    seed: u64,
    out_json: *mut *mut c_char,
) -> MdopStatus {
    guard(|| {
        let ctx = context(ctx)?;
        let rep = conjecture_suite(&ctx.cone, budget, seed)?;
        put_string(out_json, rep.to_json())?;
        Ok(if rep.passed() {
            MdopStatus::Ok
        } else {
            MdopStatus::VerifyFailed
        })
    })
}
