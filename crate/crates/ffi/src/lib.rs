//! C interface to krull-forge.
//!
//! Every fallible function returns a [`KfStatus`] and writes its result
//! through an out pointer. On failure a message is available from
//! [`kf_last_error_message`] on the same thread. Objects handed out are
//! opaque and must be released with the matching `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use krull_forge::abelian::{parse_group, FGAbelianGroup, GroupHom, IntMatrix};
use krull_forge::pipeline::{full_pipeline, PipelineReport, RunConfig};
use krull_forge::skew::class_group_of_skew_extension;
use krull_forge::Error;
use num_bigint::BigInt;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidArgument = 4,
    /// A value does not fit the requested C type.
    Overflow = 5,
    Panic = 6,
}

/// A finitely generated abelian group.
pub struct KfGroup(FGAbelianGroup);

/// Result of a full realization run.
pub struct KfReport(PipelineReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let msg = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

struct Failure(KfStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse { .. } | Error::Modulus(_) => KfStatus::ParseError,
            _ => KfStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(KfStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> KfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            KfStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            KfStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s).to_str().map_err(|e| Failure(KfStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(value);
    Ok(())
}

fn c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Failure(KfStatus::InvalidArgument, "string contains a nul byte".into()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn kf_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread, or NULL. The pointer
/// stays valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn kf_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn kf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a group such as `"Z^2 x Z/4"`.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn kf_group_parse(spec: *const c_char, out: *mut *mut KfGroup) -> KfStatus {
    guard(|| {
        let g = parse_group(str_arg(spec, "spec")?)?;
        write_out(out, Box::into_raw(Box::new(KfGroup(g))))
    })
}

/// # Safety
/// `g` must be NULL or a group returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn kf_group_free(g: *mut KfGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live group and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn kf_group_free_rank(g: *const KfGroup, out: *mut usize) -> KfStatus {
    guard(|| write_out(out, ref_arg(g, "group")?.0.free_rank()))
}

/// Number of invariant factors.
///
/// # Safety
/// `g` must be a live group and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn kf_group_torsion_len(g: *const KfGroup, out: *mut usize) -> KfStatus {
    guard(|| write_out(out, ref_arg(g, "group")?.0.torsion().len()))
}

/// The `i`-th invariant factor, smallest first.
///
/// # Safety
/// `g` must be a live group and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn kf_group_torsion_at(g: *const KfGroup, i: usize, out: *mut i64) -> KfStatus {
    guard(|| {
        let torsion = ref_arg(g, "group")?.0.torsion();
        let d = torsion
            .get(i)
            .ok_or_else(|| Failure(KfStatus::InvalidArgument, format!("index {i} out of range ({})", torsion.len())))?;
        let d = i64::try_from(d).map_err(|_| Failure(KfStatus::Overflow, format!("invariant {d} exceeds int64")))?;
        write_out(out, d)
    })
}

/// Writes a newly allocated string; free it with [`kf_string_free`].
///
/// # Safety
/// `g` must be a live group and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn kf_group_to_string(g: *const KfGroup, out: *mut *mut c_char) -> KfStatus {
    guard(|| {
        let s = c_string(ref_arg(g, "group")?.0.to_string())?;
        write_out(out, s)
    })
}

/// # Safety
/// `a` and `b` must be live groups and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn kf_group_is_isomorphic(a: *const KfGroup, b: *const KfGroup, out: *mut bool) -> KfStatus {
    guard(|| write_out(out, ref_arg(a, "a")?.0 == ref_arg(b, "b")?.0))
}

/// Runs the full realization pipeline. A report is written even when the
/// verdict is a failure; check it with [`kf_report_passed`].
///
/// # Safety
/// `group` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn kf_realize(
    group: *const c_char,
    orbits: u32,
    bound: u64,
    samples: usize,
    seed: u64,
    out: *mut *mut KfReport,
) -> KfStatus {
    guard(|| {
        let config = RunConfig { group: str_arg(group, "group")?.to_string(), orbits, bound, samples, seed };
        let report = full_pipeline(&config)?;
        write_out(out, Box::into_raw(Box::new(KfReport(report))))
    })
}

/// # Safety
/// `r` must be NULL or a report returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn kf_report_free(r: *mut KfReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// # Safety
/// `r` must be a live report and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn kf_report_passed(r: *const KfReport, out: *mut bool) -> KfStatus {
    guard(|| write_out(out, ref_arg(r, "report")?.0.passed()))
}

/// The report as JSON. With `include_timings` false the output depends only
/// on the inputs.
///
/// # Safety
/// `r` must be a live report and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn kf_report_to_json(r: *const KfReport, include_timings: bool, out: *mut *mut c_char) -> KfStatus {
    guard(|| {
        let r = &ref_arg(r, "report")?.0;
        let json = if include_timings {
            r.to_json()
        } else {
            serde_json::to_string_pretty(&r.deterministic_json()).expect("report serializes")
        };
        write_out(out, c_string(json)?)
    })
}

/// The computed class group of the report.
///
/// # Safety
/// `r` must be a live report and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn kf_report_result_group(r: *const KfReport, out: *mut *mut KfGroup) -> KfStatus {
    guard(|| {
        let summary = ref_arg(r, "report")?
            .0
            .result_group()
            .ok_or_else(|| Failure(KfStatus::InvalidArgument, "report has no class group".into()))?;
        let torsion: Vec<BigInt> = summary.torsion.iter().map(|d| d.parse().expect("digits")).collect();
        let g = FGAbelianGroup::from_invariants(summary.free_rank, torsion)?;
        write_out(out, Box::into_raw(Box::new(KfGroup(g))))
    })
}

/// Class group of the skew Laurent extension for class group `c`, induced
/// action `sigma` and killed subgroup generators.
///
/// `sigma` is an n×n row-major matrix, n the number of generators of `c`,
/// whose columns are the images of the generators. `killed` holds
/// `killed_count` elements of `c` as consecutive rows of n coordinates and
/// may be NULL when `killed_count` is 0.
///
/// # Safety
/// `sigma` must point to n*n values, `killed` to `killed_count`*n values.
#[no_mangle]
pub unsafe extern "C" fn kf_class_group_of_skew_extension(
    c: *const KfGroup,
    sigma: *const i64,
    killed: *const i64,
    killed_count: usize,
    out: *mut *mut KfGroup,
) -> KfStatus {
    guard(|| {
        let c = &ref_arg(c, "c")?.0;
        let n = c.ngens();
        let rows = |p: *const i64, count: usize, what: &str| -> Result<Vec<Vec<BigInt>>, Failure> {
            if count == 0 || n == 0 {
                return Ok(vec![Vec::new(); count]);
            }
            if p.is_null() {
                return Err(null(what));
            }
            let flat = std::slice::from_raw_parts(p, count * n);
            Ok(flat.chunks(n).map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
        };
        let matrix = IntMatrix::from_rows(rows(sigma, n, "sigma")?, n);
        let sigma = GroupHom::new(c.clone(), c.clone(), matrix)?;
        let killed = rows(killed, killed_count, "killed")?
            .iter()
            .map(|coords| c.from_coords(coords))
            .collect::<Result<Vec<_>, _>>()?;
        let r = class_group_of_skew_extension(c, &sigma, &killed)?;
        write_out(out, Box::into_raw(Box::new(KfGroup(r.result))))
    })
}
