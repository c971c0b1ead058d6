//! C interface to `lefschetz`.
//!
//! Every call returns an [`LzStatus`]; on anything but `LZ_STATUS_OK` a
//! message is kept per thread and readable through [`lz_last_error`] until
//! the next failing call. Handles are opaque and owned by the caller, who
//! releases them with the matching `_free` function. Strings handed out by
//! the library are released with [`lz_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lefschetz::census::Bucket;
use lefschetz::engine::{wlp_report, Characteristic, FailureMode, WlpReport};
use lefschetz::error::Error;
use lefschetz::flag::Graph;
use lefschetz::io::Input;
use lefschetz::monomial::Algebra;
use lefschetz::tensor::{quadric_tensor_has_wlp, TensorSpec};
use lefschetz::topology::bockstein_verdict;

#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LzStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidInput = 4,
    BufferTooSmall = 5,
    OutOfRange = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LzFailureMode {
    Injectivity = 0,
    Surjectivity = 1,
    Both = 2,
}

impl From<FailureMode> for LzFailureMode {
    fn from(m: FailureMode) -> Self {
        match m {
            FailureMode::Injectivity => LzFailureMode::Injectivity,
            FailureMode::Surjectivity => LzFailureMode::Surjectivity,
            FailureMode::Both => LzFailureMode::Both,
        }
    }
}

#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LzBucket {
    Wlp = 0,
    Degree1Injectivity = 1,
    Exceptional = 2,
}

/// A graded Artinian monomial algebra.
pub struct LzAlgebra(Algebra);

/// Degree-by-degree WLP verdict for one algebra and characteristic.
pub struct LzReport(WlpReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(LzStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse(_) => LzStatus::Parse,
            _ => LzStatus::InvalidInput,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(LzStatus::NullPointer, format!("{what} is null"))
}

fn record(status: LzStatus, msg: String) -> LzStatus {
    let msg = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
    status
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> LzStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => LzStatus::Ok,
        Ok(Err(Failure(status, msg))) => record(status, msg),
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "unknown panic".into());
            record(LzStatus::Panic, format!("panic: {msg}"))
        }
    }
}

unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s).to_str().map_err(|e| Failure(LzStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

fn characteristic(c: u64) -> Result<Characteristic, Failure> {
    Ok(Characteristic::new(c)?)
}

/// Message of the last failing call on this thread, or null. Valid until the
/// next failing call on the same thread; do not free.
#[no_mangle]
pub extern "C" fn lz_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses `{"vars": n, "gens": [...]}` or `{"graph": {"vars": n, "edges": [...]}}`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn lz_algebra_from_json(json: *const c_char, out: *mut *mut LzAlgebra) -> LzStatus {
    guard(|| {
        let input = Input::parse(text(json, "json")?)?;
        let alg = Algebra::new(input.ideal())?;
        write_out(out, Box::into_raw(Box::new(LzAlgebra(alg))), "out")
    })
}

/// Flag algebra of the graph on `n` vertices with `num_edges` edges given
/// as consecutive pairs in `edges`.
///
/// # Safety
/// `edges` must point to `2 * num_edges` readable values (it may be null
/// when `num_edges` is 0) and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lz_algebra_from_edges(
    n: usize,
    edges: *const usize,
    num_edges: usize,
    out: *mut *mut LzAlgebra,
) -> LzStatus {
    guard(|| {
        let flat: &[usize] = match num_edges {
            0 => &[],
            _ if edges.is_null() => return Err(null("edges")),
            _ => std::slice::from_raw_parts(edges, 2 * num_edges),
        };
        let g = Graph::new(n, flat.chunks_exact(2).map(|p| (p[0], p[1])).collect::<Vec<_>>())?;
        let alg = Algebra::new(g.to_ideal())?;
        write_out(out, Box::into_raw(Box::new(LzAlgebra(alg))), "out")
    })
}

/// # Safety
/// `alg` must come from this library and not be freed twice; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn lz_algebra_free(alg: *mut LzAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

/// Writes `h_0..h_d` into `buf` and the count into `len`. When `cap` is too
/// small only `len` is written and `LZ_STATUS_BUFFER_TOO_SMALL` returned.
///
/// # Safety
/// `alg` must be a live handle, `buf` must hold `cap` values, `len` writable.
#[no_mangle]
pub unsafe extern "C" fn lz_algebra_hilbert(
    alg: *const LzAlgebra,
    buf: *mut usize,
    cap: usize,
    len: *mut usize,
) -> LzStatus {
    guard(|| {
        let h = borrow(alg, "alg")?.0.hilbert_function();
        let values = h.values();
        write_out(len, values.len(), "len")?;
        if cap < values.len() {
            return Err(Failure(LzStatus::BufferTooSmall, format!("need {} entries, got {cap}", values.len())));
        }
        if buf.is_null() {
            return Err(null("buf"));
        }
        ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len());
        Ok(())
    })
}

/// Runs the rank test in characteristic `characteristic` (0 or a prime).
///
/// # Safety
/// `alg` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lz_wlp(alg: *const LzAlgebra, characteristic: u64, out: *mut *mut LzReport) -> LzStatus {
    guard(|| {
        let ch = self::characteristic(characteristic)?;
        let report = wlp_report(&borrow(alg, "alg")?.0, ch);
        write_out(out, Box::into_raw(Box::new(LzReport(report))), "out")
    })
}

/// # Safety
/// `report` must come from this library and not be freed twice; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn lz_report_free(report: *mut LzReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// # Safety
/// `report` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lz_report_has_wlp(report: *const LzReport, out: *mut bool) -> LzStatus {
    guard(|| write_out(out, borrow(report, "report")?.0.has_wlp, "out"))
}

/// # Safety
/// `report` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lz_report_num_failures(report: *const LzReport, out: *mut usize) -> LzStatus {
    guard(|| write_out(out, borrow(report, "report")?.0.failures.len(), "out"))
}

/// The `index`-th failing degree and how it fails.
///
/// # Safety
/// `report` must be a live handle; `degree` and `mode` writable.
#[no_mangle]
pub unsafe extern "C" fn lz_report_failure(
    report: *const LzReport,
    index: usize,
    degree: *mut usize,
    mode: *mut LzFailureMode,
) -> LzStatus {
    guard(|| {
        let failures = &borrow(report, "report")?.0.failures;
        let f = failures.get(index).ok_or_else(|| {
            Failure(LzStatus::OutOfRange, format!("failure {index} of {}", failures.len()))
        })?;
        write_out(degree, f.degree, "degree")?;
        write_out(mode, f.mode.into(), "mode")
    })
}

/// # Safety
/// `report` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lz_report_bucket(report: *const LzReport, out: *mut LzBucket) -> LzStatus {
    guard(|| {
        let bucket = match Bucket::of(&borrow(report, "report")?.0) {
            Bucket::Wlp => LzBucket::Wlp,
            Bucket::Degree1Injectivity => LzBucket::Degree1Injectivity,
            Bucket::Exceptional => LzBucket::Exceptional,
        };
        write_out(out, bucket, "out")
    })
}

/// The report as JSON; free the string with [`lz_string_free`].
///
/// # Safety
/// `report` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lz_report_to_json(report: *const LzReport, out: *mut *mut c_char) -> LzStatus {
    guard(|| {
        let json = serde_json::to_string(&borrow(report, "report")?.0).expect("reports serialize");
        let s = CString::new(json).expect("JSON has no NUL bytes");
        write_out(out, s.into_raw(), "out")
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice; null is ignored.
#[no_mangle]
pub unsafe extern "C" fn lz_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Whether the Bockstein map on the degree-`degree` skeleton is injective,
/// which decides characteristic-zero surjectivity into degree `degree + 1`.
/// The algebra must be quadratic and contain every square.
///
/// # Safety
/// `alg` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lz_bockstein_injective(alg: *const LzAlgebra, degree: usize, out: *mut bool) -> LzStatus {
    guard(|| {
        let g = Graph::from_quadratic_ideal(borrow(alg, "alg")?.0.ideal())?;
        let verdict = bockstein_verdict(&g, degree)?;
        write_out(out, verdict.delta_injective, "out")
    })
}

/// Closed-form WLP answer for a tensor spec such as `"2:2,2:2,1:2"` with
/// every order 2; `characteristic` must not be 2.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lz_tensor_predicts_wlp(spec: *const c_char, characteristic: u64, out: *mut bool) -> LzStatus {
    guard(|| {
        let spec: TensorSpec = text(spec, "spec")?.parse()?;
        let ch = self::characteristic(characteristic)?;
        write_out(out, quadric_tensor_has_wlp(&spec, ch)?, "out")
    })
}
