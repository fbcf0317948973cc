//! C ABI over `liebasis`.
//!
//! Every function returns an [`LbStatus`]. On failure a message is stored per
//! thread and can be read with [`lb_last_error`]. Objects are opaque handles
//! released with their matching `_free` function; passing NULL to a `_free`
//! function is a no-op. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use liebasis::basis_sets::{self, BasisKind};
use liebasis::cli::{self, RunConfig, EXIT_OK};
use liebasis::lie_core::{build_generators, GeneratorBasis, RepKind};
use liebasis::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DomainError = 3,
    /// The computation ran but an invariant check failed. Result handles are
    /// still returned so the report can be inspected.
    InvariantFailure = 4,
    BufferTooSmall = 5,
    Internal = 6,
    Panic = 7,
}

/// Factor representation, passed as `int32_t`.
#[repr(C)]
pub enum LbRepKind {
    Defining = 0,
    Conjugate = 1,
    Adjoint = 2,
}

/// Operator set to verify, passed as `int32_t`.
#[repr(C)]
pub enum LbBasisKind {
    Product = 0,
    Coupled = 1,
}

/// Operator counts for one `n`.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct LbCounts {
    pub n: u32,
    pub single_ir: u32,
    pub product: u32,
    pub coupled: u32,
    pub difference: u32,
}

/// One isotypic component. Unknown values are 0 (dims) or -1 (labels).
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct LbComponent {
    pub total_dim: u32,
    pub irrep_dim: u32,
    pub multiplicity: u32,
    pub p: i32,
    pub q: i32,
}

pub struct LbAlgebra {
    basis: GeneratorBasis,
}

pub struct LbReport {
    json: CString,
    complete: bool,
    max_block_dim: u32,
    block_dims: Vec<u32>,
}

pub struct LbDecomposition {
    json: CString,
    components: Vec<LbComponent>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn fail(status: LbStatus, msg: impl Into<String>) -> LbStatus {
    set_error(msg);
    status
}

fn status_of(e: &Error) -> LbStatus {
    match e {
        Error::InvalidConfig(_) => LbStatus::InvalidArgument,
        Error::Domain(_) | Error::DimensionMismatch { .. } | Error::ExchangeUndefined => LbStatus::DomainError,
        Error::Invariant(_) | Error::NotCommuting { .. } => LbStatus::InvariantFailure,
        _ => LbStatus::Internal,
    }
}

fn guard(f: impl FnOnce() -> Result<LbStatus, Error>) -> LbStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err(e)) => fail(status_of(&e), e.to_string()),
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            fail(LbStatus::Panic, format!("panic: {msg}"))
        }
    }
}

fn rep_kind(v: i32) -> Result<RepKind, Error> {
    match v {
        0 => Ok(RepKind::Defining),
        1 => Ok(RepKind::Conjugate),
        2 => Ok(RepKind::Adjoint),
        _ => Err(Error::InvalidConfig(format!("unknown representation kind {v}"))),
    }
}

fn basis_kind(v: i32) -> Result<BasisKind, Error> {
    match v {
        0 => Ok(BasisKind::Product),
        1 => Ok(BasisKind::Coupled),
        _ => Err(Error::InvalidConfig(format!("unknown basis kind {v}"))),
    }
}

fn to_u32(x: usize) -> u32 {
    u32::try_from(x).unwrap_or(u32::MAX)
}

/// Copy `src` (with its NUL) into `buf`. Writes the needed size to `needed`
/// when non-null.
unsafe fn copy_cstr(src: &CString, buf: *mut c_char, len: usize, needed: *mut usize) -> LbStatus {
    let bytes = src.as_bytes_with_nul();
    if !needed.is_null() {
        *needed = bytes.len();
    }
    if buf.is_null() || len < bytes.len() {
        return fail(LbStatus::BufferTooSmall, format!("buffer of {len} bytes, {} needed", bytes.len()));
    }
    ptr::copy_nonoverlapping(bytes.as_ptr() as *const c_char, buf, bytes.len());
    LbStatus::Ok
}

// ------------------------------------------------------------------- errors

/// Copy the calling thread's last error message into `buf`.
///
/// Returns the number of bytes needed including the terminating NUL, or 0
/// when there is no error. Writes nothing if `len` is too small.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn lb_last_error(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| match &*e.borrow() {
        None => 0,
        Some(msg) => {
            let bytes = msg.as_bytes_with_nul();
            if !buf.is_null() && len >= bytes.len() {
                ptr::copy_nonoverlapping(bytes.as_ptr() as *const c_char, buf, bytes.len());
            }
            bytes.len()
        }
    })
}

// ------------------------------------------------------------------- counts

/// Enumerated operator counts for su(n).
///
/// # Safety
/// `out` must be null or point to a writable `LbCounts`.
#[no_mangle]
pub unsafe extern "C" fn lb_counts(n: u32, out: *mut LbCounts) -> LbStatus {
    guard(|| {
        if out.is_null() {
            return Ok(fail(LbStatus::NullPointer, "out is null"));
        }
        let n = n as usize;
        let count = |kind| basis_sets::enumerate_labels(n, kind).map(|l| l.len());
        let product = count(BasisKind::Product)?;
        let coupled = count(BasisKind::Coupled)?;
        *out = LbCounts {
            n: to_u32(n),
            single_ir: to_u32(count(BasisKind::SingleIr)?),
            product: to_u32(product),
            coupled: to_u32(coupled),
            difference: to_u32(product - coupled),
        };
        Ok(LbStatus::Ok)
    })
}

// ------------------------------------------------------------------ algebra

/// Build the su(n) generator basis.
///
/// # Safety
/// `out` must be null or point to a writable handle slot.
#[no_mangle]
pub unsafe extern "C" fn lb_algebra_new(n: u32, out: *mut *mut LbAlgebra) -> LbStatus {
    guard(|| {
        if out.is_null() {
            return Ok(fail(LbStatus::NullPointer, "out is null"));
        }
        *out = ptr::null_mut();
        let basis = build_generators(n as usize)?;
        *out = Box::into_raw(Box::new(LbAlgebra { basis }));
        Ok(LbStatus::Ok)
    })
}

/// # Safety
/// `alg` must be null or a handle from `lb_algebra_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lb_algebra_free(alg: *mut LbAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

/// Number of generators, `n² − 1`; 0 for a null handle.
///
/// # Safety
/// `alg` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lb_algebra_generator_count(alg: *const LbAlgebra) -> u32 {
    alg.as_ref().map_or(0, |a| to_u32(a.basis.len()))
}

/// Defining dimension `n`; 0 for a null handle.
///
/// # Safety
/// `alg` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lb_algebra_n(alg: *const LbAlgebra) -> u32 {
    alg.as_ref().map_or(0, |a| to_u32(a.basis.n()))
}

/// Write generator `index` as row-major real and imaginary parts, `n²`
/// entries each.
///
/// # Safety
/// `re` and `im` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn lb_algebra_generator(
    alg: *const LbAlgebra,
    index: u32,
    re: *mut f64,
    im: *mut f64,
    len: usize,
) -> LbStatus {
    guard(|| {
        let Some(alg) = alg.as_ref() else {
            return Ok(fail(LbStatus::NullPointer, "algebra is null"));
        };
        if re.is_null() || im.is_null() {
            return Ok(fail(LbStatus::NullPointer, "output buffer is null"));
        }
        let index = index as usize;
        if index >= alg.basis.len() {
            return Ok(fail(
                LbStatus::InvalidArgument,
                format!("generator index {index} out of range 0..{}", alg.basis.len()),
            ));
        }
        let n = alg.basis.n();
        if len < n * n {
            return Ok(fail(LbStatus::BufferTooSmall, format!("need {} entries, got {len}", n * n)));
        }
        let t = alg.basis.generator(index);
        for i in 0..n {
            for j in 0..n {
                *re.add(i * n + j) = t[(i, j)].re;
                *im.add(i * n + j) = t[(i, j)].im;
            }
        }
        Ok(LbStatus::Ok)
    })
}

// ------------------------------------------------------------------- verify

/// Materialize the product or coupled set on `rep1 ⊗ rep2` and analyse it.
///
/// `commute_tol <= 0` selects the default. On `LB_STATUS_OK` or
/// `LB_STATUS_INVARIANT_FAILURE` a report handle is stored in `out`.
///
/// # Safety
/// `out` must be null or point to a writable handle slot.
#[no_mangle]
pub unsafe extern "C" fn lb_verify(
    n: u32,
    rep1: i32,
    rep2: i32,
    basis: i32,
    with_exchange: bool,
    commute_tol: f64,
    out: *mut *mut LbReport,
) -> LbStatus {
    guard(|| {
        if out.is_null() {
            return Ok(fail(LbStatus::NullPointer, "out is null"));
        }
        *out = ptr::null_mut();
        let mut config = RunConfig::new(n as usize, rep_kind(rep1)?, rep_kind(rep2)?, basis_kind(basis)?);
        config.with_exchange = with_exchange;
        if commute_tol > 0.0 {
            config.tolerances.commute_tol = commute_tol;
        }
        let output = cli::cmd_verify(&config)?;
        let v = &output.value;
        let block_dims: Vec<u32> = v["blocks"]["items"]
            .as_array()
            .map(|items| items.iter().map(|b| b["dim"].as_u64().unwrap_or(0) as u32).collect())
            .unwrap_or_default();
        let report = LbReport {
            json: CString::new(output.text.clone()).map_err(|e| Error::Numerical(e.to_string()))?,
            complete: v["verdict"] == "complete",
            max_block_dim: v["blocks"]["max_dim"].as_u64().unwrap_or(0) as u32,
            block_dims,
        };
        *out = Box::into_raw(Box::new(report));
        if output.exit_code == EXIT_OK {
            Ok(LbStatus::Ok)
        } else {
            let failures = v["meta"]["failures"].to_string();
            Ok(fail(LbStatus::InvariantFailure, format!("invariant failures: {failures}")))
        }
    })
}

/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lb_report_is_complete(report: *const LbReport) -> bool {
    report.as_ref().is_some_and(|r| r.complete)
}

/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lb_report_max_block_dim(report: *const LbReport) -> u32 {
    report.as_ref().map_or(0, |r| r.max_block_dim)
}

/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lb_report_block_count(report: *const LbReport) -> u32 {
    report.as_ref().map_or(0, |r| to_u32(r.block_dims.len()))
}

/// Copy the joint-block dimensions (report order) into `dims`.
///
/// # Safety
/// `dims` must point to `len` writable `uint32_t`.
#[no_mangle]
pub unsafe extern "C" fn lb_report_block_dims(report: *const LbReport, dims: *mut u32, len: usize) -> LbStatus {
    guard(|| {
        let Some(r) = report.as_ref() else {
            return Ok(fail(LbStatus::NullPointer, "report is null"));
        };
        if dims.is_null() {
            return Ok(fail(LbStatus::NullPointer, "dims is null"));
        }
        if len < r.block_dims.len() {
            return Ok(fail(
                LbStatus::BufferTooSmall,
                format!("need {} entries, got {len}", r.block_dims.len()),
            ));
        }
        ptr::copy_nonoverlapping(r.block_dims.as_ptr(), dims, r.block_dims.len());
        Ok(LbStatus::Ok)
    })
}

/// Canonical JSON report, NUL-terminated. `needed` receives the size
/// including the NUL, also when the buffer is too small.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes; `needed` null or writable.
#[no_mangle]
pub unsafe extern "C" fn lb_report_json(
    report: *const LbReport,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> LbStatus {
    guard(|| match report.as_ref() {
        None => Ok(fail(LbStatus::NullPointer, "report is null")),
        Some(r) => Ok(copy_cstr(&r.json, buf, len, needed)),
    })
}

/// # Safety
/// `report` must be null or a handle from `lb_verify` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lb_report_free(report: *mut LbReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

// ---------------------------------------------------------------- decompose

/// Isotypic decomposition of `rep1 ⊗ rep2`, largest component first.
///
/// # Safety
/// `out` must be null or point to a writable handle slot.
#[no_mangle]
pub unsafe extern "C" fn lb_decompose(n: u32, rep1: i32, rep2: i32, out: *mut *mut LbDecomposition) -> LbStatus {
    guard(|| {
        if out.is_null() {
            return Ok(fail(LbStatus::NullPointer, "out is null"));
        }
        *out = ptr::null_mut();
        let config = RunConfig::new(n as usize, rep_kind(rep1)?, rep_kind(rep2)?, BasisKind::Coupled);
        let output = cli::cmd_decompose(&config)?;
        let components = output.value["components"]
            .as_array()
            .map(|rows| {
                rows.iter()
                    .map(|c| {
                        let label = |i: usize| c["labels"][i].as_i64().map_or(-1, |x| x as i32);
                        LbComponent {
                            total_dim: c["total_dim"].as_u64().unwrap_or(0) as u32,
                            irrep_dim: c["irrep_dim"].as_u64().unwrap_or(0) as u32,
                            multiplicity: c["multiplicity"].as_u64().unwrap_or(0) as u32,
                            p: label(0),
                            q: label(1),
                        }
                    })
                    .collect()
            })
            .unwrap_or_default();
        let d = LbDecomposition {
            json: CString::new(output.text.clone()).map_err(|e| Error::Numerical(e.to_string()))?,
            components,
        };
        *out = Box::into_raw(Box::new(d));
        if output.exit_code == EXIT_OK {
            Ok(LbStatus::Ok)
        } else {
            let failures = output.value["meta"]["failures"].to_string();
            Ok(fail(LbStatus::InvariantFailure, format!("invariant failures: {failures}")))
        }
    })
}

/// # Safety
/// `d` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lb_decomposition_len(d: *const LbDecomposition) -> u32 {
    d.as_ref().map_or(0, |d| to_u32(d.components.len()))
}

/// # Safety
/// `d` must be null or a live handle; `out` null or writable.
#[no_mangle]
pub unsafe extern "C" fn lb_decomposition_component(
    d: *const LbDecomposition,
    index: u32,
    out: *mut LbComponent,
) -> LbStatus {
    guard(|| {
        let (Some(d), false) = (d.as_ref(), out.is_null()) else {
            return Ok(fail(LbStatus::NullPointer, "null handle or output"));
        };
        match d.components.get(index as usize) {
            Some(c) => {
                *out = *c;
                Ok(LbStatus::Ok)
            }
            None => Ok(fail(
                LbStatus::InvalidArgument,
                format!("component {index} out of range 0..{}", d.components.len()),
            )),
        }
    })
}

/// Canonical JSON of the decomposition; same buffer protocol as `lb_report_json`.
///
/// # Safety
/// As for `lb_report_json`.
#[no_mangle]
pub unsafe extern "C" fn lb_decomposition_json(
    d: *const LbDecomposition,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> LbStatus {
    guard(|| match d.as_ref() {
        None => Ok(fail(LbStatus::NullPointer, "decomposition is null")),
        Some(d) => Ok(copy_cstr(&d.json, buf, len, needed)),
    })
}

/// # Safety
/// `d` must be null or a handle from `lb_decompose` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lb_decomposition_free(d: *mut LbDecomposition) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}
