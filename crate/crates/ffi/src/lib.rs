//! C ABI over `tmv-core`.
//!
//! Shapes, vertex sets and solve certificates are opaque heap handles,
//! created by `*_new` / producer functions and released with the matching
//! `*_free`. Every fallible call returns a [`TmvStatus`]; on failure the
//! detailed message is available from [`tmv_last_error`] on the same
//! thread. Vertex indices are 0-based mixed-radix indices (coordinate 1
//! least significant); coordinates crossing the boundary are 1-based.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Duration;

use tmv_core::constructions::{construct, theorem1_value};
use tmv_core::random::random_tmv;
use tmv_core::solver::{mut_exact_with, SolveOptions, DEFAULT_CAP};
use tmv_core::visibility::is_tmv_hamming;
use tmv_core::{Error, HammingShape, SolveCertificate, VertexIndex, VertexSet};

/// Result codes. `TMV_STATUS_OK` is zero.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TmvStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    OutOfRange = 3,
    CapExceeded = 4,
    Overflow = 5,
    BufferTooSmall = 6,
    Internal = 7,
}

/// A Hamming-graph shape `(n1, ..., nr)`.
pub struct TmvShape(HammingShape);

/// A vertex set over `0..universe`.
pub struct TmvVertexSet(VertexSet);

/// Result of an exact solve.
pub struct TmvCertificate(SolveCertificate);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> TmvStatus {
    match e {
        Error::CoordinateOutOfRange { .. } | Error::IndexOutOfRange { .. } | Error::UniverseMismatch { .. } => {
            TmvStatus::OutOfRange
        }
        Error::CapExceeded { .. } => TmvStatus::CapExceeded,
        Error::Overflow(_) => TmvStatus::Overflow,
        _ => TmvStatus::InvalidInput,
    }
}

/// Runs `f`, recording errors and converting panics to `TMV_STATUS_INTERNAL`.
fn guard(f: impl FnOnce() -> Result<(), (TmvStatus, String)>) -> TmvStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            TmvStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            TmvStatus::Internal
        }
    }
}

fn core<T>(r: tmv_core::Result<T>) -> Result<T, (TmvStatus, String)> {
    r.map_err(|e| (status_of(&e), format!("{}: {e}", e.kind())))
}

fn null(what: &str) -> (TmvStatus, String) {
    (TmvStatus::NullPointer, format!("{what} is null"))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, (TmvStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), (TmvStatus, String)> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

/// Static description of a status code. Never null.
#[no_mangle]
pub extern "C" fn tmv_status_message(status: TmvStatus) -> *const c_char {
    let s: &'static [u8] = match status {
        TmvStatus::Ok => b"ok\0",
        TmvStatus::NullPointer => b"null pointer argument\0",
        TmvStatus::InvalidInput => b"invalid input\0",
        TmvStatus::OutOfRange => b"index or coordinate out of range\0",
        TmvStatus::CapExceeded => b"instance exceeds the size cap\0",
        TmvStatus::Overflow => b"arithmetic overflow\0",
        TmvStatus::BufferTooSmall => b"output buffer too small\0",
        TmvStatus::Internal => b"internal error\0",
    };
    s.as_ptr().cast()
}

/// Message of the last failed call on this thread, or "" after a success.
/// Valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn tmv_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Creates a shape from `len` factor sizes.
///
/// # Safety
/// `sizes` must point to `len` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tmv_shape_new(sizes: *const u32, len: usize, out: *mut *mut TmvShape) -> TmvStatus {
    guard(|| {
        if sizes.is_null() && len > 0 {
            return Err(null("sizes"));
        }
        let sizes = if len == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(sizes, len)
        };
        let shape = core(HammingShape::new(sizes.to_vec()))?;
        write(out, Box::into_raw(Box::new(TmvShape(shape))), "out")
    })
}

/// # Safety
/// `shape` must be null or a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn tmv_shape_free(shape: *mut TmvShape) {
    if !shape.is_null() {
        drop(Box::from_raw(shape));
    }
}

/// # Safety
/// `shape` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tmv_shape_vertex_count(shape: *const TmvShape, out: *mut u64) -> TmvStatus {
    guard(|| write(out, deref(shape, "shape")?.0.vertex_count(), "out"))
}

/// # Safety
/// `shape` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tmv_shape_rank(shape: *const TmvShape, out: *mut usize) -> TmvStatus {
    guard(|| write(out, deref(shape, "shape")?.0.rank(), "out"))
}

/// Index of the vertex with 1-based coordinates `coords[0..len]`.
///
/// # Safety
/// `shape` must be a valid handle, `coords` must point to `len` values and
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tmv_shape_encode(
    shape: *const TmvShape,
    coords: *const u32,
    len: usize,
    out: *mut usize,
) -> TmvStatus {
    guard(|| {
        let shape = &deref(shape, "shape")?.0;
        if coords.is_null() {
            return Err(null("coords"));
        }
        let v = core(shape.vertex(std::slice::from_raw_parts(coords, len)))?;
        write(out, core(shape.encode(&v))?.0, "out")
    })
}

/// Writes the 1-based coordinates of vertex `index` into `coords[0..rank]`;
/// `len` must be at least the rank.
///
/// # Safety
/// `shape` must be a valid handle and `coords` must point to `len` writable values.
#[no_mangle]
pub unsafe extern "C" fn tmv_shape_decode(
    shape: *const TmvShape,
    index: usize,
    coords: *mut u32,
    len: usize,
) -> TmvStatus {
    guard(|| {
        let shape = &deref(shape, "shape")?.0;
        if coords.is_null() {
            return Err(null("coords"));
        }
        if len < shape.rank() {
            return Err((
                TmvStatus::BufferTooSmall,
                format!("need {} coordinates, got {len}", shape.rank()),
            ));
        }
        let v = core(shape.decode(VertexIndex(index)))?;
        std::slice::from_raw_parts_mut(coords, shape.rank()).copy_from_slice(&v.one_based());
        Ok(())
    })
}

/// Empty vertex set over the vertices of `shape`.
///
/// # Safety
/// `shape` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tmv_set_new(shape: *const TmvShape, out: *mut *mut TmvVertexSet) -> TmvStatus {
    guard(|| {
        let set = VertexSet::for_shape(&deref(shape, "shape")?.0);
        write(out, Box::into_raw(Box::new(TmvVertexSet(set))), "out")
    })
}

/// # Safety
/// `set` must be null or a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn tmv_set_free(set: *mut TmvVertexSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// # Safety
/// `set` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn tmv_set_insert(set: *mut TmvVertexSet, index: usize) -> TmvStatus {
    guard(|| {
        let set = set.as_mut().ok_or_else(|| null("set"))?;
        core(set.0.insert(index)).map(|_| ())
    })
}

/// # Safety
/// `set` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tmv_set_contains(set: *const TmvVertexSet, index: usize, out: *mut bool) -> TmvStatus {
    guard(|| write(out, deref(set, "set")?.0.contains(index), "out"))
}

/// # Safety
/// `set` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tmv_set_len(set: *const TmvVertexSet, out: *mut usize) -> TmvStatus {
    guard(|| write(out, deref(set, "set")?.0.len(), "out"))
}

/// Copies the member indices in increasing order into `buf[0..cap]` and
/// stores the member count in `written`. If `cap` is too small nothing is
/// copied, `written` still receives the count and
/// `TMV_STATUS_BUFFER_TOO_SMALL` is returned.
///
/// # Safety
/// `set` must be a valid handle, `buf` must point to `cap` writable values
/// (it may be null when `cap` is 0) and `written` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tmv_set_indices(
    set: *const TmvVertexSet,
    buf: *mut usize,
    cap: usize,
    written: *mut usize,
) -> TmvStatus {
    guard(|| {
        let set = &deref(set, "set")?.0;
        write(written, set.len(), "written")?;
        if cap < set.len() {
            return Err((
                TmvStatus::BufferTooSmall,
                format!("need {} slots, got {cap}", set.len()),
            ));
        }
        if set.is_empty() {
            return Ok(());
        }
        if buf.is_null() {
            return Err(null("buf"));
        }
        let out = std::slice::from_raw_parts_mut(buf, set.len());
        for (slot, v) in out.iter_mut().zip(set.iter()) {
            *slot = v;
        }
        Ok(())
    })
}

/// Whether `set` is a total mutual-visibility set of the Hamming graph.
///
/// # Safety
/// Handles must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tmv_is_tmv(shape: *const TmvShape, set: *const TmvVertexSet, out: *mut bool) -> TmvStatus {
    guard(|| {
        let verdict = core(is_tmv_hamming(&deref(shape, "shape")?.0, &deref(set, "set")?.0))?;
        write(out, verdict, "out")
    })
}

/// Exact `mu_t` with a witness. `threads` 0 uses all cores, `timeout_ms`
/// 0 means no limit; on expiry the certificate reports `optimal = false`.
///
/// # Safety
/// `shape` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tmv_solve(
    shape: *const TmvShape,
    threads: usize,
    timeout_ms: u64,
    symmetry: bool,
    out: *mut *mut TmvCertificate,
) -> TmvStatus {
    guard(|| {
        let opts = SolveOptions {
            threads,
            timeout: (timeout_ms > 0).then(|| Duration::from_millis(timeout_ms)),
            symmetry,
        };
        let cert = core(mut_exact_with(&deref(shape, "shape")?.0, &opts, DEFAULT_CAP))?;
        write(out, Box::into_raw(Box::new(TmvCertificate(cert))), "out")
    })
}

/// # Safety
/// `cert` must be null or a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn tmv_certificate_free(cert: *mut TmvCertificate) {
    if !cert.is_null() {
        drop(Box::from_raw(cert));
    }
}

/// # Safety
/// `cert` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tmv_certificate_value(cert: *const TmvCertificate, out: *mut usize) -> TmvStatus {
    guard(|| write(out, deref(cert, "cert")?.0.value, "out"))
}

/// # Safety
/// `cert` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tmv_certificate_optimal(cert: *const TmvCertificate, out: *mut bool) -> TmvStatus {
    guard(|| write(out, deref(cert, "cert")?.0.optimal, "out"))
}

/// # Safety
/// `cert` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tmv_certificate_nodes(cert: *const TmvCertificate, out: *mut u64) -> TmvStatus {
    guard(|| write(out, deref(cert, "cert")?.0.stats.nodes, "out"))
}

/// A new set handle holding a copy of the witness.
///
/// # Safety
/// `cert` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tmv_certificate_witness(
    cert: *const TmvCertificate,
    out: *mut *mut TmvVertexSet,
) -> TmvStatus {
    guard(|| {
        let set = deref(cert, "cert")?.0.witness.clone();
        write(out, Box::into_raw(Box::new(TmvVertexSet(set))), "out")
    })
}

/// The explicit optimal set for shapes with at most three non-trivial factors.
///
/// # Safety
/// `shape` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tmv_construct(shape: *const TmvShape, out: *mut *mut TmvVertexSet) -> TmvStatus {
    guard(|| {
        let set = core(construct(&deref(shape, "shape")?.0))?;
        write(out, Box::into_raw(Box::new(TmvVertexSet(set))), "out")
    })
}

/// Closed-form `mu_t` of `K_n1 □ K_n2 □ K_n3`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tmv_theorem1_value(n1: u32, n2: u32, n3: u32, out: *mut u64) -> TmvStatus {
    guard(|| write(out, core(theorem1_value(n1, n2, n3))?, "out"))
}

/// One run of the randomized construction on `K_s^r`. The set lives on
/// the balanced shape `(s, ..., s)`; `sampled` and `bad_pairs` may be null.
///
/// # Safety
/// `out` must be writable; `sampled` and `bad_pairs` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn tmv_random(
    s: u32,
    r: usize,
    seed: u64,
    out: *mut *mut TmvVertexSet,
    sampled: *mut usize,
    bad_pairs: *mut usize,
) -> TmvStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let rep = core(random_tmv(s, r, seed))?;
        if !sampled.is_null() {
            sampled.write(rep.sampled);
        }
        if !bad_pairs.is_null() {
            bad_pairs.write(rep.bad_pairs);
        }
        out.write(Box::into_raw(Box::new(TmvVertexSet(rep.set))));
        Ok(())
    })
}
