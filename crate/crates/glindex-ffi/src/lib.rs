//! C bindings for the glindex library.
//!
//! The interface follows the usual handle pattern: constructors hand out
//! opaque pointers, every fallible call returns a [`GlxStatus`], results
//! travel through out-parameters, and structured data crosses the boundary
//! as JSON strings in the library's wire formats. Failure details are kept
//! per thread and read back with [`glx_last_error`].
//!
//! Handles are only ever created and released here; passing a pointer that
//! did not come from the matching constructor, or using one after freeing
//! it, is undefined behavior.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;

use glindex::{Clutter, Error, FieldChoice, IndexValue, MonomialIdeal};

/// Status code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GlxStatus {
    /// The call succeeded.
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The input was structurally invalid; `glx_last_error` has details.
    Malformed = 3,
    /// The input was well formed but outside the supported range.
    Unsupported = 4,
    /// An internal invariant failed; `glx_last_error` has details.
    Internal = 5,
}

/// Opaque handle to a monomial ideal.
pub struct GlxIdeal(MonomialIdeal);

/// Opaque handle to a uniform clutter.
pub struct GlxClutter(Clutter);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = Some(CString::new(sanitized).expect("NUL bytes removed"));
    });
}

fn status_of(e: &Error) -> GlxStatus {
    match e {
        Error::Unsupported(_) | Error::MixedDegrees => GlxStatus::Unsupported,
        _ => GlxStatus::Malformed,
    }
}

/// Runs a fallible computation, translating errors and panics to statuses.
fn guarded<T>(f: impl FnOnce() -> Result<T, Error>) -> Result<T, GlxStatus> {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(value)) => Ok(value),
        Ok(Err(e)) => {
            set_error(&e.to_string());
            Err(status_of(&e))
        }
        Err(_) => {
            set_error("internal panic");
            Err(GlxStatus::Internal)
        }
    }
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, GlxStatus> {
    if ptr.is_null() {
        set_error("null string argument");
        return Err(GlxStatus::NullArgument);
    }
    match unsafe { CStr::from_ptr(ptr) }.to_str() {
        Ok(s) => Ok(s),
        Err(_) => {
            set_error("string argument is not valid UTF-8");
            Err(GlxStatus::InvalidUtf8)
        }
    }
}

unsafe fn deref<'a, T>(ptr: *const T) -> Result<&'a T, GlxStatus> {
    if ptr.is_null() {
        set_error("null handle argument");
        return Err(GlxStatus::NullArgument);
    }
    Ok(unsafe { &*ptr })
}

unsafe fn write_out<T>(out: *mut T, value: T) -> GlxStatus {
    if out.is_null() {
        set_error("null out-parameter");
        return GlxStatus::NullArgument;
    }
    unsafe { out.write(value) };
    GlxStatus::Ok
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .expect("NUL bytes removed")
        .into_raw()
}

/// Message for the most recent failure on the calling thread, or null if
/// none has occurred. The pointer stays valid until the next failing call
/// on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn glx_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(std::ptr::null(), |s| s.as_ptr())
    })
}

/// Library version as a static NUL-terminated string; do not free it.
#[no_mangle]
pub extern "C" fn glx_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Parses the ideal wire format `{"vars": n, "generators": [[e1,…,en], …]}`.
/// Non-minimal generator lists are minimalized silently.
///
/// On success writes a handle to `out`; release it with `glx_ideal_free`.
///
/// # Safety
/// `json` must point to a NUL-terminated string and `out` to writable
/// memory for one pointer.
#[no_mangle]
pub unsafe extern "C" fn glx_ideal_parse(
    json: *const c_char,
    out: *mut *mut GlxIdeal,
) -> GlxStatus {
    let text = match unsafe { read_str(json) } {
        Ok(s) => s,
        Err(status) => return status,
    };
    match guarded(|| MonomialIdeal::from_json_str(text).map(|(ideal, _)| ideal)) {
        Ok(ideal) => unsafe { write_out(out, Box::into_raw(Box::new(GlxIdeal(ideal)))) },
        Err(status) => status,
    }
}

/// Parses the clutter wire format `{"n": n, "d": d, "circuits": [[…], …]}`
/// with 1-based vertex lists.
///
/// On success writes a handle to `out`; release it with `glx_clutter_free`.
///
/// # Safety
/// `json` must point to a NUL-terminated string and `out` to writable
/// memory for one pointer.
#[no_mangle]
pub unsafe extern "C" fn glx_clutter_parse(
    json: *const c_char,
    out: *mut *mut GlxClutter,
) -> GlxStatus {
    let text = match unsafe { read_str(json) } {
        Ok(s) => s,
        Err(status) => return status,
    };
    match guarded(|| Clutter::from_json_str(text)) {
        Ok(clutter) => unsafe { write_out(out, Box::into_raw(Box::new(GlxClutter(clutter)))) },
        Err(status) => status,
    }
}

/// Looks up a catalog clutter by its stable name (for example "D1_6").
/// Names that resolve to an ideal rather than a clutter are rejected.
///
/// # Safety
/// `name` must point to a NUL-terminated string and `out` to writable
/// memory for one pointer.
#[no_mangle]
pub unsafe extern "C" fn glx_clutter_by_name(
    name: *const c_char,
    out: *mut *mut GlxClutter,
) -> GlxStatus {
    let name = match unsafe { read_str(name) } {
        Ok(s) => s,
        Err(status) => return status,
    };
    let looked_up = guarded(|| match glindex::clutter::by_name(name) {
        Some(glindex::clutter::CatalogEntry::Clutter(c)) => Ok(c),
        Some(glindex::clutter::CatalogEntry::Ideal(_)) => Err(Error::Malformed(format!(
            "catalog entry {name:?} is an ideal, not a clutter"
        ))),
        None => Err(Error::Malformed(format!("unknown catalog name {name:?}"))),
    });
    match looked_up {
        Ok(clutter) => unsafe { write_out(out, Box::into_raw(Box::new(GlxClutter(clutter)))) },
        Err(status) => status,
    }
}

/// Looks up a catalog entry by name as an ideal; clutter entries are
/// converted to their edge ideal.
///
/// # Safety
/// `name` must point to a NUL-terminated string and `out` to writable
/// memory for one pointer.
#[no_mangle]
pub unsafe extern "C" fn glx_ideal_by_name(
    name: *const c_char,
    out: *mut *mut GlxIdeal,
) -> GlxStatus {
    let name = match unsafe { read_str(name) } {
        Ok(s) => s,
        Err(status) => return status,
    };
    let looked_up = guarded(|| match glindex::clutter::by_name(name) {
        Some(glindex::clutter::CatalogEntry::Clutter(c)) => Ok(c.edge_ideal()),
        Some(glindex::clutter::CatalogEntry::Ideal(i)) => Ok(i),
        None => Err(Error::Malformed(format!("unknown catalog name {name:?}"))),
    });
    match looked_up {
        Ok(ideal) => unsafe { write_out(out, Box::into_raw(Box::new(GlxIdeal(ideal)))) },
        Err(status) => status,
    }
}

/// Serializes an ideal back to its JSON wire format. Free the string with
/// `glx_string_free`.
///
/// # Safety
/// `ideal` must be a live handle from this library and `out` writable
/// memory for one pointer.
#[no_mangle]
pub unsafe extern "C" fn glx_ideal_to_json(
    ideal: *const GlxIdeal,
    out: *mut *mut c_char,
) -> GlxStatus {
    let ideal = match unsafe { deref(ideal) } {
        Ok(i) => i,
        Err(status) => return status,
    };
    unsafe { write_out(out, to_c_string(ideal.0.to_json_string())) }
}

/// Serializes a clutter back to its JSON wire format. Free the string with
/// `glx_string_free`.
///
/// # Safety
/// `clutter` must be a live handle from this library and `out` writable
/// memory for one pointer.
#[no_mangle]
pub unsafe extern "C" fn glx_clutter_to_json(
    clutter: *const GlxClutter,
    out: *mut *mut c_char,
) -> GlxStatus {
    let clutter = match unsafe { deref(clutter) } {
        Ok(c) => c,
        Err(status) => return status,
    };
    unsafe { write_out(out, to_c_string(clutter.0.to_json_string())) }
}

/// The k-th power of an ideal as a fresh handle. `power` must be at least 1.
///
/// # Safety
/// `ideal` must be a live handle from this library and `out` writable
/// memory for one pointer.
#[no_mangle]
pub unsafe extern "C" fn glx_ideal_power(
    ideal: *const GlxIdeal,
    power: u32,
    out: *mut *mut GlxIdeal,
) -> GlxStatus {
    let ideal = match unsafe { deref(ideal) } {
        Ok(i) => i,
        Err(status) => return status,
    };
    if power == 0 {
        set_error("power must be at least 1");
        return GlxStatus::Malformed;
    }
    match guarded(|| Ok(ideal.0.power(power))) {
        Ok(powered) => unsafe { write_out(out, Box::into_raw(Box::new(GlxIdeal(powered)))) },
        Err(status) => status,
    }
}

/// The complement clutter, sharing the vertex set.
///
/// # Safety
/// `clutter` must be a live handle from this library and `out` writable
/// memory for one pointer.
#[no_mangle]
pub unsafe extern "C" fn glx_clutter_complement(
    clutter: *const GlxClutter,
    out: *mut *mut GlxClutter,
) -> GlxStatus {
    let clutter = match unsafe { deref(clutter) } {
        Ok(c) => c,
        Err(status) => return status,
    };
    unsafe {
        write_out(
            out,
            Box::into_raw(Box::new(GlxClutter(clutter.0.complement()))),
        )
    }
}

/// The edge ideal of a clutter as a fresh ideal handle.
///
/// # Safety
/// `clutter` must be a live handle from this library and `out` writable
/// memory for one pointer.
#[no_mangle]
pub unsafe extern "C" fn glx_clutter_edge_ideal(
    clutter: *const GlxClutter,
    out: *mut *mut GlxIdeal,
) -> GlxStatus {
    let clutter = match unsafe { deref(clutter) } {
        Ok(c) => c,
        Err(status) => return status,
    };
    unsafe {
        write_out(
            out,
            Box::into_raw(Box::new(GlxIdeal(clutter.0.edge_ideal()))),
        )
    }
}

/// Graded and multigraded Betti numbers as a JSON string
/// `{"graded": [[i, j, rank], …], "multigraded": [[i, [e1,…], rank], …]}`.
/// `field` is "q" for the rationals or a prime written in decimal. Free the
/// string with `glx_string_free`.
///
/// # Safety
/// `ideal` must be a live handle from this library, `field` a
/// NUL-terminated string, and `out` writable memory for one pointer.
#[no_mangle]
pub unsafe extern "C" fn glx_betti_json(
    ideal: *const GlxIdeal,
    field: *const c_char,
    out: *mut *mut c_char,
) -> GlxStatus {
    let ideal = match unsafe { deref(ideal) } {
        Ok(i) => i,
        Err(status) => return status,
    };
    let field = match unsafe { read_str(field) } {
        Ok(s) => s,
        Err(status) => return status,
    };
    let table = match guarded(|| {
        let field: FieldChoice = field.parse()?;
        glindex::betti::betti_table(&ideal.0, field)
    }) {
        Ok(t) => t,
        Err(status) => return status,
    };
    unsafe { write_out(out, to_c_string(table.to_json_string())) }
}

/// Number of leading linear steps of the minimal free resolution, written
/// to `out`; -1 encodes an entirely linear resolution.
///
/// # Safety
/// `ideal` must be a live handle from this library, `field` a
/// NUL-terminated string, and `out` writable memory for one `int64_t`.
#[no_mangle]
pub unsafe extern "C" fn glx_index(
    ideal: *const GlxIdeal,
    field: *const c_char,
    out: *mut i64,
) -> GlxStatus {
    let ideal = match unsafe { deref(ideal) } {
        Ok(i) => i,
        Err(status) => return status,
    };
    let field = match unsafe { read_str(field) } {
        Ok(s) => s,
        Err(status) => return status,
    };
    let value = match guarded(|| {
        let field: FieldChoice = field.parse()?;
        glindex::betti::gl_index(&ideal.0, field)
    }) {
        Ok(v) => v,
        Err(status) => return status,
    };
    let encoded = match value {
        IndexValue::Finite(i) => i as i64,
        IndexValue::Infinity => -1,
    };
    unsafe { write_out(out, encoded) }
}

/// Whether the `power`-th power of the ideal is linearly presented,
/// decided on the generator graph without choosing a field.
///
/// # Safety
/// `ideal` must be a live handle from this library and `out` writable
/// memory for one `bool`.
#[no_mangle]
pub unsafe extern "C" fn glx_linearly_presented(
    ideal: *const GlxIdeal,
    power: u32,
    out: *mut bool,
) -> GlxStatus {
    let ideal = match unsafe { deref(ideal) } {
        Ok(i) => i,
        Err(status) => return status,
    };
    if power == 0 {
        set_error("power must be at least 1");
        return GlxStatus::Malformed;
    }
    match guarded(|| glindex::linpres::power_check(&ideal.0, power)) {
        Ok(check) => unsafe { write_out(out, check.linearly_presented) },
        Err(status) => status,
    }
}

/// The four classification flags of a clutter as a JSON string
/// `{"D_free": …, "complement_C_free": …, "index_gt1": …, "index_sq_gt1": …}`.
/// `cache_dir` may be null; when set, the classification family is cached
/// there between calls. Free the string with `glx_string_free`.
///
/// # Safety
/// `clutter` must be a live handle from this library, `cache_dir` null or a
/// NUL-terminated string, and `out` writable memory for one pointer.
#[no_mangle]
pub unsafe extern "C" fn glx_classify_json(
    clutter: *const GlxClutter,
    cache_dir: *const c_char,
    out: *mut *mut c_char,
) -> GlxStatus {
    let clutter = match unsafe { deref(clutter) } {
        Ok(c) => c,
        Err(status) => return status,
    };
    let cache: Option<PathBuf> = if cache_dir.is_null() {
        None
    } else {
        match unsafe { read_str(cache_dir) } {
            Ok(s) => Some(PathBuf::from(s)),
            Err(status) => return status,
        }
    };
    let rendered = match guarded(|| {
        let c = &clutter.0;
        let family = glindex::family_d(cache.as_deref())?;
        let ideal = c.edge_ideal();
        Ok(format!(
            "{{\"D_free\":{},\"complement_C_free\":{},\"index_gt1\":{},\"index_sq_gt1\":{}}}",
            c.is_family_free(family.members()),
            c.complement().is_family_free(&glindex::clutter::family_c()),
            glindex::linpres::linearly_presented_graph(&ideal)?.linearly_presented,
            glindex::linpres::power_check(&ideal, 2)?.linearly_presented,
        ))
    }) {
        Ok(s) => s,
        Err(status) => return status,
    };
    unsafe { write_out(out, to_c_string(rendered)) }
}

/// Releases an ideal handle; null is ignored.
///
/// # Safety
/// `ideal` must be null or a live handle from this library; the handle is
/// dead afterwards.
#[no_mangle]
pub unsafe extern "C" fn glx_ideal_free(ideal: *mut GlxIdeal) {
    if !ideal.is_null() {
        drop(unsafe { Box::from_raw(ideal) });
    }
}

/// Releases a clutter handle; null is ignored.
///
/// # Safety
/// `clutter` must be null or a live handle from this library; the handle is
/// dead afterwards.
#[no_mangle]
pub unsafe extern "C" fn glx_clutter_free(clutter: *mut GlxClutter) {
    if !clutter.is_null() {
        drop(unsafe { Box::from_raw(clutter) });
    }
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must be null or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn glx_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}
