//! C ABI over the mupi library.
//!
//! Conventions: opaque handles (`MupiSession`, `MupiRep`, `MupiTable`)
//! created and freed through paired functions; every fallible call returns a
//! [`MupiStatus`]; details of the last failure on the current thread are
//! available through `mupi_last_error_message` / `mupi_last_error_offset`.
//! Handles are not synchronized; guard them externally if shared across
//! threads. The C header is generated into `include/mupi.h` at build time.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;

use mupi::error::Error;
use mupi::experiments;
use mupi::localfactor;
use mupi::registry::FormRegistry;
use mupi::repalg::{self, RepExpr};
use mupi::sieve::{self, MobiusTable};

/// Result of a C API call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MupiStatus {
    Ok = 0,
    /// invalid argument or unsupported value
    Argument = 1,
    /// expression syntax error; see mupi_last_error_offset()
    Parse = 2,
    /// missing or malformed input data
    Data = 3,
    /// operation outside the supported range
    Capability = 4,
    /// internal invariant violation (bug)
    Internal = 5,
    /// a required pointer argument was null
    NullPointer = 6,
    /// a string argument was not valid UTF-8
    Utf8 = 7,
}

thread_local! {
    static LAST_ERROR: RefCell<(String, i64)> = const { RefCell::new((String::new(), -1)) };
}

fn set_error(msg: &str, offset: i64) {
    LAST_ERROR.with(|e| *e.borrow_mut() = (msg.to_string(), offset));
}

fn fail(e: &Error) -> MupiStatus {
    let offset = match e {
        Error::Parse { offset, .. } => *offset as i64,
        _ => -1,
    };
    set_error(&e.to_string(), offset);
    match e {
        Error::Argument(_) => MupiStatus::Argument,
        Error::Parse { .. } => MupiStatus::Parse,
        Error::Data { .. } | Error::Io(_) => MupiStatus::Data,
        Error::Capability(_) => MupiStatus::Capability,
        Error::Internal(_) => MupiStatus::Internal,
    }
}

fn guard(f: impl FnOnce() -> MupiStatus) -> MupiStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("panic across FFI boundary", -1);
            MupiStatus::Internal
        }
    }
}

/// Session: eigenvalue registry plus loaded Maass datasets.
pub struct MupiSession {
    registry: FormRegistry,
}

/// Parsed representation expression.
pub struct MupiRep {
    expr: RepExpr,
}

/// Sieved Mobius table.
pub struct MupiTable {
    table: MobiusTable,
}

unsafe fn cstr<'a>(p: *const c_char) -> Result<&'a str, MupiStatus> {
    if p.is_null() {
        set_error("null string argument", -1);
        return Err(MupiStatus::NullPointer);
    }
    unsafe { CStr::from_ptr(p) }.to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8", -1);
        MupiStatus::Utf8
    })
}

/// Copy `s` into `buf` (NUL-terminated, truncating); returns the full
/// length including the NUL, so callers can size a retry buffer.
fn write_out(s: &str, buf: *mut c_char, cap: usize) -> usize {
    let bytes = s.as_bytes();
    if !buf.is_null() && cap > 0 {
        let n = bytes.len().min(cap - 1);
        unsafe {
            std::ptr::copy_nonoverlapping(bytes.as_ptr() as *const c_char, buf, n);
            *buf.add(n) = 0;
        }
    }
    bytes.len() + 1
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn mupi_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr() as *const c_char
}

/// Create a session. Free with mupi_session_free.
#[no_mangle]
pub extern "C" fn mupi_session_new() -> *mut MupiSession {
    Box::into_raw(Box::new(MupiSession {
        registry: FormRegistry::new(),
    }))
}

/// # Safety
/// `s` must be a pointer returned by mupi_session_new, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn mupi_session_free(s: *mut MupiSession) {
    if !s.is_null() {
        drop(unsafe { Box::from_raw(s) });
    }
}

/// Set the directory for exact q-expansion cache tables.
///
/// # Safety
/// `s` must be a live session handle; `dir` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn mupi_session_set_cache_dir(
    s: *mut MupiSession,
    dir: *const c_char,
) -> MupiStatus {
    guard(|| {
        let Some(sess) = (unsafe { s.as_mut() }) else {
            set_error("null session", -1);
            return MupiStatus::NullPointer;
        };
        let dir = match unsafe { cstr(dir) } {
            Ok(d) => d,
            Err(st) => return st,
        };
        sess.registry.set_cache_dir(PathBuf::from(dir));
        MupiStatus::Ok
    })
}

/// Load and validate a Maass dataset file; writes the session id
/// (`maass:<file stem>`) into id_out when provided.
///
/// # Safety
/// `s` must be a live session handle; `path` a NUL-terminated string;
/// `id_out` either null or valid for `id_cap` bytes.
#[no_mangle]
pub unsafe extern "C" fn mupi_session_load_maass(
    s: *mut MupiSession,
    path: *const c_char,
    id_out: *mut c_char,
    id_cap: usize,
) -> MupiStatus {
    guard(|| {
        let Some(sess) = (unsafe { s.as_mut() }) else {
            set_error("null session", -1);
            return MupiStatus::NullPointer;
        };
        let path = match unsafe { cstr(path) } {
            Ok(p) => p,
            Err(st) => return st,
        };
        match sess.registry.load_maass_file(std::path::Path::new(path)) {
            Ok(id) => {
                write_out(&id, id_out, id_cap);
                MupiStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Parse a representation expression. `s` may be null when the expression
/// uses no Maass forms. On success `*out` owns the new handle.
///
/// # Safety
/// `text` must be NUL-terminated; `out` non-null.
#[no_mangle]
pub unsafe extern "C" fn mupi_rep_parse(
    s: *const MupiSession,
    text: *const c_char,
    out: *mut *mut MupiRep,
) -> MupiStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer", -1);
            return MupiStatus::NullPointer;
        }
        let text = match unsafe { cstr(text) } {
            Ok(t) => t,
            Err(st) => return st,
        };
        let ids = unsafe { s.as_ref() }
            .map(|sess| sess.registry.maass_ids())
            .unwrap_or_default();
        match repalg::parse_rep(text, &ids) {
            Ok(expr) => {
                unsafe { *out = Box::into_raw(Box::new(MupiRep { expr })) };
                MupiStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// # Safety
/// `r` must be a pointer returned by mupi_rep_parse, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn mupi_rep_free(r: *mut MupiRep) {
    if !r.is_null() {
        drop(unsafe { Box::from_raw(r) });
    }
}

/// Degree of the associated L-function (0 on a null handle).
///
/// # Safety
/// `r` must be a live rep handle or null.
#[no_mangle]
pub unsafe extern "C" fn mupi_rep_degree(r: *const MupiRep) -> u64 {
    unsafe { r.as_ref() }.map(|r| r.expr.degree()).unwrap_or(0)
}

/// Canonical string form of the expression; returns the needed buffer
/// length including the NUL terminator.
///
/// # Safety
/// `r` must be a live rep handle; `buf` either null or valid for `cap` bytes.
#[no_mangle]
pub unsafe extern "C" fn mupi_rep_format(r: *const MupiRep, buf: *mut c_char, cap: usize) -> usize {
    match unsafe { r.as_ref() } {
        Some(rep) => write_out(&rep.expr.to_string(), buf, cap),
        None => 0,
    }
}

/// Compute or load eigenvalue data for every prime p <= limit needed by the
/// expression's base forms.
///
/// # Safety
/// `s` and `r` must be live handles.
#[no_mangle]
pub unsafe extern "C" fn mupi_session_prepare(
    s: *mut MupiSession,
    r: *const MupiRep,
    limit: u64,
) -> MupiStatus {
    guard(|| {
        let (Some(sess), Some(rep)) = (unsafe { s.as_mut() }, unsafe { r.as_ref() }) else {
            set_error("null handle", -1);
            return MupiStatus::NullPointer;
        };
        match sess.registry.prepare(&rep.expr, limit) {
            Ok(()) => MupiStatus::Ok,
            Err(e) => fail(&e),
        }
    })
}

/// Local data at prime p: lambda(p) into *lambda_out, mu(p^0..p^d) into
/// mobius_out (up to mobius_cap entries; *mobius_len gets d+1, the full
/// count, so callers can size a retry buffer).
///
/// # Safety
/// Handles must be live; out pointers null or valid as described.
#[no_mangle]
pub unsafe extern "C" fn mupi_local_data(
    s: *const MupiSession,
    r: *const MupiRep,
    p: u64,
    lambda_out: *mut f64,
    mobius_out: *mut f64,
    mobius_cap: usize,
    mobius_len: *mut usize,
) -> MupiStatus {
    guard(|| {
        let (Some(sess), Some(rep)) = (unsafe { s.as_ref() }, unsafe { r.as_ref() }) else {
            set_error("null handle", -1);
            return MupiStatus::NullPointer;
        };
        match localfactor::local_data(&rep.expr, p, &sess.registry) {
            Ok(d) => {
                if !lambda_out.is_null() {
                    unsafe { *lambda_out = d.lambda_p };
                }
                if !mobius_len.is_null() {
                    unsafe { *mobius_len = d.mobius.len() };
                }
                if !mobius_out.is_null() {
                    let n = d.mobius.len().min(mobius_cap);
                    unsafe {
                        std::ptr::copy_nonoverlapping(d.mobius.as_ptr(), mobius_out, n);
                    }
                }
                MupiStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Sieve mu(n) for n <= n_max. The session must have been prepared to at
/// least n_max for this expression.
///
/// # Safety
/// Handles must be live; `out` non-null.
#[no_mangle]
pub unsafe extern "C" fn mupi_mobius_table_new(
    s: *const MupiSession,
    r: *const MupiRep,
    n_max: u64,
    out: *mut *mut MupiTable,
) -> MupiStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer", -1);
            return MupiStatus::NullPointer;
        }
        let (Some(sess), Some(rep)) = (unsafe { s.as_ref() }, unsafe { r.as_ref() }) else {
            set_error("null handle", -1);
            return MupiStatus::NullPointer;
        };
        match sieve::mobius_table(&rep.expr, n_max, &sess.registry) {
            Ok(table) => {
                unsafe { *out = Box::into_raw(Box::new(MupiTable { table })) };
                MupiStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// # Safety
/// `t` must be a pointer returned by mupi_mobius_table_new, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn mupi_table_free(t: *mut MupiTable) {
    if !t.is_null() {
        drop(unsafe { Box::from_raw(t) });
    }
}

/// Upper bound N of the table (0 on a null handle).
///
/// # Safety
/// `t` must be a live table handle or null.
#[no_mangle]
pub unsafe extern "C" fn mupi_table_n_max(t: *const MupiTable) -> u64 {
    unsafe { t.as_ref() }.map(|t| t.table.n_max()).unwrap_or(0)
}

/// mu(n) into *out.
///
/// # Safety
/// `t` must be a live table handle; `out` non-null.
#[no_mangle]
pub unsafe extern "C" fn mupi_table_value(t: *const MupiTable, n: u64, out: *mut f64) -> MupiStatus {
    guard(|| {
        let Some(tbl) = (unsafe { t.as_ref() }) else {
            set_error("null table", -1);
            return MupiStatus::NullPointer;
        };
        if out.is_null() {
            set_error("null output pointer", -1);
            return MupiStatus::NullPointer;
        }
        if n < 1 || n > tbl.table.n_max() {
            set_error("index out of table range", -1);
            return MupiStatus::Argument;
        }
        unsafe { *out = tbl.table.value(n) };
        MupiStatus::Ok
    })
}

/// S(x) = sum_{n<=x} |mu(n)| into *out (linear scan).
///
/// # Safety
/// `t` must be a live table handle; `out` non-null.
#[no_mangle]
pub unsafe extern "C" fn mupi_table_abs_sum(
    t: *const MupiTable,
    x: u64,
    out: *mut f64,
) -> MupiStatus {
    guard(|| {
        let Some(tbl) = (unsafe { t.as_ref() }) else {
            set_error("null table", -1);
            return MupiStatus::NullPointer;
        };
        if out.is_null() {
            set_error("null output pointer", -1);
            return MupiStatus::NullPointer;
        }
        match tbl.table.abs_partial_sums(&[x]) {
            Ok(s) => {
                unsafe { *out = s.points[0].1 };
                MupiStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Exact check of Sym^m x Sym^{m+r} = (+) Sym^{2i+r}; returns 1 when the
/// multisets agree, 0 otherwise.
#[no_mangle]
pub extern "C" fn mupi_check_decomposition(m: u32, r: u32) -> i32 {
    i32::from(repalg::check_decomposition(m, r))
}

/// Runs the tensor-power identity suite; returns the number of failing
/// identities (0 = all pass).
#[no_mangle]
pub extern "C" fn mupi_power_identity_failures() -> i32 {
    repalg::check_power_identities()
        .iter()
        .filter(|c| !c.pass)
        .count() as i32
}

/// Decay exponent eta for the pair Sym^{m1} x Sym^{m2}; fails with
/// MUPI_STATUS_ARGUMENT when m1 = m2 = 0.
///
/// # Safety
/// `out` must be non-null.
#[no_mangle]
pub unsafe extern "C" fn mupi_eta_exponent(m1: u32, m2: u32, out: *mut f64) -> MupiStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer", -1);
            return MupiStatus::NullPointer;
        }
        match experiments::eta_exponent(m1, m2) {
            Ok(v) => {
                unsafe { *out = v };
                MupiStatus::Ok
            }
            Err(e) => fail(&e),
        }
    })
}

/// Copy the last error message on this thread into buf; returns the needed
/// length including the NUL terminator.
///
/// # Safety
/// `buf` either null or valid for `cap` bytes.
#[no_mangle]
pub unsafe extern "C" fn mupi_last_error_message(buf: *mut c_char, cap: usize) -> usize {
    LAST_ERROR.with(|e| write_out(&e.borrow().0, buf, cap))
}

/// Byte offset of the last parse error on this thread, or -1.
#[no_mangle]
pub extern "C" fn mupi_last_error_offset() -> i64 {
    LAST_ERROR.with(|e| e.borrow().1)
}
