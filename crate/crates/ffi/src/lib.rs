//! C interface to `phinmod`.
//!
//! A session fixes `p`, `n` and `f`; commands take and return the same JSON
//! documents as the command-line tool. Returned strings are owned by the
//! caller and released with [`phinmod_string_free`]. The message of the
//! last failure on the calling thread is available from
//! [`phinmod_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use phinmod::cli::{run_json, Command, SessionConfig};
use phinmod::Error;

/// Status codes. The first four match the command-line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhinmodStatus {
    Ok = 0,
    Invalid = 1,
    Unsupported = 2,
    Internal = 3,
    NullArgument = 4,
    BadString = 5,
}

impl PhinmodStatus {
    fn from_exit_code(code: i32) -> PhinmodStatus {
        match code {
            0 => PhinmodStatus::Ok,
            2 => PhinmodStatus::Unsupported,
            3 => PhinmodStatus::Internal,
            _ => PhinmodStatus::Invalid,
        }
    }
}

/// Opaque session handle.
pub struct PhinmodSession {
    p: u64,
    n: Option<usize>,
    f: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: impl Into<String>) {
    let text = CString::new(msg.into().replace('\0', " ")).expect("interior nuls removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn clear_last_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn fail(status: PhinmodStatus, msg: impl Into<String>) -> PhinmodStatus {
    set_last_error(msg);
    status
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, PhinmodStatus> {
    if s.is_null() {
        return Err(fail(PhinmodStatus::NullArgument, "null string argument"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(PhinmodStatus::BadString, "argument is not valid UTF-8"))
}

/// Creates a session. `n = 0` lets each payload determine the matrix size.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn phinmod_session_new(
    p: u64,
    n: usize,
    f: usize,
    out: *mut *mut PhinmodSession,
) -> PhinmodStatus {
    clear_last_error();
    if out.is_null() {
        return fail(PhinmodStatus::NullArgument, "null output handle");
    }
    *out = ptr::null_mut();
    let n = (n != 0).then_some(n);
    // validate once up front with a command that needs nothing else
    if let Err(e) = SessionConfig::new(p, n, f, Command::Selftest) {
        return fail(PhinmodStatus::from_exit_code(e.exit_code()), e.to_string());
    }
    *out = Box::into_raw(Box::new(PhinmodSession { p, n, f }));
    PhinmodStatus::Ok
}

/// Releases a session. Passing null is a no-op.
///
/// # Safety
/// `session` must be null or a handle from [`phinmod_session_new`] that has
/// not been freed.
#[no_mangle]
pub unsafe extern "C" fn phinmod_session_free(session: *mut PhinmodSession) {
    if !session.is_null() {
        drop(Box::from_raw(session));
    }
}

/// Runs `cmd` on the JSON document `input` (a single payload, or an array
/// of payloads when `batch` is true). On return `*out` holds the JSON
/// report, including error reports, or null if the arguments were
/// unusable.
///
/// # Safety
/// `session` must be a live handle; `cmd` and `input` must be
/// NUL-terminated strings; `out` must be valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn phinmod_run(
    session: *const PhinmodSession,
    cmd: *const c_char,
    input: *const c_char,
    batch: bool,
    out: *mut *mut c_char,
) -> PhinmodStatus {
    clear_last_error();
    if out.is_null() {
        return fail(PhinmodStatus::NullArgument, "null output pointer");
    }
    *out = ptr::null_mut();
    let Some(session) = session.as_ref() else {
        return fail(PhinmodStatus::NullArgument, "null session");
    };
    let cmd = match read_str(cmd) {
        Ok(s) => s,
        Err(status) => return status,
    };
    let input = match read_str(input) {
        Ok(s) => s,
        Err(status) => return status,
    };
    let cfg = match cmd
        .parse::<Command>()
        .and_then(|c| SessionConfig::new(session.p, session.n, session.f, c))
    {
        Ok(cfg) => cfg,
        Err(e) => return report(&e, out),
    };
    let (text, code) = run_json(&cfg, input, batch);
    if code != 0 {
        set_last_error(text.trim_end().to_string());
    }
    *out = CString::new(text).map_or(ptr::null_mut(), CString::into_raw);
    PhinmodStatus::from_exit_code(code)
}

unsafe fn report(e: &Error, out: *mut *mut c_char) -> PhinmodStatus {
    let text = phinmod::json::error(e).to_string();
    set_last_error(e.to_string());
    *out = CString::new(text).map_or(ptr::null_mut(), CString::into_raw);
    PhinmodStatus::from_exit_code(e.exit_code())
}

/// Frees a string returned by this library. Passing null is a no-op.
///
/// # Safety
/// `s` must be null or a string returned by [`phinmod_run`] that has not
/// been freed.
#[no_mangle]
pub unsafe extern "C" fn phinmod_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failure on this thread, or null. The pointer stays
/// valid until the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn phinmod_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn phinmod_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
