//! C ABI for `seifert-covers`.
//!
//! Every function returns an [`SfsStatus`]; on failure a message is kept per
//! thread and can be read with [`sfs_last_error_message`]. Strings handed out
//! by this library must be released with [`sfs_string_free`], handles with
//! [`sfs_invariants_free`]. A handle must not be used from two threads at
//! once.

use std::cell::{OnceCell, RefCell};
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use seifert_covers::abelian::h1;
use seifert_covers::parse::{parse_hom, parse_seifert};
use seifert_covers::verify::verify_cover;
use seifert_covers::{double_cover, enumerate_epimorphisms, Error, SeifertInvariants, Z2Hom};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SfsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidInvariants = 4,
    InvalidHomomorphism = 5,
    IndexOutOfRange = 6,
    TooLarge = 7,
    Internal = 8,
    Panic = 9,
}

/// Opaque Seifert invariants.
pub struct SfsInvariants {
    inv: SeifertInvariants,
    epimorphisms: OnceCell<Vec<Z2Hom>>,
}

impl SfsInvariants {
    fn new(inv: SeifertInvariants) -> Box<Self> {
        Box::new(SfsInvariants {
            inv,
            epimorphisms: OnceCell::new(),
        })
    }

    fn epimorphisms(&self) -> Result<&[Z2Hom], Failure> {
        if let Some(v) = self.epimorphisms.get() {
            return Ok(v);
        }
        let p = self.inv.fundamental_presentation()?;
        let v = enumerate_epimorphisms(&p)?;
        Ok(self.epimorphisms.get_or_init(|| v))
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(SfsStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Syntax { .. } => SfsStatus::ParseError,
            Error::InvalidInvariants(_) => SfsStatus::InvalidInvariants,
            Error::UnknownGenerator(_)
            | Error::DuplicateGenerator(_)
            | Error::InvalidBit { .. }
            | Error::HomomorphismShape
            | Error::NotEpimorphism(_) => SfsStatus::InvalidHomomorphism,
            Error::TooLarge { .. } => SfsStatus::TooLarge,
            Error::Precondition(_) | Error::Inconsistent(_) | Error::UnknownCase(_) => {
                SfsStatus::Internal
            }
        };
        Failure(status, e.to_string())
    }
}

fn set_last_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SfsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
            SfsStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_last_error(&message);
            status
        }
        Err(_) => {
            set_last_error("panic inside seifert-covers");
            SfsStatus::Panic
        }
    }
}

unsafe fn arg_str<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(
            SfsStatus::NullPointer,
            "null string argument".into(),
        ));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(SfsStatus::InvalidUtf8, "argument is not UTF-8".into()))
}

unsafe fn handle<'a>(h: *const SfsInvariants) -> Result<&'a SfsInvariants, Failure> {
    h.as_ref()
        .ok_or_else(|| Failure(SfsStatus::NullPointer, "null handle".into()))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(
            SfsStatus::NullPointer,
            "null output pointer".into(),
        ));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c =
        CString::new(s).map_err(|_| Failure(SfsStatus::Internal, "nul byte in output".into()))?;
    if out.is_null() {
        return Err(Failure(
            SfsStatus::NullPointer,
            "null output pointer".into(),
        ));
    }
    out.write(c.into_raw());
    Ok(())
}

fn parse_phi(h: &SfsInvariants, phi: &str) -> Result<Z2Hom, Failure> {
    let p = h.inv.fundamental_presentation()?;
    Ok(parse_hom(phi, &p)?)
}

/// Message of the last failed call on this thread, or null. The pointer
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn sfs_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn sfs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `{e;(t,g);(a1,b1),...}` and checks it is a valid symbol.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sfs_invariants_parse(
    text: *const c_char,
    out: *mut *mut SfsInvariants,
) -> SfsStatus {
    guard(|| {
        let inv = parse_seifert(arg_str(text)?)?;
        inv.check()?;
        write(out, Box::into_raw(SfsInvariants::new(inv)))
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `h` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn sfs_invariants_free(h: *mut SfsInvariants) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sfs_invariants_to_string(
    h: *const SfsInvariants,
    out: *mut *mut c_char,
) -> SfsStatus {
    guard(|| write_string(out, handle(h)?.inv.to_string()))
}

/// First homology of the fundamental group, e.g. `Z^2 + Z/4`.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sfs_invariants_h1(
    h: *const SfsInvariants,
    out: *mut *mut c_char,
) -> SfsStatus {
    guard(|| {
        let p = handle(h)?.inv.fundamental_presentation()?;
        write_string(out, h1(&p).to_string())
    })
}

/// Number of epimorphisms onto Z/2.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sfs_epimorphism_count(
    h: *const SfsInvariants,
    out: *mut usize,
) -> SfsStatus {
    guard(|| write(out, handle(h)?.epimorphisms()?.len()))
}

/// The `index`-th epimorphism as `gen=bit,...`, in enumeration order.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sfs_epimorphism_at(
    h: *const SfsInvariants,
    index: usize,
    out: *mut *mut c_char,
) -> SfsStatus {
    guard(|| {
        let all = handle(h)?.epimorphisms()?;
        let phi = all.get(index).ok_or_else(|| {
            Failure(
                SfsStatus::IndexOutOfRange,
                format!("index {index} out of range for {} epimorphisms", all.len()),
            )
        })?;
        write_string(out, phi.to_string())
    })
}

/// Invariants of the double cover for `phi` (`gen=bit,...`).
///
/// # Safety
/// `h` must be a live handle, `phi` nul-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sfs_double_cover(
    h: *const SfsInvariants,
    phi: *const c_char,
    out: *mut *mut SfsInvariants,
) -> SfsStatus {
    guard(|| {
        let h = handle(h)?;
        let phi = parse_phi(h, arg_str(phi)?)?;
        let cover = double_cover(&h.inv, &phi)?;
        write(out, Box::into_raw(SfsInvariants::new(cover)))
    })
}

/// Checks the predicted cover against the rewritten kernel. `out_pass`
/// receives the verdict; `out_json` (may be null) the full report.
///
/// # Safety
/// `h` must be a live handle, `phi` nul-terminated, `out_pass` writable,
/// `out_json` null or writable.
#[no_mangle]
pub unsafe extern "C" fn sfs_verify(
    h: *const SfsInvariants,
    phi: *const c_char,
    out_pass: *mut bool,
    out_json: *mut *mut c_char,
) -> SfsStatus {
    guard(|| {
        let h = handle(h)?;
        let phi = parse_phi(h, arg_str(phi)?)?;
        let report = verify_cover(&h.inv, &phi)?;
        write(out_pass, report.pass)?;
        if !out_json.is_null() {
            let json = serde_json::to_string(&report)
                .map_err(|e| Failure(SfsStatus::Internal, e.to_string()))?;
            write_string(out_json, json)?;
        }
        Ok(())
    })
}
