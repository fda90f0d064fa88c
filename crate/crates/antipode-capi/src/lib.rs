//! C ABI for the antipode kernel.
//!
//! The surface is deliberately small: build a presentation handle (from a
//! JSON document or a built-in family), verify the Hopf axioms, query the
//! invariant m_H and the antipode order, and fetch a full JSON report.
//!
//! Conventions:
//! - Every fallible function returns an [`AntipodeStatus`]; `ANTIPODE_STATUS_OK`
//!   is zero. On any other status, `antipode_last_error` returns a
//!   human-readable message (thread-local, valid until the next failing call
//!   on the same thread).
//! - Handles are created by `antipode_hopf_from_json` / `antipode_hopf_builtin`
//!   and released with `antipode_hopf_free`. A handle must not be shared
//!   between threads without external synchronisation.
//! - Strings returned through out-parameters are heap-allocated and must be
//!   released with `antipode_string_free`.
//! - A `cutoff` or `window_bound` argument of `0` selects the library default.
//!
//! The header `include/antipode.h` is regenerated by the build script.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use libc::c_char;

use antipode::document::parse_document;
use antipode::families::{
    cyclic_group_algebra, laurent_group_algebra, taft_wilson_r, uq_borel_cyclotomic,
    uq_borel_generic,
};
use antipode::hopf::{HopfPresentation, TrustedPresentation};
use antipode::ncpoly::WeightKind;
use antipode::order::{antipode_order, OrderResult};
use antipode::scalar::FieldDescriptor;
use antipode::structure::{m_h, ActionOrder, BasisWindow, DEFAULT_CUTOFF};
use antipode::KernelError;

/// Result of every fallible call in this API.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AntipodeStatus {
    /// The call succeeded.
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The JSON document could not be parsed.
    ParseError = 3,
    /// The document parsed but the presentation could not be built
    /// (unknown generator, misoriented relation, unknown family, ...).
    BuildError = 4,
    /// Axiom verification ran and found a failing identity.
    VerifyFailed = 5,
    /// A computation was requested on a presentation that does not pass
    /// axiom verification.
    Untrusted = 6,
    /// The computation itself failed (see `antipode_last_error`).
    ComputeError = 7,
}

/// Shape of an order-style answer.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AntipodeResultKind {
    /// The value out-parameter holds the exact finite order.
    Finite = 0,
    /// The order is infinite, backed by a verified certificate; the value
    /// out-parameter is 0.
    InfiniteCertified = 1,
    /// No conclusion below the cutoff; the value out-parameter holds the
    /// cutoff that was reached.
    UnknownBeyond = 2,
}

/// Opaque presentation handle.
pub struct AntipodeHopf {
    presentation: HopfPresentation,
    trusted: Option<TrustedPresentation>,
}

impl AntipodeHopf {
    fn ensure_trusted(&mut self) -> Result<&TrustedPresentation, KernelError> {
        if self.trusted.is_none() {
            self.trusted = Some(self.presentation.clone().trusted()?);
        }
        Ok(self.trusted.as_ref().expect("just populated"))
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn fail(status: AntipodeStatus, message: impl Into<String>) -> AntipodeStatus {
    let message = message.into();
    let stored = CString::new(message.replace('\0', " "))
        .unwrap_or_else(|_| CString::new("invalid error text").expect("static text"));
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(stored));
    status
}

/// Last error message for the current thread, or null if no call on this
/// thread has failed yet. The pointer stays valid until the next failing
/// call on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn antipode_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map(|s| s.as_ptr())
            .unwrap_or(ptr::null())
    })
}

fn guard(body: impl FnOnce() -> AntipodeStatus) -> AntipodeStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => fail(AntipodeStatus::ComputeError, "internal panic"),
    }
}

/// # Safety
/// `text` must be null or a valid NUL-terminated C string.
unsafe fn read_str<'a>(text: *const c_char) -> Result<&'a str, AntipodeStatus> {
    if text.is_null() {
        return Err(fail(
            AntipodeStatus::NullArgument,
            "string argument is null",
        ));
    }
    CStr::from_ptr(text)
        .to_str()
        .map_err(|e| fail(AntipodeStatus::InvalidUtf8, format!("invalid UTF-8: {}", e)))
}

fn hand_out(handle: AntipodeHopf, out: *mut *mut AntipodeHopf) -> AntipodeStatus {
    // Safety: the caller guarantees `out` points to writable storage; the
    // null check happened before any work was done.
    unsafe { *out = Box::into_raw(Box::new(handle)) };
    AntipodeStatus::Ok
}

/// Build a presentation handle from a JSON document (the same format the
/// CLI reads and writes). On success `*out` owns the handle; release it
/// with `antipode_hopf_free`.
///
/// # Safety
/// `json` must be a valid NUL-terminated C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn antipode_hopf_from_json(
    json: *const c_char,
    out: *mut *mut AntipodeHopf,
) -> AntipodeStatus {
    guard(|| {
        if out.is_null() {
            return fail(AntipodeStatus::NullArgument, "out pointer is null");
        }
        let text = match read_str(json) {
            Ok(t) => t,
            Err(status) => return status,
        };
        let document = match parse_document(text) {
            Ok(d) => d,
            Err(e) => return fail(AntipodeStatus::ParseError, e.to_string()),
        };
        let presentation = match document.build() {
            Ok(p) => p,
            Err(e) => return fail(AntipodeStatus::BuildError, e.to_string()),
        };
        hand_out(
            AntipodeHopf {
                presentation,
                trusted: None,
            },
            out,
        )
    })
}

/// Build one of the built-in families. Recognised names and the meaning of
/// `param`:
/// - `"uq-borel"`: quantized Borel at a primitive `param`-th root of unity
/// - `"uq-borel-generic"`: quantized Borel over rational functions (`param` ignored)
/// - `"taft-wilson"`: restricted example in characteristic `param`
/// - `"cyclic"`: group algebra of the cyclic group of order `param` over the rationals
/// - `"laurent"`: group algebra of the infinite cyclic group (`param` ignored)
///
/// # Safety
/// `family` must be a valid NUL-terminated C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn antipode_hopf_builtin(
    family: *const c_char,
    param: u64,
    out: *mut *mut AntipodeHopf,
) -> AntipodeStatus {
    guard(|| {
        if out.is_null() {
            return fail(AntipodeStatus::NullArgument, "out pointer is null");
        }
        let name = match read_str(family) {
            Ok(t) => t,
            Err(status) => return status,
        };
        let built = match name {
            "uq-borel" => uq_borel_cyclotomic(param),
            "uq-borel-generic" => uq_borel_generic(),
            "taft-wilson" => taft_wilson_r(param),
            "cyclic" => cyclic_group_algebra(param, &FieldDescriptor::rationals()),
            "laurent" => laurent_group_algebra(),
            other => {
                return fail(
                    AntipodeStatus::BuildError,
                    format!(
                        "unknown family `{}` (expected uq-borel, uq-borel-generic, \
                         taft-wilson, cyclic, or laurent)",
                        other
                    ),
                )
            }
        };
        match built {
            Ok(example) => hand_out(
                AntipodeHopf {
                    presentation: example.presentation,
                    trusted: None,
                },
                out,
            ),
            Err(e) => fail(AntipodeStatus::BuildError, e.to_string()),
        }
    })
}

/// Release a handle. Null is ignored.
///
/// # Safety
/// `handle` must be null or a pointer previously returned through an
/// `antipode_hopf_*` constructor and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn antipode_hopf_free(handle: *mut AntipodeHopf) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Run the full axiom suite (bialgebra identities and both antipode
/// convolution identities). Returns `ANTIPODE_STATUS_OK` when every check
/// passes and `ANTIPODE_STATUS_VERIFY_FAILED` otherwise, with the first
/// failing check described by `antipode_last_error`.
///
/// # Safety
/// `handle` must be a live handle from this API.
#[no_mangle]
pub unsafe extern "C" fn antipode_hopf_verify(handle: *const AntipodeHopf) -> AntipodeStatus {
    guard(|| {
        let handle = match handle.as_ref() {
            Some(h) => h,
            None => return fail(AntipodeStatus::NullArgument, "handle is null"),
        };
        let bialgebra = handle.presentation.verify_bialgebra();
        let antipode = handle.presentation.verify_antipode();
        if bialgebra.passed && antipode.passed {
            return AntipodeStatus::Ok;
        }
        let item = bialgebra
            .first_failure()
            .or_else(|| antipode.first_failure())
            .expect("failed report has a failing item");
        fail(
            AntipodeStatus::VerifyFailed,
            format!(
                "{} failed for {}{}",
                item.check,
                item.subject,
                item.witness
                    .as_ref()
                    .map(|w| format!(": {}", w))
                    .unwrap_or_default()
            ),
        )
    })
}

fn window_for(h: &TrustedPresentation, bound: u64) -> BasisWindow {
    let graded = h.alphabet().symbols().any(|(_, info)| info.grade() > 0);
    let kind = if graded {
        WeightKind::Grade
    } else {
        WeightKind::Length
    };
    BasisWindow::new(h, bound, kind)
}

fn store_kind(
    kind: AntipodeResultKind,
    value: u64,
    out_kind: *mut AntipodeResultKind,
    out_value: *mut u64,
) -> AntipodeStatus {
    // Safety: both pointers were null-checked by the caller.
    unsafe {
        *out_kind = kind;
        *out_value = value;
    }
    AntipodeStatus::Ok
}

/// Compute the antipode order. `cutoff` bounds the even powers scanned
/// before giving up (`0` selects the default). On success, `*kind` and
/// `*value` describe the result as documented on `AntipodeResultKind`.
/// The presentation is verified first; an axiom failure yields
/// `ANTIPODE_STATUS_UNTRUSTED`.
///
/// # Safety
/// `handle` must be a live handle from this API; `kind` and `value` must be
/// valid pointers.
#[no_mangle]
pub unsafe extern "C" fn antipode_hopf_antipode_order(
    handle: *mut AntipodeHopf,
    cutoff: u64,
    kind: *mut AntipodeResultKind,
    value: *mut u64,
) -> AntipodeStatus {
    guard(|| {
        let handle = match handle.as_mut() {
            Some(h) => h,
            None => return fail(AntipodeStatus::NullArgument, "handle is null"),
        };
        if kind.is_null() || value.is_null() {
            return fail(AntipodeStatus::NullArgument, "result pointer is null");
        }
        let trusted = match handle.ensure_trusted() {
            Ok(t) => t,
            Err(e) => return fail(AntipodeStatus::Untrusted, e.to_string()),
        };
        let cutoff = if cutoff == 0 { DEFAULT_CUTOFF } else { cutoff };
        match antipode_order(trusted, cutoff).result {
            OrderResult::Finite(n) => store_kind(AntipodeResultKind::Finite, n, kind, value),
            OrderResult::InfiniteCertified(_) => {
                store_kind(AntipodeResultKind::InfiniteCertified, 0, kind, value)
            }
            OrderResult::UnknownBeyond(c) => {
                store_kind(AntipodeResultKind::UnknownBeyond, c, kind, value)
            }
        }
    })
}

/// Compute the invariant m_H: the least common multiple, over the
/// group-like elements x, of the order of conjugation by x acting on the
/// skew-primitive space P_{x,1}. `window_bound` bounds the basis window the
/// skew-primitive computation runs in and `cutoff` bounds the conjugation
/// order scan (`0` selects the defaults). Results are encoded exactly like
/// `antipode_hopf_antipode_order`.
///
/// # Safety
/// `handle` must be a live handle from this API; `kind` and `value` must be
/// valid pointers.
#[no_mangle]
pub unsafe extern "C" fn antipode_hopf_m_invariant(
    handle: *mut AntipodeHopf,
    window_bound: u64,
    cutoff: u64,
    kind: *mut AntipodeResultKind,
    value: *mut u64,
) -> AntipodeStatus {
    guard(|| {
        let handle = match handle.as_mut() {
            Some(h) => h,
            None => return fail(AntipodeStatus::NullArgument, "handle is null"),
        };
        if kind.is_null() || value.is_null() {
            return fail(AntipodeStatus::NullArgument, "result pointer is null");
        }
        let trusted = match handle.ensure_trusted() {
            Ok(t) => t,
            Err(e) => return fail(AntipodeStatus::Untrusted, e.to_string()),
        };
        let window_bound = if window_bound == 0 { 4 } else { window_bound };
        let cutoff = if cutoff == 0 { DEFAULT_CUTOFF } else { cutoff };
        let window = window_for(trusted, window_bound);
        let report = match m_h(trusted, trusted.group_likes(), &window, cutoff) {
            Ok(r) => r,
            Err(e) => return fail(AntipodeStatus::ComputeError, e.to_string()),
        };
        match report.value {
            ActionOrder::Finite(n) => store_kind(AntipodeResultKind::Finite, n, kind, value),
            ActionOrder::InfiniteCertified => {
                store_kind(AntipodeResultKind::InfiniteCertified, 0, kind, value)
            }
            ActionOrder::UnknownBeyond(c) => {
                store_kind(AntipodeResultKind::UnknownBeyond, c, kind, value)
            }
        }
    })
}

/// Produce a JSON report: presentation name, field, both verification
/// reports, and — when the axioms hold — the invariant m_H and the antipode
/// order (`cutoff` as in the individual queries, `0` for the default).
/// `*out` receives a heap-allocated NUL-terminated string; release it with
/// `antipode_string_free`.
///
/// # Safety
/// `handle` must be a live handle from this API; `out` must be a valid
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn antipode_hopf_report_json(
    handle: *mut AntipodeHopf,
    cutoff: u64,
    out: *mut *mut c_char,
) -> AntipodeStatus {
    guard(|| {
        let handle = match handle.as_mut() {
            Some(h) => h,
            None => return fail(AntipodeStatus::NullArgument, "handle is null"),
        };
        if out.is_null() {
            return fail(AntipodeStatus::NullArgument, "out pointer is null");
        }
        let cutoff = if cutoff == 0 { DEFAULT_CUTOFF } else { cutoff };
        let bialgebra = handle.presentation.verify_bialgebra();
        let antipode = handle.presentation.verify_antipode();
        let passed = bialgebra.passed && antipode.passed;
        let mut report = serde_json::json!({
            "presentation": handle.presentation.name(),
            "field": handle.presentation.field().describe(),
            "passed": passed,
            "bialgebra": bialgebra,
            "antipode": antipode,
            "m": serde_json::Value::Null,
            "order": serde_json::Value::Null,
        });
        if passed {
            if let Ok(trusted) = handle.ensure_trusted() {
                let window = window_for(trusted, 4);
                if let Ok(mh) = m_h(trusted, trusted.group_likes(), &window, cutoff) {
                    report["m"] = serde_json::to_value(&mh).expect("report serializes");
                }
                let outcome = antipode_order(trusted, cutoff);
                report["order"] = serde_json::to_value(&outcome).expect("report serializes");
            }
        }
        let text = serde_json::to_string_pretty(&report).expect("report serializes");
        match CString::new(text) {
            Ok(cstring) => {
                *out = cstring.into_raw();
                AntipodeStatus::Ok
            }
            Err(e) => fail(AntipodeStatus::ComputeError, e.to_string()),
        }
    })
}

/// Release a string returned by this API. Null is ignored.
///
/// # Safety
/// `text` must be null or a string previously returned through an
/// out-parameter of this API and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn antipode_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::path::Path;

    fn make(family: &str, param: u64) -> *mut AntipodeHopf {
        let name = CString::new(family).unwrap();
        let mut handle: *mut AntipodeHopf = ptr::null_mut();
        let status = unsafe { antipode_hopf_builtin(name.as_ptr(), param, &mut handle) };
        assert_eq!(status, AntipodeStatus::Ok, "builtin {} failed", family);
        assert!(!handle.is_null());
        handle
    }

    fn last_error_text() -> String {
        let ptr = antipode_last_error();
        assert!(!ptr.is_null(), "expected an error message");
        unsafe { CStr::from_ptr(ptr) }.to_str().unwrap().to_string()
    }

    #[test]
    fn builtin_verify_and_queries() {
        let handle = make("uq-borel", 3);
        assert_eq!(unsafe { antipode_hopf_verify(handle) }, AntipodeStatus::Ok);

        let mut kind = AntipodeResultKind::UnknownBeyond;
        let mut value = 0u64;
        let status = unsafe { antipode_hopf_antipode_order(handle, 0, &mut kind, &mut value) };
        assert_eq!(status, AntipodeStatus::Ok);
        assert_eq!(kind, AntipodeResultKind::Finite);
        assert_eq!(value, 6);

        let status = unsafe { antipode_hopf_m_invariant(handle, 0, 0, &mut kind, &mut value) };
        assert_eq!(status, AntipodeStatus::Ok);
        assert_eq!(kind, AntipodeResultKind::Finite);
        assert_eq!(value, 3);

        unsafe { antipode_hopf_free(handle) };
    }

    #[test]
    fn generic_parameter_is_certified_infinite() {
        let handle = make("uq-borel-generic", 0);
        let mut kind = AntipodeResultKind::Finite;
        let mut value = 99u64;
        let status = unsafe { antipode_hopf_antipode_order(handle, 0, &mut kind, &mut value) };
        assert_eq!(status, AntipodeStatus::Ok);
        assert_eq!(kind, AntipodeResultKind::InfiniteCertified);
        assert_eq!(value, 0);
        unsafe { antipode_hopf_free(handle) };
    }

    #[test]
    fn json_round_trip_from_bundled_document() {
        let path =
            Path::new(env!("CARGO_MANIFEST_DIR")).join("../../presentations/uq_borel_c5.json");
        let text = std::fs::read_to_string(path).unwrap();
        let json = CString::new(text).unwrap();
        let mut handle: *mut AntipodeHopf = ptr::null_mut();
        let status = unsafe { antipode_hopf_from_json(json.as_ptr(), &mut handle) };
        assert_eq!(status, AntipodeStatus::Ok);

        let mut kind = AntipodeResultKind::UnknownBeyond;
        let mut value = 0u64;
        let status = unsafe { antipode_hopf_antipode_order(handle, 0, &mut kind, &mut value) };
        assert_eq!(status, AntipodeStatus::Ok);
        assert_eq!((kind, value), (AntipodeResultKind::Finite, 10));
        unsafe { antipode_hopf_free(handle) };
    }

    #[test]
    fn parse_and_build_errors_are_reported() {
        let garbage = CString::new("{\n  \"name\": ").unwrap();
        let mut handle: *mut AntipodeHopf = ptr::null_mut();
        let status = unsafe { antipode_hopf_from_json(garbage.as_ptr(), &mut handle) };
        assert_eq!(status, AntipodeStatus::ParseError);
        assert!(handle.is_null());
        assert!(last_error_text().contains("line"));

        let unknown = CString::new("nonexistent-family").unwrap();
        let status = unsafe { antipode_hopf_builtin(unknown.as_ptr(), 1, &mut handle) };
        assert_eq!(status, AntipodeStatus::BuildError);
        assert!(last_error_text().contains("unknown family"));
    }

    #[test]
    fn null_and_bad_utf8_arguments() {
        let mut handle: *mut AntipodeHopf = ptr::null_mut();
        let status = unsafe { antipode_hopf_from_json(ptr::null(), &mut handle) };
        assert_eq!(status, AntipodeStatus::NullArgument);

        let bad = [0xffu8, 0x00];
        let status = unsafe { antipode_hopf_from_json(bad.as_ptr() as *const c_char, &mut handle) };
        assert_eq!(status, AntipodeStatus::InvalidUtf8);

        assert_eq!(
            unsafe { antipode_hopf_verify(ptr::null()) },
            AntipodeStatus::NullArgument
        );
    }

    #[test]
    fn broken_antipode_fails_verification_and_blocks_compute() {
        let handle = make("cyclic", 6);
        let mut report: *mut c_char = ptr::null_mut();
        let status = unsafe { antipode_hopf_report_json(handle, 0, &mut report) };
        assert_eq!(status, AntipodeStatus::Ok);
        let text = unsafe { CStr::from_ptr(report) }
            .to_str()
            .unwrap()
            .to_string();
        unsafe { antipode_string_free(report) };
        unsafe { antipode_hopf_free(handle) };

        // Corrupt the antipode in the exported JSON and reload.
        let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed["passed"], serde_json::Value::Bool(true));
        assert_eq!(parsed["m"]["value"]["kind"], "finite");

        let doc_path =
            Path::new(env!("CARGO_MANIFEST_DIR")).join("../../presentations/cyclic_c6.json");
        let doc = std::fs::read_to_string(doc_path).unwrap();
        let corrupted = doc.replace("\"g\": \"g^5\"", "\"g\": \"g\"");
        assert_ne!(doc, corrupted);
        let json = CString::new(corrupted).unwrap();
        let mut handle: *mut AntipodeHopf = ptr::null_mut();
        let status = unsafe { antipode_hopf_from_json(json.as_ptr(), &mut handle) };
        assert_eq!(
            status,
            AntipodeStatus::Ok,
            "corrupted document still builds"
        );

        assert_eq!(
            unsafe { antipode_hopf_verify(handle) },
            AntipodeStatus::VerifyFailed
        );
        let message = last_error_text();
        assert!(!message.is_empty());

        let mut kind = AntipodeResultKind::Finite;
        let mut value = 0u64;
        let status = unsafe { antipode_hopf_antipode_order(handle, 0, &mut kind, &mut value) };
        assert_eq!(status, AntipodeStatus::Untrusted);
        unsafe { antipode_hopf_free(handle) };
    }

    #[test]
    fn header_is_generated_with_the_full_surface() {
        let header_path = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/antipode.h");
        let header = std::fs::read_to_string(&header_path)
            .unwrap_or_else(|e| panic!("missing {}: {}", header_path.display(), e));
        for symbol in [
            "antipode_hopf_from_json",
            "antipode_hopf_builtin",
            "antipode_hopf_free",
            "antipode_hopf_verify",
            "antipode_hopf_antipode_order",
            "antipode_hopf_m_invariant",
            "antipode_hopf_report_json",
            "antipode_string_free",
            "antipode_last_error",
            "AntipodeStatus",
            "AntipodeResultKind",
            "AntipodeHopf",
        ] {
            assert!(header.contains(symbol), "header lacks {}", symbol);
        }
    }
}
