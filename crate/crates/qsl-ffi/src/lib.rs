//! C ABI for the qsl workbench.
//!
//! All objects are opaque handles created and destroyed through this
//! API. Functions return a `QslStatus`; on any non-`Ok` status the
//! thread-local error message is available via `qsl_last_error`.
//! Strings returned by the API are owned by the caller and must be
//! released with `qsl_string_free`.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::ptr;

use libc::c_char;

use qsl::formula::{parse_with, Formula, Signature};
use qsl::kripke::{FrameClass, Model};
use qsl::proofs::{check_proof, ScriptFile};
use qsl::qdeduction::{quantum_derives, Derivability};
use qsl::validity::{check_validity, SearchBound, Verdict};

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QslStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    ModelError = 4,
    SearchError = 5,
    ProofRejected = 6,
    Unacceptable = 7,
    InvalidArgument = 8,
}

/// Verdict codes for validity and deduction queries.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QslVerdict {
    ValidUpToBound = 0,
    Countermodel = 1,
    Unknown = 2,
}

pub struct QslSignature(Signature);
pub struct QslFormula(Formula);
pub struct QslModel(Model);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let message = CString::new(message.into()).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(message));
}

fn err(status: QslStatus, message: impl Into<String>) -> QslStatus {
    set_error(message);
    status
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, QslStatus> {
    if ptr.is_null() {
        return Err(err(QslStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| err(QslStatus::InvalidUtf8, "string is not valid UTF-8"))
}

fn frame_class(code: u32) -> Result<FrameClass, QslStatus> {
    match code {
        0 => Ok(FrameClass::K),
        1 => Ok(FrameClass::T),
        2 => Ok(FrameClass::S4),
        3 => Ok(FrameClass::S5),
        other => Err(err(
            QslStatus::InvalidArgument,
            format!("unknown frame class code {other} (use 0=K 1=T 2=S4 3=S5)"),
        )),
    }
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s).unwrap_or_default().into_raw()
}

/// Returns the last error message recorded on this thread, or null.
/// The caller owns the string.
#[no_mangle]
pub extern "C" fn qsl_last_error() -> *mut c_char {
    LAST_ERROR.with(|slot| match slot.borrow().as_ref() {
        Some(message) => message.clone().into_raw(),
        None => ptr::null_mut(),
    })
}

/// Releases a string returned by this API.
///
/// # Safety
/// `s` must come from this API and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn qsl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[no_mangle]
pub extern "C" fn qsl_signature_new() -> *mut QslSignature {
    Box::into_raw(Box::new(QslSignature(Signature::new())))
}

/// # Safety
/// `sig` must be a live handle from `qsl_signature_new`.
#[no_mangle]
pub unsafe extern "C" fn qsl_signature_free(sig: *mut QslSignature) {
    if !sig.is_null() {
        drop(Box::from_raw(sig));
    }
}

/// # Safety
/// `sig` must be a live signature handle; `name` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn qsl_signature_add_atom(
    sig: *mut QslSignature,
    name: *const c_char,
) -> QslStatus {
    let Some(sig) = sig.as_mut() else {
        return err(QslStatus::NullPointer, "null signature");
    };
    match read_str(name) {
        Ok(name) => {
            sig.0.add_atom(name);
            QslStatus::Ok
        }
        Err(status) => status,
    }
}

/// Declares `a` and `b` as orthocomplement partners.
///
/// # Safety
/// `sig` must be a live signature handle; `a`, `b` NUL-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn qsl_signature_add_perp(
    sig: *mut QslSignature,
    a: *const c_char,
    b: *const c_char,
) -> QslStatus {
    let Some(sig) = sig.as_mut() else {
        return err(QslStatus::NullPointer, "null signature");
    };
    let (a, b) = match (read_str(a), read_str(b)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(s), _) | (_, Err(s)) => return s,
    };
    match sig.0.add_perp(a, b) {
        Ok(()) => QslStatus::Ok,
        Err(e) => err(QslStatus::ParseError, e.to_string()),
    }
}

/// Parses surface syntax. With `auto_register` nonzero, unknown kets are
/// added to the signature; otherwise they are rejected.
///
/// # Safety
/// `sig` must be a live signature handle, `text` a NUL-terminated
/// string, `out` a valid location for the new handle.
#[no_mangle]
pub unsafe extern "C" fn qsl_formula_parse(
    text: *const c_char,
    sig: *mut QslSignature,
    auto_register: bool,
    out: *mut *mut QslFormula,
) -> QslStatus {
    if out.is_null() {
        return err(QslStatus::NullPointer, "null output pointer");
    }
    let Some(sig) = sig.as_mut() else {
        return err(QslStatus::NullPointer, "null signature");
    };
    let text = match read_str(text) {
        Ok(t) => t,
        Err(s) => return s,
    };
    match parse_with(text, &mut sig.0, auto_register) {
        Ok(f) => {
            *out = Box::into_raw(Box::new(QslFormula(f)));
            QslStatus::Ok
        }
        Err(e) => err(QslStatus::ParseError, e.to_string()),
    }
}

/// # Safety
/// `f` must be a live formula handle.
#[no_mangle]
pub unsafe extern "C" fn qsl_formula_free(f: *mut QslFormula) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Fully parenthesized surface text; caller owns the string.
///
/// # Safety
/// `f` must be a live formula handle.
#[no_mangle]
pub unsafe extern "C" fn qsl_formula_render(f: *const QslFormula) -> *mut c_char {
    match f.as_ref() {
        Some(f) => to_c_string(f.0.render()),
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `f` must be a live formula handle.
#[no_mangle]
pub unsafe extern "C" fn qsl_formula_is_basic(f: *const QslFormula) -> bool {
    f.as_ref().map(|f| f.0.is_basic()).unwrap_or(false)
}

/// Loads a model from its JSON file format.
///
/// # Safety
/// `json` must be a NUL-terminated string, `out` a valid location.
#[no_mangle]
pub unsafe extern "C" fn qsl_model_from_json(
    json: *const c_char,
    out: *mut *mut QslModel,
) -> QslStatus {
    if out.is_null() {
        return err(QslStatus::NullPointer, "null output pointer");
    }
    let text = match read_str(json) {
        Ok(t) => t,
        Err(s) => return s,
    };
    match Model::from_json(text) {
        Ok(m) => {
            *out = Box::into_raw(Box::new(QslModel(m)));
            QslStatus::Ok
        }
        Err(e) => err(QslStatus::ModelError, e.to_string()),
    }
}

/// # Safety
/// `m` must be a live model handle.
#[no_mangle]
pub unsafe extern "C" fn qsl_model_free(m: *mut QslModel) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// # Safety
/// `m` must be a live model handle.
#[no_mangle]
pub unsafe extern "C" fn qsl_model_to_json(m: *const QslModel) -> *mut c_char {
    match m.as_ref() {
        Some(m) => to_c_string(m.0.to_json()),
        None => ptr::null_mut(),
    }
}

/// Checks the acceptability filter (and orthogonality when the model
/// enables it).
///
/// # Safety
/// `m` must be a live model handle.
#[no_mangle]
pub unsafe extern "C" fn qsl_model_check_acceptability(m: *const QslModel) -> QslStatus {
    let Some(m) = m.as_ref() else {
        return err(QslStatus::NullPointer, "null model");
    };
    match m.0.check_acceptability() {
        Ok(()) => QslStatus::Ok,
        Err(violations) => err(QslStatus::Unacceptable, violations[0].to_string()),
    }
}

/// Evaluates a formula at a named world.
///
/// # Safety
/// All handles must be live; `world` NUL-terminated; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn qsl_model_eval(
    m: *const QslModel,
    world: *const c_char,
    f: *const QslFormula,
    out: *mut bool,
) -> QslStatus {
    let (Some(m), Some(f)) = (m.as_ref(), f.as_ref()) else {
        return err(QslStatus::NullPointer, "null model or formula");
    };
    if out.is_null() {
        return err(QslStatus::NullPointer, "null output pointer");
    }
    let world = match read_str(world) {
        Ok(w) => w,
        Err(s) => return s,
    };
    match m.0.eval_at(world, &f.0) {
        Ok(value) => {
            *out = value;
            QslStatus::Ok
        }
        Err(e) => err(QslStatus::ModelError, e.to_string()),
    }
}

/// Bounded validity check. `class_code`: 0=K 1=T 2=S4 3=S5. On a
/// countermodel verdict, `out_model` (when non-null) receives the
/// witness model and `out_world` the falsifying world name.
///
/// # Safety
/// `f` and `sig` must be live handles; output pointers valid or null.
#[no_mangle]
pub unsafe extern "C" fn qsl_check_validity(
    f: *const QslFormula,
    sig: *const QslSignature,
    max_worlds: usize,
    class_code: u32,
    orthogonality: bool,
    out_verdict: *mut QslVerdict,
    out_model: *mut *mut QslModel,
    out_world: *mut *mut c_char,
) -> QslStatus {
    let (Some(f), Some(sig)) = (f.as_ref(), sig.as_ref()) else {
        return err(QslStatus::NullPointer, "null formula or signature");
    };
    if out_verdict.is_null() {
        return err(QslStatus::NullPointer, "null output pointer");
    }
    let class = match frame_class(class_code) {
        Ok(c) => c,
        Err(s) => return s,
    };
    let bound = SearchBound::new(max_worlds, class).orthogonality(orthogonality);
    match check_validity(&f.0, &sig.0, &bound) {
        Ok(Verdict::ValidUpToBound(_)) => {
            *out_verdict = QslVerdict::ValidUpToBound;
            QslStatus::Ok
        }
        Ok(Verdict::Countermodel { model, world }) => {
            *out_verdict = QslVerdict::Countermodel;
            if !out_model.is_null() {
                *out_model = Box::into_raw(Box::new(QslModel(*model)));
            }
            if !out_world.is_null() {
                *out_world = to_c_string(world);
            }
            QslStatus::Ok
        }
        Ok(Verdict::Unknown) => {
            *out_verdict = QslVerdict::Unknown;
            QslStatus::Ok
        }
        Err(e) => err(QslStatus::SearchError, e.to_string()),
    }
}

/// Checks a proof script in the JSON file format. On rejection,
/// `out_bad_line` (when non-null) receives the first bad line number.
///
/// # Safety
/// `json` must be NUL-terminated; `out_bad_line` valid or null.
#[no_mangle]
pub unsafe extern "C" fn qsl_check_proof_json(
    json: *const c_char,
    out_bad_line: *mut usize,
) -> QslStatus {
    let text = match read_str(json) {
        Ok(t) => t,
        Err(s) => return s,
    };
    let script = match ScriptFile::from_json(text).and_then(ScriptFile::into_script) {
        Ok(s) => s,
        Err(e) => return err(QslStatus::ParseError, e.to_string()),
    };
    match check_proof(&script) {
        Ok(()) => QslStatus::Ok,
        Err(report) => {
            if !out_bad_line.is_null() {
                *out_bad_line = report.line;
            }
            err(QslStatus::ProofRejected, report.to_string())
        }
    }
}

/// Decides the quantum deduction relation. `out_answer` receives
/// 0=yes, 1=no, 2=unknown.
///
/// # Safety
/// `gamma` must point to `gamma_len` live formula handles; `alpha` and
/// `sig` must be live; `out_answer` valid.
#[no_mangle]
pub unsafe extern "C" fn qsl_quantum_derives(
    gamma: *const *const QslFormula,
    gamma_len: usize,
    alpha: *const QslFormula,
    sig: *const QslSignature,
    max_worlds: usize,
    class_code: u32,
    orthogonality: bool,
    out_answer: *mut u32,
) -> QslStatus {
    let (Some(alpha), Some(sig)) = (alpha.as_ref(), sig.as_ref()) else {
        return err(QslStatus::NullPointer, "null formula or signature");
    };
    if out_answer.is_null() || (gamma.is_null() && gamma_len > 0) {
        return err(QslStatus::NullPointer, "null output or premise pointer");
    }
    let class = match frame_class(class_code) {
        Ok(c) => c,
        Err(s) => return s,
    };
    let mut premises = Vec::with_capacity(gamma_len);
    for i in 0..gamma_len {
        let Some(f) = (*gamma.add(i)).as_ref() else {
            return err(QslStatus::NullPointer, "null premise handle");
        };
        premises.push(f.0.clone());
    }
    let bound = SearchBound::new(max_worlds, class).orthogonality(orthogonality);
    match quantum_derives(&premises, &alpha.0, &sig.0, &bound) {
        Ok((answer, _trace)) => {
            *out_answer = match answer {
                Derivability::Yes => 0,
                Derivability::No => 1,
                Derivability::Unknown => 2,
            };
            QslStatus::Ok
        }
        Err(e) => err(QslStatus::SearchError, e.to_string()),
    }
}
