//! C interface to the translator.
//!
//! Every function returns a [`GlStatus`]. On failure a message is stored in
//! thread-local storage and can be read with [`gl_last_error`]. Strings
//! handed out by the library must be released with [`gl_string_free`],
//! logics with [`gl_logic_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gramlogic::automata::standard_logic;
use gramlogic::fo::{to_tptp, Closure, Role};
use gramlogic::frontends::{ipl_to_gf2, parse_ipl};
use gramlogic::grammar_file::load_logic;
use gramlogic::semantics::frame_file::render_model;
use gramlogic::semantics::{bounded_fo_sat, extract_modal_model, FoSat};
use gramlogic::syntax::parse_modal;
use gramlogic::translate::{translate_with, Mode, Options};
use gramlogic::{Error, Logic};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GlStatus {
    Ok = 0,
    NoModel = 1,
    Parse = 2,
    Shape = 3,
    ResourceCap = 4,
    NullPointer = 5,
    InvalidUtf8 = 6,
    Internal = 7,
}

/// Opaque handle to a loaded logic.
pub struct GlLogic {
    inner: Logic,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

struct Failure(GlStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Shape(_) => GlStatus::Shape,
            _ => GlStatus::Parse,
        };
        Failure(status, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<GlStatus, Failure>) -> GlStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            GlStatus::Internal
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(GlStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(GlStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn deref_logic<'a>(p: *const GlLogic) -> Result<&'a Logic, Failure> {
    p.as_ref().map(|l| &l.inner).ok_or_else(|| Failure(GlStatus::NullPointer, "logic is null".into()))
}

unsafe fn give_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure(GlStatus::Internal, "output contains NUL".into()))?;
    *out = c.into_raw();
    Ok(())
}

fn check_out<T>(out: *mut T) -> Result<(), Failure> {
    if out.is_null() {
        Err(Failure(GlStatus::NullPointer, "output pointer is null".into()))
    } else {
        Ok(())
    }
}

/// Loads a built-in logic by name (case-insensitive).
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gl_logic_preset(name: *const c_char, out: *mut *mut GlLogic) -> GlStatus {
    guard(|| {
        check_out(out)?;
        let name = text(name, "name")?;
        let inner = standard_logic(name)?;
        *out = Box::into_raw(Box::new(GlLogic { inner }));
        Ok(GlStatus::Ok)
    })
}

/// Loads a logic from grammar-file text.
///
/// # Safety
/// `grammar` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gl_logic_from_grammar(grammar: *const c_char, out: *mut *mut GlLogic) -> GlStatus {
    guard(|| {
        check_out(out)?;
        let inner = load_logic(text(grammar, "grammar")?, "system")?;
        *out = Box::into_raw(Box::new(GlLogic { inner }));
        Ok(GlStatus::Ok)
    })
}

/// # Safety
/// `logic` must come from this library and not be used afterwards. Null is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn gl_logic_free(logic: *mut GlLogic) {
    if !logic.is_null() {
        drop(Box::from_raw(logic));
    }
}

/// Translates a modal formula; writes one TPTP statement to `out`.
///
/// # Safety
/// Pointers must be valid; `formula` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn gl_translate(
    logic: *const GlLogic,
    formula: *const c_char,
    hoisted: bool,
    nominals: bool,
    out: *mut *mut c_char,
) -> GlStatus {
    guard(|| {
        check_out(out)?;
        let logic = deref_logic(logic)?;
        let phi = parse_modal(text(formula, "formula")?, &logic.alphabet).map_err(Error::from)?.nnf();
        let mode = if hoisted { Mode::Hoisted } else { Mode::Inline };
        let (fo, _) = translate_with(logic, &phi, Options { mode, nominals }).map_err(Error::from)?;
        give_string(out, to_tptp(&fo, Role::Axiom, Closure::Existential))?;
        Ok(GlStatus::Ok)
    })
}

/// Bounded model search for a modal formula. Returns `GL_STATUS_OK` with
/// the extracted Kripke model in `out`, `GL_STATUS_NO_MODEL` when there is
/// none up to `max_domain`, or `GL_STATUS_RESOURCE_CAP` when the conflict
/// budget runs out.
///
/// # Safety
/// Pointers must be valid; `formula` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn gl_check(
    logic: *const GlLogic,
    formula: *const c_char,
    max_domain: usize,
    conflict_cap: u64,
    out: *mut *mut c_char,
) -> GlStatus {
    guard(|| {
        check_out(out)?;
        *out = ptr::null_mut();
        if max_domain == 0 {
            return Err(Failure(GlStatus::Parse, "max_domain must be positive".into()));
        }
        let logic = deref_logic(logic)?;
        let phi = parse_modal(text(formula, "formula")?, &logic.alphabet).map_err(Error::from)?.nnf();
        let opts = Options { mode: Mode::Inline, nominals: true };
        let (fo, table) = translate_with(logic, &phi, opts).map_err(Error::from)?;
        match bounded_fo_sat(&fo, max_domain, conflict_cap) {
            FoSat::Model(sol) => {
                let world = sol.witness[0].unwrap_or(0);
                let m = extract_modal_model(&sol.model, &table, logic);
                if !m.eval(world, &phi).map_err(Error::from)? {
                    return Err(Failure(GlStatus::Internal, "extracted model does not verify".into()));
                }
                give_string(out, format!("witness world: {world}\n{}", render_model(&m, &logic.alphabet)))?;
                Ok(GlStatus::Ok)
            }
            FoSat::NoModel { .. } => Ok(GlStatus::NoModel),
            FoSat::Exhausted { domain } => {
                set_error(format!("conflict budget exhausted at domain {domain}"));
                Ok(GlStatus::ResourceCap)
            }
        }
    })
}

/// Translates an intuitionistic formula into one TPTP statement.
///
/// # Safety
/// Pointers must be valid; `formula` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn gl_ipl_translate(formula: *const c_char, out: *mut *mut c_char) -> GlStatus {
    guard(|| {
        check_out(out)?;
        let phi = parse_ipl(text(formula, "formula")?).map_err(Error::from)?;
        let (fo, _) = ipl_to_gf2(&phi);
        give_string(out, to_tptp(&fo, Role::Axiom, Closure::Existential))?;
        Ok(GlStatus::Ok)
    })
}

/// Message of the last failure on this thread, or null. Valid until the
/// next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn gl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must come from this library and not be used afterwards. Null is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn gl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
