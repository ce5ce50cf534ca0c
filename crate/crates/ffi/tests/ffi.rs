use std::ffi::{CStr, CString};
use std::ptr;

use gramlogic_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    gl_string_free(s);
    out
}

unsafe fn last_error() -> String {
    CStr::from_ptr(gl_last_error()).to_string_lossy().into_owned()
}

#[test]
fn translate_preset() {
    unsafe {
        let mut logic = ptr::null_mut();
        assert_eq!(gl_logic_preset(cstr("k").as_ptr(), &mut logic), GlStatus::Ok);
        let mut out = ptr::null_mut();
        let st = gl_translate(logic, cstr("p").as_ptr(), false, false, &mut out);
        assert_eq!(st, GlStatus::Ok);
        assert_eq!(take(out), "fof(translated, axiom, ?[X0]: p_p(X0)).");
        gl_logic_free(logic);
    }
}

#[test]
fn check_outcomes() {
    unsafe {
        let mut logic = ptr::null_mut();
        assert_eq!(gl_logic_preset(cstr("S4").as_ptr(), &mut logic), GlStatus::Ok);
        let mut out = ptr::null_mut();
        assert_eq!(gl_check(logic, cstr("<a>p & <a>~p").as_ptr(), 3, 10_000, &mut out), GlStatus::Ok);
        assert!(take(out).starts_with("witness world:"));
        let mut out = ptr::null_mut();
        assert_eq!(gl_check(logic, cstr("[a]p & <a>~p").as_ptr(), 3, 10_000, &mut out), GlStatus::NoModel);
        assert!(out.is_null());
        gl_logic_free(logic);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let mut logic = ptr::null_mut();
        assert_eq!(gl_logic_preset(cstr("nope").as_ptr(), &mut logic), GlStatus::Parse);
        assert!(last_error().contains("nope"));
        assert_eq!(gl_logic_preset(ptr::null(), &mut logic), GlStatus::NullPointer);
        let bad = [0xffu8, 0];
        assert_eq!(gl_logic_preset(bad.as_ptr().cast(), &mut logic), GlStatus::InvalidUtf8);

        let grammar = cstr("letters: a/A, b/B\nrule: a -> a b a\n");
        assert_eq!(gl_logic_from_grammar(grammar.as_ptr(), &mut logic), GlStatus::Shape);
        let grammar = cstr("letters: a/A, b/B\nrule: a -> b a\nrule: a ->\n");
        assert_eq!(gl_logic_from_grammar(grammar.as_ptr(), &mut logic), GlStatus::Ok);
        let mut out = ptr::null_mut();
        assert_eq!(gl_translate(logic, cstr("<a>").as_ptr(), false, false, &mut out), GlStatus::Parse);
        assert!(last_error().contains("line 1"));
        gl_logic_free(logic);
        gl_logic_free(ptr::null_mut());
        gl_string_free(ptr::null_mut());
    }
}

#[test]
fn ipl() {
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(gl_ipl_translate(cstr("p").as_ptr(), &mut out), GlStatus::Ok);
        assert_eq!(take(out), "fof(translated, axiom, ?[X0]: ?[X1]: (r_a(X0,X1) & ~p_p(X1))).");
    }
}

#[test]
fn header_is_current() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/gramlogic.h")).unwrap();
    for name in ["gl_logic_preset", "gl_logic_from_grammar", "gl_translate", "gl_check", "gl_last_error", "GL_STATUS_RESOURCE_CAP"] {
        assert!(header.contains(name), "{name}");
    }
}
