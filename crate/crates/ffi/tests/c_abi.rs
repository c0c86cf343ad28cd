use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::ptr;

use mdop_ffi::*;

fn cs(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn take(p: *mut c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string();
    unsafe { mdop_string_free(p) };
    s
}

fn last_error() -> String {
    let p = mdop_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

fn context(r: usize, d: &str, deg: u32) -> *mut MdopContext {
    let mut ctx = ptr::null_mut();
    let d = cs(d);
    assert_eq!(
        unsafe { mdop_context_new(r, d.as_ptr(), deg, &mut ctx) },
        MdopStatus::Ok
    );
    assert!(!ctx.is_null());
    ctx
}

#[test]
fn eval_round_trip() {
    let ctx = context(2, "2", 4);
    assert_eq!(unsafe { mdop_context_rank(ctx) }, 2);
    let mut out = ptr::null_mut();
    let (f, p, m, x) = (cs("krawtchouk"), cs("p=1/3;N=3"), cs("1,0"), cs("2,1"));
    let st = unsafe {
        mdop_eval(
            ctx,
            f.as_ptr(),
            p.as_ptr(),
            m.as_ptr(),
            x.as_ptr(),
            &mut out,
        )
    };
    assert_eq!(st, MdopStatus::Ok);
    assert_eq!(take(out), "-1/2");
    assert!(mdop_last_error().is_null());
    unsafe { mdop_context_free(ctx) };
}

#[test]
fn error_codes_and_messages() {
    let ctx = context(1, "1", 3);
    let mut out = ptr::null_mut();
    let (f, p, m, x) = (cs("meixner"), cs("alpha=0;c=1/2"), cs("1"), cs("1"));
    let st = unsafe {
        mdop_eval(
            ctx,
            f.as_ptr(),
            p.as_ptr(),
            m.as_ptr(),
            x.as_ptr(),
            &mut out,
        )
    };
    assert_eq!(st, MdopStatus::Pole);
    assert!(last_error().contains("pole"));
    assert!(out.is_null());

    let p2 = cs("alpha=2");
    let st = unsafe {
        mdop_eval(
            ctx,
            f.as_ptr(),
            p2.as_ptr(),
            m.as_ptr(),
            x.as_ptr(),
            &mut out,
        )
    };
    assert_eq!(st, MdopStatus::Parameter);

    let big = cs("9");
    let p3 = cs("alpha=2;c=1/2");
    let st = unsafe {
        mdop_eval(
            ctx,
            f.as_ptr(),
            p3.as_ptr(),
            big.as_ptr(),
            x.as_ptr(),
            &mut out,
        )
    };
    assert_eq!(st, MdopStatus::DegreeExceeded);

    let st = unsafe {
        mdop_eval(
            ptr::null(),
            f.as_ptr(),
            p3.as_ptr(),
            m.as_ptr(),
            x.as_ptr(),
            &mut out,
        )
    };
    assert_eq!(st, MdopStatus::NullPointer);

    let mut bad = ptr::null_mut();
    let zero = cs("0");
    assert_eq!(
        unsafe { mdop_context_new(2, zero.as_ptr(), 2, &mut bad) },
        MdopStatus::Parameter
    );
    assert!(bad.is_null());
    unsafe { mdop_context_free(ctx) };
    unsafe { mdop_context_free(ptr::null_mut()) };
    unsafe { mdop_string_free(ptr::null_mut()) };
}

#[test]
fn verify_and_conjecture_reports() {
    let ctx = context(2, "5/2", 4);
    let mut out = ptr::null_mut();
    let (id, f, p) = (cs("difference"), cs("charlier"), cs("a=3/2"));
    let st = unsafe { mdop_verify_json(ctx, id.as_ptr(), f.as_ptr(), p.as_ptr(), 2, &mut out) };
    assert_eq!(st, MdopStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["identity"], "difference");
    assert_eq!(v["summary"]["passed"], v["summary"]["total"]);

    let (id, f, p) = (cs("orthogonality"), cs("krawtchouk"), cs("p=1/3;N=2"));
    let st = unsafe { mdop_verify_json(ctx, id.as_ptr(), f.as_ptr(), p.as_ptr(), 0, &mut out) };
    assert_eq!(st, MdopStatus::Ok);
    take(out);
    unsafe { mdop_context_free(ctx) };

    let ctx = context(2, "1/2", 16);
    let st = unsafe { mdop_conjecture_json(ctx, 2, 5, &mut out) };
    assert_eq!(st, MdopStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(v["seed"], 5);
    assert_eq!(v["classical"], false);
    unsafe { mdop_context_free(ctx) };
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(mdop_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_the_interface() {
    let header =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/mdop.h")).unwrap();
    for sym in [
        "typedef struct MdopContext MdopContext",
        "MDOP_STATUS_OK = 0",
        "MDOP_STATUS_POLE",
        "mdop_context_new",
        "mdop_context_free",
        "mdop_eval",
        "mdop_verify_json",
        "mdop_conjecture_json",
        "mdop_last_error",
        "mdop_string_free",
        "mdop_version",
    ] {
        assert!(header.contains(sym), "header lacks {sym}");
    }
}

#[test]
fn header_compiles_as_c() {
    let Ok(cc) = which_cc() else { return };
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("probe.c");
    std::fs::write(
        &src,
        "#include \"mdop.h\"\nint main(void) { MdopContext *c = 0; return mdop_context_rank(c) == 0 ? 0 : 1; }\n",
    )
    .unwrap();
    let status = std::process::Command::new(cc)
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(concat!(env!("CARGO_MANIFEST_DIR"), "/include"))
        .arg(&src)
        .status()
        .unwrap();
    assert!(status.success());
}

fn which_cc() -> Result<&'static str, ()> {
    ["cc", "gcc", "clang"]
        .into_iter()
        .find(|c| {
            std::process::Command::new(c)
                .arg("--version")
                .output()
                .is_ok()
        })
        .ok_or(())
}
