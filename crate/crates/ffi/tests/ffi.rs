use std::ffi::{c_char, CStr};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use brieskorn_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { bk_string_free(s) };
    text
}

fn link(exps: &[i64]) -> *mut BkLink {
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { bk_link_new(exps.as_ptr(), exps.len(), &mut out) },
        BkStatus::Ok
    );
    out
}

fn string_call(f: impl FnOnce(*mut *mut c_char) -> BkStatus) -> Result<String, BkStatus> {
    let mut s = ptr::null_mut();
    match f(&mut s) {
        BkStatus::Ok => Ok(take(s)),
        status => {
            assert!(s.is_null());
            Err(status)
        }
    }
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(bk_last_error_message()) }
        .to_str()
        .unwrap()
        .to_owned()
}

#[test]
fn link_queries() {
    let l = link(&[6, 3, 2, 2, 2]);
    let mut dim = 0;
    assert_eq!(unsafe { bk_link_dimension(l, &mut dim) }, BkStatus::Ok);
    assert_eq!(dim, 7);
    let mut positive = false;
    assert_eq!(
        unsafe { bk_link_is_positive(l, &mut positive) },
        BkStatus::Ok
    );
    assert!(positive);
    assert_eq!(
        string_call(|o| unsafe { bk_link_milnor_number(l, o) }).unwrap(),
        "10"
    );
    assert_eq!(
        string_call(|o| unsafe { bk_link_signature(l, o) }).unwrap(),
        "8"
    );
    assert_eq!(
        string_call(|o| unsafe { bk_link_homology(l, o) }).unwrap(),
        "Z^2"
    );
    unsafe { bk_link_free(l) };
}

#[test]
fn scalar_invariants() {
    assert_eq!(string_call(|o| unsafe { bk_tau(7, o) }).unwrap(), "28");
    assert_eq!(
        string_call(|o| unsafe { bk_bp_order(5, o) }).unwrap(),
        "261632"
    );
    assert_eq!(
        string_call(|o| unsafe { bk_diffeo_count(2, 6, o) }).unwrap(),
        "4"
    );
    assert_eq!(
        string_call(|o| unsafe { bk_diffeo_count(3, 31, o) }).unwrap(),
        "2"
    );
}

#[test]
fn covers_and_offsets() {
    let branch = link(&[3, 2, 2, 2]);
    let h = |fold| string_call(|o| unsafe { bk_cover_homology(branch, fold, o) });
    assert_eq!(h(2).unwrap(), "Z_3");
    assert_eq!(h(5).unwrap(), "0");
    assert_eq!(h(6).unwrap(), "Z^2");
    assert_eq!(h(0), Err(BkStatus::InvalidArgument));

    let (a, b) = (link(&[12, 3, 2, 2, 2]), link(&[6, 3, 2, 2, 2]));
    assert_eq!(
        string_call(|o| unsafe { bk_diffeo_offset(a, b, 2, o) }).unwrap(),
        "1"
    );
    assert_eq!(
        string_call(|o| unsafe { bk_diffeo_offset(branch, b, 2, o) }),
        Err(BkStatus::IncomparableLinks)
    );
    for p in [branch, a, b] {
        unsafe { bk_link_free(p) };
    }
}

#[test]
fn table_json() {
    let ks = [1u32, 7];
    let text = string_call(|o| unsafe { bk_table_json(7, ks.as_ptr(), ks.len(), o) }).unwrap();
    let rows: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(rows[1]["count"], "1");
    assert_eq!(rows[1]["ratio"], "1/28");
    assert_eq!(
        string_call(|o| unsafe { bk_table_json(8, ks.as_ptr(), ks.len(), o) }),
        Err(BkStatus::InvalidArgument)
    );
}

#[test]
fn errors_and_null_pointers() {
    let mut out = ptr::null_mut();
    let bad = [4i64, -1];
    assert_eq!(
        unsafe { bk_link_new(bad.as_ptr(), 2, &mut out) },
        BkStatus::InvalidExponent
    );
    assert!(out.is_null());
    assert!(last_error().contains("-1"), "{}", last_error());
    assert_eq!(
        unsafe { bk_link_new(ptr::null(), 0, &mut out) },
        BkStatus::EmptyExponents
    );
    assert_eq!(
        unsafe { bk_link_new(ptr::null(), 3, &mut out) },
        BkStatus::NullPointer
    );
    assert_eq!(
        unsafe { bk_link_new(bad.as_ptr(), 2, ptr::null_mut()) },
        BkStatus::NullPointer
    );
    assert_eq!(
        unsafe { bk_link_dimension(ptr::null(), &mut 0) },
        BkStatus::NullPointer
    );
    assert_eq!(
        string_call(|o| unsafe { bk_bp_order(1, o) }),
        Err(BkStatus::InvalidArgument)
    );

    let even = link(&[3, 2, 2, 2]);
    assert_eq!(
        string_call(|o| unsafe { bk_link_signature(even, o) }),
        Err(BkStatus::OddDimension)
    );
    unsafe { bk_link_free(even) };

    assert_eq!(string_call(|o| unsafe { bk_tau(3, o) }).unwrap(), "6");
    assert_eq!(last_error(), "");
    unsafe {
        bk_link_free(ptr::null_mut());
        bk_string_free(ptr::null_mut());
    }
}

#[test]
fn status_names_match_library_errors() {
    let name = |s| {
        unsafe { CStr::from_ptr(bk_status_name(s)) }
            .to_str()
            .unwrap()
    };
    assert_eq!(name(BkStatus::Ok), "OK");
    assert_eq!(name(BkStatus::NotDivisibleByEight), "NotDivisibleBy8");
    assert_eq!(name(BkStatus::BudgetExceeded), "BudgetExceeded");
}

#[test]
fn header_declares_every_export() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(dir.join("include/brieskorn.h")).unwrap();
    let source = std::fs::read_to_string(dir.join("src/lib.rs")).unwrap();
    let exports: Vec<&str> = source
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 15);
    for f in exports {
        assert!(header.contains(&format!("{f}(")), "{f} missing from header");
    }
    assert!(header.contains("typedef struct BkLink BkLink;"));
}

/// Compiles and runs the C smoke program against the static library.
#[test]
fn c_program_links_and_runs() {
    let Ok(cc) = which_cc() else {
        eprintln!("no C compiler; skipped");
        return;
    };
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // tests run from <target>/<profile>/deps
    let profile_dir = std::env::current_exe()
        .unwrap()
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .to_path_buf();
    let lib = profile_dir.join("libbrieskorn_ffi.a");
    if !lib.exists() {
        eprintln!("{} not built; skipped", lib.display());
        return;
    }
    let tmp = tempfile::tempdir().unwrap();
    let exe = tmp.path().join("smoke");
    let status = Command::new(&cc)
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(dir.join("include"))
        .arg(dir.join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&exe).output().unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
}

fn which_cc() -> Result<String, ()> {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    match Command::new(&cc).arg("--version").output() {
        Ok(o) if o.status.success() => Ok(cc),
        _ => Err(()),
    }
}
