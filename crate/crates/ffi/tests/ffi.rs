use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use flagcoh_ffi::*;

struct Rs(*mut FlagcohRootSystem);

impl Rs {
    fn new(spec: &str) -> Rs {
        let s = CString::new(spec).unwrap();
        let mut h = ptr::null_mut();
        assert_eq!(
            unsafe { flagcoh_root_system_new(s.as_ptr(), &mut h) },
            FlagcohStatus::Ok
        );
        assert!(!h.is_null());
        Rs(h)
    }
}

impl Drop for Rs {
    fn drop(&mut self) {
        unsafe { flagcoh_root_system_free(self.0) }
    }
}

fn last_error() -> String {
    let p = flagcoh_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

fn take_string(p: *mut std::ffi::c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { flagcoh_string_free(p) };
    s
}

#[test]
fn handle_lifecycle_and_basic_queries() {
    let rs = Rs::new("B2");
    unsafe {
        assert_eq!(flagcoh_root_system_rank(rs.0), 2);
        assert_eq!(flagcoh_num_positive_roots(rs.0), 4);
        let mut order = 0u64;
        assert_eq!(flagcoh_weyl_order(rs.0, &mut order), FlagcohStatus::Ok);
        assert_eq!(order, 8);
        let mut p = [0u64; 5];
        assert_eq!(flagcoh_poincare(rs.0, p.as_mut_ptr(), 5), FlagcohStatus::Ok);
        assert_eq!(p, [1, 2, 2, 2, 1]);
        assert_eq!(
            flagcoh_poincare(rs.0, p.as_mut_ptr(), 3),
            FlagcohStatus::Math
        );
        assert_eq!(flagcoh_root_system_rank(ptr::null()), 0);
        flagcoh_root_system_free(ptr::null_mut());
    }
}

#[test]
fn bad_type_reports_parse_error() {
    let s = CString::new("Q7").unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(
        unsafe { flagcoh_root_system_new(s.as_ptr(), &mut h) },
        FlagcohStatus::Parse
    );
    assert!(h.is_null());
    assert!(last_error().contains("Q"));
    let s = CString::new("E5").unwrap();
    assert_eq!(
        unsafe { flagcoh_root_system_new(s.as_ptr(), &mut h) },
        FlagcohStatus::Math
    );
    assert_eq!(
        unsafe { flagcoh_root_system_new(ptr::null(), &mut h) },
        FlagcohStatus::NullPointer
    );
}

#[test]
fn bwb_and_dimension() {
    let rs = Rs::new("A1");
    let (mut van, mut deg, mut mu) = (-1i32, 99usize, [7i64]);
    unsafe {
        assert_eq!(
            flagcoh_bwb(
                rs.0,
                [-2i64].as_ptr(),
                1,
                &mut van,
                &mut deg,
                mu.as_mut_ptr()
            ),
            FlagcohStatus::Ok
        );
        assert_eq!((van, deg, mu), (0, 1, [0]));
        assert_eq!(
            flagcoh_bwb(
                rs.0,
                [-1i64].as_ptr(),
                1,
                &mut van,
                &mut deg,
                mu.as_mut_ptr()
            ),
            FlagcohStatus::Ok
        );
        assert_eq!(van, 1);
        assert_eq!(
            flagcoh_bwb(
                rs.0,
                [1i64, 2].as_ptr(),
                2,
                &mut van,
                &mut deg,
                mu.as_mut_ptr()
            ),
            FlagcohStatus::Math
        );
        assert!(last_error().contains("rank mismatch"));
    }
    let a2 = Rs::new("A2");
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(
            flagcoh_weyl_dimension(a2.0, [1i64, 1].as_ptr(), 2, &mut out),
            FlagcohStatus::Ok
        );
    }
    assert_eq!(take_string(out), "8");
    unsafe {
        assert_eq!(
            flagcoh_weyl_dimension(a2.0, [1i64, -1].as_ptr(), 2, &mut out),
            FlagcohStatus::Math
        );
    }
}

#[test]
fn polynomials_and_k() {
    let a1 = Rs::new("A1");
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(
            flagcoh_p_eta(a1.0, [1i64].as_ptr(), 1, ptr::null(), &mut out),
            FlagcohStatus::Ok
        );
        assert_eq!(take_string(out), "h1");
        let w0 = CString::new("w0").unwrap();
        assert_eq!(
            flagcoh_p_eta(a1.0, [1i64].as_ptr(), 1, w0.as_ptr(), &mut out),
            FlagcohStatus::Ok
        );
        assert_eq!(take_string(out), "-h1 - 2");
        let bad = CString::new("0").unwrap();
        assert_eq!(
            flagcoh_p_eta(a1.0, [1i64].as_ptr(), 1, bad.as_ptr(), &mut out),
            FlagcohStatus::Parse
        );
    }
    let g2 = Rs::new("G2");
    let mut k = 0i64;
    unsafe {
        assert_eq!(
            flagcoh_k_value(g2.0, [0i64, 1].as_ptr(), 2, &mut k),
            FlagcohStatus::Ok
        );
    }
    assert_eq!(k, 10);
}

#[test]
fn min_orbit_and_svariety() {
    let (mut k, mut h, mut s) = (0i64, 0i64, FlagcohSurjectivity::Surjective);
    unsafe {
        let t = CString::new("E8").unwrap();
        assert_eq!(
            flagcoh_min_orbit(t.as_ptr(), &mut k, &mut h, &mut s),
            FlagcohStatus::Ok
        );
        assert_eq!(
            (k, h, s),
            (58, 30, FlagcohSurjectivity::CriterionNotApplicable)
        );
        let t = CString::new("A2").unwrap();
        assert_eq!(
            flagcoh_min_orbit(t.as_ptr(), &mut k, &mut h, &mut s),
            FlagcohStatus::Ok
        );
        assert_eq!((k, s), (4, FlagcohSurjectivity::Surjective));
    }
    let a1 = Rs::new("A1");
    let mut verdict = FlagcohSaturation::Inconclusive;
    let mut wit = [0i64];
    unsafe {
        assert_eq!(
            flagcoh_svariety_check(
                a1.0,
                [2i64, 3].as_ptr(),
                2,
                1000,
                &mut verdict,
                wit.as_mut_ptr()
            ),
            FlagcohStatus::Ok
        );
        assert_eq!((verdict, wit), (FlagcohSaturation::Fails, [1]));
        assert_eq!(
            flagcoh_svariety_check(
                a1.0,
                [2i64].as_ptr(),
                1,
                1000,
                &mut verdict,
                wit.as_mut_ptr()
            ),
            FlagcohStatus::Ok
        );
        assert_eq!(verdict, FlagcohSaturation::Holds);
        assert_eq!(
            flagcoh_svariety_check(
                a1.0,
                [5i64, 7].as_ptr(),
                2,
                3,
                &mut verdict,
                wit.as_mut_ptr()
            ),
            FlagcohStatus::Ok
        );
        assert_eq!(verdict, FlagcohSaturation::Inconclusive);
    }
}

#[test]
fn errors_are_per_thread() {
    let s = CString::new("Z1").unwrap();
    let mut h = ptr::null_mut();
    unsafe { flagcoh_root_system_new(s.as_ptr(), &mut h) };
    std::thread::spawn(|| assert!(flagcoh_last_error_message().is_null()))
        .join()
        .unwrap();
    assert!(!flagcoh_last_error_message().is_null());
    let _ok = Rs::new("A1");
    assert!(flagcoh_last_error_message().is_null());
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(flagcoh_version()) }
        .to_str()
        .unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(crate_dir().join("include/flagcoh.h")).unwrap();
    let src = std::fs::read_to_string(crate_dir().join("src/lib.rs")).unwrap();
    let exports: Vec<&str> = src
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 12);
    for f in exports {
        assert!(header.contains(&format!("{f}(")), "{f} missing from header");
    }
    assert!(header.contains("typedef struct FlagcohRootSystem FlagcohRootSystem;"));
}

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "flagcoh.h"

int main(void) {
    FlagcohRootSystem *rs = NULL;
    if (flagcoh_root_system_new("A2", &rs) != FLAGCOH_STATUS_OK) return 10;
    int64_t lambda[2] = {-2, 1}, mu[2];
    int32_t vanishes; size_t degree;
    if (flagcoh_bwb(rs, lambda, 2, &vanishes, &degree, mu) != FLAGCOH_STATUS_OK) return 11;
    if (vanishes || degree != 1 || mu[0] != 0 || mu[1] != 0) return 12;
    char *poly = NULL;
    int64_t eta[2] = {1, 0};
    if (flagcoh_p_eta(rs, eta, 2, NULL, &poly) != FLAGCOH_STATUS_OK) return 13;
    printf("%s\n", poly);
    flagcoh_string_free(poly);
    if (flagcoh_root_system_new("A0", &rs) == FLAGCOH_STATUS_OK) return 14;
    if (flagcoh_last_error_message() == NULL) return 15;
    flagcoh_root_system_free(rs);
    return 0;
}
"#;

/// Compiles a C client against the header and the static library when a C
/// compiler and the archive are available.
#[test]
fn c_client_links_against_static_library() {
    let deps = std::env::current_exe().unwrap();
    let profile_dir = deps.parent().unwrap().parent().unwrap();
    let archive = profile_dir.join("libflagcoh_ffi.a");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if Command::new(&cc).arg("--version").output().is_err() || !archive.exists() {
        eprintln!("skipping: no C compiler or {} not built", archive.display());
        return;
    }
    let dir = std::env::temp_dir().join(format!("flagcoh-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("client.c");
    let exe = dir.join("client");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let status = Command::new(&cc)
        .arg(&src)
        .arg("-I")
        .arg(crate_dir().join("include"))
        .arg(&archive)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C client failed to compile");
    let out = Command::new(&exe).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "h1^2 + h1*h2 + h1\n"
    );
    let _ = std::fs::remove_dir_all(&dir);
}
