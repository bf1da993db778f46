//! Compiles and runs a small C program against the generated header and the
//! shared library.

use std::path::{Path, PathBuf};
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "tmh.h"

int main(void) {
    int64_t twist[3] = {2, 0, 0};
    TmhSpec *spec = NULL;
    if (tmh_spec_new(2, 3, twist, 3, 1, 4, &spec) != TMH_STATUS_OK) return 10;
    char *a = NULL;
    if (tmh_a_hat(spec, &a) != TMH_STATUS_OK || strcmp(a, "2") != 0) return 11;
    tmh_string_free(a);
    TmhReport *report = NULL;
    if (tmh_report_new(spec, &report) != TMH_STATUS_OK) return 12;
    enum TmhPsc psc;
    if (tmh_report_psc(report, &psc) != TMH_STATUS_OK || psc != TMH_PSC_OBSTRUCTED) return 13;
    char *json = NULL;
    tmh_report_json(report, &json);
    printf("%s\n", json);
    tmh_string_free(json);
    tmh_report_free(report);
    tmh_spec_free(spec);

    TmhSpec *bad = NULL;
    if (tmh_spec_new(2, 3, twist, 2, 1, 4, &bad) != TMH_STATUS_INVALID_INPUT) return 14;
    if (tmh_last_error() == NULL) return 15;
    return 0;
}
"#;

fn target_dir() -> PathBuf {
    // .../target/<profile>/deps/c_header-<hash>
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

fn have_cc() -> bool {
    Command::new("cc").arg("--version").output().is_ok()
}

#[test]
fn c_program_links_and_runs() {
    if !have_cc() {
        eprintln!("no C compiler on PATH; skipping");
        return;
    }
    let lib_dir = target_dir();
    assert!(
        lib_dir.join("libtmh_ffi.so").exists() || lib_dir.join("libtmh_ffi.dylib").exists(),
        "shared library not found in {}",
        lib_dir.display()
    );
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let work = tempfile::tempdir().unwrap();
    let src = work.path().join("smoke.c");
    let bin = work.path().join("smoke");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg(&src)
        .arg("-I")
        .arg(&include)
        .arg("-L")
        .arg(&lib_dir)
        .arg("-ltmh_ffi")
        .arg("-o")
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&bin)
        .env("LD_LIBRARY_PATH", &lib_dir)
        .env("DYLD_LIBRARY_PATH", &lib_dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("{\"n1\":2,\"n2\":3"), "{text}");
}
