//! The generated header declares every exported symbol and links from C.

use std::path::PathBuf;
use std::process::Command;

const SYMBOLS: [&str; 11] = [
    "trunca_last_error",
    "trunca_string_free",
    "trunca_datum_new",
    "trunca_datum_free",
    "trunca_datum_rank",
    "trunca_datum_root_count",
    "trunca_datum_weyl_order",
    "trunca_gamma",
    "trunca_qpsum",
    "trunca_sl_trace",
    "trunca_filter_check",
];

fn header() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/trunca.h")
}

#[test]
fn header_declares_symbols() {
    let h = std::fs::read_to_string(header()).unwrap();
    for s in SYMBOLS {
        assert!(h.contains(&format!("{s}(")), "{s} missing from header");
    }
    assert!(h.contains("TRUNCA_STATUS_OK = 0"));
}

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "trunca.h"

int main(void) {
    TruncaDatum *d = NULL;
    if (trunca_datum_new("B2", &d) != TRUNCA_STATUS_OK) return 1;
    size_t order = 0;
    trunca_datum_weyl_order(d, &order);
    int64_t g = -1;
    trunca_gamma(d, 0, "1,1", "0,0", &g);
    char *b = NULL, *p = NULL;
    if (trunca_qpsum(d, 0, "3,1", 2, &b, &p) != TRUNCA_STATUS_OK) return 2;
    int same = strcmp(b, p) == 0;
    trunca_string_free(b);
    trunca_string_free(p);
    trunca_datum_free(d);
    if (trunca_datum_new("nope", &d) != TRUNCA_STATUS_INVALID_ARGUMENT) return 3;
    printf("%zu %lld %d %s\n", order, (long long)g, same, trunca_last_error() ? "err" : "none");
    return 0;
}
"#;

#[test]
fn c_program_links_and_runs() {
    // target/<profile>/deps/header-… → target/<profile>
    let exe = std::env::current_exe().unwrap();
    let profile = exe.parent().unwrap().parent().unwrap();
    let lib = profile.join("libtrunca_ffi.a");
    assert!(lib.exists(), "static library not found at {}", lib.display());
    let dir = std::env::temp_dir().join(format!("trunca-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("main.c");
    let bin = dir.join("main");
    std::fs::write(&src, PROGRAM).unwrap();
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let status = Command::new(&cc)
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(header().parent().unwrap())
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .expect("C compiler");
    assert!(status.success(), "C compilation failed");
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "C program exited with {:?}", out.status);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "8 0 1 err");
    std::fs::remove_dir_all(&dir).ok();
}
