//! Compiles `smoke.c` against the generated header and the static library.

use std::path::{Path, PathBuf};
use std::process::Command;

fn static_lib() -> PathBuf {
    // CARGO_TARGET_TMPDIR is <target>/tmp; the library sits in <target>/debug.
    let target = Path::new(env!("CARGO_TARGET_TMPDIR")).parent().unwrap();
    let lib = target.join("debug").join("libcluster_capacity_ffi.a");
    assert!(lib.exists(), "missing {}", lib.display());
    lib
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(
        Path::new(env!("CARGO_MANIFEST_DIR")).join("include/cluster_capacity.h"),
    )
    .unwrap();
    for name in [
        "typedef struct CcForbiddenSet CcForbiddenSet;",
        "typedef struct CcGenFun CcGenFun;",
        "CC_STATUS_DEGENERATE = 3",
        "cc_forbidden_set_from_json(const char *json",
        "cc_count(const struct CcGenFun *f, size_t n, char **out)",
        "cc_capacity_spectral(",
        "const char *cc_last_error_message(void);",
        "void cc_string_free(char *s);",
    ] {
        assert!(header.contains(name), "header lacks {name}");
    }
}

#[test]
fn c_program_links_and_runs() {
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("no C compiler on PATH; skipping");
        return;
    }
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let exe = Path::new(env!("CARGO_TARGET_TMPDIR")).join("cc_smoke");
    let status = Command::new("cc")
        .arg(dir.join("tests/smoke.c"))
        .arg("-I")
        .arg(dir.join("include"))
        .arg(static_lib())
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "words 8\nN(16) 13600\ncapacity 0.7906314\n"
    );
}
