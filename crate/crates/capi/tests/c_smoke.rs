//! Compiles and runs a small C program against the generated header and the
//! shared library, exercising the interface the way a foreign binding
//! would.

use std::path::PathBuf;
use std::process::Command;

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "mc_capi.h"

int main(void) {
    McRootSystem *rs = NULL;
    if (mc_root_system_new("B3", &rs) != McStatus_Ok) return 1;
    if (mc_root_system_rank(rs) != 3) return 2;
    if (mc_root_system_positive_count(rs) != 9) return 3;

    char *json = NULL;
    if (mc_verify_paper_family(rs, &json) != McStatus_Ok) return 4;
    if (strstr(json, "\"ok\": true") == NULL) return 5;
    mc_string_free(json);

    json = NULL;
    if (mc_search(rs, 1, 0, 10000000, 0, 1, true, &json) != McStatus_Ok) return 6;
    if (strstr(json, "\"value\": 4") == NULL) return 7;
    mc_string_free(json);

    mc_root_system_free(rs);

    McRootSystem *bad = NULL;
    if (mc_root_system_new("Z1", &bad) != McStatus_InvalidType) return 8;
    if (mc_last_error() == NULL) return 9;

    printf("c smoke ok, library %s\n", mc_version());
    return 0;
}
"#;

#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let include = manifest.join("include");
    let profile = if cfg!(debug_assertions) { "debug" } else { "release" };
    let libdir = manifest.join("../../target").join(profile);
    assert!(
        libdir.join("libmc_capi.so").exists() || libdir.join("libmc_capi.a").exists(),
        "library not built at {libdir:?}"
    );

    let dir = std::env::temp_dir().join("mc-capi-smoke");
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("smoke.c");
    let bin = dir.join("smoke");
    std::fs::write(&src, C_PROGRAM).unwrap();

    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".to_string());
    let compile = Command::new(&cc)
        .arg(&src)
        .arg("-o")
        .arg(&bin)
        .arg(format!("-I{}", include.display()))
        .arg(format!("-L{}", libdir.display()))
        .arg("-lmc_capi")
        .output()
        .expect("run the C compiler");
    assert!(
        compile.status.success(),
        "cc failed: {}",
        String::from_utf8_lossy(&compile.stderr)
    );

    let run = Command::new(&bin)
        .env("LD_LIBRARY_PATH", &libdir)
        .output()
        .expect("run the smoke binary");
    assert!(
        run.status.success(),
        "smoke exited {:?}: {}",
        run.status.code(),
        String::from_utf8_lossy(&run.stdout)
    );
    assert!(String::from_utf8_lossy(&run.stdout).contains("c smoke ok"));
}
