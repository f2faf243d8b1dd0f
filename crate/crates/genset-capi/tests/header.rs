//! Checks the generated C header: it must exist, declare the full surface,
//! and actually work from C — a small program is compiled against the
//! static library and executed.

use std::path::PathBuf;
use std::process::Command;

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn header_path() -> PathBuf {
    crate_dir().join("include/genset.h")
}

/// Builds the staticlib (cargo test alone only guarantees the rlib) and
/// returns its path.
fn static_lib() -> Option<PathBuf> {
    let build = Command::new(env!("CARGO"))
        .args(["build", "-p", "genset-capi"])
        .current_dir(crate_dir())
        .output()
        .ok()?;
    if !build.status.success() {
        panic!(
            "cargo build failed:\n{}",
            String::from_utf8_lossy(&build.stderr)
        );
    }
    let target = crate_dir().join("../../target");
    for profile in ["debug", "release"] {
        let candidate = target.join(profile).join("libgenset_capi.a");
        if candidate.exists() {
            return Some(candidate);
        }
    }
    None
}

#[test]
fn header_declares_the_full_surface() {
    let header = std::fs::read_to_string(header_path()).expect("generated header exists");
    for symbol in [
        "typedef struct GensetFamily GensetFamily;",
        "typedef struct GensetGraph GensetGraph;",
        "GENSET_STATUS_OK",
        "GENSET_STATUS_NO_GOOD_CLIQUE",
        "genset_canonical_family",
        "genset_family_parse",
        "genset_family_from_file",
        "genset_family_free",
        "genset_family_to_text",
        "genset_family_is_k_generator",
        "genset_family_is_k_base",
        "genset_canonical_size",
        "genset_counting_lower_bound",
        "genset_crude_upper_bound",
        "genset_disjointness_graph",
        "genset_graph_clique_count",
        "genset_graph_chromatic_number",
        "genset_graph_bipartization_distance",
        "genset_graph_kpartization_distance",
        "genset_min_generator_size",
        "genset_string_free",
        "genset_version",
    ] {
        assert!(header.contains(symbol), "header misses `{symbol}`");
    }
}

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "genset.h"

int main(void) {
    GensetFamily *fam = NULL;
    if (genset_canonical_family(6, 2, &fam) != GENSET_STATUS_OK) return 1;
    if (genset_family_len(fam) != 14) return 2;

    bool is_gen = false;
    if (genset_family_is_k_generator(fam, 2, &is_gen) != GENSET_STATUS_OK || !is_gen) return 3;

    GensetGraph *graph = NULL;
    if (genset_disjointness_graph(fam, &graph) != GENSET_STATUS_OK) return 4;
    uint64_t triangles = 0;
    if (genset_graph_clique_count(graph, 3, &triangles) != GENSET_STATUS_OK) return 5;

    uint64_t min_size = 0;
    bool complete = false;
    if (genset_min_generator_size(4, 2, false, 0, &min_size, &complete) != GENSET_STATUS_OK)
        return 6;
    if (!complete || min_size != 6) return 7;

    char *text = NULL;
    if (genset_family_to_text(fam, &text) != GENSET_STATUS_OK) return 8;
    if (strncmp(text, "n=6\n", 4) != 0) return 9;
    genset_string_free(text);

    if (genset_canonical_family(3, 9, &fam) != GENSET_STATUS_INVALID_ARGUMENT) return 10;

    genset_graph_free(graph);
    genset_family_free(fam);
    printf("c-abi ok\n");
    return 0;
}
"#;

#[test]
fn c_program_links_and_runs() {
    let Some(lib) = static_lib() else {
        panic!("libgenset_capi.a not found; build the crate first");
    };
    let cc = ["cc", "gcc", "clang"]
        .iter()
        .find(|cc| Command::new(cc).arg("--version").output().is_ok())
        .expect("a C compiler is available");

    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    let exe = dir.path().join("capi_check");
    std::fs::write(&src, C_PROGRAM).unwrap();

    let compile = Command::new(cc)
        .arg(&src)
        .arg(&lib)
        .arg("-I")
        .arg(crate_dir().join("include"))
        .arg("-o")
        .arg(&exe)
        .args(["-lpthread", "-ldl", "-lm"])
        .output()
        .expect("compiler runs");
    assert!(
        compile.status.success(),
        "C compilation failed:\n{}",
        String::from_utf8_lossy(&compile.stderr)
    );

    let run = Command::new(&exe).output().expect("compiled program runs");
    assert!(
        run.status.success(),
        "C program exited with {:?}: {}",
        run.status.code(),
        String::from_utf8_lossy(&run.stdout)
    );
    assert_eq!(String::from_utf8_lossy(&run.stdout), "c-abi ok\n");
}
