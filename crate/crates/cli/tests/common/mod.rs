//! Fixture invocations shared by the golden and acceptance tests.

use std::path::{Path, PathBuf};
use std::process::Command;

pub const CASES: &[(&str, &[&str])] = &[
    ("kt_reduce", &["reduce", "kt.plumb"]),
    (
        "kt_reduce_topological",
        &["reduce", "--mode", "topological", "kt.plumb"],
    ),
    ("kt_invariants", &["invariants", "kt.plumb"]),
    ("kt_gs_positive", &["check", "--gs", "positive", "kt.plumb"]),
    ("kt_obstructed", &["check", "--obstructed", "kt.plumb"]),
    ("kt_klein", &["check", "--klein", "kt.plumb"]),
    ("kt_torsion", &["check", "--torsion", "kt.plumb"]),
    (
        "kt_gs_missing_area",
        &["check", "--gs", "positive", "kt_relabeled.plumb"],
    ),
    ("kt_iso_relabeled", &["iso", "kt.plumb", "kt_relabeled.plumb"]),
    ("pair_reduce_trace", &["reduce", "--trace", "pair12.plumb"]),
    ("pair_reduce_dot", &["reduce", "--dot", "pair12.plumb"]),
    (
        "pair_reduce_topological",
        &["reduce", "--mode", "topological", "--trace", "pair12.plumb"],
    ),
    ("pair_reduce_low_fuel", &["reduce", "--fuel", "2", "pair12.plumb"]),
    ("pair_obstructed", &["check", "--obstructed", "pair12.plumb"]),
    (
        "pair_obstructed_low_fuel",
        &["check", "--obstructed", "--fuel", "2", "pair12.plumb"],
    ),
    ("pair_invariants", &["invariants", "pair12.plumb"]),
    ("single_reduce", &["reduce", "single1.plumb"]),
    ("pair_single_iso", &["iso", "pair12.plumb", "single1.plumb"]),
    ("chain22_invariants", &["invariants", "chain22.plumb"]),
    ("chain23_invariants", &["invariants", "chain23.plumb"]),
    ("chain23_reduce", &["reduce", "chain23.plumb"]),
    ("gs_negative", &["check", "--gs", "negative", "gs_neg.plumb"]),
    ("gs_negative_positive", &["check", "--gs", "positive", "gs_neg.plumb"]),
    ("klein_check", &["check", "--klein", "klein.plumb"]),
    ("klein_reduce", &["reduce", "klein.plumb"]),
    (
        "klein_reduce_topological",
        &["reduce", "--mode", "topological", "--trace", "klein.plumb"],
    ),
    ("star_check", &["check", "--star", "star.plumb"]),
    ("star_reduce", &["reduce", "star.plumb"]),
    ("zeros_torsion", &["check", "--torsion", "zeros4.plumb"]),
    ("zeros_invariants", &["invariants", "zeros4.plumb"]),
    ("torus_invariants", &["invariants", "torus0.plumb"]),
    ("chain23_chain32_iso", &["iso", "chain23.plumb", "chain32.plumb"]),
    ("kt_single_iso", &["iso", "kt.plumb", "single1.plumb"]),
    ("kt_reduce_contact_eq", &["reduce", "--mode=contact", "kt.plumb"]),
    ("kt_gs_positive_eq", &["check", "--gs=positive", "kt.plumb"]),
    ("loop_parse_error", &["reduce", "loop.plumb"]),
];

pub fn dir(sub: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join(sub)
}

/// Exit code, stdout and stderr in one transcript.
pub fn run(args: &[&str]) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_plumb"))
        .current_dir(dir("fixtures"))
        .args(args)
        .output()
        .expect("plumb runs");
    format!(
        "exit: {}\n--- stdout\n{}--- stderr\n{}",
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap()
    )
}

pub fn golden_path(name: &str) -> PathBuf {
    dir("golden").join(format!("{name}.txt"))
}
