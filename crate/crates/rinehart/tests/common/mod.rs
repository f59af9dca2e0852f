//! Inputs shared by the golden, diagnostics and acceptance targets.
#![allow(dead_code)]

use std::path::PathBuf;

use rinehart::execute;

pub const GOLDEN_CASES: &[(&str, &[&str])] = &[
    ("check_vect", &["check", "tests/inputs/vect.rh"]),
    ("check_vect_text", &["check", "tests/inputs/vect.rh", "--text"]),
    ("check_so3", &["check", "tests/inputs/so3.rh"]),
    ("check_faulty", &["check", "tests/inputs/faulty.rh"]),
    ("check_heisenberg", &["check", "tests/inputs/heisenberg.rh"]),
    ("check_nonclosed", &["check", "tests/inputs/nonclosed.rh"]),
    ("check_atiyah", &["check", "tests/inputs/atiyah.rh"]),
    ("check_poisson", &["check", "tests/inputs/poisson.rh"]),
    ("check_scene", &["check", "tests/inputs/scene.rh", "--seed", "7"]),
    ("bracket_vect", &["bracket", "tests/inputs/vect.rh", "e^2", "x^2"]),
    ("bracket_so3", &["bracket", "tests/inputs/so3.rh", "e1*e2", "e3^2"]),
    ("reconstruct_so3", &["reconstruct", "tests/inputs/so3.rh"]),
    ("build_extension_heisenberg", &["build-extension", "tests/inputs/heisenberg.rh"]),
    ("curvature_heisenberg", &["curvature", "tests/inputs/heisenberg.rh"]),
    ("curvature_atiyah", &["curvature", "tests/inputs/atiyah.rh"]),
    ("reconstruct_extension_atiyah", &["reconstruct-extension", "tests/inputs/atiyah.rh"]),
    ("run_program", &["run", "tests/inputs/program.rh"]),
    ("demo_dual_pair_1_1", &["demo", "dual-pair", "--s", "1", "--l", "1"]),
    ("demo_dual_pair_2_2", &["demo", "dual-pair", "--s", "2", "--l", "2"]),
    ("demo_so3_r3", &["demo", "so3-r3"]),
    ("demo_homogeneous_so3_so2", &["demo", "homogeneous", "--preset", "so3-so2"]),
    ("demo_homogeneous_gxg_so3", &["demo", "homogeneous", "--preset", "gxg-so3"]),
    ("demo_homogeneous_upper", &["demo", "homogeneous", "--preset", "upper-triangular"]),
    ("hilbert_exact", &["hilbert", "--s", "1", "--gram", "4,2;2,1"]),
    ("hilbert_indefinite", &["hilbert", "--s", "2", "--gram", "1,2;2,1"]),
    ("hilbert_rank_excess", &["hilbert", "--s", "1", "--gram", "1,0;0,1"]),
    ("hilbert_point", &["hilbert", "--s", "3", "--l", "2", "--point", "1,0,0,0,2,0"]),
    ("momentum_point", &["momentum", "--s", "2", "--l", "1", "--point", "1,0,0,1"]),
];

pub const DIAGNOSTIC_CASES: &[(&str, &str)] = &[
    ("unbalanced", "4:1: error: expected one of `base`, `basis`, `anchor`, `bracket`, `}`, found end of input"),
    ("truncated", "2:1: error: expected a declaration name, found end of input"),
    ("missing_semicolon", "4:17: error: expected `;`, found `x`"),
    ("bad_char", "4:12: error: unexpected character `@`"),
    ("undeclared", "4:16: error: unknown basis element `e3`"),
    ("nonlinear_anchor", "4:17: error: an anchor must be linear in dx"),
    ("nonlinear_bracket", "4:22: error: a bracket must be linear in e, f"),
    ("conflicting", "5:12: error: [f, e] is determined by antisymmetry from 4:12"),
    ("division", "4:18: error: division is only allowed by a nonzero constant"),
    ("prime_anchor", "3:28: error: `lprime` element `c` must have zero anchor"),
    ("scene_key", "3:3: error: unknown setting `k`, expected `s` or `l`"),
    ("unknown_target", "2:11: error: unknown declaration `b`"),
    (
        "unknown_command",
        "2:5: error: unknown command `frobnicate`, expected one of `check`, `bracket`, `reconstruct`, \
         `build_extension`, `curvature`, `reconstruct_extension`",
    ),
    ("arity", "2:5: error: `bracket` expects 2 arguments, found 1"),
    ("wrong_kind", "2:15: error: `curvature` needs an extension, but `a` is an algebra"),
    ("context_mismatch", "3:19: error: context mismatch: `y` belongs to `b`, not to `a`"),
];

pub fn golden_path(name: &str) -> PathBuf {
    let ext = if name.ends_with("_text") { "txt" } else { "json" };
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(format!("tests/golden/{name}.{ext}"))
}

/// Output plus a trailing line recording the exit code.
pub fn capture(args: &[&str]) -> String {
    let out = execute(std::iter::once("rinehart").chain(args.iter().copied()));
    assert!(out.stderr.is_empty(), "{args:?}: {}", out.stderr);
    format!("{}# exit {}\n", out.stdout, out.code)
}

/// Compares every golden case with its recorded file, returning the
/// names that differ. With `update`, rewrites the files instead.
pub fn golden_mismatches(update: bool) -> Vec<&'static str> {
    std::env::set_current_dir(env!("CARGO_MANIFEST_DIR")).unwrap();
    let mut mismatched = Vec::new();
    for (name, args) in GOLDEN_CASES {
        let got = capture(args);
        let path = golden_path(name);
        if update {
            std::fs::write(&path, &got).unwrap();
            continue;
        }
        match std::fs::read_to_string(&path) {
            Ok(want) if want == got => {}
            _ => mismatched.push(*name),
        }
    }
    mismatched
}

/// Diagnostic cases whose stderr or exit code differ from the record.
pub fn diagnostic_mismatches() -> Vec<&'static str> {
    std::env::set_current_dir(env!("CARGO_MANIFEST_DIR")).unwrap();
    DIAGNOSTIC_CASES
        .iter()
        .filter(|(name, want)| {
            let path = format!("tests/errors/{name}.rh");
            let out = execute(["rinehart", "run", &path]);
            out.code != 2 || !out.stdout.is_empty() || out.stderr != format!("{path}:{want}\n")
        })
        .map(|(name, _)| *name)
        .collect()
}
