//! Fixed inputs must reproduce the recorded reports byte for byte.
//! Set `UPDATE_GOLDEN=1` to rewrite the files after an intended change.

mod common;

use common::{capture, golden_mismatches, GOLDEN_CASES};
use rinehart::execute;

#[test]
fn golden_reports() {
    let mismatched = golden_mismatches(std::env::var_os("UPDATE_GOLDEN").is_some());
    assert!(mismatched.is_empty(), "reports differ from golden files: {mismatched:?}");
}

#[test]
fn reports_are_deterministic() {
    std::env::set_current_dir(env!("CARGO_MANIFEST_DIR")).unwrap();
    for (_, args) in GOLDEN_CASES.iter().take(6) {
        assert_eq!(capture(args), capture(args));
    }
}

#[test]
fn text_is_a_rendering_of_the_json() {
    std::env::set_current_dir(env!("CARGO_MANIFEST_DIR")).unwrap();
    let out = execute(["rinehart", "check", "tests/inputs/faulty.rh"]);
    let value: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    let text = execute(["rinehart", "--text", "check", "tests/inputs/faulty.rh"]);
    assert_eq!(text.stdout, rinehart::report::render_text(&value));
    assert_eq!(out.code, 1);
}
