use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_rinehart"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn exit_codes_follow_verdicts() {
    assert_eq!(run(&["check", "tests/inputs/vect.rh"]).0, 0);
    assert_eq!(run(&["check", "tests/inputs/faulty.rh"]).0, 1);
    assert_eq!(run(&["hilbert", "--s", "2", "--gram", "1,2;2,1"]).0, 1);
    let (code, stdout, stderr) = run(&["check", "tests/errors/undeclared.rh"]);
    assert_eq!(code, 2);
    assert!(stdout.is_empty());
    assert_eq!(stderr, "tests/errors/undeclared.rh:4:16: error: unknown basis element `e3`\n");
}

#[test]
fn binary_matches_library() {
    let args = ["check", "tests/inputs/heisenberg.rh", "--seed", "3"];
    let (code, stdout, _) = run(&args);
    std::env::set_current_dir(env!("CARGO_MANIFEST_DIR")).unwrap();
    let lib = rinehart::execute(std::iter::once("rinehart").chain(args));
    assert_eq!((code, stdout), (lib.code, lib.stdout));
}

#[test]
fn timing_is_opt_in() {
    let (_, plain, _) = run(&["demo", "so3-r3"]);
    assert!(!plain.contains("\"timing\""));
    let (_, timed, _) = run(&["--timing", "demo", "so3-r3"]);
    let v: serde_json::Value = serde_json::from_str(&timed).unwrap();
    assert!(v["timing"]["elapsed_ms"].is_u64());
}

#[test]
fn help_and_version() {
    let (code, stdout, _) = run(&["--version"]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("rinehart 0.1.0"));
    assert_eq!(run(&["--help"]).0, 0);
}
