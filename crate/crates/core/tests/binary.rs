use std::io::Write;
use std::process::{Command, Stdio};

fn freegroup(args: &[&str], stdin: &str) -> (i32, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_freegroup"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn exit_codes() {
    assert_eq!(freegroup(&["dist2-word", "-n", "2", "ab", "a"], ""), (0, "yes witness=split ab | a\n".into()));
    assert_eq!(freegroup(&["dist2-word", "-n", "2", "abAB", "a"], ""), (1, "no\n".into()));
    assert_eq!(freegroup(&["reduce", "-n", "2", "aZ"], "").0, 2);
    assert_eq!(freegroup(&["reduce"], "").0, 2);
}

#[test]
fn graph_from_stdin() {
    let (code, out) = freegroup(&["graph", "-n", "2", "baB"], "");
    assert_eq!(code, 0);
    assert_eq!(freegroup(&["iso", "-n", "2", "--based", "-", "tests/data/loop_a.txt"], &out), (1, "false\n".into()));
    let (code, t) = freegroup(&["type", "-n", "2", "baB"], "");
    assert_eq!(code, 0);
    assert_eq!(freegroup(&["iso", "-n", "2", "--based", "-", "tests/data/loop_a.txt"], &t), (0, "true\n".into()));
}
