use std::path::{Path, PathBuf};

use freegroup::cli::{run, Outcome};

pub struct Case {
    pub name: String,
    pub args: Vec<String>,
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn split_args(line: &str) -> Vec<String> {
    let mut args = Vec::new();
    let mut cur = String::new();
    let mut quoted = false;
    let mut started = false;
    for c in line.chars() {
        match c {
            '"' => {
                quoted = !quoted;
                started = true;
            }
            c if c.is_whitespace() && !quoted => {
                if started {
                    args.push(std::mem::take(&mut cur));
                    started = false;
                }
            }
            c => {
                cur.push(c);
                started = true;
            }
        }
    }
    if started {
        args.push(cur);
    }
    args
}

pub fn load_cases() -> Vec<Case> {
    let text = std::fs::read_to_string(golden_dir().join("cases.txt")).expect("cases.txt");
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let (name, rest) = l.split_once(':').expect("name: args");
            Case { name: name.trim().to_string(), args: split_args(rest) }
        })
        .collect()
}

pub fn render(o: &Outcome) -> String {
    format!("exit {}\n--- stdout\n{}--- stderr\n{}", o.code, o.stdout, o.stderr)
}

pub fn run_case(case: &Case) -> String {
    // paths in the cases are relative to the package root
    std::env::set_current_dir(env!("CARGO_MANIFEST_DIR")).unwrap();
    let argv = std::iter::once("freegroup".to_string()).chain(case.args.iter().cloned());
    render(&run(argv, ""))
}
