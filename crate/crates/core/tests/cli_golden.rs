mod common;

use common::{golden_dir, load_cases, run_case};

#[test]
fn golden_outputs() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut failures = Vec::new();
    for case in load_cases() {
        let got = run_case(&case);
        let path = golden_dir().join(format!("{}.out", case.name));
        if update {
            std::fs::write(&path, &got).unwrap();
            continue;
        }
        let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
        if got != want {
            failures.push(format!("{}:\n--- want\n{want}--- got\n{got}", case.name));
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn every_case_has_a_golden_file() {
    let names: std::collections::BTreeSet<String> = load_cases().into_iter().map(|c| c.name).collect();
    for entry in std::fs::read_dir(golden_dir()).unwrap() {
        let p = entry.unwrap().path();
        if p.extension().is_some_and(|e| e == "out") {
            let stem = p.file_stem().unwrap().to_string_lossy().to_string();
            assert!(names.contains(&stem), "stale golden file {stem}");
        }
    }
}
