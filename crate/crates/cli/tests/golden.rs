//! Byte-for-byte comparison against the checked-in reports in `golden/`.
//! Set `UPDATE_GOLDEN=1` to rewrite them after an intended change.

use std::path::PathBuf;
use std::process::Command;

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

struct Case {
    name: String,
    args: Vec<String>,
    exit: i32,
}

fn cases() -> Vec<Case> {
    let text = std::fs::read_to_string(golden_dir().join("cases.txt")).unwrap();
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let cols: Vec<&str> = l.split('|').map(str::trim).collect();
            Case {
                name: cols[0].to_string(),
                args: cols[1].split_whitespace().map(String::from).collect(),
                exit: cols[2].parse().unwrap(),
            }
        })
        .collect()
}

#[test]
fn golden_reports() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut mismatched = Vec::new();
    for case in cases() {
        let out = Command::new(env!("CARGO_BIN_EXE_origami"))
            .args(&case.args)
            .env_remove("ORIGAMI_MAX_POINTS")
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(case.exit), "{}: {}", case.name, String::from_utf8_lossy(&out.stderr));
        let path = golden_dir().join(format!("{}.json", case.name));
        if update {
            std::fs::write(&path, &out.stdout).unwrap();
            continue;
        }
        let expected = std::fs::read(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
        if expected != out.stdout {
            mismatched.push(case.name);
        }
    }
    assert!(mismatched.is_empty(), "output differs from golden files: {mismatched:?}");
}
