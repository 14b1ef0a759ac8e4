//! Each `golden/NAME.args` holds one argument per line. Running the binary
//! on it from the golden directory must reproduce `NAME.stdout` byte for
//! byte and exit with the status in `NAME.status`.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn run(dir: &Path, args: &[&str]) -> (Vec<u8>, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_brauer"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("spawn brauer");
    (out.stdout, out.status.code().expect("exit code"))
}

#[test]
fn golden_cases() {
    let dir = golden_dir();
    let mut cases: Vec<PathBuf> = fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "args"))
        .collect();
    cases.sort();
    assert!(cases.len() >= 10, "golden directory looks empty");
    for case in cases {
        let text = fs::read_to_string(&case).unwrap();
        let args: Vec<&str> = text.lines().collect();
        let stdout = fs::read(case.with_extension("stdout")).unwrap();
        let status: i32 = fs::read_to_string(case.with_extension("status"))
            .unwrap()
            .trim()
            .parse()
            .unwrap();
        let (got, code) = run(&dir, &args);
        let name = case.file_stem().unwrap().to_string_lossy();
        assert_eq!(code, status, "{name}: exit status");
        assert_eq!(
            String::from_utf8_lossy(&got),
            String::from_utf8_lossy(&stdout),
            "{name}: stdout"
        );
    }
}

#[test]
fn usage_errors_go_to_stderr() {
    let out = Command::new(env!("CARGO_BIN_EXE_brauer"))
        .args(["inv", "padic", "--p", "5"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("--f"));
}

#[test]
fn emitted_algebras_round_trip() {
    let dir = std::env::temp_dir().join(format!("brauer-roundtrip-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let emits: [&[&str]; 6] = [
        &["algebra", "emit", "hamilton"],
        &["algebra", "emit", "quaternion", "-2/3", "5"],
        &["algebra", "emit", "matrix", "3"],
        &["algebra", "emit", "matrix", "2", "--field", "Fp:7"],
        &["algebra", "emit", "quaternion", "2", "3", "--field", "Qp:5:10"],
        &["algebra", "emit", "quaternion", "-1", "-1", "--field", "Qp:2:8"],
    ];
    for (k, args) in emits.iter().enumerate() {
        let (emitted, code) = run(&dir, args);
        assert_eq!(code, 0, "{args:?}");
        let file = dir.join(format!("a{k}.json"));
        fs::write(&file, &emitted).unwrap();
        let path = file.to_str().unwrap();
        let (normalized, code) = run(&dir, &["algebra", "normalize", path]);
        assert_eq!(code, 0);
        assert_eq!(normalized, emitted, "{args:?} is not stable under normalize");
        let (report, code) = run(&dir, &["algebra", "check", path]);
        assert_eq!(code, 0);
        assert!(String::from_utf8_lossy(&report).contains("central simple: yes"), "{args:?}");
    }
    fs::remove_dir_all(&dir).ok();
}
