use std::path::Path;
use std::process::{Command, Output};

const SCRIPT: &str = "group G = Z^2
subgroup A < G = span [[1,0]]
subgroup B < G = span [[0,1]]
coset C1 = B + (1,0)
set Y = A | C1
decompose Y
compare Y A
";

fn run(dir: &Path, args: &[&str], env: Option<(&str, &str)>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_cosetkit"));
    cmd.current_dir(dir).args(args).env_remove("COSETKIT_WINDOW_RADIUS");
    if let Some((k, v)) = env {
        cmd.env(k, v);
    }
    cmd.output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn certificates_are_byte_identical_and_reverify() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("s.ck"), SCRIPT).unwrap();
    let mut outs = Vec::new();
    let mut certs = Vec::new();
    for run_dir in ["one", "two"] {
        std::fs::create_dir(dir.path().join(run_dir)).unwrap();
        let o = run(dir.path(), &["s.ck", "--format", "json", "--out-dir", run_dir], None);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        outs.push(stdout(&o).replace(run_dir, "DIR"));
        certs.push(std::fs::read(dir.path().join(run_dir).join("Y.cert.json")).unwrap());
    }
    assert_eq!(outs[0], outs[1]);
    assert_eq!(certs[0], certs[1]);
    let o = run(dir.path(), &["--check", "one/Y.cert.json"], None);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("accepted"));
}

#[test]
fn tampered_certificate_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("s.ck"), SCRIPT).unwrap();
    assert_eq!(run(dir.path(), &["s.ck"], None).status.code(), Some(0));
    let path = dir.path().join("Y.cert.json");
    let text = std::fs::read_to_string(&path).unwrap();
    // turn the first basis vector (1,0) into (2,0)
    let tampered = text.replacen("\"basis\": [\n        [\n          \"1\"", "\"basis\": [\n        [\n          \"2\"", 1);
    assert_ne!(tampered, text);
    std::fs::write(&path, tampered).unwrap();
    let o = run(dir.path(), &["--check", "Y.cert.json"], None);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
}

#[test]
fn radius_flag_beats_environment() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("s.ck"), SCRIPT).unwrap();
    let radius_of = |o: &Output| -> u64 {
        let last = stdout(o).lines().last().unwrap().to_string();
        let v: serde_json::Value = serde_json::from_str(&last).unwrap();
        v["radius"].as_u64().unwrap()
    };
    let env = Some(("COSETKIT_WINDOW_RADIUS", "7"));
    assert_eq!(radius_of(&run(dir.path(), &["s.ck", "--format", "json"], None)), 20);
    assert_eq!(radius_of(&run(dir.path(), &["s.ck", "--format", "json"], env)), 7);
    assert_eq!(radius_of(&run(dir.path(), &["s.ck", "--format", "json", "--window-radius", "3"], env)), 3);
}

#[test]
fn parse_errors_and_empty_scripts() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.ck"), "group G = Z^2\nsubgroup A < G = span [[1,0]\n").unwrap();
    let o = run(dir.path(), &["bad.ck"], None);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("2:23: unclosed '['"));

    std::fs::write(dir.path().join("empty.ck"), "").unwrap();
    let o = run(dir.path(), &["empty.ck"], None);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty() && o.stderr.is_empty());
}
