use std::process::{Command, Output};

fn frattini(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_frattini"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn classify_dihedral() {
    let o = frattini(&["classify", "--family", "dihedral", "--order", "8"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("S-group"), "{}", stdout(&o));
}

#[test]
fn classify_from_descriptor_file() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("g.txt");
    std::fs::write(&spec, "# example\nfamily=metacyclic\np=2\nalpha=5\nbeta=4\ngamma=5\nr=11\n").unwrap();
    let out = dir.path().join("report.json");
    let o = frattini(&[
        "classify",
        "--spec",
        spec.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v["verdict"], "S");
    assert_eq!(v["nilpotency_class"], 5);
    assert_eq!(v["schema_version"], 1);
}

#[test]
fn classify_is_deterministic() {
    let args = ["classify", "--descriptor", "family=quaternion,order=32", "--json"];
    assert_eq!(stdout(&frattini(&args)), stdout(&frattini(&args)));
}

#[test]
fn classify_error_codes() {
    assert_eq!(frattini(&["classify", "--family", "cyclic", "--p", "2", "--n", "4"]).status.code(), Some(3));
    assert_eq!(frattini(&["classify", "--family", "dihedral", "--order", "27"]).status.code(), Some(2));
    assert_eq!(frattini(&["classify", "--descriptor", "family=nonsense"]).status.code(), Some(2));
    assert_eq!(frattini(&["classify", "--bogus"]).status.code(), Some(2));
}

#[test]
fn search_counts_and_json() {
    let o = frattini(&["search", "--p", "2", "--type", "2,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains(": 0 hits"), "{}", stdout(&o));

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.json");
    let args = ["search", "--p", "2", "--type", "1,1,1,1", "--out", out.to_str().unwrap()];
    assert_eq!(frattini(&args).status.code(), Some(0));
    let first = std::fs::read_to_string(&out).unwrap();
    let v: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["hit_count"], 420);
    assert_eq!(v["automorphism_count"], 20160);
    assert_eq!(frattini(&args).status.code(), Some(0));
    assert_eq!(first, std::fs::read_to_string(&out).unwrap());
}

#[test]
fn search_guard_exceeded() {
    let o = frattini(&["search", "--p", "2", "--type", "1,1,1,1,1"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn verify_single_check() {
    let dir = tempfile::tempdir().unwrap();
    let o = frattini(&["verify-paper", "--only", "congruence", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("[PASS] congruence (11 subchecks"), "{}", stdout(&o));
    assert!(dir.path().join("suite.md").exists());
    let suite: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("suite.json")).unwrap()).unwrap();
    assert_eq!(suite["checks"].as_array().unwrap().len(), 11);
    let check: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("checks/congruence.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(check["subchecks"].as_array().unwrap().len(), 11);
}

#[test]
fn verify_unknown_check() {
    assert_eq!(frattini(&["verify-paper", "--only", "nope", "--out", "/tmp/x"]).status.code(), Some(2));
}
