use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn kstab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kstab"))
        .args(args)
        .env_remove("KSTAB_REGISTRY")
        .output()
        .expect("kstab runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

const G2_HALF: &str = r#"{
  "root_system": [{"type": "G2", "rank": 2, "scale": "1"}],
  "chi": ["12", "6"],
  "sigma": ["0", "2"],
  "interval": {"lower": "0", "upper": "1/2"},
  "kind": "non-horospherical"
}"#;

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn check_exit_codes_follow_the_verdict() {
    let stable = kstab(&["check", "g2-facet", "--param", "1/2"]);
    assert_eq!(stable.status.code(), Some(0), "{}", stderr(&stable));
    assert!(stdout(&stable).contains("verdict: stable"));
    assert!(stdout(&stable).contains("futaki L(t): 2438361/104440"));

    let unstable = kstab(&["check", "g2-facet", "--param", "0.98"]);
    assert_eq!(unstable.status.code(), Some(1));
    assert!(stdout(&unstable).contains("verdict: unstable"));
}

#[test]
fn check_from_a_file_as_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "g2.json", G2_HALF);
    let out = kstab(&["--json", "check", &path]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "stable");
    assert_eq!(v["a"], "21245/4476");
    assert_eq!(v["interval"]["upper"], "1/2");
}

#[test]
fn sampling_reports_the_destabilizer() {
    let out = kstab(&["--json", "check", "g2-facet", "--param", "49/50", "--samples", "20", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["sampling"]["samples"], 20);
    assert_eq!(v["sampling"]["identity_futaki"], "-1679535093458545281/824973642578125000");
}

#[test]
fn ke_barycenter_is_reported() {
    let out = kstab(&["--json", "check", "x1"]);
    assert_eq!(json(&out)["ke_barycenter"]["value"], "24057/56");
}

#[test]
fn threshold_and_curve() {
    let dir = tempfile::tempdir().unwrap();
    let curve = dir.path().join("curve.csv");
    let out = kstab(&["threshold", "g2-family", "--emit-curve", curve.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("s0 ≈ 0.97202"), "{}", stdout(&out));
    let csv = std::fs::read_to_string(&curve).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("s,R"));
    assert_eq!(lines.count(), 201);

    let v = json(&kstab(&["--json", "threshold", "x1-tilde-family", "-p", "1e-8"]));
    assert_eq!(v["outcome"], "stable_on_entire_range");
    let v = json(&kstab(&["--json", "threshold", "torus-family"]));
    assert_eq!(v["outcome"], "degenerate");
}

#[test]
fn functional_evaluates_a_test_function() {
    let v = json(&kstab(&["--json", "functional", "g2-facet", "--param", "1/2", "--g", "0,1/2:0,1/2"]));
    assert_eq!(v["L"], "2438361/104440");
    assert_eq!(v["admissible"], true);

    let concave = kstab(&["functional", "g2-facet", "--param", "1/2", "--g", "0,1/4,1/2:0,1,1"]);
    assert_eq!(concave.status.code(), Some(2));
    assert!(stderr(&concave).contains("not convex"));
}

#[test]
fn examples_list_and_show() {
    let list = stdout(&kstab(&["example", "--list"]));
    for name in ["g2-facet", "x1", "x1-tilde", "x2", "x2-tilde", "torus-p1"] {
        assert!(list.lines().any(|l| l.split_whitespace().next() == Some(name)), "{name} missing");
    }
    let shown = kstab(&["example", "x1"]);
    assert_eq!(shown.status.code(), Some(0));
    assert!(stdout(&shown).contains("\"ke_weight\""));
}

#[test]
fn input_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();

    let unknown = kstab(&["check", "e8-nowhere"]);
    assert_eq!(unknown.status.code(), Some(2));
    assert!(stderr(&unknown).contains("g2-facet"), "{}", stderr(&unknown));

    let bad_chi = write(dir.path(), "bad.json", &G2_HALF.replace(r#"["12", "6"]"#, r#"["12", "six"]"#));
    let out = kstab(&["check", &bad_chi]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("chi[1]"), "{}", stderr(&out));

    let truncated = write(dir.path(), "cut.json", &G2_HALF[..40]);
    let out = kstab(&["check", &truncated]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("malformed JSON"), "{}", stderr(&out));

    let out = kstab(&["check", "g2-facet"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--param"));

    let out = kstab(&["threshold", "torus-p1"]);
    assert_eq!(out.status.code(), Some(2));

    let out = kstab(&["check", "g2-facet", "--param", "3/2"]);
    assert_eq!(out.status.code(), Some(2));

    assert_eq!(kstab(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(kstab(&["--help"]).status.code(), Some(0));
}

#[test]
fn registry_override_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let entry = serde_json::json!({
        "name": "g2-half",
        "description": "G2 facet at s = 1/2",
        "document": serde_json::from_str::<Value>(G2_HALF).unwrap(),
        "expected": [{"check": "futaki", "value": "2438361/104440", "note": "reference value"}],
    });
    write(dir.path(), "g2-half.json", &entry.to_string());
    let out = Command::new(env!("CARGO_BIN_EXE_kstab"))
        .args(["example", "--verify-all"])
        .env("KSTAB_REGISTRY", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}{}", stdout(&out), stderr(&out));
    assert!(stdout(&out).contains("1 checks, 1 passed, 0 failed"));
}
