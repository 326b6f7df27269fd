use std::process::Command;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_octic-pib"));
    c.env_remove("OCTIC_DIGITS");
    c
}

#[test]
fn solve_emits_json() {
    let out = bin()
        .args(["solve", "--a", "-9", "--b", "23", "--format", "json", "--no-timings"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let r = &v[0];
    assert_eq!(r["m"], -3);
    assert_eq!(r["status"], "solved");
    assert_eq!(r["theorem4_present"], true);
    assert_eq!(r["millis"], 0);
    assert_eq!(r["generators"], serde_json::json!([[0, 1, 0, 0, 0, 0, 0], [0, 4, 1, 0, 0, -1, 0]]));
    let step = &r["reduction_steps"][0];
    for key in ["i0", "A0", "H", "newA0"] {
        assert!(step.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn sweep_writes_table_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.txt");
    let status = bin()
        .args(["sweep", "--a-range=-1..1", "--b-range", "3..4", "--jobs", "1", "--out"])
        .arg(&path)
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("(-1,3,-3),"));
    assert!(text.contains("(1,3,-3),"));
    assert!(text.contains("[0, 1, -1, 0, 0, 0, 0]"));
    assert!(!text.contains("(0,"));
    assert!(text.contains("omitted"));
}

#[test]
fn verify_agrees_with_brute_force() {
    let out = bin()
        .args(["verify", "--a", "-1", "--b", "3", "--oracle-radius", "2"])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8_lossy(&out.stdout).contains("agree"));
}

#[test]
fn bad_arguments_are_rejected() {
    let out = bin().args(["sweep", "--a-range", "5..1"]).output().unwrap();
    assert!(!out.status.success());
    let out = bin().args(["solve", "--a", "1", "--b", "3", "--digits", "10"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("digits"));
    let out = bin().args(["verify", "--a", "1", "--b", "3", "--oracle-radius", "0"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn digits_env_is_honoured() {
    let out = bin()
        .env("OCTIC_DIGITS", "5")
        .args(["solve", "--a", "1", "--b", "3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn non_monogenic_instance_is_classified() {
    let out = bin()
        .args(["solve", "--a", "-1", "--b", "14", "--format", "json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v[0]["status"], "not_monogenic");
}
