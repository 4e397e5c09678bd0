use std::process::Command;

fn run(dir: &std::path::Path, args: &[&str]) -> (Option<i32>, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ugeom"))
        .args(args)
        .current_dir(dir)
        .output()
        .unwrap();
    (
        out.status.code(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn z4() -> String {
    serde_json::to_string(&ugeom::algebra::cyclic_group(4).to_json()).unwrap()
}

#[test]
fn error_codes_and_exit_status() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(d.join("z4.json"), z4()).unwrap();
    std::fs::write(d.join("bad.json"), "{").unwrap();
    std::fs::write(
        d.join("unknown.json"),
        r#"{"vars":["x"],"equations":[{"lhs":"mul(x,x)","rhs":"zero"}]}"#,
    )
    .unwrap();

    let (code, out, _) = run(d, &["solve", "--algebra", "nope.json", "--system", "bad.json"]);
    assert_eq!(code, Some(1));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["error"]["code"], "missing_file");

    let (code, out, _) = run(d, &["solve", "--algebra", "z4.json", "--system", "bad.json"]);
    assert_eq!(code, Some(1));
    assert!(out.contains("\"malformed_json\""));

    let (code, out, _) = run(d, &["solve", "--algebra", "z4.json", "--system", "unknown.json"]);
    assert_eq!(code, Some(1));
    assert!(out.contains("\"code\":\"unknown_symbol\""), "{out}");

    let (code, _, err) = run(d, &["solve", "--jobs", "0"]);
    assert_eq!(code, Some(2));
    assert!(!err.is_empty());
}

#[test]
fn table_output() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("z4.json"), z4()).unwrap();
    let (code, out, _) = run(dir.path(), &["lattice", "--algebra", "z4.json", "--out", "table"]);
    assert_eq!(code, Some(0));
    assert!(out.starts_with("count"), "{out}");
    assert!(!out.contains('{'));
}
