use std::process::{Command, Output};

use serde_json::Value;

fn mdop(cache: &std::path::Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mdop"))
        .env("MDOP_CACHE_DIR", cache)
        .args(args)
        .output()
        .unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn eval_prints_exact_value_and_fills_cache() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "eval", "--family", "meixner", "--d", "5/2", "--r", "2", "--alpha", "7/2", "--c", "1/3",
        "--m", "2,1", "--x", "1,1",
    ];
    let first = mdop(dir.path(), &args);
    assert_eq!(
        first.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&first.stderr)
    );
    assert!(std::fs::read_dir(dir.path()).unwrap().count() >= 1);
    let second = mdop(dir.path(), &args);
    assert_eq!(json(&first), json(&second));
    let v = json(&first);
    assert_eq!(v["params"]["alpha"], "7/2");
    assert!(mdop::rational::parse_rational(v["value"].as_str().unwrap()).is_ok());
}

#[test]
fn laguerre_takes_a_diagonal_point() {
    let dir = tempfile::tempdir().unwrap();
    let o = mdop(
        dir.path(),
        &[
            "eval", "--family", "laguerre", "--d", "2", "--r", "2", "--alpha", "3", "--m", "0,0",
            "--u", "1/2,3",
        ],
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["value"], "1");
}

#[test]
fn table_csv_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let base = [
        "table",
        "--family",
        "krawtchouk",
        "--d",
        "1",
        "--r",
        "2",
        "--p",
        "1/2",
        "--N",
        "1",
        "--max-degree",
        "2",
    ];
    let o = mdop(dir.path(), &base);
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("m,x,value"));
    assert_eq!(lines.next(), Some("|0,0|,|0,0|,1"));
    // partitions inside the 1x1 rectangle pair: 0,0 / 1,0 / 1,1
    assert_eq!(lines.count(), 8);

    let out = dir.path().join("t.json");
    let mut args = base.to_vec();
    args.extend(["--format", "json", "--out", out.to_str().unwrap()]);
    assert_eq!(mdop(dir.path(), &args).status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 9);
}

#[test]
fn verify_reports_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = mdop(
        dir.path(),
        &[
            "verify",
            "difference",
            "--family",
            "charlier",
            "--d",
            "5/2",
            "--r",
            "2",
            "--a",
            "2",
            "--max-weight",
            "2",
            "--out",
            out.to_str().unwrap(),
        ],
    );
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["identity"], "difference");
    assert_eq!(v["summary"]["passed"], v["summary"]["total"]);

    let o = mdop(
        dir.path(),
        &[
            "verify",
            "recurrence",
            "--family",
            "meixner",
            "--d",
            "3",
            "--r",
            "2",
            "--draws",
            "2",
            "--seed",
            "9",
            "--max-weight",
            "2",
        ],
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["seed"], 9);

    let o = mdop(
        dir.path(),
        &[
            "verify",
            "genfunc",
            "--family",
            "krawtchouk",
            "--d",
            "2",
            "--r",
            "2",
            "--p",
            "1/3",
            "--N",
            "2",
            "--degree",
            "3",
        ],
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["sign_convention"], "phi(z)");

    // a failing verification still writes its report
    let o = mdop(
        dir.path(),
        &[
            "verify",
            "orthogonality",
            "--family",
            "charlier",
            "--d",
            "2",
            "--r",
            "2",
            "--a",
            "2",
            "--weights",
            "4,6",
        ],
    );
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["identity"], "orthogonality-charlier");

    let o = mdop(
        dir.path(),
        &[
            "verify", "genfunc", "--family", "meixner", "--d", "2", "--r", "2", "--alpha", "1",
            "--c", "0",
        ],
    );
    assert_eq!(o.status.code(), Some(2));
    let o = mdop(dir.path(), &["verify", "nonsense", "--d", "2", "--r", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn conjecture_command() {
    let dir = tempfile::tempdir().unwrap();
    let o = mdop(
        dir.path(),
        &["conjecture", "--d", "5/2", "--r", "2", "--max-degree", "2"],
    );
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let v = json(&o);
    assert_eq!(v["classical"], false);
    assert_eq!(v["identity"], "conjecture-evidence");
}
