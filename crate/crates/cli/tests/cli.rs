use std::path::Path;
use std::process::Command;

use serde_json::Value;

const MODEL: &str = r#"{"n_assets": 1, "shortable_count": 0,
 "nodes": [{"id": 0, "parent": null, "prices": ["1"]},
           {"id": 1, "parent": 0, "weight": "1/2", "prices": ["2"]},
           {"id": 2, "parent": 0, "weight": "1/2", "prices": ["1/2"]}]}"#;

fn run(dir: &Path, args: &[&str]) -> (bool, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_shortsale"))
        .current_dir(dir)
        .args(args)
        .output()
        .unwrap();
    (out.status.success(), String::from_utf8(out.stdout).unwrap())
}

fn json(dir: &Path, args: &[&str]) -> Value {
    let (ok, text) = run(dir, args);
    assert!(ok, "{args:?} failed");
    serde_json::from_str(&text).unwrap()
}

fn workdir(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("shortsale-cli-{name}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(dir.join("model.json"), MODEL).unwrap();
    std::fs::write(dir.join("digital.json"), r#"{"1": "0", "2": "1"}"#).unwrap();
    dir
}

#[test]
fn digital_option_reports() {
    let dir = workdir("digital");
    let r = json(
        &dir,
        &["check-arbitrage", "model.json", "--witness", "q.json"],
    );
    assert_eq!(r["status"], "NFLVR");
    assert!(dir.join("q.json").exists());

    let r = json(&dir, &["price", "model.json", "digital.json"]);
    assert_eq!(r["price"], "1/1");
    assert_eq!(r["attained_by_equivalent"], false);

    let r = json(
        &dir,
        &[
            "hedge",
            "model.json",
            "digital.json",
            "--strategy-out",
            "h.json",
        ],
    );
    assert_eq!(r["x"], "1/1");
    assert_eq!(r["consumption"]["1"], "1/1");
    assert!(dir.join("h.json").exists());

    let r = json(&dir, &["classify", "model.json", "digital.json"]);
    assert_eq!(r["condition_ii"], false);
    assert_eq!(r["attainable"], false);
}

#[test]
fn numeraire_and_experiments() {
    let dir = workdir("numeraire");
    std::fs::write(dir.join("v.json"), r#"{"0": "1", "1": "2", "2": "1/2"}"#).unwrap();
    let r = json(
        &dir,
        &["numeraire", "model.json", "v.json", "--check", "na"],
    );
    assert_eq!(r["agree"], true);
    std::fs::write(dir.join("h3.json"), r#"{"0": ["1", "0", "0"]}"#).unwrap();
    let r = json(
        &dir,
        &[
            "numeraire",
            "model.json",
            "v.json",
            "--check",
            "transport",
            "--strategy",
            "h3.json",
        ],
    );
    assert_eq!(r["agree"], true);

    let (ok, csv) = run(
        &dir,
        &[
            "experiment",
            "lattice",
            "--kind",
            "put",
            "--up",
            "2",
            "--down",
            "1/2",
            "--depths",
            "4",
        ],
    );
    assert!(ok);
    assert!(csv.lines().nth(1).unwrap().contains(",15/16,"));
    let r = json(
        &dir,
        &["experiment", "bs", "--seed", "3", "--csv", "bs.csv"],
    );
    assert_eq!(r["rows"], 5);
    let text = std::fs::read_to_string(dir.join("bs.csv")).unwrap();
    assert!(text.lines().nth(1).unwrap().starts_with("3,"));
}

#[test]
fn bad_input_fails() {
    let dir = workdir("bad");
    std::fs::write(dir.join("neg.json"), r#"{"1": "-1", "2": "1"}"#).unwrap();
    assert!(!run(&dir, &["price", "model.json", "neg.json"]).0);
    std::fs::write(dir.join("bad.json"), r#"{"1": "0.5", "2": "1"}"#).unwrap();
    assert!(!run(&dir, &["price", "model.json", "bad.json"]).0);
    assert!(!run(&dir, &["experiment", "bs", "--sigma", "0"]).0);
}
