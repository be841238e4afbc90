use std::process::{Command, Output};

fn ringlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ringlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn parse_prints_normal_form() {
    let o = ringlab(&["parse", "Z/2[x]/(x^4+x)"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "Z/2[x]/(x^4 + x)\n16 elements\n");
}

#[test]
fn syntax_errors_exit_3() {
    let o = ringlab(&["parse", "Z/2 * GF("]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1, column 10"));
}

#[test]
fn usage_errors_exit_3() {
    assert_eq!(ringlab(&["verify", "--suite", "nope"]).status.code(), Some(3));
    assert_eq!(ringlab(&["reproduce", "--example", "9.9"]).status.code(), Some(3));
    assert_eq!(ringlab(&["reproduce", "--example", "7.4", "--p", "9"]).status.code(), Some(3));
    assert_eq!(ringlab(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(ringlab(&["analyze", "--ambient", "Z/4", "--sub-gens", "q"]).status.code(), Some(3));
}

#[test]
fn help_exits_0() {
    assert!(ringlab(&["--help"]).status.success());
}

#[test]
fn analyze_writes_json() {
    let dir = std::env::temp_dir().join(format!("ringlab-analyze-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let o = ringlab(&[
        "analyze",
        "--ambient",
        "Z/2[x]/(x^2)",
        "--sub-gens",
        "",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["sl"], false);
    assert_eq!(v["seminormal"], false);
    assert_eq!(v["sub_size"], 2);
    assert_eq!(v["ambient_size"], 4);
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn lattice_lists_members() {
    let o = ringlab(&["lattice", "--ambient", "Z/2 * Z/2 * Z/2", "--sub-gens", ""]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["members"].as_array().unwrap().len(), 5);
    let o = ringlab(&["lattice", "--ambient", "Z/2 * Z/2 * Z/2", "--sub-gens", "", "--cap", "4"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("cap-skipped"));
}

#[test]
fn cohn_over_the_radical() {
    let o = ringlab(&["cohn", "--ring", "Z/4", "--ideal", "J", "--degree", "2"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for f in v.as_array().unwrap() {
        assert_eq!(f["verdict"], "confirmed", "{f}");
    }
    let o = ringlab(&["cohn", "--ring", "Z/6", "--degree", "2"]);
    assert!(o.status.success());
}

#[test]
fn cohn_rejects_non_semiprime_ideal() {
    let o = ringlab(&["cohn", "--ring", "Z/8", "--ideal", "4", "--degree", "2"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("semiprime"));
}

#[test]
fn verify_examples_suite() {
    let o = ringlab(&["verify", "--suite", "examples", "--seed", "3"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for key in ["tool_version", "seed", "caps", "findings"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["seed"], 3);
}

#[test]
fn reproduce_cyclotomic_and_padding() {
    let o = ringlab(&["reproduce", "--example", "7.4", "--p", "3"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("SL: true"));
    let o = ringlab(&["reproduce", "--example", "7.6", "--ring", "Z/4", "--n", "2", "--m", "3"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("SL: true"));
    let o = ringlab(&["reproduce", "--example", "7.6", "--n", "2", "--m", "2"]);
    assert_eq!(o.status.code(), Some(3));
    let o = ringlab(&["reproduce", "--example", "7.5", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["embeddings"].as_array().unwrap().len(), 2);
}
