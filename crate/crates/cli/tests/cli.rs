use std::process::{Command, Output};

use serde_json::Value;

fn alexlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_alexlab")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = alexlab(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn chen_free_two() {
    let v = json(&["chen", "--max-n", "6", "builtin:free(2)"]);
    assert_eq!(v["theta"], serde_json::json!([2, 1, 2, 3, 4, 5]));
    assert_eq!(v["schema"], "alexlab/1");
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["input"], "<x1,x2 |>");
}

#[test]
fn klein_member() {
    let v = json(&["cv-member", "--depth", "1", "--point", "free=[\u{2212}1];torsion=[1]", "builtin:klein_bottle"]);
    assert_eq!(v["member"], true);
    let v = json(&["cv-member", "--depth", "1", "--point", "free=[1];torsion=[-1]", "builtin:klein_bottle"]);
    assert_eq!(v["member"], false);
}

#[test]
fn abelianize_dihedral() {
    let v = json(&["abelianize", "<x1,x2 | x1^2, x2^2>"]);
    assert_eq!(v["rank"], 0);
    assert_eq!(v["torsion"], serde_json::json!([2, 2]));
}

#[test]
fn exit_codes() {
    assert_eq!(alexlab(&["abelianize", "<x1 | x1 x2>"]).status.code(), Some(2));
    assert_eq!(alexlab(&["abelianize", "<x1 | x1"]).status.code(), Some(2));
    assert_eq!(alexlab(&["chen", "--max-n", "99", "builtin:free(2)"]).status.code(), Some(3));
    assert_eq!(alexlab(&["resonance", "--depth", "1", "builtin:trefoil"]).status.code(), Some(3));
    assert_eq!(alexlab(&["abelianize", "builtin:nope"]).status.code(), Some(3));
    let out = alexlab(&["cv-ideal", "--depth", "1", "--flavor", "Y", "builtin:klein_bottle"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("precondition"));
}

#[test]
fn deterministic_output() {
    let args = ["check-extension", "--max-n", "4", "--prime", "2", "tree:star:3"];
    let a = alexlab(&args);
    let b = alexlab(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn file_input_and_table() {
    let dir = std::env::temp_dir().join(format!("alexlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("trefoil.txt");
    std::fs::write(&path, "# trefoil\n<x1,x2 | x1 x2 x1 = x2 x1 x2>\n").unwrap();
    let v = json(&["cv-ideal", "--depth", "1", "-f", path.to_str().unwrap()]);
    assert_eq!(v["ideal"]["generators"], serde_json::json!(["t^2 - t + 1"]));
    let out = alexlab(&["--format", "table", "finiteness", "--depth", "1", "-f", path.to_str().unwrap()]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("result") && l.ends_with("finite")));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn extension_verdicts() {
    let v = json(&["check-extension", "--max-n", "4", "--prime", "2", "klein_bottle"]);
    assert_eq!(v["verdict"], "LEQ");
    assert_eq!(v["ab_exact_split"], false);
    assert_eq!(v["modp"]["p_exact_split"], true);
    let v = json(&["check-extension", "--max-n", "6", "kernel: <a,b | >; quotient: <t | >; t: b -> a b a^-1"]);
    assert_eq!(v["verdict"], "EQUAL_FROM_2");
    assert_eq!(v["passed"], true);
}

#[test]
fn builtin_listing() {
    let v = json(&["builtin", "raag(path:3)"]);
    assert_eq!(v["one_formal"], true);
    assert_eq!(v["abelianization"]["rank"], 3);
    let v = json(&["builtin"]);
    assert!(v["builtins"].as_array().unwrap().len() >= 10);
}

#[test]
fn holonomy_and_resonance() {
    let v = json(&["holonomy-chen", "--max-n", "5", "builtin:raag(path:3)"]);
    assert_eq!(v["theta_bar"], serde_json::json!([3, 1, 2, 3, 4]));
    let v = json(&["resonance", "--depth", "1", "--point", "[1,1]", "builtin:raag(complete:2)"]);
    assert_eq!(v["member"], false);
    let v = json(&["chen-p", "--prime", "3", "--max-n", "4", "builtin:free(1)"]);
    assert_eq!(v["theta_p"], serde_json::json!([1, 1, 0, 0]));
}
