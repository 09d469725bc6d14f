//! End-to-end runs of the `g2grade` binary.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn g2grade(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_g2grade"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn new_grading(dir: &TempDir, name: &str, args: &[&str]) -> PathBuf {
    let path = dir.path().join(name);
    let mut argv = vec!["grading", "new"];
    argv.extend_from_slice(args);
    argv.extend_from_slice(&["-o", p(&path)]);
    let out = g2grade(&argv);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    path
}

fn t8(dir: &TempDir) -> PathBuf {
    new_grading(
        dir,
        "t8.json",
        &[
            "--type", "8", "--group", "2,2", "--param", "g=[1,0]", "--param", "h=[0,1]",
        ],
    )
}

fn component_dims(file: &Path) -> Vec<usize> {
    let doc: Value = serde_json::from_str(&fs::read_to_string(file).unwrap()).unwrap();
    doc["components"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["basis"].as_array().unwrap().len())
        .collect()
}

#[test]
fn selfcheck_reports_the_core_facts() {
    let out = g2grade(&["selfcheck"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stderr);
    assert!(text.contains("64/64 table entries verified"), "{text}");
    assert!(text.contains("dim Der(C) = 14"), "{text}");
    assert_eq!(stdout_json(&out)["passed"], true);
}

#[test]
fn table_prints_all_rows() {
    let out = g2grade(&["table"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.lines().any(|l| l.trim_start().starts_with("v3 |")), "{text}");
}

#[test]
fn type5_over_z3() {
    let dir = TempDir::new().unwrap();
    let f = new_grading(
        &dir,
        "t5.json",
        &["--type", "5", "--group", "3", "--param", "g=[1]"],
    );
    assert_eq!(component_dims(&f), vec![2, 3, 3]);
    let verify = g2grade(&["grading", "verify", p(&f)]);
    assert_eq!(code(&verify), 0);
    assert_eq!(stdout_json(&verify)["passed"], true);
}

#[test]
fn type9_induces_seven_planes() {
    let dir = TempDir::new().unwrap();
    let f = new_grading(
        &dir,
        "t9.json",
        &[
            "--type",
            "9",
            "--group",
            "2,2,2",
            "--param",
            "g=[1,0,0]",
            "--param",
            "h=[0,1,0]",
            "--param",
            "k=[0,0,1]",
        ],
    );
    let l = dir.path().join("t9-l.json");
    assert_eq!(code(&g2grade(&["grading", "induce", p(&f), "-o", p(&l)])), 0);
    let doc: Value = serde_json::from_str(&fs::read_to_string(&l).unwrap()).unwrap();
    assert_eq!(doc["ambient"], "g2");
    let comps = doc["components"].as_array().unwrap();
    assert_eq!(comps[0]["label"], serde_json::json!([0, 0, 0]));
    assert!(comps[0]["basis"].as_array().unwrap().is_empty());
    let planes: Vec<usize> = comps[1..]
        .iter()
        .map(|c| c["basis"].as_array().unwrap().len())
        .collect();
    assert_eq!(planes, vec![2; 7]);
}

#[test]
fn type6_and_type8_are_not_isomorphic() {
    let dir = TempDir::new().unwrap();
    let t6 = new_grading(
        &dir,
        "t6.json",
        &["--type", "6", "--group", "4", "--param", "g=[1]"],
    );
    let t8 = t8(&dir);
    let out = g2grade(&["grading", "iso", p(&t6), p(&t8)]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["verdict"], "non_isomorphic");
}

#[test]
fn relabeled_copy_is_same_type() {
    let dir = TempDir::new().unwrap();
    let a = new_grading(
        &dir,
        "a.json",
        &["--type", "5", "--group", "3", "--param", "g=[1]"],
    );
    let b = new_grading(
        &dir,
        "b.json",
        &["--type", "5", "--group", "3", "--param", "g=[2]"],
    );
    let out = g2grade(&["grading", "iso", p(&a), p(&b)]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["verdict"], "same_type_recognized");
    assert_eq!(v["type"], 5);
}

#[test]
fn characters_of_z3() {
    let out = g2grade(&["chars", "--group", "3"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["characters"].as_array().unwrap().len(), 3);
}

#[test]
fn characters_of_the_trivial_group() {
    for text in ["trivial", ""] {
        let out = g2grade(&["chars", "--group", text]);
        assert_eq!(code(&out), 0, "{text:?}");
        assert_eq!(stdout_json(&out)["characters"].as_array().unwrap().len(), 1);
    }
}

#[test]
fn characters_act_diagonally_on_type8() {
    let dir = TempDir::new().unwrap();
    let f = t8(&dir);
    let out = g2grade(&["chars", "--group", "2,2", "--grading", p(&f)]);
    assert_eq!(code(&out), 0);
    let chars = stdout_json(&out)["characters"].as_array().unwrap().clone();
    assert_eq!(chars.len(), 4);
    for chi in chars {
        let m = chi["matrix"].as_array().unwrap();
        assert_eq!(m.len(), 8);
        for (i, row) in m.iter().enumerate() {
            for (j, x) in row.as_array().unwrap().iter().enumerate() {
                let x = x.as_str().unwrap();
                if i == j {
                    assert!(x == "1" || x == "-1", "diagonal entry {x}");
                } else {
                    assert_eq!(x, "0");
                }
            }
        }
    }
}

#[test]
fn classify_reports_normalized_parameters() {
    let dir = TempDir::new().unwrap();
    let f = new_grading(
        &dir,
        "t3.json",
        &["--type", "3", "--group", "7", "--param", "h=[3]"],
    );
    let out = g2grade(&["grading", "classify", p(&f)]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["type"], 3);
    assert_eq!(v["params"]["h"], serde_json::json!([1]));
    assert_eq!(v["matched_params"]["h"], serde_json::json!([3]));
}

#[test]
fn output_file_matches_stdout() {
    let dir = TempDir::new().unwrap();
    let f = t8(&dir);
    let report = dir.path().join("report.json");
    let direct = g2grade(&["grading", "verify", p(&f)]);
    assert_eq!(code(&g2grade(&["grading", "verify", p(&f), "-o", p(&report)])), 0);
    let written: Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(written, stdout_json(&direct));
}

#[test]
fn input_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("missing.json");
    assert_eq!(code(&g2grade(&["grading", "verify", p(&missing)])), 2);
    let junk = dir.path().join("junk.json");
    fs::write(&junk, "[1, 2").unwrap();
    assert_eq!(code(&g2grade(&["grading", "classify", p(&junk)])), 2);
    assert_eq!(
        code(&g2grade(&[
            "grading", "new", "--type", "3", "--group", "4", "--param", "h=[1]"
        ])),
        2
    );
    assert_eq!(
        code(&g2grade(&["grading", "new", "--type", "5", "--group", "3"])),
        2
    );
    assert_eq!(
        code(&g2grade(&[
            "grading", "new", "--type", "5", "--group", "3", "--param", "g=[1,2]"
        ])),
        2
    );
    assert_eq!(code(&g2grade(&["chars", "--group", "0"])), 2);
    assert_eq!(code(&g2grade(&["no-such-command"])), 2);
}

#[test]
fn induce_rejects_a_grading_of_l() {
    let dir = TempDir::new().unwrap();
    let f = t8(&dir);
    let l = dir.path().join("l.json");
    assert_eq!(code(&g2grade(&["grading", "induce", p(&f), "-o", p(&l)])), 0);
    assert_eq!(code(&g2grade(&["grading", "induce", p(&l)])), 2);
}

#[test]
fn broken_grading_exits_1() {
    let dir = TempDir::new().unwrap();
    let f = t8(&dir);
    let mut doc: Value = serde_json::from_str(&fs::read_to_string(&f).unwrap()).unwrap();
    // Exchange u1 (in C_g) with e2 (in C_e).
    let comps = doc["components"].as_array_mut().unwrap();
    let e2 = comps[0]["basis"][1].clone();
    let g_index = comps
        .iter()
        .position(|c| c["label"] == serde_json::json!([1, 0]))
        .unwrap();
    let u1 = comps[g_index]["basis"][0].clone();
    comps[0]["basis"][1] = u1;
    comps[g_index]["basis"][0] = e2;
    fs::write(&f, doc.to_string()).unwrap();
    let out = g2grade(&["grading", "verify", p(&f)]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout_json(&out)["passed"], false);
    assert_eq!(code(&g2grade(&["grading", "classify", p(&f)])), 1);
}
