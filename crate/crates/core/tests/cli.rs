use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn parwall(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_parwall")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = parwall(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn golden_documents() {
    let cases: [(&str, &[&str]); 5] = [
        ("walls_5_2.json", &["walls", "-r", "5", "-d", "2", "--points", "2"]),
        ("first_wall_7_3.json", &["first-wall", "-r", "7", "-d", "3"]),
        ("diagram_5_2.svg", &["diagram", "-r", "5", "-d", "2"]),
        ("acm_5_2_2.json", &["acm", "-r", "5", "-d", "2", "-g", "2"]),
        ("embed_2_1_4.json", &["embed", "-r", "2", "-d", "1", "-g", "4"]),
    ];
    for (file, args) in cases {
        assert_eq!(stdout(args), golden(file), "{file}");
    }
}

#[test]
fn every_subcommand_is_deterministic_and_round_trips() {
    let runs: [&[&str]; 14] = [
        &["info", "-r", "5", "-d", "2", "-g", "3"],
        &["walls", "-r", "7", "-d", "3"],
        &["walls", "-r", "7", "-d", "3", "--points", "1"],
        &["first-wall", "-r", "3", "-d", "1"],
        &["chambers", "-r", "5", "-d", "2"],
        &["chambers", "-r", "5", "-d", "2", "--weight", "1/100,1/100"],
        &["path", "-r", "5", "-d", "2", "--from", "1/100,1/100", "--to", "99/100,1/100"],
        &["cones", "-r", "5", "-d", "2"],
        &["cones", "-r", "5", "-d", "2", "--points", "1", "--side", "y"],
        &["divisor", "-r", "5", "-d", "2", "--weight", "1/3,0"],
        &["boundary", "-r", "5", "-d", "2"],
        &["vanishing", "-r", "5", "-d", "2", "-g", "2", "--cell", "4,0", "--table"],
        &["acm", "-r", "5", "-d", "2", "-g", "2", "--power", "4"],
        &["embed", "-r", "5", "-d", "2", "-g", "7"],
    ];
    for args in runs {
        let a = stdout(args);
        assert_eq!(a, stdout(args), "{args:?}");
        let v: Value = serde_json::from_str(&a).unwrap();
        let mut again = serde_json::to_string_pretty(&v).unwrap();
        again.push('\n');
        assert_eq!(again, a, "{args:?}");
        let text = [args, &["--format", "text"]].concat();
        assert_eq!(stdout(&text), stdout(&text));
    }
}

#[test]
fn wall_records() {
    let v: Value = serde_json::from_str(&stdout(&["walls", "-r", "5", "-d", "2", "--points", "2", "--format", "json"])).unwrap();
    let walls = v["walls"].as_array().unwrap();
    assert_eq!(walls.len(), 7);
    let multiple: Vec<&Value> = walls.iter().filter(|w| w["multiple"] == json!(true)).collect();
    assert_eq!(multiple.len(), 1);
    assert_eq!(multiple[0]["triple"], json!([2, 1, [2, 0]]));
    // rationals are strings
    assert_eq!(walls[0]["segment"], json!([["0", "1/2"], ["1", "1/4"]]));
}

#[test]
fn first_wall_fields() {
    let v: Value = serde_json::from_str(&stdout(&["first-wall", "-r", "7", "-d", "3"])).unwrap();
    assert_eq!(v["value"], json!("1/5"));
    assert_eq!(v["destabilizer_rank_unit"], json!(5));
    assert_eq!(v["destabilizer_degree_unit"], json!(2));
    let v: Value = serde_json::from_str(&stdout(&["first-wall", "-r", "4", "-d", "1"])).unwrap();
    assert_eq!((v["value"].clone(), v["hecke_boundary"].clone()), (json!("1"), json!(true)));
}

#[test]
fn exit_code_contract() {
    let code = |args: &[&str]| parwall(args).status.code();
    assert_eq!(code(&["walls", "-r", "6", "-d", "4"]), Some(2));
    assert_eq!(code(&["walls", "-r", "1", "-d", "1"]), Some(2));
    assert_eq!(code(&["info", "-r", "5", "-d", "2", "-g", "1"]), Some(2));
    assert_eq!(code(&["divisor", "-r", "5", "-d", "2", "--weight", "3/2,0"]), Some(2));
    assert_eq!(code(&["diagram", "-r", "5", "-d", "2", "--points", "1"]), Some(2));
    assert_eq!(code(&["chambers", "-r", "5", "-d", "2", "--weight", "0,1/2"]), Some(3));
    assert_eq!(code(&["path", "-r", "5", "-d", "2", "--from", "2/3,1/100", "--to", "2/3,99/100"]), Some(3));
    assert_eq!(code(&["nope"]), Some(64));
    assert_eq!(code(&["walls", "-r", "5"]), Some(64));
    assert_eq!(code(&["walls", "-r", "5", "-d", "2", "--points", "3"]), Some(64));
    assert_eq!(code(&["walls", "-r", "5", "-d", "2", "--format", "yaml"]), Some(64));
    let out = parwall(&["nope"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
    let help = stdout(&["--help"]);
    assert!(help.contains("64") && help.contains("Exit codes"));
}

#[test]
fn out_file() {
    let dir = std::env::temp_dir().join(format!("parwall-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("fig.svg");
    let out = stdout(&["diagram", "-r", "5", "-d", "2", "--out", path.to_str().unwrap()]);
    assert!(out.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), golden("diagram_5_2.svg"));
    std::fs::remove_dir_all(dir).unwrap();
}
