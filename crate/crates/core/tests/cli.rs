use std::process::{Command, Output};

use block_functors::multiplicity::DecompositionTable;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_block-functors"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn decompose_json_round_trips() {
    let o = run(&["decompose", "dihedral:3:F11"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let table = DecompositionTable::from_json(&text).unwrap();
    assert_eq!(table.to_json(), text.trim_end());
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let first = &v["entries"][0];
    assert_eq!(first["L"]["type"], "trivial");
    assert_eq!(first["m"], 3);
}

#[test]
fn output_is_deterministic() {
    let a = stdout(&run(&["decompose", "semidihedral:5:F10", "--format", "csv"]));
    let b = stdout(&run(&["decompose", "semidihedral:5:F10", "--format", "csv"]));
    assert_eq!(a, b);
    assert!(a.starts_with("l_type,l_order,u,v_kind,v_exponents,m\n"));
}

#[test]
fn equivalent_exit_codes() {
    assert_eq!(run(&["equivalent", "dihedral:4:F01", "dihedral:4:F01"]).status.code(), Some(0));
    let o = run(&["equivalent", "semidihedral:5:F01", "semidihedral:5:F10"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["equivalent"], false);
    assert!(v["first_difference"].is_object());
}

#[test]
fn usage_errors_exit_two() {
    let o = run(&["decompose", "quaternion:3:F00"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("deferred"));
    assert_eq!(run(&["decompose", "dihedral:4:F10"]).status.code(), Some(2));
    assert_eq!(run(&["decompose", "cyclic:4:F00"]).status.code(), Some(2));
    assert_eq!(run(&["decompose", "dihedral:4"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn taxonomy_and_fusion_render() {
    let o = run(&["taxonomy", "dihedral:4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(!v["classes"].as_array().unwrap().is_empty());
    let o = run(&["fusion", "quaternion:4:F11"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("S3"));
}

#[test]
fn verify_small_range_is_clean() {
    let o = run(&["verify", "--max-n", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}
