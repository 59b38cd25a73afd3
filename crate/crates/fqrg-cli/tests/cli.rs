//! Command-line behaviour: exit codes, output shapes, determinism.

use std::process::Command;

fn fqrg(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_fqrg"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn algebras_n3_lists_seven_labelled_rows() {
    let out = fqrg(&["algebras", "--n", "3"]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = stdout.lines().collect();
    assert_eq!(rows.len(), 7);
    for label in ["A", "B", "C", "D", "E", "F", "G"] {
        assert!(
            stdout.contains(&format!("algebra {label}:")),
            "missing label {label} in:\n{stdout}"
        );
    }
}

#[test]
fn algebras_n3_commutative_lists_six() {
    let out = fqrg(&["algebras", "--n", "3", "--commutative"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 6);
}

#[test]
fn algebras_n1_lists_one() {
    let out = fqrg(&["algebras", "--n", "1"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 1);
}

#[test]
fn invalid_n_is_a_usage_error() {
    let out = fqrg(&["algebras", "--n", "9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn classify_with_no_calculi_exits_3() {
    let out = fqrg(&["classify", "A", "--m", "1", "--mode", "qlc"]);
    assert_eq!(out.status.code(), Some(3));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("no calculi"));
}

#[test]
fn classify_d_beta_1_gives_four_results() {
    let out = fqrg(&["classify", "D", "--m", "2", "--metric", "beta=1", "--mode", "qlc"]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.lines().count(), 4);
    for id in ["D.1.1", "D.1.2", "D.1.3", "D.1.4"] {
        assert!(stdout.contains(id), "missing {id}");
    }
}

#[test]
fn classify_workers_do_not_change_output() {
    let run = |w: &str| {
        let out = fqrg(&[
            "classify", "F", "--m", "2", "--metric", "g_F.2", "--mode", "qlc", "--workers", w,
            "--json",
        ]);
        assert!(out.status.success());
        out.stdout
    };
    assert_eq!(run("1"), run("7"));
}

#[test]
fn manifest_reports_identical_result_hash_across_workers() {
    let hash = |w: &str| {
        let out = fqrg(&[
            "classify", "D", "--m", "2", "--metric", "g_D.2", "--mode", "qlc", "--workers", w,
        ]);
        assert!(out.status.success());
        let stderr = String::from_utf8(out.stderr).unwrap();
        let manifest: serde_json::Value =
            serde_json::from_str(stderr.lines().last().unwrap()).unwrap();
        assert_eq!(manifest["schema"], 1);
        manifest["result_hash"].as_str().unwrap().to_string()
    };
    assert_eq!(hash("1"), hash("5"));
}

#[test]
fn reproduce_table1_passes() {
    let out = fqrg(&["reproduce", "table1"]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("table1: PASS"));
}

#[test]
fn reproduce_table5_passes() {
    let out = fqrg(&["reproduce", "table5"]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("table5: PASS"));
}

#[test]
fn reproduce_unknown_table_is_a_usage_error() {
    let out = fqrg(&["reproduce", "table99"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn fixtures_list_inventories_the_catalog() {
    let out = fqrg(&["fixtures", "list"]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("g_D.1"));
    assert!(stdout.contains("table15"));
}

#[test]
fn geometry_emits_schema_tagged_json() {
    let out = fqrg(&[
        "geometry", "g_D.1", "--connection", "D.1.1", "--lift", "0,1,0", "--json",
    ]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    let doc: serde_json::Value = serde_json::from_str(stdout.lines().next().unwrap()).unwrap();
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["flags"]["ricci_qsym"], true);
    assert_eq!(doc["scalar"], serde_json::json!([1, 0, 0]));
}
