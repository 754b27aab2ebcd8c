use std::path::Path;
use std::process::{Command, Output};
use std::sync::Arc;

use ncfourier::fourier::function_to_json;
use ncfourier::group::{permutation_rank, subgroup_from_generators};
use ncfourier::{Complex64, GroupFunction, GroupSpec};
use serde_json::Value;

fn ncfourier(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncfourier"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_function(dir: &Path, name: &str, f: &GroupFunction) -> String {
    let path = dir.join(name);
    std::fs::write(&path, function_to_json(f).unwrap()).unwrap();
    path.to_str().unwrap().to_string()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn transform_transposition_indicator_on_s3() {
    let dir = tempfile::tempdir().unwrap();
    let g = Arc::new("S3".parse::<GroupSpec>().unwrap().build().unwrap());
    let h = subgroup_from_generators(&g, &[permutation_rank(&[1, 0, 2])]).unwrap();
    let path = write_function(dir.path(), "chi_H.json", &GroupFunction::subgroup_indicator(&h));

    let out = ncfourier(&["transform", "--group", "S3", "--in", &path]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["count"], 3);
    let m = &v["metrics"];
    assert!((m["mu_supp"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-15);
    assert_eq!(m["rank_sum"], 3);
    assert_eq!(m["dsq_sum"], 5);
    assert_eq!(m["d1_sum"], 3);
}

#[test]
fn transform_constant_on_c2_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let g = Arc::new("C2".parse::<GroupSpec>().unwrap().build().unwrap());
    let path = write_function(
        dir.path(),
        "const1.json",
        &GroupFunction::constant(g, Complex64::new(1.0, 0.0)),
    );
    let out_path = dir.path().join("spectrum.json");

    let out = ncfourier(&[
        "transform",
        "--group",
        "C2",
        "--in",
        &path,
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(out_path).unwrap()).unwrap();
    let blocks: Vec<&Value> = v["blocks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|b| &b["matrix"][0])
        .collect();
    assert_eq!(blocks[0], &serde_json::json!([1.0, 0.0]));
    assert_eq!(blocks[1][0].as_f64().unwrap().abs(), 0.0);
}

#[test]
fn transform_csv_lists_every_block_entry() {
    let dir = tempfile::tempdir().unwrap();
    let g = Arc::new("S3".parse::<GroupSpec>().unwrap().build().unwrap());
    let path = write_function(dir.path(), "delta.json", &GroupFunction::delta(g, 0).unwrap());
    let out = ncfourier(&["transform", "--group", "S3", "--in", &path, "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    assert_eq!(
        reader.headers().unwrap(),
        vec!["irrep", "dim", "row", "col", "re", "im"]
    );
    assert_eq!(reader.records().count(), 1 + 4 + 1);
}

#[test]
fn transform_rejects_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let out = ncfourier(&["transform", "--group", "S3", "--in", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());

    let g = Arc::new("C3".parse::<GroupSpec>().unwrap().build().unwrap());
    let other = write_function(dir.path(), "c3.json", &GroupFunction::zero(g));
    assert_eq!(
        ncfourier(&["transform", "--group", "S3", "--in", &other]).status.code(),
        Some(2)
    );
    assert_eq!(ncfourier(&["transform", "--group", "S3"]).status.code(), Some(2));
    let missing = dir.path().join("missing.json");
    assert_eq!(
        ncfourier(&["transform", "--group", "S3", "--in", missing.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn subgroups_of_s3() {
    let out = ncfourier(&["subgroups", "--group", "S3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let rows = v["subgroups"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    let a3 = rows.iter().find(|r| r["size"] == 3).unwrap();
    assert_eq!(a3["normal"], true);
    assert_eq!(a3["rank_product"], 1.0);
    assert_eq!(rows.iter().filter(|r| r["normal"] == true).count(), 3);
}

#[test]
fn subgroups_of_c4_csv() {
    let out = ncfourier(&["subgroups", "--group", "c4", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    let normal = reader.headers().unwrap().iter().position(|h| h == "normal").unwrap();
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| &r[normal] == "true"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["subgroups", "--group", "S5"][..],
        &["verify", "--group", "Q8"],
        &["verify", "--group", "S 3"],
        &["verify", "--group", "S3", "--tol", "0"],
        &["verify", "--group", "S3", "--tol", "0.01"],
        &["verify", "--group", "S3", "--trials", "0"],
        &["verify", "--group", "S3", "--format", "xml"],
        &["sweep"],
    ] {
        let out = ncfourier(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn verify_s4_has_no_failures() {
    let out = ncfourier(&["verify", "--group", "S4", "--trials", "100", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["summary"]["failed"], 0);
    assert!(v["catalog"]["passed"].as_bool().unwrap());
    let records = v["records"].as_array().unwrap();
    assert_eq!(records.iter().filter(|r| r["check"] == "subgroup_profile").count(), 30);
    assert_eq!(
        records
            .iter()
            .filter(|r| r["instance"] == 99 && r["check"] == "theorem1")
            .count(),
        1
    );
}

#[test]
fn verify_is_reproducible_and_seed_sensitive() {
    let a = ncfourier(&["verify", "--group", "D4", "--trials", "10"]);
    let b = ncfourier(&["verify", "--group", "D4", "--trials", "10"]);
    let c = ncfourier(&["verify", "--group", "D4", "--trials", "10", "--seed", "1"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    let v = json(&a);
    assert!(v["records"]
        .as_array()
        .unwrap()
        .iter()
        .any(|r| r["check"] == "corollary2_exhaustive"));
}

#[test]
fn verify_csv_has_one_row_per_record() {
    let out = ncfourier(&["verify", "--group", "C2xS3", "--trials", "3", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    assert_eq!(reader.headers().unwrap().iter().next(), Some("instance"));
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert!(rows.iter().all(|r| &r[2] == "pass"));
    assert!(rows.iter().any(|r| &r[1] == "trace_orthogonality"));
}

#[test]
fn sweep_table_is_worker_independent() {
    let a = ncfourier(&[
        "sweep",
        "--group",
        "D6",
        "--trials",
        "20",
        "--format",
        "csv",
        "--workers",
        "1",
    ]);
    let b = ncfourier(&[
        "sweep",
        "--group",
        "D6",
        "--trials",
        "20",
        "--format",
        "csv",
        "--workers",
        "4",
    ]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let mut reader = csv::Reader::from_reader(a.stdout.as_slice());
    assert_eq!(reader.records().count(), 20);
}
