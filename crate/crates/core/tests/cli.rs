use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_lattice-units");
const SCHEMA: &str = include_str!("../schema/report.v1.schema.json");

fn run(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(BIN);
    cmd.args(args).env_remove("LATTICE_UNITS_OFFLINE").env_remove("LATTICE_UNITS_CACHE");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let o = run(&a, &[]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap_or_else(|e| panic!("{e}: {}", stdout(&o)));
    assert_valid(&v);
    (o.status.code().unwrap(), v)
}

fn assert_valid(v: &Value) {
    let schema: Value = serde_json::from_str(SCHEMA).unwrap();
    let compiled = jsonschema::JSONSchema::compile(&schema).unwrap();
    let msgs: Vec<String> = match compiled.validate(v) {
        Ok(()) => return,
        Err(errors) => errors.map(|e| format!("{e} at {}", e.instance_path)).collect(),
    };
    panic!("schema violations: {msgs:?}");
}

fn csv_rows(args: &[&str]) -> usize {
    let mut a = args.to_vec();
    a.extend(["--format", "csv"]);
    let out = stdout(&run(&a, &[]));
    csv::Reader::from_reader(out.as_bytes()).records().count()
}

#[test]
fn moser_units_json() {
    let (code, v) = json(&["units", "--family", "L", "--k", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["enumerated"], 18);
    assert_eq!(v["counts"]["diagonal"], 6);
    assert_eq!(v["D"], 33);
    assert_eq!(v["units"].as_array().unwrap().len(), 18);
}

#[test]
fn exceptional_lattice_has_twelve() {
    let (code, v) = json(&["units", "--family", "M", "--k", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["enumerated"], 12);
}

#[test]
fn degenerate_parameter_exits_with_explanation() {
    let o = run(&["units", "--family", "L", "--k", "7"], &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("excluded: 4·7−1 = 27 = 3·3²"), "{}", stderr(&o));
    let o = run(&["units", "MHALF", "13"], &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("2·13−1 = 25 = 5²"), "{}", stderr(&o));
}

#[test]
fn csv_rows_equal_json_arrays() {
    for args in [
        vec!["units", "L", "13"],
        vec!["symmetry", "M", "5"],
        vec!["table", "2", "--max-units", "40", "--limit", "100000"],
        vec!["oeis-check", "--seq", "A004018", "--vendored", "--max", "50"],
    ] {
        let (_, v) = json(&args);
        let len = ["units", "rows", "mismatches"]
            .iter()
            .find_map(|k| v[*k].as_array().map(|a| a.len()))
            .unwrap();
        assert_eq!(csv_rows(&args), len, "{args:?}");
    }
}

#[test]
fn table_three_is_keyed_by_two_k() {
    let o = run(&["table", "3", "--max-units", "24", "--limit", "100000"], &[]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().nth(1).unwrap().trim_end().ends_with("2k"), "{text}");
    let (_, v) = json(&["table", "--id", "3", "--max-units", "24", "--limit", "100000"]);
    assert_eq!(v["key"], "2k");
    let params: Vec<u64> = v["rows"].as_array().unwrap().iter().map(|r| r["param"].as_u64().unwrap()).collect();
    assert_eq!(params, vec![9, 17, 169, 65]);
}

#[test]
fn insufficient_limit_is_flagged_not_fatal() {
    let (code, v) = json(&["table", "1", "--max-units", "42", "--limit", "1000"]);
    assert_eq!(code, 0);
    let last = v["rows"].as_array().unwrap().last().unwrap().clone();
    assert_eq!(last["units"], 42);
    assert_eq!(last["status"], "beyond-limit");
    assert!(last["param"].is_null());
}

#[test]
fn table_output_independent_of_worker_count() {
    let args = ["table", "1", "--max-units", "120", "--limit", "2000000", "--format", "json"];
    let one = stdout(&run(&args, &[("RAYON_NUM_THREADS", "1")]));
    let four = stdout(&run(&args, &[("RAYON_NUM_THREADS", "4")]));
    assert_eq!(one, four);
}

#[test]
fn lowest_subcommand() {
    let (code, v) = json(&["lowest", "--family", "L", "--units", "36", "--limit", "10000"]);
    assert_eq!(code, 0);
    assert_eq!(v["param"], 133);
    let (code, v) = json(&["lowest", "--family", "MHALF", "--units", "16", "--limit", "10000"]);
    assert_eq!(code, 0);
    assert_eq!(v["param"], 17);
}

#[test]
fn oeis_check_vendored_and_offline() {
    for seq in ["A004016", "A004018"] {
        let (code, v) = json(&["oeis-check", "--seq", seq, "--max", "200", "--vendored"]);
        assert_eq!(code, 0);
        assert_eq!(v["mismatches"].as_array().unwrap().len(), 0);
        assert_eq!(v["checked"], 201);
    }
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let o = run(&["oeis-check", "--seq", "A004016"], &[("LATTICE_UNITS_OFFLINE", "1"), ("LATTICE_UNITS_CACHE", cache)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("offline"), "{}", stderr(&o));

    std::fs::write(dir.path().join("A004016.bfile"), "0 1\n1 6\n2 0\n3 6\n").unwrap();
    let o = run(
        &["oeis-check", "--seq", "A004016", "--format", "json"],
        &[("LATTICE_UNITS_OFFLINE", "1"), ("LATTICE_UNITS_CACHE", cache)],
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["source"], "cache");
    assert_eq!(v["range"], serde_json::json!([0, 3]));
}

#[test]
fn oeis_check_reports_corrupted_entry() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b.txt");
    let body: String = (0..=20u64)
        .map(|n| format!("{n} {}\n", if n == 7 { 99 } else { lattice_units::repcount::square_reps(n).len() as u64 }))
        .collect();
    std::fs::write(&path, body).unwrap();
    let (code, v) = json(&["oeis-check", "--seq", "A004018", "--bfile", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(v["mismatches"], serde_json::json!([{"n": 7, "expected": "99", "computed": "0"}]));
}

#[test]
fn oeis_check_rejects_unknown_ids() {
    let o = run(&["oeis-check", "--seq", "A000001", "--vendored"], &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unsupported"));
    let o = run(&["oeis-check", "--seq", "X12345", "--vendored"], &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("invalid sequence id"));
}

#[test]
fn symmetry_orders() {
    for (fam, k, order) in [("L", "3", 12), ("M", "2", 8), ("M", "1", 24)] {
        let (code, v) = json(&["symmetry", "--family", fam, "--k", k]);
        assert_eq!(code, 0);
        assert_eq!(v["group_order"], order);
        assert_eq!(v["permutes_units"], true);
        assert!(v["generators"].as_array().unwrap().iter().all(|g| g["preserves_gram"] == true));
    }
}

fn svg_at(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn plot_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("l3.svg");
    let o = run(&["plot", "--family", "L", "--k", "3", "--radius", "1.5", "--out", out.to_str().unwrap()], &[]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let svg = svg_at(&out);
    assert!(svg.contains(r#"version="1.1""#));
    assert_eq!(svg.matches(r#"class="unit""#).count(), 18);
    let points: usize = stdout(&o).split_whitespace().nth(2).unwrap().parse().unwrap();
    assert_eq!(svg.matches("<circle").count(), points);

    let out = dir.path().join("m1.svg");
    run(&["plot", "M", "1", "--radius", "1", "--out", out.to_str().unwrap()], &[]);
    assert_eq!(svg_at(&out).matches(r#"class="unit""#).count(), 12);
}

#[test]
fn plot_errors() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.svg");
    let o = run(&["plot", "L", "3", "--radius", "1000000", "--out", out.to_str().unwrap()], &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("cap"));
    let bad = dir.path().join("missing/dir/x.svg");
    let o = run(&["plot", "L", "3", "--out", bad.to_str().unwrap()], &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("cannot write"));
}

#[test]
fn text_and_json_agree_on_counts() {
    let text = stdout(&run(&["units", "M", "5"], &[]));
    let (_, v) = json(&["units", "M", "5"]);
    assert!(text.contains(&format!("predicted {}  enumerated {}", v["predicted"], v["enumerated"])));
}
