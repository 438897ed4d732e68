use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mfd-forge"))
        .args(args)
        .env_remove("MFD_FORGE_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

#[test]
fn analyze_reports_nu_bound() {
    let o = run(&["analyze", "--diagram", "0,1,1,4,5", "--d", "3", "--format", "json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["distances"][0]["nu"], serde_json::json!([5, 3, 2]));
    assert_eq!(v["distances"][0]["nu_min"], 2);
    assert_eq!(v["adjoint"]["columns"], serde_json::json!([1, 2, 2, 2, 4]));
}

#[test]
fn analyze_reports_height_and_contraction() {
    let o = run(&["analyze", "--diagram", "4,4,4,4,8,8,8,8", "--primes", "2", "--format", "json"]);
    let v = json(&o);
    assert_eq!(v["primes"][0]["height"], 2);
    assert_eq!(v["primes"][0]["contraction"]["columns"], serde_json::json!([1, 2]));
    let text = stdout(&run(&["analyze", "--diagram", "4,4,4,4,8,8,8,8", "--primes", "2"]));
    assert!(text.contains("height 2, contraction 1,2"), "{text}");
}

#[test]
fn analyze_table_rows() {
    let o = run(&["analyze", "--diagram", "1,2,4,5,5", "--d", "2-5", "--format", "json"]);
    let v = json(&o);
    let rows: Vec<(u64, u64)> = v["distances"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["nu_min"].as_u64().unwrap(), r["nu_mds"].as_u64().unwrap()))
        .collect();
    assert_eq!(rows, vec![(12, 10), (7, 6), (3, 3), (1, 1)]);
}

#[test]
fn parse_errors_carry_position() {
    let o = run(&["analyze", "--diagram", "0,1,x"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("position 5"), "{}", stderr(&o));
    let o = run(&["analyze", "--diagram", "2,1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn construct_then_verify_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let art = dir.path().join("code.json");
    let art_s = art.to_str().unwrap();
    let o = run(&["construct", "--diagram", "1,2,3,4,5,6", "--d", "4", "--field", "3^1", "--format", "json", "--out", art_s]);
    assert!(o.status.success(), "{}", stderr(&o));
    let code: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&art).unwrap()).unwrap();
    assert_eq!(code["dimension"], 6);
    assert_eq!(code["q"], 3);

    let from_file = run(&["verify", "--code", art_s, "--format", "json"]);
    assert_eq!(from_file.status.code(), Some(0), "{}", stderr(&from_file));
    let rebuilt = run(&["verify", "--diagram", "1,2,3,4,5,6", "--d", "4", "--field", "3^1", "--format", "json"]);
    let (mut a, mut b) = (json(&from_file), json(&rebuilt));
    assert_eq!(a["codewords_checked"], 728);
    assert_eq!(a["min_rank"], 4);
    assert_eq!(a["certified"], true);
    a["elapsed_ms"] = 0.into();
    b["elapsed_ms"] = 0.into();
    assert_eq!(a, b);
}

#[test]
fn verification_failure_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let art = dir.path().join("code.json");
    let art_s = art.to_str().unwrap();
    run(&["construct", "--diagram", "1,2,3,4,5,6", "--d", "4", "--field", "2", "--format", "json", "--out", art_s]);
    let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&art).unwrap()).unwrap();
    // zero out the first generator
    for row in v["generators"][0].as_array_mut().unwrap() {
        for x in row.as_array_mut().unwrap() {
            *x = 0.into();
        }
    }
    std::fs::write(&art, v.to_string()).unwrap();
    let o = run(&["verify", "--code", art_s, "--format", "json"]);
    assert_eq!(o.status.code(), Some(2));
    let r = json(&o);
    assert_eq!(r["dimension_ok"], false);
    assert_eq!(r["passed"], false);
}

#[test]
fn cap_exceeded_exits_3_unless_sampling() {
    let args = ["verify", "--diagram", "1,2,3,4,5,6,7,8,9", "--d", "2", "--field", "2", "--cap", "1000"];
    let o = run(&args);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("cap"));

    let mut sampled = args.to_vec();
    sampled.extend(["--trials", "200", "--seed", "7", "--format", "json"]);
    let o = run(&sampled);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r = json(&o);
    assert_eq!(r["method"], "sampled");
    assert_eq!(r["not_a_proof"], true);
    assert_eq!(r["certified"], false);
}

#[test]
fn cap_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_mfd-forge"))
        .args(["verify", "--diagram", "1,2,3,4,5,6", "--d", "4", "--field", "3"])
        .env("MFD_FORGE_CAP", "100")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn unsupported_class_is_reported() {
    let o = run(&["construct", "--diagram", "0,2,2,2", "--d", "2", "--field", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("outside the supported classes"), "{}", stderr(&o));
}

#[test]
fn reference_basis_reproduces_generators() {
    let o = run(&[
        "construct",
        "--diagram",
        "1,3,4,5,5",
        "--d",
        "4",
        "--field",
        "5^1",
        "--modulus",
        "3,4,0,0,0,1",
        "--basis",
        "0,2968,1531,1556,1566",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("dimension  4"));
    assert!(text.contains("generator 4"));
}

#[test]
fn extension_entries_render_as_coefficient_lists() {
    let o = run(&["construct", "--diagram", "1,2,2", "--d", "2", "--field", "2^2"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let row = text.lines().find(|l| l.starts_with('[')).expect("a matrix row");
    assert_eq!(row.split(' ').count(), 3);
    assert!(row.split(' ').all(|e| e.starts_with('[') && e.ends_with(']') && e.split(',').count() == 2));
}

#[test]
fn text_and_json_agree() {
    let t = stdout(&run(&["construct", "--diagram", "1,2,3,4", "--d", "3", "--field", "2"]));
    let v = json(&run(&["construct", "--diagram", "1,2,3,4", "--d", "3", "--field", "2", "--format", "json"]));
    let mut from_text: Vec<Vec<Vec<u64>>> = Vec::new();
    let mut lines = t.lines();
    while let Some(l) = lines.next() {
        if l.starts_with("generator ") {
            from_text.push((0..4).map(|_| lines.next().unwrap().split(' ').map(|x| x.parse().unwrap()).collect()).collect());
        }
    }
    let from_json: Vec<Vec<Vec<u64>>> = serde_json::from_value(v["generators"].clone()).unwrap();
    assert_eq!(from_text, from_json);
    assert!(!from_json.is_empty());
}

#[test]
fn every_repro_scenario_passes() {
    for id in ["fer5-nu", "nu-table", "f5-compatible-basis", "f2-n8-phi", "f5-mfd-d4", "f2-ut-d4", "mds-ex17"] {
        let o = run(&["repro", id]);
        assert_eq!(o.status.code(), Some(0), "{id}: {}{}", stdout(&o), stderr(&o));
        assert!(stdout(&o).starts_with(&format!("PASS  {id}")));
    }
    let o = run(&["repro", "all", "--format", "json"]);
    let v = json(&o);
    assert_eq!(v.as_array().unwrap().len(), 7);
    assert!(v.as_array().unwrap().iter().all(|x| x["passed"] == true));
}

#[test]
fn unknown_repro_id() {
    let o = run(&["repro", "nope"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn out_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("phi.txt");
    let o = run(&["repro", "f2-n8-phi", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).is_empty());
    assert!(Path::new(&path).exists());
    assert!(std::fs::read_to_string(&path).unwrap().contains("1 0 1 1 0 0 1 0"));
}
