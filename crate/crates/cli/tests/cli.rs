use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn randers(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_randers")).args(args).output().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

const PRESET: [&str; 6] = ["--lambda", "2", "--mu", "1", "--xi", "0.5"];

fn with_preset<'a>(cmd: &'a str, rest: &[&'a str]) -> Vec<&'a str> {
    let mut v = vec![cmd];
    v.extend(PRESET);
    v.extend(rest);
    v
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn csv_rows(path: &str) -> Vec<csv::StringRecord> {
    let mut r = csv::Reader::from_path(path).unwrap();
    assert_eq!(
        r.headers().unwrap(),
        vec!["case", "flag_pole", "transverse", "k_computed", "k_closed_form", "abs_err"]
    );
    r.records().map(Result::unwrap).collect()
}

#[test]
fn table1_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t1.csv");
    let res = randers(&with_preset("table1", &["--out", out.to_str().unwrap(), "--seed", "3"]));
    assert_eq!(code(&res), 0, "{}", String::from_utf8_lossy(&res.stderr));
    let rows = csv_rows(out.to_str().unwrap());
    assert_eq!(rows.len(), 8);
    let ids: Vec<_> = rows.iter().map(|r| r[0].to_string()).collect();
    assert_eq!(ids, ["1.1", "1.2", "2.1", "2.2", "2.3", "3.1", "3.2", "3.3"]);
    for r in &rows {
        let (k, cf, err): (f64, f64, f64) = (r[3].parse().unwrap(), r[4].parse().unwrap(), r[5].parse().unwrap());
        assert!(((k - cf).abs() - err).abs() < 1e-15);
        assert!(err <= 1e-9);
    }
    assert_eq!(&rows[3][1], "span(e1,e2)");
    assert_eq!(rows[3][4].parse::<f64>().unwrap(), -2.75);
}

#[test]
fn table1_equal_constants() {
    let res = randers(&["table1", "--lambda", "1.3", "--mu", "1.3", "--xi", "0.4"]);
    assert_eq!(code(&res), 0);
    let mut r = csv::Reader::from_reader(res.stdout.as_slice());
    for rec in r.records().map(Result::unwrap) {
        if &rec[0] == "2.3" || &rec[0] == "3.2" {
            assert!(rec[3].parse::<f64>().unwrap().abs() < 1e-12);
        }
    }
}

#[test]
fn connection_tables_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ct.json");
    let res = randers(&with_preset("connection-tables", &["--out", out.to_str().unwrap()]));
    assert_eq!(code(&res), 0);
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let blocks = doc["blocks"].as_array().unwrap();
    let names: Vec<_> = blocks.iter().map(|b| b["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["table2", "table3", "table4", "table5", "table6"]);

    let mut worst: f64 = 0.0;
    for b in blocks {
        for c in b["cells"].as_array().unwrap() {
            let v = |k: &str| -> Vec<f64> {
                c[k].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect()
            };
            let d = v("computed").iter().zip(v("closed_form")).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
            assert!((d - c["defect"].as_f64().unwrap()).abs() < 1e-15);
            worst = worst.max(d);
        }
    }
    assert!(worst <= 1e-10);
    assert!((worst - doc["max_defect"].as_f64().unwrap()).abs() < 1e-15);

    let cell = |block: usize, row: &str, col: &str| -> Vec<f64> {
        blocks[block]["cells"]
            .as_array()
            .unwrap()
            .iter()
            .find(|c| c["row"] == row && c["column"] == col)
            .unwrap()["computed"]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x.as_f64().unwrap())
            .collect()
    };
    // at the center pole, nabla_e1 e2 = (λ/2) Z
    let c = cell(0, "nabla_e1", "e2");
    assert!((c[4] - 1.0).abs() < 1e-12 && c[..4].iter().all(|x| x.abs() < 1e-12));
    // nabla_W W = ξ W⊥ for a pole in span(e3,e4), and nabla_Z W = W⊥/2
    let pole: Vec<f64> = blocks[3]["pole"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
    let wperp = [0.0, 0.0, pole[3], -pole[2], 0.0];
    let ww = cell(3, "nabla_W", "W");
    let zw = cell(3, "nabla_Z", "W");
    for i in 0..5 {
        assert!((ww[i] - 0.5 * wperp[i]).abs() < 1e-12);
        assert!((zw[i] - 0.5 * wperp[i]).abs() < 1e-12);
    }
}

#[test]
fn flag_values() {
    let res = randers(&with_preset("flag", &["--w", "0,0,0,0,1", "--x", "0,0,1,0,0"]));
    assert_eq!(code(&res), 0);
    assert!((json(&res)["k"].as_f64().unwrap() - 0.25).abs() < 1e-12);

    let res = randers(&with_preset("flag", &["--w", "1,0,0,0,0", "--x", "0,-1,0,0,0"]));
    assert!((json(&res)["k"].as_f64().unwrap() + 2.75).abs() < 1e-12);

    let res = randers(&with_preset("flag", &["--w", "1,0,0,0,0", "--x", "2,0,0,0,0"]));
    assert_eq!(code(&res), 1);
    assert!(json(&res)["k"].is_null());
    assert_eq!(json(&res)["degenerate"], true);

    let res = randers(&with_preset("flag", &["--w", "1,0,0", "--x", "0,1,0"]));
    assert_eq!(code(&res), 2);
}

#[test]
fn flat_model() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "flat.json", r#"{"explicit": {"dim": 3, "x0": [0.3, 0, 0]}}"#);
    let res = randers(&["flag", "--config", &cfg, "--w", "1,0,0", "--x", "0,1,1"]);
    assert_eq!(code(&res), 0);
    assert_eq!(json(&res)["k"].as_f64().unwrap(), 0.0);

    let res = randers(&["search", "--config", &cfg, "--max-samples", "50"]);
    assert_eq!(code(&res), 1);
    assert!(String::from_utf8_lossy(&res.stderr).contains("no nonzero curvature"));

    let res = randers(&["table1", "--config", &cfg]);
    assert_eq!(code(&res), 2);
}

#[test]
fn search_is_deterministic_and_seed_sensitive() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "h3.json",
        r#"{"explicit": {"dim": 3, "brackets": [{"i": 1, "j": 2, "k": 3, "value": 1.0}], "x0": [0, 0, 0.4]}}"#,
    );
    let a = randers(&["search", "--config", &cfg, "--seed", "7"]);
    let b = randers(&["search", "--config", &cfg, "--seed", "7"]);
    let c = randers(&["search", "--config", &cfg, "--seed", "8"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    let doc = json(&a);
    assert!(doc["positive_witness"]["k"].as_f64().unwrap() > 0.0);
    assert!(doc["negative_witness"]["k"].as_f64().unwrap() < 0.0);
}

#[test]
fn verify_reports() {
    let res = randers(&with_preset("verify", &["--samples", "30"]));
    assert_eq!(code(&res), 0);
    let doc = json(&res);
    assert_eq!(doc["passed"], true);
    let checks = doc["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 6);
    for c in checks {
        assert!(c["defect"].as_f64().unwrap() <= c["tolerance"].as_f64().unwrap());
    }
}

#[test]
fn usage_errors() {
    assert_eq!(code(&randers(&["verify", "--lambda", "2", "--mu", "1", "--xi", "0"])), 2);
    assert_eq!(code(&randers(&["verify", "--lambda", "1", "--mu", "2", "--xi", "0.5"])), 2);
    assert_eq!(code(&randers(&["verify", "--lambda", "2", "--mu", "1"])), 2);
    assert_eq!(code(&randers(&["bogus"])), 2);

    let dir = tempfile::tempdir().unwrap();
    let long = write(dir.path(), "long.json", r#"{"explicit": {"dim": 2, "x0": [1.2, 0]}}"#);
    assert_eq!(code(&randers(&["verify", "--config", &long])), 2);
    let bad = write(dir.path(), "bad.json", "{not json");
    assert_eq!(code(&randers(&["verify", "--config", &bad])), 2);
}

#[test]
fn io_errors() {
    assert_eq!(code(&randers(&["verify", "--config", "/nonexistent/model.json"])), 3);
    let res = randers(&with_preset("table1", &["--out", "/nonexistent/dir/t1.csv"]));
    assert_eq!(code(&res), 3);
}
