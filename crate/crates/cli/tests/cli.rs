use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

const TRIANGLE_BRIDGE: &str = "a b\na c\nb c\nc d\nd e\nd f\ne f\n";

fn lipp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lipp")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn karate() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/data/karate.txt")
}

fn json_lines(text: &str) -> Vec<Value> {
    text.lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

/// Drops the wall-clock field so runs can be compared.
fn without_time(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timeSeconds");
    v
}

#[test]
fn solve_triangle_bridge_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bridge.edgelist");
    std::fs::write(&path, TRIANGLE_BRIDGE).unwrap();
    for f in ["cec", "cut", "bcwwy"] {
        let out = stdout(&lipp(&["solve", "--formulation", f, path.to_str().unwrap()]));
        let rec = &json_lines(&out)[0];
        assert_eq!(rec["instance"], "bridge");
        assert_eq!(rec["objective"], 4);
        assert_eq!(rec["status"], "Optimal");
        assert_eq!(rec["formulation"], f);
        assert!(rec["warmStartValue"].is_null());
    }
}

#[test]
fn solve_karate_with_warm_start() {
    let out = stdout(&lipp(&["solve", "--formulation", "cut", "--warm-start", karate().to_str().unwrap()]));
    let rec = &json_lines(&out)[0];
    assert_eq!(rec["objective"], 9);
    assert_eq!((rec["n"].as_u64(), rec["m"].as_u64()), (Some(34), Some(78)));
    let ws = rec["warmStartValue"].as_u64().unwrap();
    assert!((1..=9).contains(&ws));
}

#[test]
fn solve_generated_ba() {
    let out =
        stdout(&lipp(&["solve", "--generate", "ba", "--n", "20", "--d", "3", "--seed", "1", "--formulation", "cec"]));
    let rec = &json_lines(&out)[0];
    assert_eq!(rec["m"], 51);
    assert_eq!(rec["status"], "Optimal");
}

#[test]
fn csv_output_has_fixed_columns() {
    let out = stdout(&lipp(&["solve", "--generate", "hypercube", "--k", "3", "--output", "csv"]));
    let mut lines = out.lines();
    assert_eq!(
        lines.next().unwrap(),
        "instance,n,m,formulation,cliqueMode,status,objective,bestBound,gapPercent,nodes,\
         cuts.cycle,cuts.cutset,cuts.clique,rootBound,warmStartValue,timeSeconds"
    );
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row.len(), 16);
    assert_eq!(&row[..3], &["hypercube_3", "8", "12"]);
    assert_eq!(row[6], "5");
}

#[test]
fn output_is_deterministic_apart_from_timing() {
    let args = ["solve", "--generate", "ba", "--n", "14", "--d", "2", "--seed", "5", "--warm-start"];
    let a = json_lines(&stdout(&lipp(&args)));
    let b = json_lines(&stdout(&lipp(&args)));
    assert_eq!(without_time(a[0].clone()), without_time(b[0].clone()));
}

#[test]
fn errors_exit_nonzero() {
    assert!(!lipp(&["solve", "--no-such-flag"]).status.success());
    assert!(!lipp(&["solve", "/definitely/missing.txt"]).status.success());
    assert!(!lipp(&["solve", "--generate", "ba", "--n", "5"]).status.success());
    assert!(!lipp(&["solve", "--generate", "ba", "--n", "5", "--d", "5"]).status.success());
    assert!(!lipp(&["solve", "--generate", "torus", "--side", "2"]).status.success());
    assert!(!lipp(&["solve", "--formulation", "lp", "--generate", "hypercube", "--k", "2"]).status.success());
    assert!(!lipp(&["solve"]).status.success());
}

#[test]
fn suite_summary() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = dir.path().join("suite.toml");
    std::fs::write(
        &manifest,
        r#"
instances = ["missing.txt"]

[[generate]]
family = "ba"
n = 20
d = 3
count = 30

[[config]]
formulation = "cec"
time_limit = 120

[[config]]
formulation = "cut"
time_limit = 120
"#,
    )
    .unwrap();
    let records = dir.path().join("runs.csv");
    let out =
        stdout(&lipp(&["suite", manifest.to_str().unwrap(), "--jobs", "4", "--records", records.to_str().unwrap()]));
    let mut rd = csv::Reader::from_reader(out.as_bytes());
    let rows: Vec<csv::StringRecord> = rd.records().map(Result::unwrap).collect();
    let configs: Vec<_> = rows.iter().filter(|r| &r[0] == "config").collect();
    assert_eq!(configs.len(), 2);
    for r in configs {
        // runs, solved, timeouts, errors
        assert_eq!((&r[3], &r[4], &r[5], &r[6]), ("30", "30", "0", "0"), "{r:?}");
        assert!(r[7].parse::<f64>().is_ok());
    }
    let errors: Vec<_> = rows.iter().filter(|r| &r[0] == "error").collect();
    assert_eq!(errors.len(), 1);
    assert_eq!(&errors[0][2], "missing.txt");
    assert_eq!(std::fs::read_to_string(records).unwrap().lines().count(), 61);
}

#[test]
fn empty_suite() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = dir.path().join("empty.toml");
    std::fs::write(&manifest, "").unwrap();
    let out = stdout(&lipp(&["suite", manifest.to_str().unwrap()]));
    assert_eq!(out.lines().count(), 1);
}

#[test]
fn polylab_reports() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bridge.txt");
    std::fs::write(&path, TRIANGLE_BRIDGE).unwrap();
    let v: Value = serde_json::from_str(&stdout(&lipp(&["polylab", path.to_str().unwrap()]))).unwrap();
    assert!((v["rootBounds"]["cec"].as_f64().unwrap() - 4.0).abs() < 1e-6);
    assert!((v["rootBounds"]["cut"].as_f64().unwrap() - 4.5).abs() < 1e-6);
    assert_eq!(v["cutWithinCec"], false);

    let v: Value = serde_json::from_str(&stdout(&lipp(&["polylab", "--witness", "triangle-bridge"]))).unwrap();
    assert_eq!(v["membership"]["cec"]["feasible"], true);
    assert_eq!(v["membership"]["cut"]["feasible"], false);

    let v: Value = serde_json::from_str(&stdout(&lipp(&["polylab", "--witness", "clique-edge-excess"]))).unwrap();
    assert_eq!(v["clique"]["satisfiesY"], true);
    assert_eq!(v["clique"]["satisfiesX"], false);
}

#[test]
fn export_lp() {
    let out = stdout(&lipp(&["export", "--formulation", "cec", "--generate", "hypercube", "--k", "2"]));
    assert!(out.contains("\nMaximize\n obj: y0 + y1 + y2 + y3\n"), "{out}");
    assert!(out.contains(" r4: x0_s + x1_s + x2_s + x3_s = 2\n"));
    assert!(out.contains("\nBinary\n"));
    assert!(out.trim_end().ends_with("End"));
}
