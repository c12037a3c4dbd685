use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn zeroerr(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zeroerr"))
        .args(args)
        .current_dir(dir)
        .env_remove("ZEROERR_THREADS")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn typewriter(k: usize) -> String {
    let support: Vec<[usize; 2]> = (0..k).flat_map(|x| [[x, x], [x, (x + 1) % k]]).collect();
    serde_json::json!({"x_count": k, "y_count": k, "support": support}).to_string()
}

#[test]
fn pentagon_c0_collapses() {
    let dir = tempfile::tempdir().unwrap();
    let out = zeroerr(&["graph", "catalog", "--name", "cycle", "--size", "5", "--out", "c5.json"], dir.path());
    assert!(out.status.success(), "{}", stderr(&out));
    let out = zeroerr(&["bounds", "c0", "--graph", "c5.json", "--max-n", "2"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let r = json(&out);
    let half_log5 = 0.5 * 5f64.log2();
    assert_eq!(r["quantity"], "c0");
    assert!((r["lo"].as_f64().unwrap() - half_log5).abs() < 1e-4);
    assert!((r["hi"].as_f64().unwrap() - half_log5).abs() < 1e-4);

    // the upper end comes from a heuristic colouring, but the interval is closed
    zeroerr(&["graph", "catalog", "--name", "cycle", "--size", "5", "--uniform", "--out", "u5.json"], dir.path());
    let out = zeroerr(&["bounds", "hbar", "--graph", "u5.json"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let out = zeroerr(&["bounds", "hbar", "--graph", "u5.json", "--max-n", "1", "--node-budget", "1"], dir.path());
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));
}

#[test]
fn schlafli_file_and_info() {
    let dir = tempfile::tempdir().unwrap();
    let out = zeroerr(&["graph", "catalog", "--name", "schlafli", "--out", "s.json"], dir.path());
    assert!(out.status.success(), "{}", stderr(&out));
    let file: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("s.json")).unwrap()).unwrap();
    assert_eq!(file["n"], 27);
    let info = json(&zeroerr(&["graph", "info", "s.json"], dir.path()));
    assert_eq!(info["degree"], 16);
    assert_eq!(info["strongly_regular"]["lambda"], 10);
    assert_eq!(info["strongly_regular"]["mu"], 8);
}

#[test]
fn verify_passes_and_csv_is_versioned() {
    let dir = tempfile::tempdir().unwrap();
    let out = zeroerr(&["verify", "--trials", "2000"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let r = json(&out);
    assert_eq!(r["failed"], 0);
    assert_eq!(r["undecided"], 0);
    let out = zeroerr(&["verify", "--tag", "pentagon", "--format", "csv"], dir.path());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("# zeroerr-verify-csv v1\nscenario,claim,measured,relation,expected,tolerance,status\n"));
}

#[test]
fn thread_count_does_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    let run = |threads: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_zeroerr"))
            .args(["verify", "--tag", "codec", "--trials", "3000", "--seed", "7"])
            .env("ZEROERR_THREADS", threads)
            .current_dir(dir.path())
            .output()
            .unwrap();
        assert!(out.status.success(), "{}", stderr(&out));
        out.stdout
    };
    assert_eq!(run("1"), run("8"));
}

#[test]
fn malformed_files_name_the_field() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("a.json"), r#"{"n": 3, "edges": [[0, 1]], "colour": 1}"#).unwrap();
    std::fs::write(dir.path().join("b.json"), r#"{"n": 3, "edges": [[0, 7]]}"#).unwrap();
    std::fs::write(dir.path().join("c.json"), r#"{"n": 2, "edges": [], "dist": [0.9, 0.3]}"#).unwrap();
    for (file, field) in [("a.json", "colour"), ("b.json", "edges"), ("c.json", "dist")] {
        let out = zeroerr(&["bounds", "hbar", "--graph", file], dir.path());
        assert_eq!(out.status.code(), Some(1));
        let msg = stderr(&out);
        assert!(msg.contains(field), "{file}: {msg}");
        assert!(!msg.contains("panicked"), "{msg}");
    }
    let out = zeroerr(&["solve", "alpha", "missing.json"], dir.path());
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn exhausted_budget_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    zeroerr(&["graph", "catalog", "--name", "cycle", "--size", "9", "--out", "c9.json"], dir.path());
    let out = zeroerr(&["solve", "chi", "c9.json", "--node-budget", "1"], dir.path());
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));
    assert_eq!(json(&out)["exact"], false);
    let out = zeroerr(&["graph", "power", "c9.json", "--n", "3", "--vertex-budget", "100"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("budget"));
}

#[test]
fn channel_code_roundtrips_through_a_file() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("tw5.json"), typewriter(5)).unwrap();
    let out = zeroerr(&["codec", "channel", "--channel", "tw5.json", "--n", "2", "--out", "book.json"], dir.path());
    assert!(out.status.success(), "{}", stderr(&out));
    let r = json(&out);
    assert_eq!(r["size"], 5);
    assert_eq!(r["simulation"]["failures"], 0);
    let book: Vec<Vec<usize>> =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("book.json")).unwrap()).unwrap();
    assert_eq!(book.len(), 5);
    let out = zeroerr(&["codec", "simulate", "--channel", "tw5.json", "--book", "book.json", "--trials", "5000"], dir.path());
    assert!(out.status.success(), "{}", stderr(&out));
    std::fs::write(dir.path().join("bad.json"), "[[0, 0], [1, 1]]").unwrap();
    let out = zeroerr(&["codec", "simulate", "--channel", "tw5.json", "--book", "bad.json"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("confusable"));
}

#[test]
fn source_codes_decode_without_errors() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("tw5.json"), typewriter(5)).unwrap();
    let out = zeroerr(&["codec", "si", "--channel", "tw5.json", "--n", "2", "--trials", "20000"], dir.path());
    assert!(out.status.success(), "{}", stderr(&out));
    let r = json(&out);
    assert_eq!(r["simulation"]["failures"], 0);
    assert!(r["empirical_rate"].as_f64().unwrap() <= r["rate_budget"].as_f64().unwrap() + 0.5);

    std::fs::write(
        dir.path().join("mixed.json"),
        r#"{"x_count": 2, "y_count": 3, "support": [[0, 0], [1, 0], [0, 1], [1, 2]]}"#,
    )
    .unwrap();
    std::fs::write(dir.path().join("joint.json"), "[[0.25, 0.25, 0], [0.25, 0, 0.25]]").unwrap();
    let out = zeroerr(
        &["codec", "partial-si", "--channel", "mixed.json", "--joint", "joint.json", "--g-map", "0,1,1", "--n", "6"],
        dir.path(),
    );
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(json(&out)["simulation"]["failures"], 0);

    std::fs::write(dir.path().join("tw6.json"), typewriter(6)).unwrap();
    std::fs::write(dir.path().join("tw8.json"), typewriter(8)).unwrap();
    let out = zeroerr(&["codec", "sum", "--channels", "tw6.json", "tw8.json", "--length", "7"], dir.path());
    assert!(out.status.success(), "{}", stderr(&out));
    let r = json(&out);
    assert_eq!(r["composition"], serde_json::json!([3, 4]));
    assert!((r["rate_target"].as_f64().unwrap() - 7f64.log2()).abs() < 1e-8);
}

#[test]
fn graph_operations_compose() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(d.join("tw5.json"), typewriter(5)).unwrap();
    assert!(zeroerr(&["graph", "build", "--channel", "tw5.json", "--out", "g.json"], d).status.success());
    assert!(zeroerr(&["graph", "build", "--n", "2", "--edges", "0-1", "--dist", "0.5,0.5", "--out", "k2.json"], d)
        .status
        .success());
    let alpha = json(&zeroerr(&["solve", "alpha", "g.json"], d));
    assert_eq!(alpha["size"], 2);
    assert!(zeroerr(&["graph", "power", "g.json", "--n", "2", "--out", "g2.json"], d).status.success());
    assert_eq!(json(&zeroerr(&["solve", "alpha", "g2.json"], d))["size"], 5);
    assert!(zeroerr(&["graph", "complement", "g.json", "--out", "gc.json"], d).status.success());
    assert!(zeroerr(&["graph", "product", "g.json", "gc.json", "--out", "p.json"], d).status.success());
    assert_eq!(json(&zeroerr(&["graph", "info", "p.json"], d))["n"], 25);
    assert!(zeroerr(&["graph", "union", "g.json", "k2.json", "--out", "u.json"], d).status.success());
    assert_eq!(json(&zeroerr(&["solve", "alpha", "u.json"], d))["size"], 3);
    assert_eq!(json(&zeroerr(&["solve", "omega", "u.json"], d))["size"], 2);
    assert_eq!(json(&zeroerr(&["solve", "chi", "g.json"], d))["count"], 3);
    let mis = json(&zeroerr(&["solve", "mis", "g.json"], d));
    assert_eq!(mis["count"], 5);
    let k = json(&zeroerr(&["entropy", "kappa", "k2.json"], d));
    assert!((k["value"].as_f64().unwrap() - 1.0).abs() < 1e-6);
    let h = json(&zeroerr(&["solve", "hchi", "k2.json"], d));
    assert!((h["value"].as_f64().unwrap() - 1.0).abs() < 1e-9);
}

#[test]
fn bounds_csv_has_a_versioned_header() {
    let dir = tempfile::tempdir().unwrap();
    zeroerr(&["graph", "catalog", "--name", "complete", "--size", "3", "--uniform", "--out", "k3.json"], dir.path());
    let out = zeroerr(&["bounds", "hbar", "--graph", "k3.json", "--format", "csv"], dir.path());
    assert!(out.status.success(), "{}", stderr(&out));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# zeroerr-bounds-csv v1"));
    assert_eq!(lines.next(), Some("quantity,lo,hi,lo_method,hi_method"));
    assert!(lines.next().unwrap().starts_with("hbar,1.5849625,1.5849625,"));
}
