//! End-to-end tests driving the compiled binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qrdephase"))
}

fn run_ok(args: &[&str]) -> String {
    let out = bin().args(args).output().expect("spawn");
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf8")
}

fn run_err(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn")
}

fn tmp(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("qrdephase-test-{}-{name}", std::process::id()));
    p
}

/// Parses a headered CSV into (header fields, rows of f64-or-NaN).
fn parse_csv(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines();
    let header = lines
        .next()
        .unwrap()
        .split(',')
        .map(str::to_string)
        .collect();
    let rows = lines
        .filter(|l| !l.is_empty())
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect();
    (header, rows)
}

#[test]
fn single_super_ohmic_saturates() {
    let out = run_ok(&[
        "single", "--d", "3", "--c", "0.25", "--theta", "1e-5", "--tmax", "100", "--points", "51",
    ]);
    let (header, rows) = parse_csv(&out);
    assert_eq!(header[0], "tau");
    let last: f64 = rows.last().unwrap()[4].parse().unwrap();
    assert!((last - 0.7788).abs() < 1e-3, "final magnitude {last}");
}

#[test]
fn single_zero_tmax_is_identity_row() {
    let out = run_ok(&["single", "--d", "1", "--c", "0.25", "--theta", "0", "--tmax", "0"]);
    let (_, rows) = parse_csv(&out);
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][0], "0");
    assert_eq!(rows[0][4], "1");
}

#[test]
fn single_unsupported_dimension_exits_2() {
    let out = run_err(&["single", "--d", "2", "--c", "0.25", "--theta", "0", "--tmax", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(
        err.contains("closed form unavailable; use --method quadrature"),
        "{err}"
    );
    // the quadrature path handles d = 2
    run_ok(&[
        "single", "--d", "2", "--c", "0.25", "--theta", "0", "--tmax", "1", "--method",
        "quadrature", "--points", "3",
    ]);
}

#[test]
fn pair_collective_minus_is_constant() {
    let out = run_ok(&[
        "pair", "--coupling", "collective", "--d", "1", "--c", "0.25", "--theta", "1.0",
        "--case", "both-differ", "--branch", "minus", "--tmax", "50", "--points", "21",
    ]);
    let (_, rows) = parse_csv(&out);
    assert_eq!(rows.len(), 21);
    for row in rows {
        assert_eq!(row[4], "1");
        assert_eq!(row[5], "0");
    }
}

#[test]
fn pair_large_transit_time_branches_coincide() {
    let common = [
        "pair", "--coupling", "independent", "--d", "1", "--c", "0.25", "--theta", "1e-3",
        "--ts", "1e4", "--case", "both-differ", "--tmax", "2", "--points", "41",
    ];
    let plus = run_ok(&[&common[..], &["--branch", "plus"]].concat());
    let minus = run_ok(&[&common[..], &["--branch", "minus"]].concat());
    let (_, rp) = parse_csv(&plus);
    let (_, rm) = parse_csv(&minus);
    for (a, b) in rp.iter().zip(&rm) {
        let ma: f64 = a[4].parse().unwrap();
        let mb: f64 = b[4].parse().unwrap();
        assert!((ma - mb).abs() < 1e-6, "{ma} vs {mb}");
    }
}

#[test]
fn table3_deviations_within_tolerance() {
    let out = run_ok(&["table", "3"]);
    let (header, rows) = parse_csv(&out);
    assert_eq!(rows.len(), 13);
    for row in &rows {
        for (k, col) in header.iter().enumerate() {
            if col.ends_with("_dev") && !row[k].is_empty() {
                let dev: f64 = row[k].parse().unwrap();
                assert!(dev <= 1e-3, "{col} deviation {dev}");
            }
        }
    }
}

#[test]
fn unknown_table_or_figure_exits_2() {
    assert_eq!(run_err(&["table", "9"]).status.code(), Some(2));
    assert_eq!(run_err(&["figure", "9"]).status.code(), Some(2));
}

#[test]
fn figure7_has_split_curve_families() {
    let out = run_ok(&["figure", "7"]);
    let (header, rows) = parse_csv(&out);
    assert_eq!(header, ["family", "time", "magnitude", "vacuum", "thermal"]);
    let families: std::collections::BTreeSet<&str> =
        rows.iter().map(|r| r[0].as_str()).collect();
    assert_eq!(families.iter().filter(|f| f.starts_with("i.")).count(), 3);
    assert_eq!(families.iter().filter(|f| f.starts_with("ii.")).count(), 3);
    // vacuum × thermal = total on every split row
    for row in rows.iter().filter(|r| r[0].starts_with("i.")) {
        let total: f64 = row[2].parse().unwrap();
        let vac: f64 = row[3].parse().unwrap();
        let th: f64 = row[4].parse().unwrap();
        assert!((total - vac * th).abs() < 1e-12);
    }
}

#[test]
fn outputs_are_deterministic_and_verifiable() {
    let a = tmp("t2a.csv");
    let b = tmp("t2b.csv");
    run_ok(&["table", "2", "--out", a.to_str().unwrap()]);
    run_ok(&["table", "2", "--out", b.to_str().unwrap()]);
    let ta = std::fs::read(&a).unwrap();
    let tb = std::fs::read(&b).unwrap();
    assert_eq!(ta, tb, "table output is not byte-identical across runs");
    run_ok(&["verify", a.to_str().unwrap()]);

    let tr = tmp("trace.csv");
    run_ok(&[
        "single", "--d", "3", "--c", "0.25", "--theta", "1", "--tmax", "10", "--out",
        tr.to_str().unwrap(),
    ]);
    run_ok(&["verify", tr.to_str().unwrap()]);

    // a corrupted trace fails verification
    let broken = tmp("broken.csv");
    let mut text = std::fs::read_to_string(&tr).unwrap();
    text.push_str("9,0.1,0,0,0.5,0\n"); // magnitude inconsistent, τ decreasing
    std::fs::write(&broken, text).unwrap();
    assert_eq!(
        run_err(&["verify", broken.to_str().unwrap()]).status.code(),
        Some(2)
    );

    for p in [a, b, tr, broken] {
        let _ = std::fs::remove_file(p);
    }
}

#[test]
fn times_summary_json() {
    let times = tmp("times.json");
    run_ok(&[
        "single", "--d", "3", "--c", "0.25", "--theta", "1e-5", "--tmax", "1", "--points", "2",
        "--times-out", times.to_str().unwrap(),
    ]);
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&times).unwrap()).unwrap();
    let tau_dec = doc["tau_dec"].as_f64().unwrap();
    assert!((tau_dec - 0.167969).abs() < 1e-3, "{tau_dec}");
    assert_eq!(doc["t_f"]["kind"], "saturates");
    let residual = doc["t_f"]["residual"].as_f64().unwrap();
    assert!((residual - 0.778801).abs() < 1e-4);
    let _ = std::fs::remove_file(times);
}

#[test]
fn register_oracle_matches_quadrature() {
    let modes = tmp("modes.csv");
    run_ok(&[
        "modes", "--d", "1", "--c", "0.25", "--n", "100000", "--xmax", "60", "--positions",
        "0.5,0", "--out", modes.to_str().unwrap(),
    ]);
    let labels = tmp("labels.txt");
    std::fs::write(&labels, "11,00\n").unwrap();
    let geom = tmp("geom.txt");
    std::fs::write(&geom, "positions 0.5 0\n").unwrap();

    let oracle = run_ok(&[
        "register", "--labels-file", labels.to_str().unwrap(), "--d", "1", "--c", "0.25",
        "--theta", "1", "--method", "oracle", "--modes-file", modes.to_str().unwrap(),
        "--tmax", "1", "--points", "3",
    ]);
    let quad = run_ok(&[
        "register", "--labels-file", labels.to_str().unwrap(), "--geometry-file",
        geom.to_str().unwrap(), "--d", "1", "--c", "0.25", "--theta", "1", "--method",
        "quadrature", "--tmax", "1", "--points", "3",
    ]);
    let (_, ro) = parse_csv(&oracle);
    let (_, rq) = parse_csv(&quad);
    for (a, b) in ro.iter().zip(&rq) {
        let ma: f64 = a[6].parse().unwrap();
        let mb: f64 = b[6].parse().unwrap();
        assert!((ma - mb).abs() < 1e-3, "oracle {ma} vs quadrature {mb}");
    }

    // oracle requires a modes file
    let out = run_err(&[
        "register", "--labels-file", labels.to_str().unwrap(), "--d", "1", "--c", "0.25",
        "--theta", "1", "--method", "oracle", "--tmax", "1",
    ]);
    assert_eq!(out.status.code(), Some(2));

    for p in [modes, labels, geom] {
        let _ = std::fs::remove_file(p);
    }
}

#[test]
fn register_collective_l3_superdecoherence() {
    let labels = tmp("labels3.txt");
    std::fs::write(&labels, "111,000\n101,101\n").unwrap();
    let out_file = tmp("reg3.csv");
    let out = run_ok(&[
        "register", "--labels-file", labels.to_str().unwrap(), "--d", "3", "--c", "0.25",
        "--theta", "1", "--coupling", "collective", "--method", "closed", "--tmax", "1",
        "--points", "2", "--out", out_file.to_str().unwrap(),
    ]);
    assert!(out.is_empty());
    run_ok(&["verify", out_file.to_str().unwrap()]);
    let (_, rows) = parse_csv(&std::fs::read_to_string(&out_file).unwrap());
    let gamma: f64 = rows[1][3].parse().unwrap();
    let single = run_ok(&["single", "--d", "3", "--c", "0.25", "--theta", "1", "--tmax", "1", "--points", "2"]);
    let (_, srows) = parse_csv(&single);
    let gamma_single: f64 = srows[1][1].parse().unwrap();
    assert!((gamma - 9.0 * gamma_single).abs() < 1e-12, "{gamma} vs 9×{gamma_single}");
    // the diagonal element is a population: constant trace
    for row in rows.iter().filter(|r| r[0] == "101") {
        assert_eq!(row[6], "1");
        assert_eq!(row[7], "0");
    }
    let _ = std::fs::remove_file(labels);
    let _ = std::fs::remove_file(out_file);
}

#[test]
fn config_overrides() {
    let cfg = tmp("cfg.json");
    std::fs::write(&cfg, r#"{"abs_tol": 1e-8, "rel_tol": 1e-7}"#).unwrap();
    run_ok(&[
        "--config", cfg.to_str().unwrap(), "single", "--d", "1", "--c", "0.25", "--theta",
        "0", "--tmax", "1", "--method", "quadrature", "--points", "3",
    ]);
    // invalid configs exit 2
    std::fs::write(&cfg, r#"{"abs_tol": -1}"#).unwrap();
    let out = run_err(&[
        "--config", cfg.to_str().unwrap(), "single", "--d", "1", "--c", "0.25", "--theta",
        "0", "--tmax", "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::write(&cfg, r#"{"unknown_key": 1}"#).unwrap();
    let out = run_err(&[
        "--config", cfg.to_str().unwrap(), "single", "--d", "1", "--c", "0.25", "--theta",
        "0", "--tmax", "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let _ = std::fs::remove_file(cfg);
}

#[test]
fn verify_rejects_corrupt_table() {
    let path = tmp("badtable.csv");
    // sentinel mismatch between computed and reference columns
    std::fs::write(
        &path,
        "c,theta,tau_dec,tau_dec_ref,tau_dec_dev\n0.25,1,saturates,0.5,\n",
    )
    .unwrap();
    let out = run_err(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    // inconsistent deviation column
    std::fs::write(
        &path,
        "c,theta,tau_dec,tau_dec_ref,tau_dec_dev\n0.25,1,0.5,0.5,0.9\n",
    )
    .unwrap();
    let out = run_err(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let _ = std::fs::remove_file(path);
}

#[test]
fn numerical_failure_exits_3() {
    // an oscillation far beyond the panel budget cannot be integrated
    let out = run_err(&[
        "single", "--d", "1", "--c", "0.25", "--theta", "0", "--tmax", "1e9", "--points", "2",
        "--method", "quadrature",
    ]);
    assert_eq!(out.status.code(), Some(3));
}
