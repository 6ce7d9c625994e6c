//! Drives the `pdp-qaoa` binary end to end.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use pdp_qaoa::sweep::read_records;

const INSTANCE: &str = "vertices 6\n0 1\n1 2\n1 3\n2 4\n3 4\n4 5\n";

fn run(args: &[&str]) -> Output {
    let out = Command::new(env!("CARGO_BIN_EXE_pdp-qaoa"))
        .args(args)
        .output()
        .expect("binary runs");
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn write_graph(dir: &Path) -> String {
    let path = dir.join("g.txt");
    fs::write(&path, INSTANCE).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn model_exports_qubo_and_ising() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_graph(dir.path());
    let out = run(&["model", "--graph", &g, "--p1", "7.2", "--p2", "3.6"]);
    let qubo: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(qubo["registry"].as_array().unwrap().len(), 14);
    assert_eq!(qubo["p1"], 7.2);

    let out = run(&[
        "model", "--graph", &g, "--p1", "7.2", "--p2", "3.6", "--export", "ising",
    ]);
    let ising: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(ising["n_qubits"], 14);
}

#[test]
fn oracle_lists_optimal_sets() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_graph(dir.path());
    let text = String::from_utf8(run(&["oracle", "--graph", &g]).stdout).unwrap();
    assert!(text.starts_with("size 2"));
    assert!(text.contains("100010") && text.contains("010001"));
}

#[test]
fn solve_sweep_report_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_graph(dir.path());
    let solve_dir = dir.path().join("solve");
    let out = run(&[
        "solve",
        "--graph",
        &g,
        "--q",
        "1",
        "--p1-mult",
        "1.2",
        "--rate",
        "0.5",
        "--max-evals",
        "20",
        "--shots",
        "500",
        "--out",
        solve_dir.to_str().unwrap(),
    ]);
    let records = read_records(out.stdout.as_slice()).unwrap();
    assert_eq!(records.len(), 1);
    assert_eq!(records[0].n_evals, 20);
    let id = "q1_p1.2_r0.5_m20_s0";
    for f in [
        format!("dist_{id}.tsv"),
        format!("trace_{id}.csv"),
        format!("record_{id}.csv"),
    ] {
        assert!(solve_dir.join(&f).is_file(), "{f} missing");
    }

    let cfg = dir.path().join("grid.json");
    fs::write(
        &cfg,
        r#"{"q":[1],"p1_multipliers":[1.2],"rates":[0.5,1.0],"max_evals":[10],"shots":200}"#,
    )
    .unwrap();
    let sweep_dir = dir.path().join("sweep");
    let sweep = sweep_dir.to_str().unwrap();
    let text = String::from_utf8(
        run(&[
            "sweep",
            "--graph",
            &g,
            "--config",
            cfg.to_str().unwrap(),
            "--out",
            sweep,
        ])
        .stdout,
    )
    .unwrap();
    assert!(text.starts_with("2 records:"), "{text}");
    let records = read_records(fs::File::open(sweep_dir.join("records.csv")).unwrap()).unwrap();
    assert_eq!(records.len(), 2);
    assert!(sweep_dir.join("summary.csv").is_file());

    let report_dir = dir.path().join("report");
    let csv = sweep_dir.join("records.csv");
    let text = String::from_utf8(
        run(&[
            "report",
            "--records",
            csv.to_str().unwrap(),
            "--fraction",
            "0.5",
            "--out",
            report_dir.to_str().unwrap(),
        ])
        .stdout,
    )
    .unwrap();
    assert!(text.contains("top 1 selected"), "{text}");
    for f in ["report_layers.csv", "report_top.csv", "report_counts.csv"] {
        assert!(report_dir.join(f).is_file(), "{f} missing");
    }
}

#[test]
fn bad_inputs_fail_cleanly() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "0 0\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_pdp-qaoa"))
        .args(["oracle", "--graph", bad.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(!out.status.success());
    assert!(!out.stderr.is_empty());
}
