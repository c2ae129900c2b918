//! End-to-end tests of the binary: golden output, exit codes, determinism
//! across runs and thread counts, and CSV round-tripping.

use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ergodic-align"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

#[test]
fn table_matches_reference_values() {
    let out = run(&["table"]);
    assert!(out.status.success());
    let text = stdout_str(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "tuple,n,beta_1,beta_2,beta_3,d_markov,d_harmonic,d_integral,d_digamma,agree"
    );
    assert_eq!(
        lines.next().unwrap(),
        "2-4,64,0.7500,0.2500,,0.7500000000,0.7500000000,0.7500000000,0.7500000000,ok"
    );
    assert!(text.contains("6-10,64,0.6429,0.3571,,1.8607392607"));
    assert!(text.contains("4-4-4,64,0.3333,0.3333,0.3333,0.9789682540"));
    assert_eq!(text.lines().count(), 10);
}

#[test]
fn table_output_is_byte_identical_across_runs() {
    let a = run(&["table"]);
    let b = run(&["table"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn table_csv_round_trips_byte_identically() {
    let out = run(&["table"]);
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .from_reader(out.stdout.as_slice());
    let mut wtr = csv::Writer::from_writer(Vec::new());
    for record in rdr.records() {
        wtr.write_record(&record.unwrap()).unwrap();
    }
    assert_eq!(wtr.into_inner().unwrap(), out.stdout);
}

#[test]
fn table_single_pair_scheme() {
    let out = run(&["table", "--tuples", "2"]);
    assert!(out.status.success());
    let text = stdout_str(&out);
    assert!(text.contains("2,64,1.0000,1.0000000000"));
}

#[test]
fn table_absolute_delays_scale_by_n() {
    let out = run(&["table", "--tuples", "2,4", "--n", "64", "--absolute"]);
    let text = stdout_str(&out);
    assert!(
        text.contains("2-4,64,0.7500,0.2500,48.0000000000"),
        "{text}"
    );
}

#[test]
fn sweep_outputs_decreasing_delays() {
    let out = run(&["sweep", "--size", "4", "--max-n", "8"]);
    assert!(out.status.success());
    let text = stdout_str(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "sets,delay");
    assert_eq!(lines.next().unwrap(), "1,1.8333333333");
    let delays: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(delays.len(), 8);
    assert!(delays.windows(2).all(|w| w[1] < w[0]));
    assert!((delays[2] - 0.9790).abs() < 5e-5);
}

#[test]
fn tradeoff_endpoints_match_pure_schemes() {
    let out = run(&[
        "tradeoff",
        "--alpha-grid",
        "0,0.5,1",
        "--snr",
        "1.5",
        "--users",
        "1",
    ]);
    assert!(out.status.success());
    let text = stdout_str(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "alpha,delay,rate_1");
    assert_eq!(
        lines.next().unwrap(),
        "0.0000000000,1.0000000000,1.0000000000"
    );
    assert_eq!(
        lines.next().unwrap(),
        "0.5000000000,0.8750000000,0.9627298413"
    );
    assert_eq!(
        lines.next().unwrap(),
        "1.0000000000,0.7500000000,0.9254596826"
    );
}

#[test]
fn simulate_is_deterministic_across_thread_counts() {
    let args = [
        "simulate", "--tuple", "2,4", "--trials", "20000", "--seed", "7",
    ];
    let single = bin()
        .args(args)
        .env("RAYON_NUM_THREADS", "1")
        .output()
        .unwrap();
    let multi = bin()
        .args(args)
        .env("RAYON_NUM_THREADS", "4")
        .output()
        .unwrap();
    assert!(single.status.success());
    assert_eq!(single.stdout, multi.stdout);

    let repeat = bin()
        .args(args)
        .env("RAYON_NUM_THREADS", "4")
        .output()
        .unwrap();
    assert_eq!(multi.stdout, repeat.stdout);
}

#[test]
fn simulate_csv_round_trips_byte_identically() {
    let out = run(&[
        "simulate", "--tuple", "2,4", "--tuple", "2,6", "--trials", "5000", "--seed", "3",
    ]);
    assert!(out.status.success());
    let rows = ergodic_align::report::read_comparison_csv(out.stdout.as_slice()).unwrap();
    assert_eq!(rows.len(), 4);
    let mut again = Vec::new();
    ergodic_align::report::write_comparison_csv(&rows, &mut again).unwrap();
    assert_eq!(out.stdout, again);
}

#[test]
fn simulate_exit_codes() {
    // Zero trials is a usage error.
    let out = run(&["simulate", "--tuple", "2,4", "--trials", "0"]);
    assert_eq!(out.status.code(), Some(1));
    // Alphabet below the validity bound is a validation failure.
    let out = run(&["simulate", "--tuple", "2,4", "--n", "4", "--trials", "10"]);
    assert_eq!(out.status.code(), Some(2));
    // Odd set size is a validation failure.
    let out = run(&["simulate", "--tuple", "2,3", "--trials", "10"]);
    assert_eq!(out.status.code(), Some(2));
    // Unknown flags are usage errors.
    let out = run(&["simulate", "--tuple", "2,4", "--bogus"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["nonsense"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn simulate_small_alphabet_concordance() {
    // Exit code 0 certifies every z-score stayed within 4 standard errors.
    let out = run(&[
        "simulate", "--tuple", "2,6", "--n", "32", "--trials", "100000", "--seed", "11",
    ]);
    assert!(out.status.success());
    let rows = ergodic_align::report::read_comparison_csv(out.stdout.as_slice()).unwrap();
    assert_eq!(rows[0].delay_analytic, rows[1].delay_analytic);
    assert!((rows[0].delay_analytic - 0.8333).abs() < 5e-5);
    assert!((rows[0].delay_hat - 0.8333).abs() < 0.01);
}

#[test]
fn json_format_parses() {
    let out = run(&["table", "--tuples", "2,4", "--format", "json"]);
    assert!(out.status.success());
    let rows: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rows[0]["tuple"], "2-4");
    assert_eq!(rows[0]["beta_1"], "0.7500");

    let out = run(&[
        "simulate", "--tuple", "2,4", "--trials", "1000", "--seed", "1", "--format", "json",
    ]);
    assert!(out.status.success());
    let rows: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rows[0]["size"], 2);
}

#[test]
fn config_file_supplies_defaults_and_flags_win() {
    let dir = std::env::temp_dir().join(format!("align-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let config_path = dir.join("run.json");
    std::fs::write(
        &config_path,
        r#"{"tuples": [[2, 4]], "n": 32, "trials": 1000, "seed": 5}"#,
    )
    .unwrap();

    let from_config = run(&["simulate", "--config", config_path.to_str().unwrap()]);
    assert!(from_config.status.success());
    let text = stdout_str(&from_config);
    assert!(text.contains("2-4,32,1000"), "{text}");

    // The explicit flag overrides the config's cardinality.
    let overridden = run(&[
        "simulate",
        "--config",
        config_path.to_str().unwrap(),
        "--n",
        "64",
    ]);
    let text = stdout_str(&overridden);
    assert!(text.contains("2-4,64,1000"), "{text}");

    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let out = run(&["table", "--config", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));

    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("align-cli-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("table.csv");
    let out = run(&["table", "--tuples", "2,4", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.starts_with("tuple,n,beta_1"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn validate_passes_quickly() {
    let out = run(&["validate", "--trials", "50000", "--seed", "9"]);
    assert!(out.status.success(), "{}", stdout_str(&out));
    let text = stdout_str(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 8);
}
