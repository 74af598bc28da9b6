mod common;

use std::process::{Command, Output};

use common::fixture;

fn run(args: &[&str]) -> Output {
    run_env(args, &[])
}

fn run_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_fano-locus"));
    cmd.args(args).env_remove("FANO_LOCUS_PRIMES");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().unwrap()
}

fn fx(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn codim_table_has_theorem_column() {
    let o = run(&["codim", "table", "--mmin", "5", "--mmax", "8", "--tsv"]);
    assert_eq!(o.status.code(), Some(0));
    let col: Vec<String> = stdout(&o).lines().skip(1).map(|l| l.rsplit('\t').next().unwrap().to_string()).collect();
    assert_eq!(col, ["2", "4", "7", "11"]);
    let o = run(&["codim", "table", "--mmin", "5", "--mmax", "8", "--json"]);
    let v = json(&o);
    assert_eq!(v["entries"][3]["theorem"]["bound"], 11);
}

#[test]
fn nf_bound_codim_three_point() {
    let o = run(&["nf", "bound", "--graph", &fx("remark1.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("c = 2 "));
    let o = run(&["--format", "json", "nf", "bound", "--graph", &fx("remark1.json")]);
    assert_eq!(json(&o)["bound"]["c"], "2");
}

#[test]
fn nf_bound_mixed_with_oracle() {
    let o = run(&["--format", "json", "nf", "bound", "--graph", &fx("mixed.json"), "--oracle"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["bound"]["mu"], "72/5");
    assert_eq!(v["oracle"]["mu"], "72/5");
    assert_eq!(v["oracle_agrees"], true);
    assert_eq!(v["slack"], "5");
}

#[test]
fn classify_wrong_point_length_is_malformed() {
    let o = run(&["classify", "--poly", &fx("bad.json"), "--point", "0,0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("expected 3"));
}

#[test]
fn classify_fixtures() {
    let o = run(&["classify", "--poly", &fx("rank5_singular.json"), "--point", "1,0,0,0,0,0"]);
    assert_eq!((o.status.code(), stdout(&o).trim()), (Some(0), "quadratic(rank 5)"));
    let o = run(&["classify", "--poly", &fx("fermat_quintic.json"), "--point", "1,-1,0,0,0,0"]);
    assert_eq!(stdout(&o).trim(), "smooth");
    let o = run(&["classify", "--poly", &fx("fermat_quintic.json"), "--point", "1,0,0,0,0,0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn classify_census_threshold() {
    let o = run(&[
        "classify",
        "--poly",
        &fx("rank5_singular.json"),
        "--point",
        "1,0,0,0,0,0",
        "--point",
        "0,1,0,0,0,0",
        "--threshold",
        "6",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["classify", "--poly", &fx("fermat_quintic.json"), "--sample", "30", "--prime", "11"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn regularity_exit_codes() {
    let pass = run(&["regularity", "--poly", &fx("power_sums.json"), "--point", "1,0,0,0,0,0"]);
    assert_eq!(pass.status.code(), Some(0));
    let fail = run(&["regularity", "--poly", &fx("common_factor.json"), "--point", "1,0,0,0,0,0"]);
    assert_eq!(fail.status.code(), Some(1));
    let one = run(&["regularity", "--poly", &fx("power_sums.json"), "--point", "1,0,0,0,0,0", "--prime", "31"]);
    assert_eq!(one.status.code(), Some(3));
    let tiny = run(&["--budget", "1", "regularity", "--poly", &fx("binomial_pieces.json"), "--point", "1,0,0,0,0,0"]);
    assert_eq!(tiny.status.code(), Some(3));
    let full = run(&["regularity", "--poly", &fx("binomial_pieces.json"), "--point", "1,0,0,0,0,0"]);
    assert_eq!(full.status.code(), Some(0));
}

#[test]
fn primes_from_environment() {
    let o = run_env(
        &["--format", "json", "regularity", "--poly", &fx("power_sums.json"), "--point", "1,0,0,0,0,0"],
        &[("FANO_LOCUS_PRIMES", "37,41,43")],
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["primes"], serde_json::json!([37, 41, 43]));
    let o = run_env(&["regularity", "--poly", &fx("power_sums.json"), "--point", "1,0,0,0,0,0"], &[("FANO_LOCUS_PRIMES", "12")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn blowup_commands() {
    let o = run(&["blowup", "verify", "--germ", &fx("germ_r5_k6.json"), "--rank", "5", "--samples", "20", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict: PASS"));
    let o = run(&["blowup", "verify", "--germ", &fx("germ_rank4.json"), "--rank", "5"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["blowup", "verify", "--germ", &fx("germ_cone.json"), "--rank", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["blowup", "chart", "--germ", &fx("germ_r5_k6.json"), "--chart", "6"]);
    assert_eq!(stdout(&o).trim(), "t1^2*z6 + t1^2 + t2^2 + t3^2 + t4^2 + t5^2");
    let o = run(&["blowup", "chart", "--germ", &fx("germ_r5_k6.json"), "--chart", "7"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn normalize_then_verify() {
    let o = run(&["blowup", "normalize", "--poly", &fx("affine_germ.json"), "--k", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!((v["n"].as_u64(), v["r"].as_u64(), v["k"].as_u64()), (Some(7), Some(5), Some(6)));
    let path = std::env::temp_dir().join(format!("normalized-germ-{}.json", std::process::id()));
    std::fs::write(&path, &o.stdout).unwrap();
    let o = run(&["blowup", "verify", "--germ", &path.to_string_lossy(), "--rank", "5"]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn census_commands() {
    let o = run(&["--format", "json", "census", "sym-rank", "--m", "3", "--r", "1", "--q", "5"]);
    assert_eq!(json(&o)["count"], "125");
    let o = run(&["census", "fit", "--m", "3", "--r", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("degree 5 (expected 5)"));
    let o = run(&["census", "sym-rank", "--m", "3", "--r", "1", "--q", "6"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn machine_output_is_byte_identical() {
    let runs: [&[&str]; 3] = [
        &["--format", "json", "--seed", "9", "blowup", "verify", "--germ", &fx("germ_r5_k6.json"), "--rank", "5"],
        &["--format", "json", "--seed", "9", "classify", "--poly", &fx("fermat_quintic.json"), "--sample", "25", "--prime", "11"],
        &["--format", "json", "--seed", "9", "census", "sym-rank", "--m", "4", "--r", "2", "--q", "7", "--mode", "sampled", "--samples", "5000"],
    ];
    for args in runs {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn every_subcommand_has_help() {
    for args in [
        &["classify", "--help"][..],
        &["regularity", "--help"],
        &["blowup", "verify", "--help"],
        &["blowup", "chart", "--help"],
        &["blowup", "normalize", "--help"],
        &["codim", "table", "--help"],
        &["census", "sym-rank", "--help"],
        &["census", "fit", "--help"],
        &["nf", "bound", "--help"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        assert!(stdout(&o).contains("Usage"), "{args:?}");
    }
}
