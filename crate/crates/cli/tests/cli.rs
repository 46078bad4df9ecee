use std::process::{Command, Output};

fn powsum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_powsum")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    serde_json::from_slice(&powsum(&all).stdout).expect("valid JSON")
}

#[test]
fn compute_reports_witnesses() {
    let o = powsum(&["compute", "24", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("S_2(24) = 4900"));
    assert!(stdout(&o).contains("witness: 70^2"));

    let v = json(&["compute", "2", "1"]);
    assert_eq!(v["outputs"]["t"]["value"], "7");
    assert_eq!(v["outputs"]["t"]["witnesses"], serde_json::json!([]));
    let v = json(&["compute", "3", "3"]);
    assert_eq!(v["outputs"]["t"]["value"], "405");
    assert_eq!(v["outputs"]["t"]["witnesses"], serde_json::json!([]));
}

#[test]
fn digit_guard_is_a_usage_error() {
    let o = powsum(&["compute", "2", "100000", "--max-digits", "1000"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--max-digits"));
}

#[test]
fn bounds_examples() {
    let v = json(&["bounds", "9", "5"]);
    assert_eq!(v["outputs"]["first"]["kind"], serde_json::json!({"kind": "UpperBound", "n_max": 3}));
    let v = json(&["bounds", "4"]);
    let rows = v["outputs"].as_array().unwrap();
    for class in ["k = 1", "k = 2", "k >= 4 even"] {
        let row = rows.iter().find(|r| r["class"] == class).unwrap();
        assert_eq!(row["outcome"]["kind"]["kind"], "NoSolutionForNGe2", "{class}");
    }
    let v = json(&["bounds", "2"]);
    let published: Vec<u64> =
        v["outputs"].as_array().unwrap().iter().map(|r| r["published"].as_u64().unwrap()).collect();
    assert_eq!(published, vec![7500, 3200, 45000]);
    assert!(v["outputs"].as_array().unwrap().iter().all(|r| r["certified"] == true));
}

#[test]
fn sieve_verdicts_and_exit_codes() {
    let o = powsum(&["sieve", "2", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict: Proven"));
    let o = powsum(&["sieve", "5", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let o = powsum(&["sieve", "2", "9"]);
    assert!(stdout(&o).contains("reduces to exponents [3]"));
    assert_eq!(o.status.code(), Some(0));
    let o = powsum(&["sieve", "2", "3", "--max-primes", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("Undecided"));
    assert_eq!(powsum(&["sieve", "2", "1"]).status.code(), Some(2));
    assert_eq!(powsum(&["sieve", "2", "3", "--max-modulus", "lots"]).status.code(), Some(2));
    assert_eq!(powsum(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn sieve_checkpoint_resumes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.json");
    let p = path.to_str().unwrap();
    let first = powsum(&["sieve", "5", "3", "--max-primes", "4", "--checkpoint", p]);
    assert_eq!(first.status.code(), Some(1));
    // The stored state is Undecided at 4 primes; a fresh file with a larger budget finishes.
    std::fs::remove_file(&path).unwrap();
    let v = json(&["sieve", "5", "3", "--checkpoint", p, "--checkpoint-every", "1"]);
    assert_eq!(v["verdict"], "Proven");
    let again = json(&["sieve", "5", "3", "--checkpoint", p]);
    assert_eq!(again["outputs"][0]["resumed"], true);
    assert_eq!(again["outputs"][0]["primes_used"], v["outputs"][0]["primes_used"]);

    std::fs::write(&path, "{\"format_version\": 7}").unwrap();
    let bad = powsum(&["sieve", "5", "3", "--checkpoint", p]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("format version 7"));
}

#[test]
fn search_examples() {
    let v = json(&["search", "--x-min", "2", "--x-max", "2", "--k-max", "2", "--n-max", "2"]);
    assert_eq!(v["outputs"]["hits"][0]["root"], "5");
    assert_eq!(v["outputs"]["hits"][0]["in_scope"], false);
    let v = json(&["search", "--x-min", "1", "--x-max", "1", "--k-max", "5", "--n-max", "12"]);
    assert!(v["notices"][0].as_str().unwrap().contains("out of scope"));
    assert_eq!(v["verdict"], "Success");
}

#[test]
fn reports_are_stable_apart_from_timings() {
    let strip = |mut v: serde_json::Value| {
        v.as_object_mut().unwrap().remove("timings_ms");
        v
    };
    for args in [&["prove", "9"][..], &["sieve", "3", "15"], &["bounds", "13"]] {
        assert_eq!(strip(json(args)), strip(json(args)), "{args:?}");
    }
}

#[test]
fn config_file_presets_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("powsum.toml");
    std::fs::write(&cfg, "max-primes = 1\n").unwrap();
    let c = cfg.to_str().unwrap();
    assert_eq!(powsum(&["--config", c, "sieve", "2", "3"]).status.code(), Some(1));
    assert_eq!(powsum(&["--config", c, "sieve", "2", "3", "--max-primes", "50"]).status.code(), Some(0));
    std::fs::write(&cfg, "max_primes = 1\n").unwrap();
    assert_eq!(powsum(&["--config", c, "sieve", "2", "3"]).status.code(), Some(2));
}

#[test]
fn prove_verdicts() {
    let o = powsum(&["prove", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict: Proven"));

    let o = powsum(&["prove", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("TRUNCATED: sieve (y > 10^6) covered n <= 50 of n <= 3200"));
    assert!(text.contains("verdict: Partial"));

    let o = powsum(&["prove", "11", "--full-scale"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("Deferred"));
    assert!(stdout(&o).contains("--checkpoint"));

    assert_eq!(powsum(&["prove", "14"]).status.code(), Some(2));
}

#[test]
fn tables_pass_and_write_files() {
    let dir = tempfile::tempdir().unwrap();
    let o = powsum(&["tables", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(dir.path().join("tables.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 144);
    assert!(csv.lines().skip(1).all(|l| l.ends_with("true,true")));
    let text = stdout(&o);
    assert!(text.contains("case I   x=2  epsilon=0.3560 ok"));
    assert!(text.contains("case III x=11 epsilon=-0.9118 ok"));
    assert!(text.contains("C=0.2659 ok"));
    assert!(text.contains("hprime_offset=1.7999 ok"));
}
