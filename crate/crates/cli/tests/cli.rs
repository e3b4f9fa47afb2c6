use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn qvar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qvar"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("json report")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn medical_report_fields() {
    let v = json_of(&qvar(&["medical", "--seed", "3", "--n", "200000"]));
    for key in [
        "rho",
        "bayes_closed",
        "bayes_mc",
        "mc_se",
        "quantum",
        "paper_reported",
    ] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert!((v["quantum"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-12);
    assert_eq!(v["paper_reported"].as_f64(), Some(0.43));
    assert_eq!(v["reported_discrepancy"].as_bool(), Some(true));
    let (mc, closed, se) = (
        v["bayes_mc"].as_f64().unwrap(),
        v["bayes_closed"].as_f64().unwrap(),
        v["mc_se"].as_f64().unwrap(),
    );
    assert!((mc - closed).abs() < 3.0 * se);
}

#[test]
fn stochastic_runs_are_byte_identical() {
    for args in [
        &[
            "chsh",
            "--angles",
            "0,90,45,-45",
            "--n",
            "20000",
            "--seed",
            "7",
        ][..],
        &["medical", "--seed", "11", "--n", "50000"],
        &[
            "inference",
            "--seed",
            "5",
            "--n",
            "20000",
            "--random-pairs",
            "2",
            "--mse",
            "4",
        ],
        &["born", "--sweep", "--n", "50", "--seed", "2"],
        &["measure", "--sweep", "--n", "10", "--seed", "2"],
        &["chsh", "--n", "100", "--seed", "1", "--format", "csv"],
    ] {
        let a = qvar(args);
        let b = qvar(args);
        assert!(a.status.success(), "{args:?}: {}", stderr(&a));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        let mut seq = args.to_vec();
        seq.push("--sequential");
        assert_eq!(a.stdout, qvar(&seq).stdout, "{args:?} sequential");
    }
}

#[test]
fn different_seeds_differ() {
    let a = qvar(&["chsh", "--n", "1000", "--seed", "1"]);
    let b = qvar(&["chsh", "--n", "1000", "--seed", "2"]);
    assert_ne!(a.stdout, b.stdout);
}

#[test]
fn chsh_optimal_angles() {
    let v = json_of(&qvar(&[
        "chsh",
        "--angles",
        "0,90,45,-45",
        "--n",
        "100000",
        "--seed",
        "7",
    ]));
    assert!(v["s"].as_f64().unwrap().abs() > 2.7);
    assert_eq!(v["classical_max"].as_i64(), Some(2));
    assert_eq!(v["cells"].as_array().unwrap().len(), 4);
}

#[test]
fn chsh_trial_log() {
    let dir = tempfile::tempdir().unwrap();
    let log = dir.path().join("log.csv");
    let out = qvar(&[
        "chsh",
        "--n",
        "10",
        "--seed",
        "4",
        "--log",
        log.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let csv = std::fs::read_to_string(&log).unwrap();
    assert!(csv.starts_with("trial,setting_a,setting_b,outcome_a,outcome_b\n"));
    assert_eq!(csv.lines().count(), 11);
    let direct = qvar(&["chsh", "--n", "10", "--seed", "4", "--format", "csv"]);
    assert_eq!(direct.stdout, csv.as_bytes());
}

#[test]
fn spin_check_residuals() {
    let v = json_of(&qvar(&["spin", "--r", "1", "--check"]));
    assert!(v["check"]["commutation"].as_f64().unwrap() < 1e-12);
    assert!(v["check"]["residuals"]["casimir"].as_f64().unwrap() < 1e-10);
    assert_eq!(v["check"]["full_turn"]["sign"].as_i64(), Some(1));
    let v = json_of(&qvar(&["spin", "--r", "0.5", "--direction", "0,0,-1"]));
    assert_eq!(v["coherent_state"]["re"], serde_json::json!([0.0, 1.0]));
    let v = json_of(&qvar(&["spin", "--resolution", "0.5,1,1.5,2"]));
    for row in v["resolution"].as_array().unwrap() {
        assert!(row["deviation"].as_f64().unwrap() < 1e-8);
    }
}

#[test]
fn born_single_pair() {
    let v = json_of(&qvar(&["born", "--angle", "60"]));
    assert!((v["transition"]["plus"].as_f64().unwrap() - 0.75).abs() < 1e-12);
    assert!((v["abstract"]["plus"].as_f64().unwrap() - 0.75).abs() < 1e-10);
    let out = qvar(&["born", "--a", "1,0,0", "--b", "0,1,0", "--format", "csv"]);
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("a\\b,"));
}

#[test]
fn exit_codes() {
    let missing_seed = qvar(&["chsh", "--n", "10"]);
    assert_eq!(missing_seed.status.code(), Some(2));
    assert!(stderr(&missing_seed).contains("--seed"));

    assert_eq!(qvar(&["chsh", "--bogus"]).status.code(), Some(2));
    assert_eq!(qvar(&["nosuch"]).status.code(), Some(2));
    assert_eq!(qvar(&["groups", "--format", "csv"]).status.code(), Some(2));
    assert_eq!(qvar(&["--help"]).status.code(), Some(0));

    let domain = qvar(&["spin", "--r", "0.3"]);
    assert_eq!(domain.status.code(), Some(1));
    assert!(stderr(&domain).contains("InvalidInput"));

    let zero = qvar(&["chsh", "--n", "0", "--seed", "1"]);
    assert_eq!(zero.status.code(), Some(1));

    let few = qvar(&["medical", "--n", "10", "--seed", "1"]);
    assert_eq!(few.status.code(), Some(1));
}

#[test]
fn config_file_and_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let toml = write(
        dir.path(),
        "run.toml",
        "seed = 9\nn = 20000\nangles = [0.0, 90.0, 45.0, -45.0]\n",
    );
    let from_cfg = json_of(&qvar(&["chsh", "--config", &toml]));
    assert_eq!(from_cfg["seed"].as_u64(), Some(9));
    assert_eq!(from_cfg["n_trials"].as_u64(), Some(20000));
    let flags = json_of(&qvar(&[
        "chsh", "--config", &toml, "--seed", "10", "--n", "500",
    ]));
    assert_eq!(flags["seed"].as_u64(), Some(10));
    assert_eq!(flags["n_trials"].as_u64(), Some(500));
    assert_eq!(flags["angles_deg"][3].as_f64(), Some(-45.0));

    let json = write(
        dir.path(),
        "run.json",
        r#"{"seed": 9, "n": 20000, "angles": [0, 90, 45, -45]}"#,
    );
    assert_eq!(
        qvar(&["chsh", "--config", &json]).stdout,
        qvar(&["chsh", "--config", &toml]).stdout
    );

    let bad = write(dir.path(), "bad.toml", "seed = 1\nspeed = 3\n");
    let out = qvar(&["chsh", "--config", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("speed"));
    // keys of another subcommand are rejected too
    let other = write(dir.path(), "other.toml", "seed = 1\nrho = 0.2\n");
    assert_eq!(qvar(&["chsh", "--config", &other]).status.code(), Some(2));
}

#[test]
fn out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = qvar(&["groups", "--out", path.to_str().unwrap()]);
    assert!(out.status.success() && out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["passes"].as_bool(), Some(true));
}

#[test]
fn groups_from_spec() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(
        dir.path(),
        "g.json",
        r#"{"order": 2, "cayley": [[0,1],[1,0]], "space": ["-2","-1","1","2"], "action": [[0,1,2,3],[3,2,1,0]]}"#,
    );
    let map = write(dir.path(), "m.json", r#"["2","1","1","2"]"#);
    let v = json_of(&qvar(&["groups", "--spec", &spec, "--map", &map]));
    assert_eq!(v["orbits"].as_array().unwrap().len(), 2);
    assert_eq!(v["permissible"].as_bool(), Some(true));
    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"order": 2, "cayley": [[0,1],[0,1]], "space": ["x"], "action": [[0],[0]]}"#,
    );
    let out = qvar(&["groups", "--spec", &bad]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("InvalidGroup"));
}

#[test]
fn measure_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let variable = write(
        dir.path(),
        "v.json",
        r#"{"name": "z", "values": [-1, 1],
            "projectors": [{"dim": 2, "re": [0,0,0,1], "im": [0,0,0,0]}, {"dim": 2, "re": [1,0,0,0], "im": [0,0,0,0]}]}"#,
    );
    let model = write(
        dir.path(),
        "m.json",
        r#"{"parameters": [-1, 1], "samples": ["lo", "hi"], "likelihood": [[0.8, 0.2], [0.2, 0.8]]}"#,
    );
    let state = write(
        dir.path(),
        "s.json",
        r#"{"dim": 2, "re": [1, 0], "im": [0, 0]}"#,
    );
    let v = json_of(&qvar(&[
        "measure",
        "--model",
        &model,
        "--variable",
        &variable,
        "--state",
        &state,
    ]));
    assert!(v["completeness_deviation"].as_f64().unwrap() < 1e-12);
    // state |0⟩ has value +1, so P(lo) = 0.2
    assert!((v["outcomes"][0]["probability"].as_f64().unwrap() - 0.2).abs() < 1e-12);
    let v = json_of(&qvar(&[
        "measure",
        "--model",
        &model,
        "--variable",
        &variable,
    ]));
    assert!((v["outcomes"][1]["probability"].as_f64().unwrap() - 0.5).abs() < 1e-12);
    let out = qvar(&["measure", "--model", &model]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn plain_format() {
    let out = qvar(&[
        "inference",
        "--seed",
        "1",
        "--n",
        "10000",
        "--format",
        "plain",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("experiments[0].exact = "));
    assert!(text.lines().all(|l| l.contains(" = ")));
}
