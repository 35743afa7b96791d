use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_pi-prover");

fn repo_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).env_remove("PI_PROVER_DATA").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn schema() -> jsonschema::JSONSchema {
    let text = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/report.schema.json")).unwrap();
    let value: Value = serde_json::from_str(&text).unwrap();
    jsonschema::JSONSchema::compile(&value).unwrap()
}

fn assert_valid(json: &str) {
    let value: Value = serde_json::from_str(json).unwrap();
    let schema = schema();
    let msgs: Vec<String> = match schema.validate(&value) {
        Ok(()) => Vec::new(),
        Err(errors) => errors.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    };
    assert!(msgs.is_empty(), "schema violations: {msgs:?}");
}

#[test]
fn prove_degree_17_prints_the_constants() {
    let o = run(&["prove", "--degree", "17"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("z = -1/85184000\n"), "{text}");
    assert!(text.contains("a = 10177/580800 * sqrt(330)"));
    assert!(text.contains("b = 43617/96800 * sqrt(330)"));
    assert!(text.contains("sha256 "));
    assert!(!text.contains("FAILED"));
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(code(&run(&["prove", "--degree", "9"])), 64);
    assert_eq!(code(&run(&["prove"])), 64);
    assert_eq!(code(&run(&["frobnicate"])), 64);
    assert_eq!(code(&run(&["prove", "--degree", "17", "--precision", "5"])), 64);
    assert_eq!(code(&run(&["verify-series", "--digits", "100"])), 64);
    assert_eq!(code(&run(&["verify-series", "--degree", "17", "--digits", "20"])), 64);
    assert_eq!(code(&run(&["validate-modeq", "--degree", "17", "--tau", "abc"])), 64);
    assert_eq!(code(&run(&["constants", "e"])), 64);
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn verify_series_degree_41() {
    let o = run(&["--json", "verify-series", "--degree", "41", "--digits", "1000"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["verification"]["digits_matched"].as_u64().unwrap() >= 1000);
    assert!(v["verification"]["terms_used"].as_u64().unwrap() <= 78);
    assert_eq!(v["params"]["z"], "-1/151931373056000");
}

#[test]
fn shipped_params_files_verify() {
    for name in ["degree17.json", "degree41.json", "positive_4_125.json", "positive_64_614125.json"] {
        let path = repo_root().join("data/series").join(name);
        let o = run(&["verify-series", "--params", path.to_str().unwrap(), "--digits", "300"]);
        assert_eq!(code(&o), 0, "{name}: {}", stdout(&o));
    }
}

#[test]
fn wrong_series_is_a_certified_failure() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"z": "-1/85184000", "a": {"coefficient": "10177/580801", "radicand": 330}, "b": {"coefficient": "43617/96800", "radicand": 330}}"#).unwrap();
    let o = run(&["--json", "verify-series", "--params", path.to_str().unwrap(), "--digits", "100"]);
    assert_eq!(code(&o), 2);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["verification"]["digits_matched"].as_u64().unwrap() < 10);

    std::fs::write(&path, r#"{"z": "-2", "a": {"coefficient": "1"}, "b": {"coefficient": "1"}}"#).unwrap();
    assert_eq!(code(&run(&["verify-series", "--params", path.to_str().unwrap()])), 2);
    std::fs::write(&path, "{not json").unwrap();
    assert_eq!(code(&run(&["verify-series", "--params", path.to_str().unwrap()])), 64);
}

/// Every report kind validates against the schema and re-serializes byte-identically.
#[test]
fn json_reports_round_trip_and_match_the_schema() {
    use pi_prover_cli::report::{AllReport, ConstantReport, ProofReport, SeriesReport, ValidationJson};

    fn again<T: serde::Serialize + serde::de::DeserializeOwned>(text: &str) -> String {
        let value: T = serde_json::from_str(text).unwrap();
        serde_json::to_string_pretty(&value).unwrap() + "\n"
    }

    let cases: Vec<(Vec<&str>, fn(&str) -> String)> = vec![
        (vec!["--json", "prove", "--degree", "17"], again::<ProofReport>),
        (vec!["--json", "prove", "--degree", "7", "--precision", "120", "--verify-digits", "200"], again::<ProofReport>),
        (vec!["--json", "verify-series", "--degree", "5", "--digits", "200"], again::<SeriesReport>),
        (vec!["--json", "validate-modeq", "--degree", "11", "--tau", "13/10"], again::<ValidationJson>),
        (vec!["--json", "constants", "pi", "--digits", "60"], again::<ConstantReport>),
        (vec!["--json", "all", "--digits", "200"], again::<AllReport>),
    ];
    for (args, reserialize) in cases {
        let o = run(&args);
        assert_eq!(code(&o), 0, "{args:?}");
        let text = stdout(&o);
        assert_valid(&text);
        assert_eq!(reserialize(&text), text, "{args:?}");
    }
}

#[test]
fn proof_json_contents() {
    let o = run(&["--json", "prove", "--degree", "17"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["params"]["z"], "-1/85184000");
    assert_eq!(v["params"]["a"]["coefficient"], "10177/580800");
    assert_eq!(v["params"]["a"]["radicand"], 330);
    // sqrt(67)/34 and 1/34
    assert!(v["chain"]["m0"]["re"].as_str().unwrap().starts_with("2.40745669760954410880"));
    assert!(v["chain"]["m0"]["im"].as_str().unwrap().starts_with("2.94117647058823529411"));
    assert!(v["residuals"]["polynomial"]["rad_exp"].as_i64().unwrap() <= -170);
    let text = std::fs::read(repo_root().join("data/phi17.txt")).unwrap();
    assert_eq!(v["polynomial"]["sha256"], pi_prover_cli::sha256_hex(&text));
    assert_eq!(v["checks"]["confirmed"], true);
}

fn perturbed_data_dir() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    for d in [5, 7, 11, 17, 41] {
        let name = format!("phi{d}.txt");
        let mut text = std::fs::read_to_string(repo_root().join("data").join(&name)).unwrap();
        if d == 17 {
            text = text.replace("\n272 8 2\n", "\n273 8 2\n");
        }
        std::fs::write(dir.path().join(name), text).unwrap();
    }
    dir
}

#[test]
fn data_directory_overrides() {
    let dir = perturbed_data_dir();
    let d = dir.path().to_str().unwrap();

    let flag = run(&["prove", "--degree", "17", "--data-dir", d]);
    assert_eq!(code(&flag), 2, "{}", String::from_utf8_lossy(&flag.stderr));
    let env = Command::new(BIN).args(["validate-modeq", "--degree", "17"]).env("PI_PROVER_DATA", d).output().unwrap();
    assert_eq!(code(&env), 2);
    assert!(stdout(&env).contains(d));
    let ok = Command::new(BIN).args(["prove", "--degree", "41"]).env("PI_PROVER_DATA", d).output().unwrap();
    assert_eq!(code(&ok), 0);

    let file = dir.path().join("phi17.txt");
    let direct = run(&["validate-modeq", "--degree", "17", "--poly-file", file.to_str().unwrap()]);
    assert_eq!(code(&direct), 2);
}

#[test]
fn malformed_polynomial_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.txt");
    std::fs::write(&path, "# weber degree=17 form=raw24\n1 18\n").unwrap();
    let o = run(&["prove", "--degree", "17", "--poly-file", path.to_str().unwrap()]);
    assert_eq!(code(&o), 64);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    let missing = run(&["prove", "--degree", "17", "--poly-file", "/nonexistent/phi17.txt"]);
    assert_eq!(code(&missing), 64);
    // a file for the wrong degree
    let other = repo_root().join("data/phi41.txt");
    assert_eq!(code(&run(&["prove", "--degree", "17", "--poly-file", other.to_str().unwrap()])), 64);
}

#[test]
fn pi_digits() {
    let o = run(&["constants", "pi", "--digits", "30"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "3.141592653589793238462643383279\n");
}

#[test]
fn all_passes_at_default_settings() {
    let o = run(&["all"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert_eq!(text.matches("PASS").count(), 5);
    assert!(text.contains("all degrees pass"));
}
