use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn catlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_catlab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("catlab-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write_state(name: &str, body: &str) -> String {
    let path = scratch(name);
    fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

const QUBIT_PAIR: &str = r#"[{"label": "A", "dim": 2, "party": "alice"}, {"label": "B", "dim": 2, "party": "bob"}]"#;

/// The value printed after `key` in a report.
fn field(report: &str, key: &str) -> String {
    report
        .lines()
        .find_map(|l| l.strip_prefix(key).filter(|rest| rest.starts_with(' ')).map(|rest| rest.trim().to_string()))
        .unwrap_or_else(|| panic!("no `{key}` in\n{report}"))
}

#[test]
fn analyze_bell_has_one_ebit() {
    let out = catlab(&["analyze", "bell"]);
    assert!(out.status.success());
    assert_eq!(field(&stdout(&out), "entanglement_entropy[A|B]"), "1.000000000000");
}

#[test]
fn analyze_product_file_has_no_entanglement() {
    let path = write_state(
        "product.json",
        &format!(r#"{{"layout": {QUBIT_PAIR}, "kind": "pure", "data": [[0,0],[1,0],[0,0],[0,0]]}}"#),
    );
    let out = catlab(&["analyze", &path]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(field(&stdout(&out), "entanglement_entropy[A|B]"), "0.000000000000");
}

#[test]
fn malformed_data_field_is_an_input_error() {
    let path = write_state(
        "malformed.json",
        &format!(r#"{{"layout": {QUBIT_PAIR}, "kind": "pure", "data": [[1,0],"oops",[0,0],[0,0]]}}"#),
    );
    let out = catlab(&["analyze", &path]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("data[1]"), "{}", stderr(&out));
}

#[test]
fn unnormalized_state_reports_deviation() {
    let path = write_state(
        "long.json",
        &format!(r#"{{"layout": {QUBIT_PAIR}, "kind": "pure", "data": [[1,0],[1,0],[0,0],[0,0]]}}"#),
    );
    let out = catlab(&["analyze", &path]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("deviation"), "{}", stderr(&out));
}

#[test]
fn missing_file_is_an_input_error() {
    let out = catlab(&["analyze", "/nonexistent/state.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn simulate_passes_with_expected_bound() {
    let out = catlab(&["simulate", "bell", "bell", "--n", "2", "--epsilon", "1e-4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(field(&text, "decoupling_bound"), "0.030100000000");
    assert_eq!(field(&text, "certificate"), "PASS");
    assert_eq!(field(&text, "catalyst_deviation"), "0.000000000000");
}

#[test]
fn simulate_exact_case_has_zero_errors() {
    let out = catlab(&["simulate", "bell", "bell", "--epsilon", "0"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for key in ["output_error", "decoupling_error", "catalyst_deviation", "ideal_distance"] {
        assert_eq!(field(&text, key), "0.000000000000", "{key}");
    }
}

#[test]
fn simulate_over_cap_exits_three() {
    let out = catlab(&["simulate", "bell", "bell", "--n", "5"]);
    assert_eq!(out.status.code(), Some(3));
    let err = stderr(&out);
    assert!(err.contains("5120") && err.contains("4096"), "{err}");
    let out = catlab(&["simulate", "bell", "bell", "--n", "3", "--dim-cap", "100"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn simulate_writes_final_state() {
    let path = scratch("final.json");
    let out = catlab(&["simulate", "bell", "bell", "--epsilon", "0.01", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(json["kind"], "density");
    assert_eq!(json["layout"].as_array().unwrap().len(), 5);
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let a = catlab(&["simulate", "bell", "bell", "--epsilon", "0.01"]);
    let b = catlab(&["simulate", "bell", "bell", "--epsilon", "0.01"]);
    assert_eq!(a.stdout, b.stdout);
    let a = catlab(&["analyze", "random:2x3", "--seed", "9"]);
    let b = catlab(&["analyze", "random:2x3", "--seed", "9"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn find_catalyst_on_jonathan_plenio_pair() {
    let out = catlab(&["find-catalyst", "jp-psi", "jp-phi", "--catalyst-dim", "2", "--grid-steps", "100"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(field(&text, "direct"), "false");
    let spectrum: Vec<f64> = field(&text, "catalyst").split(' ').map(|x| x.parse().unwrap()).collect();
    assert!((spectrum[0] - 0.6).abs() <= 0.01 && (spectrum[1] - 0.4).abs() <= 0.01);
}

#[test]
fn convert_reports_violated_index() {
    let out = catlab(&["convert", "jp-psi", "jp-phi"]);
    assert!(out.status.success());
    assert_eq!(field(&stdout(&out), "violated_index"), "2");
    let out = catlab(&["convert", "bell", "bell"]);
    assert_eq!(field(&stdout(&out), "direct"), "true");
}

#[test]
fn merge_ledger_on_ghz_is_case_zero() {
    let out = catlab(&["merge-ledger", "ghz"]);
    assert!(out.status.success());
    assert_eq!(field(&stdout(&out), "case"), "zero");
}

#[test]
fn distill_ledger_on_w() {
    let path = scratch("w-ledger.json");
    let out = catlab(&["distill-ledger", "w", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let entropy: f64 = field(&stdout(&out), "resource_entropy").parse().unwrap();
    assert!((entropy - 0.918296).abs() < 1e-6);
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(json["direction"], "merge_C_to_B");
}

#[test]
fn ledger_rejects_mixed_state() {
    let path = write_state(
        "mixed.json",
        &format!(
            r#"{{"layout": {QUBIT_PAIR}, "kind": "density", "data": [
                [[0.25,0],[0,0],[0,0],[0,0]], [[0,0],[0.25,0],[0,0],[0,0]],
                [[0,0],[0,0],[0.25,0],[0,0]], [[0,0],[0,0],[0,0],[0.25,0]]]}}"#
        ),
    );
    let out = catlab(&["merge-ledger", &path]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("pure"), "{}", stderr(&out));
}

#[test]
fn sweep_emits_table() {
    let out = catlab(&["sweep", "bell", "bell", "--epsilon", "0.1,0.01,0.001"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,epsilon,output_error,catalyst_deviation,decoupling_error,decoupling_bound,pass");
    assert_eq!(lines.len(), 4);
    let errors: Vec<f64> = lines[1..].iter().map(|l| l.split(',').nth(2).unwrap().parse().unwrap()).collect();
    assert!(errors.windows(2).all(|w| w[1] < w[0]));

    let path = scratch("sweep.csv");
    let out = catlab(&["sweep", "bell", "bell", "--n", "1,2", "--epsilon", "0.05", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(fs::read_to_string(&path).unwrap().lines().count(), 3);
}

#[test]
fn sweep_rejects_two_varying_parameters() {
    let out = catlab(&["sweep", "bell", "bell", "--n", "1,2", "--epsilon", "0.1,0.01"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_flag_is_an_input_error() {
    let out = catlab(&["simulate", "bell", "bell", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
}
