use std::path::PathBuf;
use std::process::Command;

use torfol_cli::commands::resolve_budget;
use torfol_cli::run;

fn torfol(args: &[&str]) -> torfol_cli::Outcome {
    run(std::iter::once("torfol").chain(args.iter().copied()))
}

fn write(dir: &tempfile::TempDir, name: &str, contents: &str) -> String {
    let path: PathBuf = dir.path().join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn fan_info_of_the_plane() {
    let out = torfol(&["fan-info", "--fan", "@p2"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("class group: Z\n"));
    assert!(out.stdout.contains("anticanonical degree: (3)"));
    assert!(out.stdout.ends_with("status: ok\n"));
}

#[test]
fn fake_plane_has_torsion() {
    let out = torfol(&["fan-info", "--fan", "@fake135"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("class group: Z x Z2 x Z3"), "{}", out.stdout);
}

#[test]
fn gamma_sets_of_the_hirzebruch_example() {
    let out = torfol(&["gamma", "--fan", "@h2", "--form", "@alpha10"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("Gamma_alpha: {(1,3), (2,4)}"));
    assert!(out.stdout.contains("Gamma^set_alpha,K: {(2,4)}"));
}

#[test]
fn output_is_deterministic() {
    let args = ["ideals", "--fan", "@h2", "--form", "@alpha10"];
    let a = torfol(&args);
    let b = torfol(&args);
    assert_eq!(a.code, 0, "{}", a.stderr);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn json_reports_parse() {
    let out = torfol(&["check", "--fan", "@p2", "--form", "@pencil", "--format", "json"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["ok"], serde_json::Value::Bool(true));
    assert_eq!(v["inputs"].as_array().unwrap().len(), 2);
    let keys: Vec<&str> = v["results"].as_array().unwrap().iter().map(|e| e["key"].as_str().unwrap()).collect();
    assert!(keys.contains(&"integrable"));
}

#[test]
fn mismatch_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    // z2 dz1 on P2 has degree 1 but contracts to z1 z2 with the radial field
    let form = write(&dir, "bad.json", r#"{"k": 1, "coeffs": {"1": "z2"}}"#);
    let out = torfol(&["check", "--fan", "@p2", "--form", &form]);
    assert_eq!(out.code, 1, "{}{}", out.stdout, out.stderr);
    assert!(out.stdout.contains("descent: no"));
    assert!(out.stdout.ends_with("status: mismatch\n"));
}

#[test]
fn input_errors_exit_two() {
    let out = torfol(&["fan-info", "--fan", "/nonexistent/fan.json"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.starts_with("error:"));

    let out = torfol(&["fan-info", "--fan", "@nope"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("no bundled fixture"));

    let out = torfol(&["fan-info"]);
    assert_eq!(out.code, 2);

    let out = torfol(&["frobnicate"]);
    assert_eq!(out.code, 2);

    let dir = tempfile::tempdir().unwrap();
    let form = write(&dir, "f.json", r#"{"k": 1, "coeffs": {"1": "z2*"}}"#);
    let out = torfol(&["check", "--fan", "@p2", "--form", &form]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("position"), "{}", out.stderr);

    let fan = write(&dir, "fan.json", r#"{"weights": [1, 1, 1], "colour": "blue"}"#);
    let out = torfol(&["fan-info", "--fan", &fan]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("colour"), "{}", out.stderr);

    let out = torfol(&["flag", "--fan", "@h2", "--map", "@quadric_map"]);
    assert_eq!(out.code, 2);
}

#[test]
fn exhausted_budget_exits_three() {
    let out = torfol(&["ideals", "--fan", "@h2", "--form", "@alpha10", "--step-budget", "5"]);
    assert_eq!(out.code, 3, "{}{}", out.stdout, out.stderr);
}

#[test]
fn help_and_version_exit_zero() {
    let out = torfol(&["--help"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("paper-verify"));
    assert_eq!(torfol(&["--version"]).code, 0);
}

#[test]
fn unfold_with_member() {
    let out = torfol(&["unfold", "--fan", "@p2", "--form", "@pencil", "--member", "z1^2"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("dim U: 5"));
    assert!(out.stdout.contains("h in I(alpha): yes"));
    assert!(out.stdout.contains("witness satisfies h d(alpha) = alpha ^ witness: yes"));

    let out = torfol(&["unfold", "--fan", "@p2", "--form", "@pencil", "--member", "1"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("h in I(alpha): no"));
}

#[test]
fn pullback_and_flag() {
    let out = torfol(&["pullback", "--fan", "@p2", "--map", "@quadric_map", "--form", "@pencil"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("K(omega) = <A_i(F)>: yes"));

    let out = torfol(&["flag", "--fan", "@h2", "--map", "@h2_map"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("omega_k = pullback of eta_k: yes"));
}

#[test]
fn budget_resolution() {
    assert_eq!(resolve_budget(Some(7), Some("9".into())).unwrap(), 7);
    assert_eq!(resolve_budget(None, Some("9".into())).unwrap(), 9);
    assert_eq!(resolve_budget(None, None).unwrap(), torfol::groebner::DEFAULT_STEP_BUDGET);
    assert!(resolve_budget(None, Some("lots".into())).is_err());
}

#[test]
fn binary_runs() {
    let out = Command::new(env!("CARGO_BIN_EXE_torfol")).args(["fan-info", "--fan", "@p135"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("z3: (5)"), "{stdout}");

    let out = Command::new(env!("CARGO_BIN_EXE_torfol")).args(["ideals", "--fan", "@h2", "--form", "@alpha10", "--step-budget", "5"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
}
