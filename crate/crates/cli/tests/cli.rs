use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use phi4_standing::perturbation::AsymptoticSolution;
use phi4_standing::{Precision, Real};
use serde_json::Value;
use tempfile::TempDir;

fn phi4sw(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_phi4sw"))
        .args(args)
        .arg("--out")
        .arg(out)
        .env_remove("PHI4SW_OUT_DIR")
        .output()
        .expect("spawn phi4sw")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn value_of<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key} = ")))
        .unwrap_or_else(|| panic!("{key} missing in {text}"))
}

#[test]
fn config_bounds_exit_2() {
    let dir = TempDir::new().unwrap();
    for args in [
        &["galerkin", "--n", "1"][..],
        &["solve-nome", "--precision", "10"][..],
        &["galerkin", "--delta", "1e-40"][..],
        &["galerkin", "--root-pick", "largest"][..],
        &["build", "--epsilon", "-0.1"][..],
        &["build", "--amplitude", "abc"][..],
    ] {
        let o = phi4sw(args, dir.path());
        assert_eq!(code(&o), 2, "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn galerkin_table_and_artifacts() {
    let dir = TempDir::new().unwrap();
    let o = phi4sw(&["galerkin", "--n", "8"], dir.path());
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.starts_with("c_omega (galerkin) = 2.8268003454"));
    let row3 = text.lines().nth(4).unwrap();
    assert!(row3.trim_start().starts_with("3 "));
    assert!(row3.contains("1.44162661711e-2"));
    assert_eq!(text.lines().count(), 3 + 24);

    let csv = fs::read_to_string(dir.path().join("galerkin-table.csv")).unwrap();
    assert!(csv.starts_with("j,c_j,R_jj(c),d_j,R_jj(d)\n"));
    let exported = phi4sw(&["export-table", "--n", "8"], dir.path());
    assert_eq!(stdout(&exported), csv);
    assert_eq!(fs::read_to_string(dir.path().join("galerkin-table.txt")).unwrap(), text);

    let json = fs::read_to_string(dir.path().join("galerkin-report.json")).unwrap();
    let report = phi4_standing::galerkin::SolveReport::from_json(&json).unwrap();
    assert!(report.converged);
    assert_eq!(report.to_json().unwrap(), json);
}

#[test]
fn galerkin_twelve_modes_tight_delta() {
    let dir = TempDir::new().unwrap();
    let o = phi4sw(&["galerkin", "--n", "12", "--delta", "1e-13"], dir.path());
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let json: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("galerkin-report.json")).unwrap()).unwrap();
    assert_eq!(json["converged"], Value::Bool(true));
    let p = Precision::default();
    let c = json["c"]["coeffs"].as_array().unwrap();
    assert_eq!(c.len(), 12);
    let c3 = Real::parse(p, c[1].as_str().unwrap()).unwrap();
    assert!((c3 - Real::parse(p, "1.44162661711e-2").unwrap()).abs() < 1e-13);
}

#[test]
fn solve_nome_defaults_and_sidecar() {
    let dir = TempDir::new().unwrap();
    let o = phi4sw(&["solve-nome"], dir.path());
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = stdout(&o);
    assert!(value_of(&text, "q").starts_with("1.42142623201"));
    assert!(value_of(&text, "k").starts_with("4.5107559881"));
    assert!(value_of(&text, "omega1_coeff").starts_with("1.0983600974"));
    let side: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("params.json")).unwrap()).unwrap();
    let p = Precision::default();
    let q = Real::parse(p, side["params"]["q"].as_str().unwrap()).unwrap();
    assert_eq!(q.to_sci(40), value_of(&text, "q"));
}

#[test]
fn solve_nome_sixty_digits_stable() {
    let dir = TempDir::new().unwrap();
    let a = phi4sw(&["solve-nome", "--precision", "60"], dir.path());
    let b = phi4sw(&["solve-nome", "--precision", "60"], dir.path());
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let hi = phi4sw(&["solve-nome", "--precision", "90"], dir.path());
    let p = Precision::from_digits(90);
    let q60 = Real::parse(p, value_of(&stdout(&a), "q")).unwrap();
    let q90 = Real::parse(p, value_of(&stdout(&hi), "q")).unwrap();
    assert!(((&q60 - &q90) / &q90).abs() < 1e-55);
}

#[test]
fn solve_nome_truncated_series() {
    let dir = TempDir::new().unwrap();
    let o = phi4sw(&["solve-nome", "--series-terms", "7"], dir.path());
    assert_eq!(code(&o), 0);
    assert!(value_of(&stdout(&o), "q").starts_with("1.4214262320169066"));
    assert_eq!(code(&phi4sw(&["solve-nome", "--series-terms", "0"], dir.path())), 2);
}

#[test]
fn build_is_deterministic_and_prints_omega() {
    let a = TempDir::new().unwrap();
    let b = TempDir::new().unwrap();
    let oa = phi4sw(&["build", "--amplitude", "1", "--epsilon", "0.01"], a.path());
    let ob = phi4sw(&["build", "--amplitude", "1", "--epsilon", "0.01"], b.path());
    assert_eq!(code(&oa), 0, "{}", stderr(&oa));
    assert_eq!(oa.stdout, ob.stdout);
    let ja = fs::read(a.path().join("solution.json")).unwrap();
    assert_eq!(ja, fs::read(b.path().join("solution.json")).unwrap());

    let p = Precision::default();
    let omega = Real::parse(p, value_of(&stdout(&oa), "omega")).unwrap();
    let forced = Real::parse(p, "1.010923281229").unwrap();
    assert!((omega - forced).abs() < 1e-12);

    let sol = AsymptoticSolution::from_json(std::str::from_utf8(&ja).unwrap()).unwrap();
    assert_eq!(sol.to_json().unwrap().as_bytes(), &ja[..]);
}

#[test]
fn zero_amplitude_is_trivial() {
    let dir = TempDir::new().unwrap();
    let o = phi4sw(&["build", "--amplitude", "0"], dir.path());
    assert_eq!(code(&o), 0);
    assert!(value_of(&stdout(&o), "omega").starts_with("1.0000000000000000"));
    let sol = AsymptoticSolution::from_json(&fs::read_to_string(dir.path().join("solution.json")).unwrap()).unwrap();
    assert!(sol.phi0.max_abs().is_zero() && sol.phi1.max_abs().is_zero() && sol.phi2.max_abs().is_zero());
    assert_eq!(code(&phi4sw(&["verify"], dir.path())), 0);
}

#[test]
fn field_csv_sampling() {
    let dir = TempDir::new().unwrap();
    let o = phi4sw(&["build", "--field-grid", "4x3"], dir.path());
    assert_eq!(code(&o), 0);
    let csv = fs::read_to_string(dir.path().join("field.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 12);
    assert_eq!(code(&phi4sw(&["build", "--field-grid", "4"], dir.path())), 2);
}

#[test]
fn verify_fresh_build_passes() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&phi4sw(&["build"], dir.path())), 0);
    let o = phi4sw(&["verify"], dir.path());
    assert_eq!(code(&o), 0, "{}{}", stdout(&o), stderr(&o));
    let text = stdout(&o);
    for name in ["pde-residual", "profile-residual", "cube-proportionality", "cn-ode", "phi1-equation", "phi2-equation"] {
        assert!(text.contains(&format!("PASS {name}:")), "{name}\n{text}");
    }
    // scan rows: epsilon residual residual/eps^3 ratio
    let scaled: Vec<f64> = text
        .lines()
        .skip_while(|l| !l.starts_with("epsilon "))
        .skip(1)
        .map(|l| l.split_whitespace().nth(2).unwrap().parse().unwrap())
        .collect();
    assert_eq!(scaled.len(), 7);
    assert!(scaled.iter().all(|s| (5.9..6.1).contains(s)));
    let report: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("verify-report.json")).unwrap()).unwrap();
    assert_eq!(report["passed"], Value::Bool(true));
}

fn corrupt(dir: &Path, field: &str, index: usize) {
    let path = dir.join("solution.json");
    let mut json: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    let p = Precision::from_bits(json["precision_bits"].as_u64().unwrap() as u32);
    let cell = &mut json[field]["coeffs"][index];
    let v = Real::parse(p, cell.as_str().unwrap()).unwrap() + Real::parse(p, "1e-6").unwrap();
    *cell = Value::String(v.to_decimal());
    fs::write(&path, serde_json::to_string_pretty(&json).unwrap()).unwrap();
}

#[test]
fn verify_detects_corrupted_first_order() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&phi4sw(&["build"], dir.path())), 0);
    // phi1 is stored row-major by x harmonic: (n = 1, j = 3)
    corrupt(dir.path(), "phi1", 2);
    let o = phi4sw(&["verify"], dir.path());
    assert_eq!(code(&o), 5);
    assert!(stdout(&o).contains("FAIL pde-residual"));
    assert!(stderr(&o).contains("pde-residual"));
}

#[test]
fn verify_detects_corrupted_leading_order() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&phi4sw(&["build"], dir.path())), 0);
    corrupt(dir.path(), "phi0", 1);
    let o = phi4sw(&["verify"], dir.path());
    assert_eq!(code(&o), 5);
    assert!(stderr(&o).contains("pde-residual"));
    assert!(stderr(&o).contains("phi0-profile"));
}

#[test]
fn verify_detects_corrupted_second_order() {
    let dir = TempDir::new().unwrap();
    assert_eq!(code(&phi4sw(&["build"], dir.path())), 0);
    corrupt(dir.path(), "phi2", 2);
    let o = phi4sw(&["verify"], dir.path());
    assert_eq!(code(&o), 5);
    assert!(stderr(&o).contains("phi2-equation"));
}

#[test]
fn verify_rejects_unparsable_solution() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("solution.json"), "{\"phi0\": 1}").unwrap();
    assert_eq!(code(&phi4sw(&["verify"], dir.path())), 2);
    assert_eq!(code(&phi4sw(&["verify", "--solution", "/no/such/file.json"], dir.path())), 2);
}

#[test]
fn single_mode_leading_term_is_resonant() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("cfg.json");
    fs::write(&cfg, r#"{"phi0_modes": 1}"#).unwrap();
    let o = phi4sw(&["build", "--config", cfg.to_str().unwrap()], dir.path());
    assert_eq!(code(&o), 4, "{}", stderr(&o));
    assert!(stderr(&o).contains("(3,3)"));
}

#[test]
fn config_file_env_and_flag_precedence() {
    let dir = TempDir::new().unwrap();
    let (from_file, from_env, from_flag) = (dir.path().join("f"), dir.path().join("e"), dir.path().join("g"));
    let cfg = dir.path().join("cfg.json");
    fs::write(
        &cfg,
        serde_json::json!({"n": 3, "delta": "1e-9", "precision_digits": 30, "output_dir": from_file}).to_string(),
    )
    .unwrap();
    let run = |env: Option<&Path>, out: Option<&Path>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_phi4sw"));
        c.args(["galerkin", "--config", cfg.to_str().unwrap(), "--n", "4"]);
        c.env_remove("PHI4SW_OUT_DIR");
        if let Some(e) = env {
            c.env("PHI4SW_OUT_DIR", e);
        }
        if let Some(o) = out {
            c.arg("--out").arg(o);
        }
        c.output().unwrap()
    };
    let o = run(None, None);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let report: Value =
        serde_json::from_str(&fs::read_to_string(from_file.join("galerkin-report.json")).unwrap()).unwrap();
    assert_eq!(report["c"]["coeffs"].as_array().unwrap().len(), 4);

    assert_eq!(code(&run(Some(&from_env), None)), 0);
    assert!(from_env.join("galerkin-report.json").exists());
    assert_eq!(code(&run(Some(&from_env), Some(&from_flag))), 0);
    assert!(from_flag.join("galerkin-report.json").exists());

    fs::write(&cfg, r#"{"modes": 3}"#).unwrap();
    assert_eq!(code(&run(None, Some(&from_flag))), 2);
}
