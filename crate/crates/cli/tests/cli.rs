use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_betaforms"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn validate_presets() {
    for p in ["theorem1", "section2-s17"] {
        let o = run(&["validate", "--profile", p]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn validate_rejects_bad_profiles() {
    let dir = tempfile::tempdir().unwrap();
    let half = write(dir.path(), "half.toml", "family = \"general\"\neta = [10, 5, 2, 2, 2, 2]\nn = 2\n");
    let o = run(&["validate", "--profile", &half]);
    assert_eq!(code(&o), 2);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["valid"], false);
    assert!(v["errors"].as_array().unwrap().iter().any(|e| e.as_str().unwrap().contains("eta_1")));

    let odd = write(dir.path(), "odd.toml", "family = \"section2\"\ns = 5\nn = 3\n");
    assert_eq!(code(&run(&["validate", "--profile", &odd])), 2);

    let garbage = write(dir.path(), "g.toml", "family = [\n");
    assert_eq!(code(&run(&["validate", "--profile", &garbage])), 2);
    assert_eq!(code(&run(&["validate", "--profile", "/no/such/file.toml"])), 2);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&run(&["run"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(code(&run(&["run", "--profile", "theorem1", "--n", "6"])), 2);
}

#[test]
fn uniform_run_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = run(&["run", "--profile", "section2-s17", "--n", "2", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&out);
    let inst = &v["instances"][0];
    let form = &inst["integer_form"];
    assert_eq!(form["indices"].as_array().unwrap().len(), 9);
    let beta_indices: Vec<u64> = form["indices"].as_array().unwrap()[1..].iter().map(|x| x.as_u64().unwrap()).collect();
    assert_eq!(beta_indices, vec![2, 4, 6, 8, 10, 12, 14, 16]);
    for c in form["coefficients"].as_array().unwrap() {
        let c = c.as_str().unwrap().trim_start_matches('-');
        assert!(!c.is_empty() && c.bytes().all(|b| b.is_ascii_digit()));
    }
    for a in inst["a"].as_array().unwrap() {
        assert!(a.as_str().unwrap().contains('/'));
    }
    let r = &inst["r_n"];
    assert!(r["mid"].is_string() && r["rad"].is_string() && r["prec"].is_u64());
    assert_eq!(v["asymptotics"]["verdict"], "satisfied");
}

#[test]
fn six_beta_run_and_rerun_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let o = run(&["run", "--profile", "theorem1", "--mc-samples", "2000", "--seed", "7", "--out", p.to_str().unwrap()]);
        assert_ne!(code(&o), 2, "{}", String::from_utf8_lossy(&o.stderr));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let v = json(&a);
    let total: f64 = v["asymptotics"]["total"]["mid"].as_str().unwrap().parse().unwrap();
    assert!((total + 0.50611968).abs() < 1e-8);
    assert_eq!(v["instances"].as_array().unwrap().len(), 2);
    for inst in v["instances"].as_array().unwrap() {
        assert_eq!(inst["coefficient_inclusions"]["passed"], true);
        assert_eq!(inst["form_inclusions"]["passed"], true);
        assert_eq!(inst["consistency"]["passed"], true);
    }
}

#[test]
fn uniform_negative_control_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "s3.toml", "family = \"section2\"\ns = 3\nn = [2, 4]\nprecision = 128\n");
    let o = run(&["run", "--profile", &p]);
    assert_eq!(code(&o), 1);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["asymptotics"]["verdict"], "fails");
    assert!(v["instances"].as_array().unwrap().iter().all(|i| i["passed"] == true));
}

#[test]
fn asymptotics_phi_table_and_beta() {
    let o = run(&["asymptotics", "--profile", "theorem1"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let r: f64 = v["r_exponent"]["mid"].as_str().unwrap().parse().unwrap();
    assert!((r + 100.73966317).abs() < 1e-7);

    let o = run(&["phi-table", "--profile", "theorem1", "--n", "2"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["max_value"], 8);
    assert_eq!(v["capital_phi"], "13^2*17^4*19^4");

    let o = run(&["beta", "2", "--precision", "64"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v[0]["value"]["mid"].as_str().unwrap().starts_with("9.15965594177219"));
    assert_eq!(code(&run(&["beta", "0"])), 2);
}
