use std::path::PathBuf;
use std::process::{Command, Output};

fn sep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sep")).args(args).env_remove("SEP_WORKERS").output().expect("run sep")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn data_rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines().skip(2).map(|l| l.split(',').map(String::from).collect()).collect()
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("sep-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn csv_outputs_start_with_schema() {
    for cmd in ["gf", "moments", "cumulants", "tagged-dist"] {
        let o = sep(&[cmd, "--x=0,2", "--t=0.5"]);
        assert!(o.status.success(), "{cmd}: {}", String::from_utf8_lossy(&o.stderr));
        let s = stdout(&o);
        let first = s.lines().next().unwrap();
        assert!(first.starts_with("# schema: sep-"), "{cmd}: {first}");
        assert!(first.contains("/v1 "));
    }
}

#[test]
fn gf_at_zero_lambda_is_one() {
    let s = stdout(&sep(&["gf", "--x=-2,0,3", "--t=1", "--lambda=-0.5,0,0.5", "--rho-minus", "0.7", "--rho-plus", "0.2"]));
    let rows = data_rows(&s);
    assert_eq!(rows.len(), 9);
    for r in rows.iter().filter(|r| r[2].parse::<f64>().unwrap() == 0.0) {
        assert!((r[3].parse::<f64>().unwrap() - 1.0).abs() < 1e-12, "{r:?}");
    }
}

#[test]
fn gf_at_time_zero_is_binomial() {
    let s = stdout(&sep(&["gf", "--x=1,4", "--t=0", "--lambda=0.3", "--rho-plus", "0.35"]));
    for r in data_rows(&s) {
        let x: i32 = r[0].parse().unwrap();
        let want = (1.0 + 0.35 * 0.3f64.exp_m1()).powi(x);
        assert!((r[3].parse::<f64>().unwrap() - want).abs() < 1e-12);
    }
}

#[test]
fn floats_carry_17_significant_digits() {
    let s = stdout(&sep(&["cumulants", "--x=1", "--t=2", "--order", "2"]));
    let v = &data_rows(&s)[0][3];
    let mantissa = v.split('e').next().unwrap().replace(['-', '.'], "");
    assert_eq!(mantissa.len(), 17, "{v}");
}

#[test]
fn rate_fn_symmetry_column_and_xi0_row() {
    let o = sep(&["rate-fn", "--rho-minus", "0.7", "--rho-plus", "0.3", "--xi=-0.5,0,0.5", "--s=0.1"]);
    assert!(o.status.success());
    let s = stdout(&o);
    let rows = data_rows(&s);
    let phi: Vec<_> = rows.iter().filter(|r| r[0] == "phi").collect();
    assert_eq!(phi.len(), 4, "three grid points plus xi0");
    assert!(phi.iter().all(|r| r[6].parse::<f64>().unwrap().abs() < 1e-6));
    assert!(phi.iter().any(|r| r[2].parse::<f64>().unwrap().abs() < 1e-6));
    assert_eq!(rows.iter().filter(|r| r[0] == "C").count(), 1);
}

#[test]
fn flags_override_config() {
    let cfg = tmp("cfg.json");
    std::fs::write(&cfg, r#"{"rho_minus": 0.3, "rho_plus": 0.2}"#).unwrap();
    let o = sep(&["xi0", "--config", cfg.to_str().unwrap(), "--rho-plus", "0.7"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rho_minus"], 0.3);
    assert_eq!(v["rho_plus"], 0.7);
    assert!(v["xi0"].as_f64().unwrap() > 0.0);
}

#[test]
fn bad_config_is_a_usage_error() {
    let cfg = tmp("bad.json");
    std::fs::write(&cfg, r#"{"rho_minsu": 0.3}"#).unwrap();
    assert_eq!(sep(&["xi0", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(sep(&["gf", "--rho-plus", "1.5"]).status.code(), Some(2));
    assert_eq!(sep(&["simulate", "--workers", "0"]).status.code(), Some(2));
}

#[test]
fn simulate_replays_byte_for_byte() {
    let args = ["simulate", "--samples", "200", "--t=0.5,1", "--x=0,1", "--lambda=0.5", "--seed", "7"];
    let a = sep(&args);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    let b = Command::new(env!("CARGO_BIN_EXE_sep")).args(args).env("SEP_WORKERS", "1").output().unwrap();
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["samples"], 200);
    assert_eq!(v["heights"].as_array().unwrap().len(), 4);
    let g = &v["gf_check"][0];
    assert!(g["stderr"].as_f64().unwrap() > 0.0);
    assert!(g["z_score"].as_f64().unwrap() < 4.0);
    let other = sep(&["simulate", "--samples", "200", "--t=0.5,1", "--x=0,1", "--lambda=0.5", "--seed", "8"]);
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn simulate_writes_per_sample_csv() {
    let path = tmp("samples.csv");
    let o = sep(&["simulate", "--samples", "100", "--t=1", "--x=0", "--tag=0", "--samples-output", path.to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("# schema: sep-trajectory/v1"));
    assert_eq!(text.lines().count(), 2 + 100);
}

#[test]
fn json_floats_carry_17_significant_digits() {
    let s = stdout(&sep(&["xi0", "--rho-minus", "0.3", "--rho-plus", "0.7"]));
    assert!(s.contains("\"rho_minus\": 2.9999999999999999e-1"), "{s}");
    let v: serde_json::Value = serde_json::from_str(&s).unwrap();
    assert_eq!(v["rho_minus"], 0.3);
}

#[test]
fn json_keys_keep_declaration_order() {
    let s = stdout(&sep(&["xi0"]));
    let keys = ["\"schema\"", "\"rho_minus\"", "\"rho_plus\"", "\"xi0\"", "\"tracer_velocity\"", "\"phi_at_xi0\""];
    let pos: Vec<usize> = keys.iter().map(|k| s.find(k).unwrap()).collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn duality_check_report() {
    let o = sep(&["duality-check", "--p", "0.7", "--q", "1", "--rho-minus", "0.4", "--rho-plus", "0.3", "--x=1", "--t=2"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let m = &v["points"][0]["moments"];
    assert_eq!(m.as_array().unwrap().len(), 2);
    assert!((m[0]["halving_ratio"].as_f64().unwrap() - 4.0).abs() < 0.5);
    assert_eq!(sep(&["duality-check"]).status.code(), Some(2), "p = q has no tau in (0,1)");
}

#[test]
fn validate_manifest_and_exit_codes() {
    let o = sep(&["validate", "--quick", "--only", "3,13"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], "sep-validate/v1");
    assert_eq!(v["quick"], true);
    assert_eq!(v["criteria"].as_array().unwrap().len(), 2);
    for c in v["criteria"].as_array().unwrap() {
        for k in ["measured", "target", "tolerance", "pass", "checks"] {
            assert!(c.get(k).is_some(), "{k}");
        }
    }
    // a tightened tolerance fails and says by how much
    let o = sep(&["validate", "--quick", "--only", "4", "--tol-scale", "1e-9"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let c = &v["criteria"][0];
    assert_eq!(c["pass"], false);
    assert!(c["measured"].as_f64().is_some() && c["target"].as_f64().is_some());
    assert!(String::from_utf8_lossy(&o.stderr).contains("[FAIL]"));
}
