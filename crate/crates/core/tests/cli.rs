use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fanosense"))
}

fn tmp(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("fanosense-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    dir
}

fn run(args: &[&str], out: &Path) -> i32 {
    bin().args(args).arg("--out").arg(out).output().unwrap().status.code().unwrap()
}

#[test]
fn params_reports_anchors() {
    let out = tmp("params");
    assert_eq!(run(&["params"], &out), 0);
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out.join("params.json")).unwrap()).unwrap();
    let d = &doc["derived"];
    assert!((d["lambda_pl_nm"].as_f64().unwrap() - 535.5).abs() < 1.0);
    assert!((d["g_meV"].as_f64().unwrap() - 4.8).abs() < 0.3);
    let csv = std::fs::read_to_string(out.join("params.csv")).unwrap();
    assert!(csv.starts_with("# config_hash: "));
    assert!(csv.contains("\nquantity,value\n"));
}

#[test]
fn matched_substrate_echoes_f_two() {
    let out = tmp("matched");
    assert_eq!(run(&["params", "--set", "environment.n_s=1.333"], &out), 0);
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out.join("params.json")).unwrap()).unwrap();
    assert!((doc["derived"]["f"].as_f64().unwrap() - 2.0).abs() < 1e-15);
}

#[test]
fn config_errors_exit_one() {
    let out = tmp("bad");
    assert_eq!(run(&["params", "--set", "geometry.r=-1"], &out), 1);
    assert_eq!(run(&["params", "--set", "geometry.radius=3"], &out), 1);
    assert_eq!(run(&["spectrum", "--window", "577:576:0.1"], &out), 1);
    assert_eq!(run(&["correlations", "--orders", "5"], &out), 1);
    assert_eq!(run(&["nonsense"], &out), 1);
    let o = bin().args(["params", "--set", "geometry.r=-1"]).output().unwrap();
    assert!(String::from_utf8_lossy(&o.stderr).contains("geometry.r"));
}

#[test]
fn config_file_is_read_and_unknown_keys_rejected() {
    let dir = tmp("cfgfile");
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("good.json");
    std::fs::write(&good, r#"{"drive": {"I0": 40.0}}"#).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"drive": {"I0": 40.0, "colour": 1}}"#).unwrap();
    assert_eq!(run(&["params", "--config", good.to_str().unwrap()], &dir.join("a")), 0);
    assert_eq!(run(&["params", "--config", bad.to_str().unwrap()], &dir.join("b")), 1);
}

#[test]
fn reruns_are_byte_identical() {
    let a = tmp("rerun-a");
    let b = tmp("rerun-b");
    let args = ["spectrum", "--engine", "both", "--window", "576.9:577.0:0.01", "--plot"];
    assert_eq!(run(&args, &a), 0);
    assert_eq!(run(&[&args[..], &["--jobs", "1"]].concat(), &b), 0);
    for f in ["spectrum.csv", "spectrum.json", "spectrum_flux.svg", "spectrum_g2.svg"] {
        assert_eq!(std::fs::read(a.join(f)).unwrap(), std::fs::read(b.join(f)).unwrap(), "{f}");
    }
    let csv = std::fs::read_to_string(a.join("spectrum.csv")).unwrap();
    let header = csv.lines().find(|l| !l.starts_with('#')).unwrap();
    assert_eq!(
        header,
        "lambda_nm,flux_analytic,m_mean_analytic,g2_0_analytic,g3_0_analytic,g4_0_analytic,flux_norm_analytic,\
         flux_lindblad,m_mean_lindblad,g2_0_lindblad,g3_0_lindblad,g4_0_lindblad,flux_norm_lindblad"
    );
}

#[test]
fn output_directory_falls_back_to_environment() {
    let dir = tmp("env");
    let code = bin().arg("params").env("FANOSENSE_OUT", &dir).status().unwrap().code();
    assert_eq!(code, Some(0));
    assert!(dir.join("params.csv").exists());
}

#[test]
fn zero_delay_correlation_row() {
    let out = tmp("corr0");
    assert_eq!(run(&["correlations", "--lambda", "lspr", "--tau-max", "0"], &out), 0);
    let csv = std::fs::read_to_string(out.join("correlations.csv")).unwrap();
    let rows: Vec<&str> = csv.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0], "tau_ps,g2,g3,g4");
    let g2: f64 = rows[1].split(',').nth(1).unwrap().parse().unwrap();
    assert!((g2 - 1.0).abs() < 1e-3);
}

#[test]
fn sense_report_round_trips() {
    let out = tmp("sense");
    assert_eq!(run(&["sense"], &out), 0);
    let text = std::fs::read_to_string(out.join("sense.json")).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", text);
    assert_eq!(v["report"]["plasmon"].as_array().unwrap().len(), 3);
    assert_eq!(v["report"]["fano"].as_array().unwrap().len(), 3);
    assert!(v["config_hash"].as_str().unwrap().len() == 64);
}

#[test]
fn plasmon_only_sense_has_no_fano_columns() {
    let out = tmp("sense-pl");
    assert_eq!(run(&["sense", "--region", "plasmon"], &out), 0);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out.join("sense.json")).unwrap()).unwrap();
    assert!(v["report"]["fano"].as_array().unwrap().is_empty());
    assert!(v["report"]["enhancements"].as_array().unwrap().is_empty());
}

#[test]
fn validate_passes_by_default_and_flags_stress_case() {
    let out = tmp("validate");
    assert_eq!(run(&["validate"], &out), 0);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out.join("validate.json")).unwrap()).unwrap();
    assert_eq!(v["passed"], true);
    let stressed = tmp("validate-stress");
    assert_eq!(run(&["validate", "--fock", "3", "--set", "drive.I0=3360"], &stressed), 3);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(stressed.join("validate.json")).unwrap()).unwrap();
    let failing: Vec<&str> = v["report"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["pass"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(failing.iter().any(|n| n.starts_with("fock_convergence")), "{failing:?}");
}

#[test]
fn validate_passes_without_emitter_damping() {
    let out = tmp("validate-gex0");
    assert_eq!(run(&["validate", "--set", "emitter.gamma_ex_nev=0"], &out), 0);
}
