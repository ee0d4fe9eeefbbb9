use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use xilab::verify::Report;
use xilab::zeros::read_zero_table;

fn xilab(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_xilab"))
        .args(args)
        .current_dir(cwd)
        .output()
        .expect("binary runs")
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(xilab(&["verify", "--check", "xi.functional_equation", "--strict"], d).status.code(), Some(0));
    assert_eq!(xilab(&["verify", "--check", "hadamard.b0_eq39"], d).status.code(), Some(0));
    assert_eq!(xilab(&["verify", "--check", "hadamard.b0_eq39", "--strict"], d).status.code(), Some(1));
    assert_eq!(xilab(&["verify", "--check", "no.such_check"], d).status.code(), Some(2));
    assert_eq!(xilab(&["verify", "--tol", "xi.functional_equation"], d).status.code(), Some(2));
    assert_eq!(xilab(&["verify", "--all", "--check", "xi.functional_equation"], d).status.code(), Some(2));
    assert_eq!(xilab(&["frobnicate"], d).status.code(), Some(2));
    assert_eq!(xilab(&["--zeta-bernoulli-order", "5", "xi", "--re", "2"], d).status.code(), Some(2));
    assert_eq!(xilab(&["plot", "--kind", "big_xi_curve", "--from", "3", "--to", "1", "--out", "p.tsv"], d).status.code(), Some(2));
}

#[test]
fn tolerance_override_flips_a_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let out = xilab(
        &["verify", "--check", "hadamard.b0_eq39", "--tol", "hadamard.b0_eq39=3", "--strict", "--json", "r.json"],
        d,
    );
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(d.join("r.json")).unwrap()).unwrap();
    assert_eq!(v["summary"]["REFUTED"], 0);
    assert_eq!(v["config"]["tolerances"]["hadamard.b0_eq39"].to_string(), "3.0000000000000000e+0");
}

#[test]
fn reports_are_deterministic_and_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    for name in ["a.json", "b.json"] {
        let out = xilab(&["verify", "--all", "--json", name, "--md", "r.md"], d);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let a = fs::read_to_string(d.join("a.json")).unwrap();
    assert_eq!(a, fs::read_to_string(d.join("b.json")).unwrap());
    let report = Report::from_json(&serde_json::from_str(&a).unwrap()).unwrap();
    assert_eq!(report.to_json_string(), a);
    assert_eq!(report.summary.total(), report.results.len());

    let md = fs::read_to_string(d.join("r.md")).unwrap();
    for module in ["xi", "zeros", "hadamard", "spectrum", "scatter", "chi"] {
        assert!(md.contains(&format!("## {module}\n")), "missing {module} table");
    }
}

#[test]
fn timestamp_is_confined_to_config() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    xilab(&["verify", "--check", "chi.beta_eq41", "--json", "plain.json"], d);
    xilab(&["verify", "--check", "chi.beta_eq41", "--timestamp", "--json", "stamped.json"], d);
    let load = |n: &str| -> serde_json::Value { serde_json::from_str(&fs::read_to_string(d.join(n)).unwrap()).unwrap() };
    let (plain, mut stamped) = (load("plain.json"), load("stamped.json"));
    assert!(plain["config"].get("timestamp").is_none());
    assert!(stamped["config"]["timestamp"].as_str().unwrap().starts_with("unix:"));
    stamped["config"].as_object_mut().unwrap().remove("timestamp");
    assert_eq!(plain, stamped);
}

#[test]
fn zeros_spectrum_and_plot_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(xilab(&["zeros", "--t-max", "50", "--step", "0.05", "--out", "z.csv"], d).status.success());
    let zeros = read_zero_table::<f64>(&d.join("z.csv")).unwrap();
    assert_eq!(zeros.len(), 10);

    assert!(xilab(&["spectrum", "--zeros", "z.csv", "--out", "s.csv"], d).status.success());
    let spectrum = fs::read_to_string(d.join("s.csv")).unwrap();
    assert!(spectrum.starts_with("n,t,lambda,im_residual\n"));
    assert_eq!(spectrum.lines().count(), 11);

    assert!(xilab(&["plot", "--kind", "spectrum", "--zeros", "z.csv", "--out", "p.tsv"], d).status.success());
    let plot = fs::read_to_string(d.join("p.tsv")).unwrap();
    assert!(plot.starts_with("# columns: n t lambda"));
    assert_eq!(plot.lines().count(), 12);

    assert!(xilab(&["plot", "--kind", "big_xi_curve", "--step", "0.1", "--out", "x.tsv"], d).status.success());
    assert_eq!(fs::read_to_string(d.join("x.tsv")).unwrap().lines().count(), 503);
}

#[test]
fn scatter_and_xi_print_to_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let out = xilab(&["scatter", "--lambda", "2", "--k", "1", "--sweep", "--points", "4"], d);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("lambda\tnu\tk\tdelta_analytic"));
    assert_eq!(text.lines().count(), 5);

    let out = xilab(&["xi", "--re", "2"], d);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let re: f64 = v["xi"]["re"].to_string().parse().unwrap();
    assert!((re - std::f64::consts::PI / 6.0).abs() < 1e-13);
}
