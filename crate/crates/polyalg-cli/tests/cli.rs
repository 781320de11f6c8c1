use std::process::{Command, Output};

use serde_json::Value;

fn polyalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyalg")).args(args).output().expect("binary runs")
}

fn doc(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    })
}

#[test]
fn build_two_state_rep() {
    let out = polyalg(&["rep", "build", "--class", "qminus2", "--j", "1/2", "--l", "1/4", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let d = doc(&out);
    assert_eq!(d["schema_version"], "1");
    assert_eq!(d["results"]["dim"], 2);
    assert_eq!(d["results"]["raise_amps"], serde_json::json!([1.0]));
    assert_eq!(d["inputs"]["l"], "1/4");
}

#[test]
fn degeneracy_level_two() {
    let out = polyalg(&["app", "degeneracy", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let d = doc(&out);
    assert_eq!(d["results"]["ordered"], 4);
    assert_eq!(d["results"]["closed_form"], 4);
    assert_eq!(d["status"], "PASS");
}

#[test]
fn degeneracy_csv_table() {
    let out = polyalg(&["app", "degeneracy", "--n", "0", "--n-max", "5", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines.len(), 7);
    assert!(lines[0].starts_with("N,ordered"));
    assert!(lines[6].starts_with("5,12,12,"));
}

#[test]
fn verify_truncated_rep() {
    let out = polyalg(&["rep", "verify", "--class", "qplus11", "--k", "1/2", "--l", "1/4", "--cutoff", "30", "--tol", "1e-10"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(doc(&out)["status"], "PASS");
}

#[test]
fn verify_round_trip_from_file() {
    let dir = std::env::temp_dir().join(format!("polyalg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for args in [
        vec!["--class", "qminus11", "--k", "1", "--l", "3/2"],
        vec!["--class", "qplus11", "--k", "1/2", "--l", "1/4", "--cutoff", "25"],
        vec!["--class", "cminus2_2", "--j1", "1/2", "--j2", "1/2", "--k", "0"],
    ] {
        let mut b = vec!["rep", "build"];
        b.extend(&args);
        let built = polyalg(&b);
        assert_eq!(built.status.code(), Some(0));
        let path = dir.join("rep.json");
        std::fs::write(&path, &built.stdout).unwrap();

        let mut v = vec!["rep", "verify"];
        v.extend(&args);
        let direct = doc(&polyalg(&v));
        let from_file = doc(&polyalg(&["rep", "verify", "--from-file", path.to_str().unwrap()]));
        assert_eq!(direct["results"]["residuals"], from_file["results"]["residuals"]);
        assert_eq!(from_file["status"], "PASS");
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(polyalg(&["rep", "build", "--class", "nope", "--j", "1", "--l", "1"]).status.code(), Some(2));
    assert_eq!(polyalg(&["rep", "build", "--bogus"]).status.code(), Some(2));
    assert_eq!(polyalg(&["rep", "build", "--class", "qplus11", "--k", "1/2", "--l", "1/4"]).status.code(), Some(2));
    let bad = polyalg(&["app", "hahn", "--source", "singular-oscillator", "--k1", "3/4", "--k2", "3/4", "--k", "2"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn failing_check_exits_one() {
    // A tolerance below the floating-point closure residual must fail.
    let out = polyalg(&["rep", "verify", "--class", "qplus11", "--k", "1/2", "--l", "1/4", "--cutoff", "30", "--tol", "1e-300"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(doc(&out)["status"], "FAIL");
}

#[test]
fn config_file_and_override() {
    let dir = std::env::temp_dir().join(format!("polyalg-cfg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("polyalg.conf");
    std::fs::write(&cfg, "# defaults\ntol = 1e-8\nformat = csv\n").unwrap();
    let out = polyalg(&["app", "degeneracy", "--n", "3", "--config", cfg.to_str().unwrap()]);
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("N,ordered"));
    let out = polyalg(&["app", "degeneracy", "--n", "3", "--config", cfg.to_str().unwrap(), "--format", "json"]);
    assert_eq!(doc(&out)["tolerance"], 1e-8);

    std::fs::write(&cfg, "colour = blue\n").unwrap();
    assert_eq!(polyalg(&["app", "degeneracy", "--n", "3", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn casimir_reports_printed_mismatch() {
    let d = doc(&polyalg(&["casimir", "--class", "qminus11", "--k", "1", "--l", "3/2"]));
    assert_eq!(d["results"]["printed"]["matches"], false);
    assert_eq!(d["reports"][0]["discrepancies"][0]["item"], "qminus11 Casimir");
    let d = doc(&polyalg(&["casimir", "--class", "qplus2", "--j", "1", "--l", "-3"]));
    assert_eq!(d["results"]["printed"]["matches"], true);
}

#[test]
fn application_commands_pass() {
    for args in [
        vec!["oracle", "compare", "--class", "qplus11", "--k", "1/2", "--l", "1/4", "--cutoff", "12"],
        vec!["cs", "bg", "--class", "qplus11", "--k", "1/2", "--l", "1/4", "--cutoff", "40", "--alpha-re", "0.5"],
        vec!["cs", "perelomov", "--class", "qminus2", "--j", "1", "--l", "3/2", "--gamma-re", "0.3"],
        vec!["compose", "--left", "su11:k=1,cutoff=30", "--right", "boson:cutoff=30", "--pi", "1/2"],
        vec!["map", "deform", "--class", "qplus11", "--k", "1/2", "--l", "1/4", "--cutoff", "12", "--lambda", "-1"],
        vec!["app", "dicke", "--j", "1", "--l-max", "2", "--kappa", "0.4"],
        vec!["app", "trilinear", "--epsilon", "3", "--kappa-im", "0.5"],
        vec!["app", "hahn", "--source", "calogero", "--j", "2"],
        vec!["app", "qes", "--k", "1", "--k1", "1", "--w", "2"],
    ] {
        let out = polyalg(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}
