//! End-to-end checks for every subcommand.

use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_diskapprox"))
}

fn write(path: &Path, text: &str) {
    std::fs::write(path, text).unwrap();
}

#[test]
fn norms_tabulates_monomial_norms() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("norms.json");
    write(
        &config,
        r#"{"space": {"kind": "hb", "b": [[0.0,0.0],[0.5,0.0]], "horizon": 4}, "n_max": 4}"#,
    );
    let out = dir.path().join("norms.csv");
    let status = bin()
        .args(["norms", "--config"])
        .arg(&config)
        .arg("--output")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,monomial_norm"));
    let row1 = lines.next().unwrap();
    assert!(row1.starts_with("0,1.0000"));
    // ||z||_{H(b)} = sqrt(4/3) = 1.1547...
    let row2 = lines.next().unwrap();
    assert!(row2.starts_with("1,1.1547"), "{row2}");
}

#[test]
fn scheme_run_reports_errors_and_tags() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.json");
    write(
        &config,
        r#"{
            "space": {"kind": "weighted", "p": 2.0,
                      "alpha": [1.0,1.0,1.0,1.0,1.0,1.0,1.0,1.0,1.0]},
            "scheme": "projection",
            "inputs": [{"kind": "geometric", "ratio": [0.5, 0.0], "degree": 8}],
            "n_max": 8
        }"#,
    );
    let out = dir.path().join("run.csv");
    let status = bin()
        .args(["scheme-run", "--config"])
        .arg(&config)
        .arg("--output")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "input,n,error_norm,image_norm,lower_opnorm,upper_opnorm,tag"
    );
    assert_eq!(lines.len(), 10); // header + n = 0..=8
    // projections converge: the last error is zero and the tag is bounded
    assert!(lines[9].contains("bounded"));
    assert!(lines[9].contains("0.000000000000e0"));

    // projection on a sup space is a runtime error (exit 3) naming the module error
    let bad = dir.path().join("bad.json");
    write(
        &bad,
        r#"{
            "space": {"kind": "sup", "horizon": 16},
            "scheme": "projection",
            "inputs": [{"kind": "coeffs", "coeffs": [[1.0, 0.0]]}],
            "n_max": 8
        }"#,
    );
    let output = bin()
        .args(["scheme-run", "--config"])
        .arg(&bad)
        .arg("--output")
        .arg(dir.path().join("never.csv"))
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&output.stderr).contains("NotAHilbertSpace"));
}

#[test]
fn scheme_run_accepts_array_files() {
    let dir = tempfile::tempdir().unwrap();
    let array = dir.path().join("array.json");
    // rows 0..2 of the Cesaro array
    write(
        &array,
        r#"{"rows": [[[1.0,0.0]], [[0.5,0.0],[0.5,0.0]],
                     [[0.3333333333333333,0.0],[0.3333333333333333,0.0],[0.3333333333333333,0.0]]]}"#,
    );
    let config = dir.path().join("run.json");
    write(
        &config,
        r#"{
            "space": {"kind": "sup", "horizon": 8},
            "scheme": {"array_file": "array.json"},
            "inputs": [{"kind": "coeffs", "coeffs": [[1.0,0.0],[1.0,0.0],[1.0,0.0]]}],
            "n_max": 2
        }"#,
    );
    let out = dir.path().join("run.csv");
    let status = bin()
        .args(["scheme-run", "--config"])
        .arg(&config)
        .arg("--output")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());

    // a missing array file is a config error
    let gone = dir.path().join("gone.json");
    write(
        &gone,
        r#"{
            "space": {"kind": "sup", "horizon": 8},
            "scheme": {"array_file": "no-such-file.json"},
            "inputs": [{"kind": "coeffs", "coeffs": [[1.0,0.0]]}],
            "n_max": 2
        }"#,
    );
    let output = bin()
        .args(["scheme-run", "--config"])
        .arg(&gone)
        .arg("--output")
        .arg(dir.path().join("never.csv"))
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&output.stderr).contains("array_file"));
}

#[test]
fn lebesgue_command_matches_closed_forms() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("leb.csv");
    let status = bin()
        .args(["lebesgue", "--n-list", "0,1,10,100", "--output"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,lebesgue_constant");
    assert!(lines[1].starts_with("0,1.0000000000"));
    assert!(lines[2].starts_with("1,1.2732395447"), "{}", lines[2]);

    // explicit undersized budget: runtime error, exit 3
    let output = bin()
        .args(["lebesgue", "--n-list", "10", "--quadrature-points", "32", "--output"])
        .arg(dir.path().join("never.csv"))
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&output.stderr).contains("InsufficientQuadrature"));
}

#[test]
fn embed_command_emits_bound_rows() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("embed.json");
    // alpha_n = n + 1 up to horizon 512 (stays admissible at the default
    // threshold); membership of 1/(1 - z/2) must come out at 4
    let alpha: Vec<String> = (0..=512).map(|n| format!("{}.0", n + 1)).collect();
    write(
        &config,
        &format!(
            r#"{{
                "spec": {{"alpha": [{}], "p": 2.0, "M": 1.0}},
                "r_list": [0.5, 0.999],
                "membership": [{{"rule": {{"kind": "geometric", "ratio": [0.5, 0.0]}}, "radius": 2.0}}],
                "samples": 50
            }}"#,
            alpha.join(",")
        ),
    );
    let out = dir.path().join("embed.csv");
    let status = bin()
        .args(["embed", "--config"])
        .arg(&config)
        .arg("--output")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("row_kind,parameter,value,aux,flag\n"));
    // C_{1/2} = 2 ln 2 = 1.386294...
    assert!(text.contains("inclusion_constant,5.000000000000e-1,1.3862943611"));
    // the r = 0.999 tail cannot be controlled at this horizon: flagged row
    assert!(text.contains("tail-not-controlled"));
    assert!(text.contains("isometry_max_rel_err"));
    assert!(text.contains("respected"));
    // membership bound 4
    assert!(text.contains("membership_bound,geometric(0.5;0),4.0000000000"));
}

#[test]
fn hb_gram_dump_round_trips_into_a_gram_space() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("hb.json");
    write(
        &config,
        r#"{"kind": "hb", "b": [[0.5,0.0],[0.5,0.0]], "horizon": 3, "working_factor": 4}"#,
    );
    let out = dir.path().join("gram.json");
    let status = bin()
        .args(["hb-gram", "--config"])
        .arg(&config)
        .arg("--output")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.contains("\"kind\": \"gram\""));

    // the dump is itself a valid space descriptor for norms
    let norms_config = dir.path().join("norms.json");
    write(
        &norms_config,
        &format!(r#"{{"space": {}, "n_max": 3}}"#, text),
    );
    let norms_out = dir.path().join("norms.csv");
    let status = bin()
        .args(["norms", "--config"])
        .arg(&norms_config)
        .arg("--output")
        .arg(&norms_out)
        .status()
        .unwrap();
    assert!(status.success());
    // ||1||_{H(b)} = sqrt(2) for b = (1+z)/2
    let text = std::fs::read_to_string(&norms_out).unwrap();
    assert!(text.contains("0,1.4142135623"), "{text}");

    // a non-hb descriptor is a config error
    let wrong = dir.path().join("wrong.json");
    write(&wrong, r#"{"kind": "sup", "horizon": 8}"#);
    let output = bin()
        .args(["hb-gram", "--config"])
        .arg(&wrong)
        .arg("--output")
        .arg(dir.path().join("never.json"))
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn plot_script_recognizes_schemas() {
    let dir = tempfile::tempdir().unwrap();

    // scheme-run schema
    let csv = dir.path().join("run.csv");
    write(
        &csv,
        "input,n,error_norm,image_norm,lower_opnorm,upper_opnorm,tag\n0:coeffs,0,1.0e0,1.0e0,,,bounded\n",
    );
    let out = dir.path().join("plot_run.py");
    let status = bin()
        .args(["plot-script", "--csv"])
        .arg(&csv)
        .arg("--output")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let script = std::fs::read_to_string(&out).unwrap();
    assert!(script.contains("semilogy"));
    assert!(script.contains("one series per input") || script.contains("inputs"));

    // lebesgue schema gets a log-x trend
    let csv = dir.path().join("leb.csv");
    write(&csv, "n,lebesgue_constant\n0,1.0e0\n1,1.27e0\n");
    let out = dir.path().join("plot_leb.py");
    assert!(bin()
        .args(["plot-script", "--csv"])
        .arg(&csv)
        .arg("--output")
        .arg(&out)
        .status()
        .unwrap()
        .success());
    assert!(std::fs::read_to_string(&out).unwrap().contains("semilogx"));

    // empty CSV: a script with an empty plot and a warning comment
    let csv = dir.path().join("empty.csv");
    write(&csv, "");
    let out = dir.path().join("plot_empty.py");
    assert!(bin()
        .args(["plot-script", "--csv"])
        .arg(&csv)
        .arg("--output")
        .arg(&out)
        .status()
        .unwrap()
        .success());
    let script = std::fs::read_to_string(&out).unwrap();
    assert!(script.contains("warning"));

    // unrecognized schema: config error
    let csv = dir.path().join("odd.csv");
    write(&csv, "a,b\n1,2\n");
    let output = bin()
        .args(["plot-script", "--csv"])
        .arg(&csv)
        .arg("--output")
        .arg(dir.path().join("never.py"))
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn gliding_hump_input_respects_the_horizon() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.json");
    // hump(3, 8) needs degree ~9348, far past horizon 256
    write(
        &config,
        r#"{
            "space": {"kind": "sup", "horizon": 256},
            "scheme": "partial",
            "inputs": [{"kind": "gliding-hump", "blocks": 3, "base_degree": 8}],
            "n_max": 256
        }"#,
    );
    let output = bin()
        .args(["scheme-run", "--config"])
        .arg(&config)
        .arg("--output")
        .arg(dir.path().join("never.csv"))
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&output.stderr).contains("HorizonExceeded"));
}
