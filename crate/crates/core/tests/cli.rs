use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use padic_indep::report::validate_document_str;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_padic-indep"));
    c.current_dir(env!("CARGO_MANIFEST_DIR"));
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn tmp(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn criterion_config_is_independent() {
    let json = tmp("h_apery.json");
    let o = run(&["criterion", "--config", "examples/h_apery.toml", "--json", json.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("verdict: independent"));
    let text = std::fs::read_to_string(&json).unwrap();
    validate_document_str(&text).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["schema"], "criterion/1");
    assert_eq!(v["header"]["prime"], 3);
    assert_eq!(v["header"]["precision"], 2);
    assert_eq!(v["header"]["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["transfers"][0]["grade"], "evidence");
}

#[test]
fn negative_control_is_inconclusive() {
    let o = run(&["criterion", "--config", "examples/h_f.toml", "--quiet"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty());
}

#[test]
fn residue_prints_four() {
    let json = tmp("residue.json");
    let o = run(&["residue", "--series", "h", "--p", "3", "--k", "2", "--disk", "1", "--json", json.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("4"));
    let text = std::fs::read_to_string(&json).unwrap();
    validate_document_str(&text).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["certificate"]["value"], 4);
    assert_eq!(v["certificate"]["factors"].as_array().unwrap().len(), 4);
}

#[test]
fn dwork_apery_depth_three() {
    let o = run(&["dwork", "--series", "apery", "--r", "3", "--degree", "120"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn every_verb_writes_valid_json() {
    let cases: [&[&str]; 6] = [
        &["verify-valuations", "--p", "5", "--degree", "60"],
        &["dwork", "--series", "h", "--r", "2", "--degree", "40"],
        &["indicial", "--operator", "L", "--disk", "1", "--value", "4"],
        &["bessel", "--power", "3"],
        &["reconstruct", "--series", "f", "--divide", "h", "--dnum", "8", "--dden", "8"],
        &["reconstruct", "--series", "h", "--dnum", "3", "--dden", "3", "--k", "1", "--degree", "60"],
    ];
    for (i, args) in cases.iter().enumerate() {
        let json = tmp(&format!("verb{i}.json"));
        let mut full = args.to_vec();
        full.extend(["--json", json.to_str().unwrap()]);
        let o = run(&full);
        let text = std::fs::read_to_string(&json).unwrap();
        validate_document_str(&text).unwrap_or_else(|e| panic!("{args:?}: {e}"));
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        let expected = if v["status"] == "verified" { 0 } else { 1 };
        assert_eq!(o.status.code(), Some(expected), "{args:?}");
    }
}

#[test]
fn failed_checks_exit_one() {
    assert_eq!(run(&["dwork", "--series", "f", "--r", "1", "--degree", "30"]).status.code(), Some(1));
    assert_eq!(run(&["residue", "--series", "f", "--disk", "1"]).status.code(), Some(1));
    assert_eq!(run(&["reconstruct", "--series", "h", "--dnum", "2", "--dden", "2", "--degree", "60"]).status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    for (args, flag) in [
        (&["residue", "--series", "h", "--disk", "3"][..], "--disk"),
        (&["residue", "--series", "h", "--p", "9", "--disk", "1"][..], "--p"),
        (&["dwork", "--series", "nope"][..], "--series"),
        (&["criterion", "--config", "missing.toml"][..], "--config"),
        (&["residue", "--series", "h", "--disk", "1", "--k", "0"][..], "--k"),
        (&["dwork", "--series", "h", "--r", "x"][..], "--r"),
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8_lossy(&o.stderr);
        assert!(err.contains(flag), "{args:?}: {err}");
    }
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn coefficient_files() {
    let file = tmp("h.json");
    let h = padic_indep::series::gen_h(40);
    std::fs::write(&file, h.to_file("h", None).to_json()).unwrap();
    let o = run(&["residue", "--coeff-file", file.to_str().unwrap(), "--disk", "1"]);
    assert_eq!(stdout(&o).lines().next(), Some("4"));
    let bare = tmp("bare.json");
    let arr: Vec<String> = h.coeffs().iter().map(|c| format!("{}/{}", c.numer(), c.denom())).collect();
    std::fs::write(&bare, serde_json::to_string(&arr).unwrap()).unwrap();
    let o = run(&["dwork", "--coeff-file", bare.to_str().unwrap(), "--r", "3", "--degree", "40"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}
