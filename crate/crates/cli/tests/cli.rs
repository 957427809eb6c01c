use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn forge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_euclid-forge"))
        .args(args)
        .current_dir(root())
        .env_remove("EUCLID_FORGE_SEED")
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    forge(args).status.code().expect("exit code")
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["run", "corpus/i1_equilateral.euclid", "--model", "tower"]), 0);
    assert_eq!(code(&["run", "corpus/i1_equilateral.euclid", "--model", "rational"]), 3);
    assert_eq!(code(&["run", "corpus/i2_transport.euclid", "--model", "rational"]), 3);
    assert_eq!(code(&["run", "corpus/arch_doubling.euclid", "--model", "rational"]), 1);
    assert_eq!(code(&["run", "corpus/nonarch_doubling.euclid", "--model", "infinitesimal"]), 0);
    assert_eq!(code(&["run", "corpus/no_such_file.euclid"]), 2);
    assert_eq!(code(&["verify", "--suite", "thm6"]), 2);
}

#[test]
fn parse_errors_print_their_position() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad_syntax.euclid");
    std::fs::write(&bad, "point A = (0, 0)\npoint = (1, 0)\n").unwrap();
    let out = forge(&["run", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("bad_syntax.euclid:2:7: parse error"), "{stderr}");
}

#[test]
fn runtime_failures_name_the_statement() {
    let out = forge(&["run", "corpus/i1_equilateral.euclid", "--model", "rational"]);
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains(":8:1: NotConstructibleInModel"), "{stderr}");
}

/// Shipped reports match fresh runs apart from the wall time.
#[test]
fn expected_reports() {
    let dir = tempfile::tempdir().unwrap();
    for entry in std::fs::read_dir(root().join("corpus/expected")).unwrap() {
        let path = entry.unwrap().path();
        let stem = path.file_stem().unwrap().to_str().unwrap().to_string();
        let (script, model) = stem.rsplit_once('.').unwrap();
        let fresh = dir.path().join(format!("{stem}.json"));
        forge(&[
            "run",
            &format!("corpus/{script}.euclid"),
            "--model",
            model,
            "--json",
            fresh.to_str().unwrap(),
        ]);
        let mut got = read_json(&fresh);
        got["results"][0]["wall_time_ms"] = Value::from(0);
        assert_eq!(got, read_json(&path), "{stem}");
    }
}

#[test]
fn run_report_schema() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("r.json");
    forge(&["run", "corpus/i1_equilateral.euclid", "--json", json.to_str().unwrap()]);
    let text = std::fs::read_to_string(&json).unwrap();
    let at = |k: &str| text.find(&format!("\"{k}\"")).unwrap();
    assert!(at("schema_version") < at("command") && at("command") < at("model") && at("model") < at("results"));
    let v = read_json(&json);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "run");
    assert_eq!(v["model"], "tower");
    let r = &v["results"][0];
    assert_eq!(r["passed"], true);
    assert_eq!(r["assertions"].as_array().unwrap().len(), 3);
    assert!(r["wall_time_ms"].is_u64());
}

#[test]
fn verify_is_seeded_and_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let path = |n: &str| dir.path().join(n).to_str().unwrap().to_string();
    let args = |seed: &str, out: &str| {
        forge(&["verify", "--suite", "all", "--model", "all", "--cases", "8", "--seed", seed, "--json", out]);
    };
    args("7", &path("a.json"));
    args("7", &path("b.json"));
    args("8", &path("c.json"));
    let a = std::fs::read(path("a.json")).unwrap();
    assert_eq!(a, std::fs::read(path("b.json")).unwrap());
    let v: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["command"], "verify");
    assert_eq!(v["model"], "all");
    assert_eq!(v["results"].as_array().unwrap().len(), 30);
    assert!(v["results"].as_array().unwrap().iter().all(|r| r["failures"].as_array().unwrap().is_empty()));
    // The seed is part of the report, so a different seed differs.
    assert_ne!(a, std::fs::read(path("c.json")).unwrap());
}

#[test]
fn seed_defaults_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.json");
    let status = Command::new(env!("CARGO_BIN_EXE_euclid-forge"))
        .args(["verify", "--suite", "r2", "--model", "rational", "--cases", "3", "--json"])
        .arg(&out)
        .env("EUCLID_FORGE_SEED", "42")
        .output()
        .unwrap();
    assert!(status.status.success());
    assert_eq!(read_json(&out)["results"][0]["seed"], 42);
}

#[test]
fn render_is_structural_and_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    for p in [&a, &b] {
        assert_eq!(code(&["render", "corpus/i1_equilateral.euclid", "--svg", p.to_str().unwrap()]), 0);
    }
    let svg = std::fs::read_to_string(&a).unwrap();
    assert_eq!(svg, std::fs::read_to_string(&b).unwrap());
    assert!(svg.starts_with("<?xml"));
    assert_eq!(svg.matches("<circle ").count(), 2);
    assert_eq!(svg.matches("<line class=\"segment\"").count(), 3);
    assert_eq!(svg.matches("<text ").count(), 3);
    assert!(!svg.contains("warning"));
}

#[test]
fn render_fixed_viewbox() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("v.svg");
    let args = ["render", "corpus/i1_equilateral.euclid", "--svg", p.to_str().unwrap(), "--viewbox", "-1,-1,2,2"];
    assert_eq!(code(&args), 0);
    let svg = std::fs::read_to_string(&p).unwrap();
    // y is flipped: the top edge is at -y1.
    assert!(svg.contains("viewBox=\"-1.0000 -2.0000 3.0000 3.0000\""), "{svg}");
}

#[test]
fn infinitesimal_render_carries_a_warning() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("n.svg");
    let out = forge(&["render", "corpus/nonarch_doubling.euclid", "--model", "infinitesimal", "--svg", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stderr).unwrap().contains("UnrenderableModel"));
    let svg = std::fs::read_to_string(&p).unwrap();
    assert!(svg.contains("<!-- warning: UnrenderableModel"));
}

#[test]
fn run_can_write_svg_too() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("r.svg");
    assert_eq!(code(&["run", "corpus/rhombus_diagonals.euclid", "--svg", p.to_str().unwrap()]), 0);
    assert!(std::fs::read_to_string(&p).unwrap().contains("</svg>"));
}
