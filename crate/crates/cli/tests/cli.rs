use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/fixtures");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toric-log"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = run(&full);
    let value = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    (out.status.code().unwrap(), value)
}

#[test]
fn invariant_divisor_from_user_syzygies() {
    let out = run(&["saito-verify", &fixture("p2.json"), "--f", "x*y*z", "--syzygies", &fixture("inv3.json")]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("verdict: Free"));
    assert!(text.contains("determinant: 3*x*y*z"));
}

#[test]
fn dependent_syzygies_are_not_certified() {
    let (code, v) = json(&["saito-verify", &fixture("p2.json"), "--f", "x*y*z", "--syzygies", &fixture("dependent.json")]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["certificate"]["verdict"], "NotCertified");
    assert_eq!(v["result"]["certificate"]["determinant"], "0");
}

#[test]
fn foliation_on_the_quadric() {
    let (code, v) = json(&["foliation", &fixture("p1xp1.json"), "--f", "x0*y0", "--f", "x1*y1"]);
    assert_eq!(code, 0);
    let report = &v["result"]["foliation"];
    assert_eq!(report["overall"]["status"], "Applies");
    assert_eq!(report["codimension"], 1);
    assert_eq!(report["q"], 1);

    let (code, v) = json(&["foliation", &fixture("p1xp1.json"), "--f", "x0*y0", "--f", "x0*y1"]);
    assert_eq!(code, 1);
    let report = &v["result"]["foliation"];
    assert_eq!(report["overall"]["reason"], "coprime");
    assert_eq!(report["coprime_witness"]["gcd"], "x0");
    assert_eq!(report["coprime_witness"]["pair"], serde_json::json!([1, 2]));
}

#[test]
fn torus_factor_is_an_input_error() {
    let out = run(&["variety-check", &fixture("bad.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("TorusFactor"));
    let (code, v) = json(&["variety-check", &fixture("bad.json")]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["code"], "TorusFactor");
}

#[test]
fn variety_report_carries_basis_and_hash() {
    let (code, v) = json(&["variety-check", &fixture("p112.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["variety"]["degree_basis"], serde_json::json!([[1, 1, 2]]));
    assert_eq!(v["variety"]["anticanonical"]["free"], serde_json::json!([4]));
    let hash = v["input_sha256"].as_str().unwrap();
    assert_eq!(hash.len(), 64);
    let (_, again) = json(&["variety-check", &fixture("p112.json")]);
    assert_eq!(again["input_sha256"], hash);
    let (_, other) = json(&["variety-check", &fixture("p2.json")]);
    assert_ne!(other["input_sha256"], hash);
}

#[test]
fn structured_report_round_trips_through_out() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&[
        "braid",
        &fixture("p2.json"),
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let cert = &written["result"]["certificate"];
    assert_eq!(cert["verdict"], "Free");
    let scalar: i64 = cert["scalar"].as_str().unwrap().parse().unwrap();
    assert_ne!(scalar, 0);
    let reparsed: Value = serde_json::from_str(&serde_json::to_string(&written).unwrap()).unwrap();
    assert_eq!(reparsed, written);
}

#[test]
fn job_documents_match_subcommands() {
    let (code, from_job) = json(&["--job", &fixture("invariant_job.json")]);
    assert_eq!(code, 0);
    let (_, direct) = json(&["saito-verify", &fixture("p2.json"), "--f", "x*y*z", "--syzygies", &fixture("inv3.json")]);
    assert_eq!(from_job, direct);
}

#[test]
fn braid_syzygies_on_the_plane() {
    let b = "(x-y)*(x-z)*(y-z)";
    let (code, v) = json(&["saito-verify", &fixture("p2.json"), "--f", b, "--syzygies", &fixture("braid_p2.json")]);
    assert_eq!(code, 0);
    let kappas = &v["result"]["certificate"]["kappas"];
    assert_eq!(kappas[0]["free"], serde_json::json!([-1]));
    assert_eq!(kappas[1]["free"], serde_json::json!([1]));
}

#[test]
fn cone_over_the_plane() {
    let b = "(x-y)*(x-z)*(y-z)";
    let (code, v) = json(&[
        "cone-extend",
        &fixture("p2.json"),
        "--f",
        b,
        "--syzygies",
        &fixture("braid_p2.json"),
        "--new-weight",
        "1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["cone"]["variables"], serde_json::json!(["x", "y", "z", "w"]));
    assert_eq!(v["result"]["certificate"]["verdict"], "Free");
    let kappas = v["result"]["certificate"]["kappas"].as_array().unwrap();
    assert_eq!(kappas.last().unwrap()["free"], serde_json::json!([-1]));
}

#[test]
fn other_subcommands() {
    let (code, v) = json(&["invariant", &fixture("p1xp1.json"), "--s", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["certificate"]["divisor"], "x0*x1*y0");

    let (code, v) = json(&["hzero", &fixture("p1xp1.json"), "--kappa", "1,2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["dimension"], 6);
    let (_, v) = json(&["hzero", &fixture("p1xp1.json"), "--kappa=-1,0"]);
    assert_eq!(v["result"]["vanishes"], true);

    let (code, v) = json(&["syzygies", &fixture("p2.json"), "--f", "x*y*z", "--kappa", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["space"]["dimension"], 2);

    let (code, v) = json(&["euler-check", &fixture("p1xp1.json"), "--f", "x0^2*y1 - x1^2*y0"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["relations"], serde_json::json!([true, true]));

    let (code, v) = json(&["saito-search", &fixture("p1xp1.json"), "--f", "(x0^2-x1^2)*(y0^2-y1^2)"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["certificate"]["verdict"], "Free");
    let (code, v) = json(&["saito-search", &fixture("p2.json"), "--f", "x^3+y^3+z^3", "--max-box", "1"]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["certificate"], Value::Null);
}

#[test]
fn input_errors_exit_with_two() {
    for (args, code) in [
        (vec!["euler-check", &fixture("p2.json"), "--f", "x*w"], "UnknownVariable"),
        (vec!["euler-check", &fixture("p2.json"), "--f", "x y"], "SyntaxError"),
        (vec!["euler-check", &fixture("p112.json"), "--f", "x + z"], "NotHomogeneous"),
        (vec!["hzero", &fixture("p2.json"), "--kappa", "1,1"], "ClassShape"),
        (vec!["invariant", &fixture("p2.json"), "--s", "0"], "InvalidInput"),
        (
            vec!["saito-search", &fixture("p1xp1.json"), "--f", "(x0^2-x1^2)*(y0^2-y1^2)", "--combination-limit", "0"],
            "SearchLimitExceeded",
        ),
    ] {
        let (status, v) = json(&args);
        assert_eq!(status, 2, "{args:?}");
        assert_eq!(v["error"]["code"], code, "{args:?}");
    }
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}
