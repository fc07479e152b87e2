use std::process::{Command, Output};

use serde_json::Value;

fn otfkm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_otfkm")).args(args).output().expect("spawn otfkm")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn check<'a>(report: &'a Value, id: &str) -> &'a Value {
    report["checks"].as_array().unwrap().iter().find(|c| c["id"] == id).unwrap_or_else(|| panic!("no check {id}"))
}

#[test]
fn classify_nullhomotopic_quaternionic() {
    let out = otfkm(&["classify", "--m", "4", "--k", "2", "--p", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let c = &json(&out)["classification"];
    assert_eq!(c["trace"], 0);
    assert_eq!(c["definiteness"], "indefinite");
    assert_eq!(c["homotopy_class"]["value"], 0);
    assert_eq!(c["cross_section"], true);
    assert_eq!(c["multiplicities"], serde_json::json!([4, 3]));
    assert!(c["notes"].as_array().unwrap().iter().any(|n| n.as_str().unwrap().contains("S^7×S^3")));
}

#[test]
fn classify_octonionic_k3() {
    let c = json(&otfkm(&["classify", "--m", "8", "--k", "3", "--p", "0"]))["classification"].clone();
    assert_eq!(c["homotopy_class"]["value"], 1);
    assert_eq!(c["homotopy_class"]["modulus"]["finite"], 240);
    assert_eq!(c["cross_section"], false);
}

#[test]
fn classify_divisible_by_24() {
    let c = json(&otfkm(&["classify", "--m", "4", "--k", "26", "--p", "0"]))["classification"].clone();
    assert_eq!(c["homotopy_class"]["value"], 0);
    assert_eq!(c["cross_section"], true);
}

#[test]
fn report_schema() {
    let out = otfkm(&["verify", "--m", "4", "--k", "2", "--p", "1", "--samples", "200"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = json(&out);
    for key in ["config", "checks", "classification"] {
        assert!(r.get(key).is_some(), "missing {key}");
    }
    assert_eq!(r["config"]["rng"], "chacha8");
    for c in r["checks"].as_array().unwrap() {
        for key in ["id", "residual", "pass", "n", "seconds"] {
            assert!(c.get(key).is_some(), "missing {key}");
        }
        assert!(c["seconds"].is_null());
    }
    let ids: Vec<&str> = r["checks"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    let mut unique = ids.clone();
    unique.sort();
    unique.dedup();
    assert_eq!(unique.len(), ids.len());
    assert_eq!(ids[0], "clifford-exact");
}

#[test]
fn verify_is_deterministic_across_jobs() {
    let args = ["verify", "--m", "8", "--k", "3", "--p", "1", "--samples", "500", "--seed", "7"];
    let one = otfkm(&[&args[..], &["--jobs", "1"]].concat());
    let again = otfkm(&[&args[..], &["--jobs", "1"]].concat());
    let many = otfkm(&[&args[..], &["--jobs", "4"]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, again.stdout);
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn fault_injection_fails() {
    let out = otfkm(&["verify", "--m", "4", "--k", "3", "--p", "1", "--samples", "100", "--inject-fault"]);
    assert_eq!(out.status.code(), Some(1));
    let r = json(&out);
    assert_eq!(check(&r, "clifford-exact")["pass"], false);
    assert!(String::from_utf8_lossy(&out.stderr).contains("FAILED clifford-exact"));
}

#[test]
fn cohomogeneity_suite() {
    let out = otfkm(&["verify", "--m", "3", "--k", "4", "--samples", "300"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = json(&out);
    for id in ["phi-membership", "phi-equivariance", "f-invariance", "f-value", "f-range"] {
        assert_eq!(check(&r, id)["pass"], true, "{id}");
    }
}

#[test]
fn witness_command() {
    let out = otfkm(&["witness", "--pair", "sigma-hopf", "--k", "4", "--p", "0", "--samples", "2000"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["config"]["pair"], "sigma-hopf");
    assert!(check(&r, "witness-samples")["residual"].as_f64().unwrap() > 1e-6);
    assert!(check(&r, "witness-slice")["residual"].as_f64().unwrap() > 1e-6);
    assert_eq!(otfkm(&["witness", "--pair", "nope"]).status.code(), Some(2));
    assert_eq!(otfkm(&["witness", "--pair", "sigma-hopf", "--k", "2"]).status.code(), Some(2));
}

#[test]
fn report_tables() {
    let out = otfkm(&["report", "--m", "8", "--k", "2..6", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = json(&out)["rows"].as_array().unwrap().clone();
    assert!(rows.iter().any(|r| r["k"] == 2 && r["p"] == 0 && r["cross_section"] == true));
    for r in rows.iter().filter(|r| r["k"].as_u64().unwrap() >= 3) {
        assert_eq!(r["homotopy_class"]["value"] == 0, r["cross_section"] == true);
        let (k, p) = (r["k"].as_i64().unwrap(), r["p"].as_i64().unwrap());
        if p == k - 1 {
            assert_eq!(r["homotopy_class"]["value"], (-k).rem_euclid(240));
        }
    }
    let out = otfkm(&["report", "--m", "4", "--k", "2..12"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with('|'));
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let args = ["classify", "--m", "8", "--k", "4", "--p", "1"];
    let out = otfkm(&[&args[..], &["--out", path.to_str().unwrap()]].concat());
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), otfkm(&args).stdout);
}

#[test]
fn sample_command() {
    let a = otfkm(&["sample", "--kind", "m-plus", "--m", "4", "--k", "3", "--p", "1", "--samples", "5", "--seed", "3"]);
    assert_eq!(a.status.code(), Some(0));
    let b = otfkm(&["sample", "--kind", "m-plus", "--m", "4", "--k", "3", "--p", "1", "--samples", "5", "--seed", "3"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(otfkm(&["sample", "--kind", "torus"]).status.code(), Some(2));
}

#[test]
fn usage_errors() {
    assert_eq!(otfkm(&["classify", "--m", "5", "--k", "3"]).status.code(), Some(2));
    assert_eq!(otfkm(&["classify", "--m", "4", "--k", "3", "--p", "3"]).status.code(), Some(2));
    assert_eq!(otfkm(&["verify", "--m", "2", "--k", "3", "--p", "1"]).status.code(), Some(2));
    assert_eq!(otfkm(&["report", "--k", "5..3"]).status.code(), Some(2));
    assert_eq!(otfkm(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn tolerance_override_can_fail_a_check() {
    let out = otfkm(&["verify", "--m", "4", "--k", "3", "--p", "1", "--samples", "200", "--tol-orthogonality", "0"]);
    let r = json(&out);
    let ortho = check(&r, "chi-orthogonality");
    assert_eq!(out.status.code(), Some(if ortho["residual"].as_f64().unwrap() > 0.0 { 1 } else { 0 }));
    assert_eq!(r["config"]["tolerances"]["orthogonality"], 0.0);
}
