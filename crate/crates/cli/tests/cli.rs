use std::process::{Command, Output};

use serde_json::Value;

fn atomlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_atomlab")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let out = atomlab(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout))
    });
    (v, out.status.code().expect("exit code"))
}

fn strip_timing(mut v: Value) -> Value {
    for r in v["reports"].as_array_mut().expect("reports") {
        r.as_object_mut().unwrap().remove("wall_time_ms");
    }
    v
}

#[test]
fn check_output_is_deterministic() {
    let args = ["check", "prop-mqr", "--q", "2", "--r", "3", "--n", "6", "--depth", "6", "--seed", "7"];
    let (a, code) = json(&args);
    let (b, _) = json(&args);
    assert_eq!(code, 0);
    assert_eq!(strip_timing(a.clone()), strip_timing(b));
    let ids: Vec<&str> = a["reports"].as_array().unwrap().iter().map(|r| r["id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    for id in ["prop-mqr.2-3.interleaving", "prop-mqr.2-3.sum-identity", "prop-mqr.2-3.atoms"] {
        assert!(ids.contains(&id), "{id}");
    }
    assert_eq!(a["summary"]["fail"], 0);
}

#[test]
fn reports_carry_budgets_and_anchors() {
    let (v, code) = json(&["papercheck", "binomials", "--pmax", "13"]);
    assert_eq!(code, 0);
    let reports = v["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 7);
    for r in reports {
        assert_eq!(r["verdict"], "pass");
        assert!(r["budgets"]["oracle"]["exhaustive_max_degree"].is_number());
        assert!(!r["anchor"].as_str().unwrap().is_empty());
        assert!(r["wall_time_ms"].is_number());
    }
}

#[test]
fn budget_flags_reach_the_report() {
    let (v, _) = json(&["check", "nonascent", "--budget-atom-power", "1"]);
    let r = v["reports"].as_array().unwrap().iter().find(|r| r["id"] == "nonascent.atom-test").unwrap();
    assert_eq!(r["budgets"]["atom_test"]["max_power"], 1);
}

#[test]
fn failing_checks_exit_one() {
    let (v, code) = json(&["check", "prop-mqr", "--q", "4", "--r", "3", "--n", "2"]);
    assert_eq!(code, 1);
    assert!(v["summary"]["fail"].as_u64().unwrap() > 0);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(atomlab(&["check", "everything"]).status.code(), Some(2));
    assert_eq!(atomlab(&["monoid", "gens", "--q"]).status.code(), Some(2));
    assert_eq!(atomlab(&["ff", "irreducible", "--p", "2", "--poly", "x^(1/0)"]).status.code(), Some(2));
}

#[test]
fn monoid_commands() {
    let (v, _) = json(&["monoid", "gens", "--q", "2", "--r", "3", "--n", "2"]);
    assert_eq!(v["ell"], serde_json::json!([2, 5]));
    assert_eq!(v["generators"][0]["a"], "17/72");
    let (v, _) = json(&["monoid", "member", "--target", "1/2", "--depth", "6"]);
    assert_eq!(v["certificate"], serde_json::json!({ "a1": 1, "b1": 1 }));
    let (v, _) = json(&["monoid", "atomcheck", "--index", "b2", "--depth", "4"]);
    assert_eq!(v["verdict"], "atom-at-depth");
}

#[test]
fn semidomain_atomtest_finds_the_square_root_split() {
    let (v, code) = json(&["semidomain", "atomtest", "--p", "2", "--q", "2", "--r", "3", "--expr", "x^2+x+1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["verdict"], "reducible");
    assert_eq!(v["result"]["left"], "x+x^(1/2)+1");
    assert_eq!(v["result"]["right"], "x+x^(1/2)+1");
}

#[test]
fn subring_commands() {
    let (v, _) = json(&["subring", "atomic", "--ring", "ZQ", "--expr", "1/2*x^2"]);
    assert_eq!(v["atomic"], false);
    let (v, _) = json(&["subring", "witness", "--mode", "almost", "--expr", "1/2*x^2+x^3"]);
    assert_eq!(v["witness"]["s"], "2");
    let path = std::env::temp_dir().join(format!("atomlab-candidates-{}.json", std::process::id()));
    std::fs::write(&path, r#"[{"F": "1", "factors": ["x", "x", "s*y + t"]}]"#).unwrap();
    let (v, code) = json(&["subring", "refute", "--candidates", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(code, 0);
    assert_eq!(v["valid"], 0);
    assert_eq!(v["candidates"][0]["verdict"]["reason"]["reason"], "non-member");
}

#[test]
fn text_output_ends_with_summary() {
    let out = atomlab(&["check", "trinomials", "--kmax", "2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().last().unwrap().starts_with("5 pass, 0 fail"), "{text}");
}
