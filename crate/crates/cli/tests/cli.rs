use std::process::{Command, Output};

use serde_json::Value;

fn prelie(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prelie"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let out = prelie(&all);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn enumerate_lists_cayley_count() {
    let out = prelie(&["enumerate", "--n", "3"]);
    assert!(out.status.success());
    let lines: Vec<String> = stdout(&out).lines().map(String::from).collect();
    assert_eq!(lines.len(), 9);
    let mut sorted = lines.clone();
    sorted.sort();
    assert_eq!(lines, sorted);
    assert_eq!(json(&["enumerate", "--n", "4"])["count"], 64);
}

#[test]
fn rho_worked_example() {
    let v = json(&["rho", "--cyc", "a | (b (c d))"]);
    let rep = v["representative"].as_array().unwrap();
    let terms: Vec<(String, String, String)> = rep
        .iter()
        .map(|t| {
            (
                t["left"].as_str().unwrap().into(),
                t["right"].as_str().unwrap().into(),
                t["coeff"].as_str().unwrap().into(),
            )
        })
        .collect();
    let expected = [("(b a)", "(c d)"), ("(c (b a))", "d"), ("a", "(b (c d))")];
    assert_eq!(terms.len(), 3);
    for (l, r) in expected {
        assert!(terms.contains(&(l.into(), r.into(), "1".into())), "{l} ^ {r}");
    }
}

#[test]
fn text_output_reparses() {
    // the printed representative reads back as a wedge
    let out = stdout(&prelie(&["rho", "--cyc", "a | (b (c d))"]));
    let w = prelie_core::prelie::WedgeVector::parse(out.trim()).unwrap();
    assert_eq!(w.len(), 3);
    let out = stdout(&prelie(&["product", "(a b)", "c"]));
    let v = prelie_core::prelie::TreeVector::parse(out.trim()).unwrap();
    assert_eq!(v, prelie_core::prelie::TreeVector::parse("(a b c) + (a (b c))").unwrap());
    let out = stdout(&prelie(&["cyc-normal", "(b c) ^ a"]));
    assert!(prelie_core::anticyclic::CycPreLieElem::parse(out.trim()).is_ok());
}

#[test]
fn algebra_verbs() {
    assert_eq!(stdout(&prelie(&["compose", "(a b)", "b", "(x y)"])).trim(), "(a (x y))");
    assert_eq!(stdout(&prelie(&["bracket", "a", "b"])).trim(), "(a b) - (b a)");
    assert_eq!(stdout(&prelie(&["gamma", "--at", "z", "w ^ (x (y z))"])).trim(), "-(y (x w))");
    assert_eq!(stdout(&prelie(&["lambda", "--cyc", "x | y"])).trim(), "(x y) + (y x)");
    let v = json(&["reduce-rv1", "(a b c)"]);
    assert!(v["result"].as_array().is_some());
    let v = json(&["theta", "x", "[y,z]"]);
    assert_eq!(v["value"].as_array().unwrap().len(), 3);
}

#[test]
fn verify_rho_passes() {
    let out = prelie(&["verify", "--suite", "rho", "--max-n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&["verify", "--suite", "operad", "--max-n", "3"]);
    for k in ["arity", "checked", "failures", "dims"] {
        assert!(v.get(k).is_some());
    }
    assert_eq!(v["failures"].as_array().unwrap().len(), 0);
}

#[test]
fn conjectures_and_series() {
    let v = json(&["conjectures", "--max-n", "4"]);
    assert_eq!(v["ok"], true);
    assert_eq!(v["rows"].as_array().unwrap().len(), 4);
    for row in v["rows"].as_array().unwrap() {
        assert_eq!(row["match"], true);
        assert_eq!(row["dim_M"], row["dim_indec"]);
    }
    let v = json(&["series", "--order", "10"]);
    assert_eq!(v["ok"], true);
    assert_eq!(v["free"][7], "46656");
    assert_eq!(v["prelie"][7], "117649");
}

#[test]
fn usage_and_parse_errors_exit_two() {
    assert_eq!(prelie(&["bogus"]).status.code(), Some(2));
    assert_eq!(prelie(&["compose", "(a b", "b", "x"]).status.code(), Some(2));
    assert_eq!(prelie(&["theta", "[x,y", "z"]).status.code(), Some(2));
    assert_eq!(prelie(&["theta", "x", "x"]).status.code(), Some(2));
    assert_eq!(prelie(&["verify", "--suite", "nope"]).status.code(), Some(2));
    let out = prelie(&["rho", "--cyc", "a | (b"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}
