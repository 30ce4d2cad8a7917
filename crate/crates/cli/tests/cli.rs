use dynsum_cli::run;
use serde_json::{json, Value};

fn dynsum(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(std::iter::once("dynsum").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn eval_prints_canonical_form() {
    assert_eq!(dynsum(&["eval", "C3 + C5*C2"]), (0, "C3 + C10\n".into(), String::new()));
    assert_eq!(dynsum(&["eval", "(C1+C2)^2"]).1, "C1\n");
    assert_eq!(dynsum(&["eval", "L5 + C4 + L2 + C3"]).1, "C3 + C4 + L2 + L5\n");
    let (code, out, _) = dynsum(&["eval", "L2 + C3 + C10", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(serde_json::from_str::<Value>(&out).unwrap(), json!({"cycles": [3, 10], "chains": [2]}));
}

#[test]
fn bad_input_is_a_usage_error() {
    let (code, _, err) = dynsum(&["eval", "L0"]);
    assert_eq!(code, 2);
    assert!(err.contains("at byte 1"), "{err}");
    assert_eq!(dynsum(&["eval", "C2000000"]).0, 2);
    assert_eq!(dynsum(&["atoms", "2000000"]).0, 2);
    assert_eq!(dynsum(&["atoms", "12"]).0, 2);
    assert_eq!(dynsum(&["frobnicate"]).0, 2);
    assert_eq!(dynsum(&["green", "C1", "C2", "--rel", "Q"]).0, 2);
}

#[test]
fn divide_reports_min_solution() {
    let (code, out, _) = dynsum(&["divide", "C3", "C15"]);
    assert_eq!(code, 0);
    assert!(out.contains("solvable: true"));
    assert!(out.contains("min solution: C15"));

    let (code, out, _) = dynsum(&["divide", "C3", "C5"]);
    assert_eq!(code, 1);
    assert!(out.contains("solvable: false"));
}

#[test]
fn divide_json_schema() {
    let (code, out, _) = dynsum(&["divide", "C3", "C15", "--k", "15", "--json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["solvable"], json!(true));
    assert_eq!(v["min_solution"], json!({"cycles": [15], "chains": []}));
    assert_eq!(v["head"], json!([]));
    let mut sols: Vec<Value> = v["solutions"].as_array().unwrap().clone();
    sols.sort_by_key(|s| s.to_string());
    let mut expected = vec![
        json!({"cycles": [15], "chains": []}),
        json!({"cycles": [5], "chains": []}),
        json!({"cycles": [1, 3, 5], "chains": []}),
        json!({"cycles": [1, 3, 15], "chains": []}),
    ];
    expected.sort_by_key(|s| s.to_string());
    assert_eq!(sols, expected);
}

#[test]
fn divide_mixed_elements() {
    let (code, out, _) = dynsum(&["divide", "L1 + C2", "L1", "--k", "1", "--n", "1", "--max-chain", "3"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l.trim() == "L1"), "{out}");
    assert_eq!(dynsum(&["divide", "L2 + C3", "L2"]).0, 1);
    let (_, out, _) = dynsum(&["divide", "0", "0"]);
    assert!(out.contains("every element is a solution"));
}

#[test]
fn atoms_of_c45() {
    let (code, out, _) = dynsum(&["atoms", "45"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 6);
    assert_eq!(out.lines().next().unwrap(), "T1 = C1 + C3 + C5 + C15    C1 = T1 + T3 + T5 + T9 + T15 + T45");
}

#[test]
fn green_relations() {
    assert_eq!(dynsum(&["green", "C1", "C2", "--rel", "Rtilde"]), (0, "true\n".into(), String::new()));
    assert_eq!(dynsum(&["green", "C1", "C2", "--rel", "Rstar"]).0, 1);
    assert_eq!(dynsum(&["green", "C3 + C5*C2", "C3 + C5*C4", "--rel", "Rstar"]).0, 0);
    assert_eq!(dynsum(&["green", "C3 + C5*C2", "C3 + C5*C4", "--rel", "R"]).0, 1);
}

#[test]
fn classify_and_annihilators() {
    let (_, out, _) = dynsum(&["classify", "C1 + C2", "--json"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["unit"], json!(true));
    assert_eq!(v["h"], json!({"cycles": [1], "chains": []}));
    assert_eq!(dynsum(&["classify", "L2"]).0, 2);
    let (code, out, _) = dynsum(&["annihilators", "C3"]);
    assert_eq!(code, 0);
    assert!(out.contains("z_0 <= C1 + C3"));
}

#[test]
fn polynomial_solving() {
    let (code, out, _) = dynsum(&["poly-solve", "--poly", "C2*x^3 + (C1+C4)*x + C5", "--target", "C6"]);
    assert_eq!(code, 0);
    assert!(out.contains("bijective: true"));
    let x = out.lines().find_map(|l| l.strip_prefix("x = ")).unwrap();
    let (_, value, _) = dynsum(&["eval", &format!("C2*({x})^3 + (C1+C4)*({x}) + C5")]);
    assert_eq!(value, "C6\n");

    let (code, out, _) = dynsum(&["poly-solve", "--poly", "x^2", "--target", "C2"]);
    assert_eq!(code, 1);
    assert!(out.contains("collision: P(0) = P(C2)"));
    assert_eq!(dynsum(&["poly-solve", "--poly", "x^2", "--target", "C3"]).0, 0);
}

#[test]
fn oracle_commands() {
    let (code, out, _) = dynsum(&["oracle", "product", "C6", "C4"]);
    assert_eq!(code, 0);
    assert!(out.contains("components: 2C12"));
    assert!(out.contains("agree: true"));
    let (code, out, _) = dynsum(&["oracle", "check-divide", "C3", "C15", "--k", "15"]);
    assert_eq!(code, 0);
    assert!(out.contains("brute force: 4"));
}

#[test]
fn ideal_meet() {
    let (code, out, _) = dynsum(&["ideal-meet", "C2", "C2"]);
    assert_eq!((code, out.as_str()), (0, "principal: C2\n"));
    let (_, out, _) = dynsum(&["ideal-meet", "C3 + C10", "C3 + C20"]);
    assert_eq!(out, "undecided\n");
}

#[test]
fn selftest_passes_with_default_seed() {
    let (code, out, _) = dynsum(&["selftest"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.lines().skip(1).all(|l| l.starts_with("PASS")));
    assert_eq!(dynsum(&["selftest", "--seed", "7"]).0, 0);
}
