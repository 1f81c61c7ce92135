use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hadamard")).args(args).output().expect("spawn")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

const SEGRE_L: &str = r#"{"points":[["1","0","1","0"],["0","1","0","1"]]}"#;
const SEGRE_R: &str = r#"{"points":[["1","1","0","0"],["0","0","1","1"]]}"#;

#[test]
fn product_of_segre_lines() {
    let out = run(&["product", "--c1", SEGRE_L, "--c2", SEGRE_R, "--oracle", "gb"]);
    assert_eq!(out.status.code(), Some(0));
    let j = json_of(&out);
    assert_eq!(j["oracle"]["agrees"], true);
    assert_eq!(j["morphism"], true);
    let text = run(&["product", "--c1", SEGRE_L, "--c2", SEGRE_R, "--format", "text"]);
    let s = String::from_utf8(text.stdout).unwrap();
    assert!(s.contains("surface of degree 2"), "{s}");
    assert!(s.contains("x0*x3") && s.contains("x1*x2"), "{s}");
}

#[test]
fn curves_from_files() {
    let dir = std::env::temp_dir().join(format!("hadamard-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (a, b) = (dir.join("l.json"), dir.join("r.json"));
    std::fs::write(&a, SEGRE_L).unwrap();
    std::fs::write(&b, SEGRE_R).unwrap();
    let inline = run(&["product", "--c1", SEGRE_L, "--c2", SEGRE_R]);
    let files = run(&["product", "--c1", &format!("@{}", a.display()), "--c2", &format!("@{}", b.display())]);
    assert_eq!(inline.stdout, files.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn reconstruct_coplanar_centers() {
    let centers = r#"[["0","1","1","2"],["1","0","2","3"],["1","2","0","-1"],["2","3","-1","0"]]"#;
    let out = run(&["reconstruct", "--centers", centers]);
    assert_eq!(out.status.code(), Some(0));
    let j = json_of(&out);
    assert_eq!(j["rank"], 9);
    let coeffs: Vec<i64> = j["quadric"]["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_str().unwrap().parse().unwrap())
        .collect();
    let expected = [9, -12, 0, -6, 3, -6, 0, -9, 12, -3];
    assert!(coeffs.iter().zip(expected).all(|(c, e)| c * expected[0] == e * coeffs[0]), "{coeffs:?}");
}

#[test]
fn zero_denominator_is_malformed_input() {
    let out = run(&["analyze", "--quadric", r#"{"coefficients":["1/0","0","0","0","0","0","0","0","0","0"]}"#]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("$quadric.coefficients[0]"), "{err}");
    assert!(err.contains("zero denominator"), "{err}");
}

#[test]
fn syntax_errors_and_missing_files_exit_two() {
    let out = run(&["scl", "--quadric", "{\"coefficients\": [1,"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("line 1 column"));
    let out = run(&["scl", "--quadric", "@/nonexistent/q.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn scl_of_segre_quadric() {
    let q = r#"{"coefficients":["0","0","0","1","0","-1","0","0","0","0"]}"#;
    let out = run(&["scl", "--quadric", q]);
    assert_eq!(out.status.code(), Some(0));
    let j = json_of(&out);
    assert_eq!(j["centers_distinct"], true);
    assert_eq!(j["off_other_planes"], false);
}

#[test]
fn groebner_basis_of_twisted_cubic() {
    let ideal = r#"{"vars":4,"generators":[
        {"terms":[{"exp":[1,0,1,0],"coef":"1"},{"exp":[0,2,0,0],"coef":"-1"}]},
        {"terms":[{"exp":[1,0,0,1],"coef":"1"},{"exp":[0,1,1,0],"coef":"-1"}]},
        {"terms":[{"exp":[0,1,0,1],"coef":"1"},{"exp":[0,0,2,0],"coef":"-1"}]}]}"#;
    let out = run(&["gb", "--ideal", ideal]);
    assert_eq!(out.status.code(), Some(0));
    let j = json_of(&out);
    assert_eq!(j["dimension"], 2);
    assert_eq!(j["basis"].as_array().unwrap().len(), 3);
}

#[test]
fn verify_filter_and_determinism() {
    let a = run(&["verify-paper", "--only", "coplanar", "--seed", "7"]);
    let b = run(&["verify-paper", "--only", "coplanar", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(1));
    let j = json_of(&a);
    let ids: Vec<&str> = j["checks"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    assert_eq!(ids, ["coplanar-det", "coplanar-reconstruct"]);
    let ok = run(&["verify-paper", "--only", "segre", "--format", "text"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8(ok.stdout).unwrap().contains("[PASS]"));
    let none = run(&["verify-paper", "--only", "no-such-check"]);
    assert_eq!(none.status.code(), Some(2));
}

#[test]
fn fiber_reports_claimed_dimension() {
    let out = run(&["fiber", "--samples", "5"]);
    let j = json_of(&out);
    assert_eq!(j["paper_claim"], 3);
    assert_eq!(j["dimension"], j["oracle_dimension"]);
    assert_eq!(j["generators"].as_array().unwrap().len(), 7);
}

#[test]
fn survey_is_seeded() {
    let args = ["survey", "--samples", "10", "--per-component", "2", "--seed", "3", "--skip-minors"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
