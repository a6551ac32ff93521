use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn mondef(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mondef")).args(args).output().expect("spawn mondef")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

/// Column `col` of a CSV without quoted commas.
fn column(csv: &str, col: usize) -> Vec<String> {
    csv.lines().skip(1).map(|l| l.split(',').nth(col).unwrap().to_string()).collect()
}

/// `d_0 = 1, d_1 = m, d_{k+1} = m d_k − d_{k−1}`
fn dims(m: u64, upto: usize) -> Vec<String> {
    let mut d: Vec<u64> = vec![1, m];
    while d.len() <= upto {
        let k = d.len();
        d.push(m * d[k - 1] - d[k - 2]);
    }
    d.truncate(upto + 1);
    d.iter().map(ToString::to_string).collect()
}

fn failures(v: &Value) -> Vec<String> {
    v["report"]["checks"].as_array().unwrap().iter().filter(|c| c["passed"] == false).map(|c| c["name"].to_string()).collect()
}

#[test]
fn fusion_dimension_tables() {
    let o = mondef(&["fusion", "--m", "3", "--max-k", "6"]);
    assert_eq!(code(&o), 0);
    assert_eq!(column(&stdout(&o), 1), dims(3, 6));
    assert_eq!(column(&stdout(&o), 1).last().unwrap(), "377");
    let o = mondef(&["fusion", "--m", "2", "--max-k", "3"]);
    assert_eq!(column(&stdout(&o), 1), ["1", "2", "3", "4"]);
    assert_eq!(stdout(&o).lines().next().unwrap(), "label,classical_dim,quantum_dim");
}

#[test]
fn fusion_quantum_dimensions_and_rules() {
    let o = mondef(&["fusion", "--q", "1/2", "--max-k", "2"]);
    assert_eq!(column(&stdout(&o), 2), ["1", "5/2", "21/4"]);
    let v = json(&mondef(&["fusion", "--m", "3", "--max-k", "2", "--format", "json"]));
    let rule = v["fusion"].as_array().unwrap().iter().find(|r| r["a"] == "r_1" && r["b"] == "r_1").unwrap();
    assert_eq!(rule["product"], serde_json::json!(["r_0", "r_2"]));
}

#[test]
fn fusion_rejects_bad_parameters() {
    assert_eq!(code(&mondef(&["fusion", "--m", "1"])), 1);
    assert_eq!(code(&mondef(&["fusion"])), 1);
    assert_eq!(code(&mondef(&["fusion", "--q", "0"])), 1);
    assert_eq!(code(&mondef(&["fusion", "--m", "three"])), 1);
}

#[test]
fn trivial_cocycle_on_z2_passes() {
    let o = mondef(&["twist", "--hopf", &data("z2.json"), "--cocycle", &data("z2_trivial_sigma.json")]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert_eq!(json(&o)["passed"], true);
}

#[test]
fn bicharacter_twist_of_toy_triple_is_isospectral() {
    let o = mondef(&[
        "twist",
        "--hopf",
        &data("z22.json"),
        "--cocycle",
        &data("z22_sigma.json"),
        "--triple",
        &data("z22_toy_triple.json"),
    ]);
    assert_eq!(code(&o), 0, "{:?}", failures(&json(&o)));
    let v = json(&o);
    let names: Vec<&str> = v["report"]["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert!(names.iter().any(|n| n.starts_with("isospectral")));
    for prefix in ["cocycle/", "uv/", "left smash product/", "right smash product/", "bi-Hopf-Galois/", "pi_sigma/", "round trip/"] {
        assert!(names.iter().any(|n| n.starts_with(prefix)), "{prefix} missing");
    }
    assert_eq!(v["triple"]["spectrum"], v["triple"]["deformed_spectrum"]);
}

#[test]
fn perturbed_cocycle_fails_with_report() {
    let o = mondef(&["twist", "--hopf", &data("z22.json"), "--cocycle", &data("z22_sigma_perturbed.json")]);
    assert_eq!(code(&o), 2);
    let v = json(&o);
    assert_eq!(v["passed"], false);
    assert!(failures(&v).iter().any(|n| n.contains("cocycle identity")));
}

#[test]
fn twist_reports_missing_and_malformed_files() {
    assert_eq!(code(&mondef(&["twist", "--hopf", "/nonexistent.json", "--cocycle", &data("z2_trivial_sigma.json")])), 1);
    assert_eq!(code(&mondef(&["twist", "--hopf", &data("z2.json"), "--cocycle", &data("z22_sigma.json")])), 1);
}

#[test]
fn two_dimensional_partner_leaves_spectrum_unchanged() {
    let o = mondef(&["podles", "deform", "--q", "1/2", "--F", &data("fq_half.json")]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["spectrum"], v["deformed_spectrum"]);
    assert_eq!(v["equivalence"]["dimension_preserving"], true);
    assert!(String::from_utf8_lossy(&o.stderr).contains("QISO: SO_q(3) -> I(F)"));
}

#[test]
fn three_dimensional_partner_gives_recursion_multiplicities() {
    let o = mondef(&["podles", "deform", "--q", "-1/3", "--F", &data("f3_minus_third.json"), "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let d = dims(3, 5);
    let expect = [5, 3, 1, 1, 3, 5].map(|k| d[k].clone());
    assert_eq!(column(&stdout(&o), 1), expect);
    assert_eq!(column(&stdout(&o), 1), ["144", "21", "3", "3", "21", "144"]);
    assert_eq!(column(&stdout(&o), 0), ["-5/2", "-3/2", "-1/2", "1/2", "3/2", "5/2"]);

    let v = json(&mondef(&["podles", "deform", "--q", "-1/3", "--F", &data("f3_minus_third.json")]));
    assert_eq!(v["qiso"]["line"], "QISO: SO_q(3) -> I(F)");
    assert_eq!(v["equivalence"]["dimension_preserving"], false);
    assert!(failures(&v).is_empty(), "{:?}", failures(&v));
}

#[test]
fn partner_violating_the_trace_constraint_exits_three() {
    let o = mondef(&["podles", "deform", "--q", "1/2", "--F", &data("f4_bad.json")]);
    assert_eq!(code(&o), 3);
    let v = json(&o);
    assert_eq!(v["residual_exact"], "3/2");
    assert!((v["residual"].as_f64().unwrap() - 1.5).abs() < 1e-15);
}

#[test]
fn podles_bad_parameters_are_usage_errors() {
    assert_eq!(code(&mondef(&["podles", "build", "--q", "2"])), 1);
    assert_eq!(code(&mondef(&["podles", "build", "--n", "2"])), 1);
    assert_eq!(code(&mondef(&["podles", "verify", "--c1", "0"])), 1);
    assert_eq!(code(&mondef(&["podles", "verify", "--tol", "-1"])), 1);
}

#[test]
fn podles_build_and_verify() {
    let o = mondef(&["podles", "build", "--n", "3/2"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["triple"]["basis"].as_array().unwrap().len(), 2 * (2 + 4));
    assert_eq!(v["profile"]["total_dim"], "12");

    let o = mondef(&["podles", "verify"]);
    let v = json(&o);
    assert_eq!(code(&o), 0, "{:?}", failures(&v));
    // F = diag(q^{-2n}, …, q^{2n}) read from the Haar state
    assert_eq!(v["woronowicz_diagonals"][0]["F"], serde_json::json!(["2", "1/2"]));
    assert_eq!(v["woronowicz_diagonals"][2]["F"], serde_json::json!(["8", "2", "1/2", "1/8"]));
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let args = ["podles", "deform", "--q", "-1/3", "--F", &data("f3_minus_third.json")];
    assert_eq!(mondef(&args).stdout, mondef(&args).stdout);
    let args = ["report", "--seed", "11", "--trials", "20", "--cocycle-trials", "2"];
    assert_eq!(mondef(&args).stdout, mondef(&args).stdout);
}

#[test]
fn floats_carry_seventeen_significant_digits() {
    let text = stdout(&mondef(&["podles", "deform", "--q", "-1/3", "--F", &data("f3_minus_third.json")]));
    // the λ entry of the partner
    assert!(text.contains("1.3295081343278794e0"), "{text}");
    let mantissa = text.split("\"trace_ff_float\": ").nth(1).unwrap().split('e').next().unwrap();
    assert_eq!(mantissa.replace(['.', '-'], "").len(), 17);
}

#[test]
fn seeded_report_passes() {
    let o = mondef(&["report"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let v = json(&o);
    assert_eq!(v["seed"], 7);
    assert!(v["failures"].as_array().unwrap().is_empty());
}
