use std::process::{Command, Output};

use graded_hopf::{make_lambda_xy, mu_n_ex1, ExponentRule};
use permudiag::{cmd_diag, cmd_kk, content_hash, DiagArgs, KkArgs, Polytope, RingArg};
use serde_json::Value;

fn permudiag(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permudiag"))
        .args(args)
        .env_remove("PERMUDIAG_THREADS")
        .output()
        .unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn no_numbers(v: &Value) -> bool {
    match v {
        Value::Number(_) => false,
        Value::Array(xs) => xs.iter().all(no_numbers),
        Value::Object(m) => m.values().all(no_numbers),
        _ => true,
    }
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect()
}

#[test]
fn diag_on_p2_and_p1() {
    let o = permudiag(&["diag", "--polytope", "P", "--n", "2"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["schema"], "permudiag/1");
    let terms: Vec<Vec<String>> = v["result"]["terms"].as_array().unwrap().iter().map(|t| strings(&t["factors"])).collect();
    // 0 ↔ 1|2, 1 ↔ 2|1, 01 ↔ 12
    assert_eq!(terms, vec![vec!["12", "2|1"], vec!["1|2", "12"]]);
    assert!(no_numbers(&v));
    let o = permudiag(&["diag", "--polytope", "p", "--n", "1"]);
    assert_eq!(json(&o)["result"]["count"], "1");
}

/// `Δ_K` on the corolla must equal the projection of `Δ_P` on a preimage.
#[test]
fn diag_on_k4_matches_the_projection() {
    let o = permudiag(&["diag", "--polytope", "K", "--n", "4"]);
    assert_eq!(code(&o), 0);
    let got: Vec<Vec<String>> = json(&o)["result"]["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| strings(&t["factors"]))
        .collect();
    let face = tonks_associahedron::section(&tonks_associahedron::PlanarTree::corolla(4)).unwrap();
    let dp = su_diagonal::diagonal_face(&face, &coeff_chain::Ring::F2, None).unwrap();
    let projected = tonks_associahedron::theta_tensor(&dp);
    let mut want: Vec<Vec<String>> = projected.iter().map(|(k, _)| k.0.iter().map(ToString::to_string).collect()).collect();
    let mut got_sorted = got.clone();
    want.sort();
    got_sorted.sort();
    assert_eq!(got_sorted, want);
    assert_eq!(got.len(), 6);
}

#[test]
fn signed_diagonal_and_capability_gaps() {
    let o = permudiag(&["diag", "--polytope", "P", "--n", "3", "--ring", "Z"]);
    assert_eq!(code(&o), 0);
    let coeffs: Vec<String> = json(&o)["result"]["terms"].as_array().unwrap().iter().map(|t| t["coeff"].as_str().unwrap().to_string()).collect();
    assert!(coeffs.iter().all(|c| c == "1" || c == "-1"));
    assert!(coeffs.iter().any(|c| c == "-1"));
    assert_eq!(code(&permudiag(&["diag", "--polytope", "P", "--n", "6", "--ring", "z"])), 3);
    assert_eq!(code(&permudiag(&["diag", "--polytope", "K", "--n", "3", "--ring", "z"])), 3);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["diag", "--polytope", "P", "--n", "7"],
        vec!["diag", "--polytope", "Q", "--n", "2"],
        vec!["kk", "--n", "3", "--m", "3"],
        vec!["kk", "--n", "1", "--m", "1"],
        vec!["verify", "--suite", "bider", "--instance", "nope"],
        vec!["verify", "--suite", "hopf", "--table", "/nonexistent/table.json"],
        vec!["frobnicate"],
    ] {
        assert_eq!(code(&permudiag(&args)), 2, "{args:?}");
    }
    let o = Command::new(env!("CARGO_BIN_EXE_permudiag"))
        .args(["kk", "--n", "2", "--m", "2"])
        .env("PERMUDIAG_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
    assert_eq!(code(&permudiag(&["--help"])), 0);
}

#[test]
fn kk_examples() {
    for (n, m, f) in [("2", "2", vec!["2", "1"]), ("2", "3", vec!["7", "7", "1"]), ("4", "1", vec!["5", "5", "1"])] {
        let o = permudiag(&["kk", "--n", n, "--m", m]);
        assert_eq!(code(&o), 0);
        let v = json(&o);
        assert_eq!(strings(&v["result"]["f_vector"]), f);
        assert!(no_numbers(&v));
    }
}

#[test]
fn kk_writes_dot_and_json_files() {
    let dir = tempfile::tempdir().unwrap();
    let (dot, frac, js) = (dir.path().join("kk.dot"), dir.path().join("f.dot"), dir.path().join("kk.json"));
    let o = permudiag(&[
        "kk",
        "--n",
        "2",
        "--m",
        "3",
        "--dot",
        dot.to_str().unwrap(),
        "--fractions-dot",
        frac.to_str().unwrap(),
        "--json",
        js.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let dot = std::fs::read_to_string(dot).unwrap();
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches(" -> ").count(), 21);
    let frac = std::fs::read_to_string(frac).unwrap();
    assert_eq!(frac.matches("digraph").count(), 15);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(js).unwrap()).unwrap();
    assert_eq!(v["result"]["boundary_matrices"]["2"].as_array().unwrap().len(), 7);
}

#[test]
fn verify_examples() {
    let o = permudiag(&["verify", "--suite", "chainmap", "--n", "5"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["result"]["status"], "PASS");
    let o = permudiag(&["verify", "--suite", "ainfty", "--instance", "lambda-xy", "--k-max", "5", "--window", "12"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["manifest"]["window"], "12");
    assert!(v["result"]["items"].as_array().unwrap().iter().all(|i| i["status"] == "PASS"));
    let o = permudiag(&["verify", "--suite", "hopf", "--n", "3"]);
    assert_eq!(code(&o), 0);
}

/// With the example ω the relations fail at window 10 and hold at window 4.
#[test]
fn bider_failures_carry_witnesses() {
    let o = permudiag(&["verify", "--suite", "bider", "--instance", "lambda-xy-omega", "--window", "10"]);
    assert_eq!(code(&o), 1);
    let v = json(&o);
    assert_eq!(v["manifest"]["outcome"], "FAIL");
    let nine = &v["result"]["items"][8];
    assert_eq!(nine["status"], "FAIL");
    assert_eq!(nine["witness"]["input"], "y|x*y");
    let o = permudiag(&["verify", "--suite", "bider", "--window", "4"]);
    assert_eq!(code(&o), 0);
    let o = permudiag(&["verify", "--suite", "bider", "--instance", "lambda-xy-dg-zero", "--window", "8"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn literal_rule_is_a_verified_failure() {
    let o = permudiag(&["verify", "--suite", "hopf", "--instance", "lambda-xy-literal", "--n", "3"]);
    assert_eq!(code(&o), 1);
    let items = json(&o)["result"]["items"].as_array().unwrap().clone();
    let seven = items.iter().find(|i| i["relation"].as_str().unwrap().contains("seven")).unwrap();
    assert_eq!(seven["witness"]["input"], "x*y|x*y|x*y");
}

#[test]
fn supplied_tables() {
    let dir = tempfile::tempdir().unwrap();
    let h = make_lambda_xy(10).unwrap();
    let mu3 = mu_n_ex1(&h, 3, ExponentRule::NonNegative).unwrap();
    let path = dir.path().join("mu3.json");
    std::fs::write(&path, serde_json::to_string(&mu3).unwrap()).unwrap();
    let p = path.to_str().unwrap();
    let o = permudiag(&["verify", "--suite", "hopf", "--table", p, "--window", "10"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["manifest"]["parameters"]["n"], "3");
    let o = permudiag(&["verify", "--suite", "ainfty", "--instance", "lambda-xy-strict", "--k-max", "3", "--table", p, "--window", "10"]);
    assert_eq!(code(&o), 0);
    // a different table changes the input hash
    let other = permudiag(&["verify", "--suite", "hopf", "--window", "10", "--n", "3"]);
    assert_ne!(json(&other)["manifest"]["input_hash"], v["manifest"]["input_hash"]);
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"name\": 3}").unwrap();
    assert_eq!(code(&permudiag(&["verify", "--suite", "hopf", "--table", bad.to_str().unwrap()])), 2);
}

#[test]
fn gs_suites() {
    let o = permudiag(&["verify", "--suite", "gs", "--trials", "3", "--seed", "4", "--window", "8"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["manifest"]["parameters"]["cutoff"], "12");
    let o = permudiag(&["verify", "--suite", "gs", "--n", "3", "--window", "8"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn identical_invocations_are_byte_identical() {
    for args in [
        vec!["kk", "--n", "3", "--m", "2"],
        vec!["diag", "--polytope", "P", "--n", "4", "--iterate", "2"],
        vec!["verify", "--suite", "gs", "--trials", "2", "--seed", "11", "--window", "8"],
    ] {
        let a = permudiag(&args);
        let b = permudiag(&args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let threaded = Command::new(env!("CARGO_BIN_EXE_permudiag"))
        .args(["verify", "--suite", "gs", "--trials", "2", "--seed", "11", "--window", "8"])
        .env("PERMUDIAG_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(threaded.stdout, permudiag(&["verify", "--suite", "gs", "--trials", "2", "--seed", "11", "--window", "8"]).stdout);
}

#[test]
fn library_entry_points() {
    let r = cmd_kk(&KkArgs { n: 2, m: 2 }).unwrap();
    assert!(r.passed);
    assert_eq!(r.manifest.command, "kk");
    let d = cmd_diag(&DiagArgs {
        polytope: Polytope::P,
        n: 3,
        ring: RingArg::F2,
        iterate: 2,
    })
    .unwrap();
    assert_eq!(d.exit_code(), 0);
    assert!(cmd_diag(&DiagArgs {
        polytope: Polytope::K,
        n: 1,
        ring: RingArg::F2,
        iterate: 1
    })
    .is_err());
}

#[test]
fn content_hash_is_git_blob_sha1() {
    // `printf 'hello\n' | git hash-object --stdin`
    assert_eq!(content_hash(b"hello\n"), "ce013625030ba8dba906f756967f9e9ca394464a");
    assert_eq!(content_hash(b""), "e69de29bb2d1d6434b8b29ae775ad8c2e48c5391");
}
