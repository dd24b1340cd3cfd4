use std::path::PathBuf;
use std::process::{Command, Output};

fn dir() -> PathBuf {
    let d = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli-tests");
    std::fs::create_dir_all(&d).unwrap();
    d
}

fn file(name: &str, text: &str) -> String {
    let p = dir().join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

fn fimod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fimod")).args(args).env_remove("FIMOD_PRIMES").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

const M2: &str = r#"{"ring": "Q", "generators": [2], "relations": []}"#;

#[test]
fn eval_prints_the_dimension_table() {
    let m2 = file("m2.fim", M2);
    let o = fimod(&["eval", "--module", &m2, "--n", "0..6", "--ring", "Q"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "n,dim\n0,0\n1,0\n2,2\n3,6\n4,12\n5,20\n6,30\n");
}

#[test]
fn inductive_checks_pass_and_fail() {
    let m2 = file("m2b.fim", M2);
    let o = fimod(&["check-inductive", "--module", &m2, "--N", "2", "--n", "3..7"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    assert_eq!(r["status"], "pass");
    assert_eq!(r["checks"].as_array().unwrap().len(), 5);
    let o = fimod(&["check-inductive", "--module", &m2, "--N", "1", "--n", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["status"], "fail");
}

#[test]
fn coinvariant_fit() {
    let o = fimod(&["coinv", "--r", "1", "--J", "1", "--ring", "Q", "--n", "1..8", "--fit"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    assert_eq!(r["result"]["fit"]["display"], "binom(n,1) - 1");
    assert_eq!(r["result"]["fit"]["onset"], 1);
    let dims: Vec<u64> = r["result"]["rows"].as_array().unwrap().iter().map(|x| x["dim"].as_u64().unwrap()).collect();
    assert_eq!(dims, vec![0, 1, 2, 3, 4, 5, 6, 7]);
    assert_eq!(fimod(&["coinv", "--J", "1", "--ring", "Z", "--n", "1"]).status.code(), Some(3));
    assert_eq!(fimod(&["coinv", "--r", "2", "--J", "1", "--n", "1"]).status.code(), Some(3));
}

#[test]
fn inconclusive_fit_exits_two() {
    let t = file("fact.csv", "n,dim\n0,1\n1,1\n2,2\n3,6\n4,24\n5,120\n6,720\n");
    let o = fimod(&["fit", "--table", &t]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(&o)["status"], "inconclusive");
}

#[test]
fn parse_errors_carry_positions() {
    let bad = file("bad.fim", "{\"ring\":\"Q\",\"generators\":[1],\n \"relations\":[{\"degree\":1,\"terms\":[{\"gen\":0,\"injection\":[3],\"coeff\":\"1\"}]}]}");
    let o = fimod(&["eval", "--module", &bad, "--n", "1"]);
    assert_eq!(o.status.code(), Some(3));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 2, column 36"), "{err}");
    let nonprime = file("f4.fim", r#"{"ring": {"Fp": 4}, "generators": [], "relations": []}"#);
    assert_eq!(fimod(&["eval", "--module", &nonprime, "--n", "1"]).status.code(), Some(3));
    assert_eq!(fimod(&["eval", "--n", "1"]).status.code(), Some(3));
    assert_eq!(fimod(&["eval", "--module", &bad, "--n", "4..2"]).status.code(), Some(3));
    assert_eq!(fimod(&["--help"]).status.code(), Some(0));
}

#[test]
fn reports_are_byte_identical() {
    let m2 = file("m2c.fim", M2);
    let args = ["find-N", "--module", &m2, "--n-max", "5", "--verify", "--format", "json"];
    let a = fimod(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, fimod(&args).stdout);
    let r = json(&a);
    assert_eq!(r["seed"], 20240101);
    assert_eq!(r["result"]["presentation_degree"]["N"], 2);
    let s = ["selftest", "--only", "1,9", "--seed", "7"];
    let x = fimod(&s);
    assert_eq!(x.status.code(), Some(0));
    assert_eq!(x.stdout, fimod(&s).stdout);
    assert_eq!(json(&x)["seed"], 7);
}

#[test]
fn emitted_presentations_round_trip() {
    let m2 = file("m2d.fim", M2);
    let emitted = dir().join("dm2.fim").display().to_string();
    let o = fimod(&["derivative", "--module", &m2, "--n", "0..4", "--emit", &emitted, "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let direct = json(&o)["result"]["table"].clone();
    let again = fimod(&["eval", "--module", &emitted, "--n", "0..4", "--format", "json"]);
    assert_eq!(json(&again)["result"]["table"], direct);
    assert_eq!(stdout(&fimod(&["eval", "--module", &emitted, "--n", "0..3"])), "n,dim\n0,0\n1,2\n2,4\n3,6\n");
}

#[test]
fn homology_reports() {
    let tor = file(
        "tor.fim",
        r#"{"ring": "Z", "generators": [0, 1], "relations": [{"degree": 1, "terms": [{"gen": 1, "injection": [1], "coeff": "2"}, {"gen": 0, "injection": [], "coeff": "-1"}]}]}"#,
    );
    let o = Command::new(env!("CARGO_BIN_EXE_fimod"))
        .args(["homology", "--module", &tor, "--n", "1", "--a", "0", "--fieldwise"])
        .env("FIMOD_PRIMES", "2,3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    assert_eq!(r["result"]["homology"][0]["groups"][0]["invariants"]["torsion"][0], 2);
    let rows = r["result"]["fieldwise"][0]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    let bad = Command::new(env!("CARGO_BIN_EXE_fimod"))
        .args(["homology", "--module", &tor, "--n", "1", "--fieldwise"])
        .env("FIMOD_PRIMES", "2,6")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(3));
}

#[test]
fn arnold_and_saturation() {
    let o = fimod(&["arnold", "--m", "1", "--n", "2..8", "--fit"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["result"]["fit"]["display"], "binom(n,2)");
    let w = file(
        "w.fim",
        r#"{"ring": "Z", "generators": [1], "relations": [{"degree": 2, "terms": [{"gen": 0, "injection": [1], "coeff": "1"}, {"gen": 0, "injection": [2], "coeff": "1"}]}]}"#,
    );
    let r = json(&fimod(&["saturate", "--sub", &w]));
    assert_eq!(r["result"]["saturation"]["n"], 1);
    assert_eq!(r["result"]["saturation"]["stabilized_is_full"], true);
    let map = json(&fimod(&["coinv-map", "--J", "1", "--f", "2", "--target", "2"]));
    assert_eq!(map["result"]["shape"], serde_json::json!([1, 0]));
}
