mod common;

use std::io::Write;
use std::process::{Command, Output};

use common::corpus_path;
use serde_json::Value;

fn arnold(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arnold")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

struct TempCorpus(tempfile::NamedTempFile);

impl TempCorpus {
    fn arg(&self) -> &str {
        self.0.path().to_str().unwrap()
    }
}

fn temp_corpus(text: &str) -> TempCorpus {
    let mut f = tempfile::Builder::new().suffix(".corpus").tempfile().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    TempCorpus(f)
}

#[test]
fn computations() {
    let o = arnold(&["milnor", "x^2+y^3+z^5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "mu: 8\n");
    let o = arnold(&["--format", "json", "exponent", "x^2+y^3+z^5"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["exponent"], "31/30");
    assert_eq!(v["exact"], true);
    let v: Value = serde_json::from_slice(&arnold(&["--format", "json", "theta", "x^2+y^3+z^5"]).stdout).unwrap();
    assert_eq!((v["theta"].as_str(), v["oracle"].as_str()), (Some("4"), Some("4")));
    let v: Value = serde_json::from_slice(&arnold(&["--format", "json", "spectrum", "x^2+y^3"]).stdout).unwrap();
    assert_eq!(v["spectrum"], serde_json::json!(["5/6", "7/6"]));
    assert_eq!(stdout(&arnold(&["mult", "x^3+y^3+x*y^2"])), "mult: 3\n");
    assert_eq!(stdout(&arnold(&["milnor", "x^2*y"])), "mu: inf\n");
    assert_eq!(stdout(&arnold(&["--vars", "x,y,z", "milnor", "x^2+y^2"])), "mu: inf\n");
}

#[test]
fn sections() {
    let o = arnold(&["--format", "json", "section", "x^2+y^3+z^5", "--invariant", "theta", "--hyperplane", "0,0,1"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["value"], "2");
    let o = arnold(&["--format", "json", "section", "x^3+y^3+z^3"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["value"], 4);
    assert_eq!(v["hyperplane"], "generic");
    let o = arnold(&["section", "x^2+y^2", "--hyperplane", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn scans() {
    let o = arnold(&["--format", "json", "scan", "x^3+y^3+z^3+t*x*y*z", "--param", "t", "--samples", "0,1,-3"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["constant"], false);
    let mus: Vec<&Value> = v["samples"].as_array().unwrap().iter().map(|r| &r["mu"]).collect();
    assert_eq!(mus, [&Value::from(8), &Value::from(8), &Value::from("inf")]);
    let o = arnold(&["--format", "json", "scan", "x^2+y^3", "--family", "loeser", "--exclude", "1"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["constant"], true);
    assert_eq!(arnold(&["scan", "x^2+y^3"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(arnold(&["milnor", "x^2+"]).status.code(), Some(2));
    assert_eq!(arnold(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(arnold(&["spectrum", "x^2+y^3+x*y^3"]).status.code(), Some(2));
    let o = arnold(&["verify", "/nonexistent.corpus"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn malformed_corpus_prints_no_report() {
    let c = temp_corpus(
        "[[entry]]\nname = \"ok\"\npoly = \"x^2+y^3\"\nchecks = [\"teissier\"]\n\n\
         [[entry]]\nname = \"bad\"\npoly = \"x^^2\"\n",
    );
    let o = arnold(&["verify", c.arg()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("bad"));
}

#[test]
fn verify_exit_codes() {
    let o = arnold(&["verify", corpus_path("diagonal.corpus").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("summary: 13 pass, 0 fail"));

    let empty = temp_corpus("");
    let o = arnold(&["--format", "json", "verify", empty.arg()]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["entries"], serde_json::json!([]));

    let open = temp_corpus("[[entry]]\nname = \"x\"\npoly = \"x^2+y^3\"\nchecks = [\"lct_relation\"]\n");
    assert_eq!(arnold(&["verify", open.arg()]).status.code(), Some(0));
    assert_eq!(arnold(&["verify", "--strict", open.arg()]).status.code(), Some(3));

    let fail = temp_corpus(
        "[[entry]]\nname = \"x\"\npoly = \"x^2+y^3\"\n[entry.params.expect]\nmu = \"3\"\n",
    );
    let o = arnold(&["verify", fail.arg()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("mu: expected 3, found 2"));

    let o = arnold(&["verify", "--checks", "nonsense", open.arg()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_is_deterministic_and_seeded() {
    let path = corpus_path("brieskorn_pham.corpus");
    let path = path.to_str().unwrap();
    let a2 = arnold(&["--format", "json", "verify", "--checks", "teissier", path]);
    let b = arnold(&["--format", "json", "--jobs", "1", "verify", "--checks", "teissier", path]);
    assert_eq!(a2.status.code(), Some(0));
    assert_eq!(a2.stdout, b.stdout);
    let c = arnold(&["--format", "json", "--seed", "9", "verify", "--checks", "teissier", path]);
    let v: Value = serde_json::from_slice(&c.stdout).unwrap();
    assert_eq!(v["seed"], 9);
    assert_ne!(a2.stdout, c.stdout);
    let t = arnold(&["--format", "json", "verify", "--timing", "--checks", "teissier", path]);
    let v: Value = serde_json::from_slice(&t.stdout).unwrap();
    assert!(v["elapsed_ms"].is_u64());
}
