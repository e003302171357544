use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_logsplit"))
        .args(args)
        .env_remove("LOGSPLIT_SEED")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

#[test]
fn verify_free_fixtures_exit_zero() {
    for f in ["triangle.arr", "braid.arr", "quintic.arr", "septic.curve"] {
        let o = run(&["verify", &fixture(f)]);
        assert_eq!(code(&o), 0, "{f}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn report_fields_and_order() {
    let o = run(&["--json", "analyze", "arrangement", &fixture("quintic.arr")]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let keys = [
        "\"degree\"",
        "\"tau\"",
        "\"mdr\"",
        "\"nu\"",
        "\"chern\"",
        "\"classification\"",
        "\"exponents\"",
        "\"generic_splitting\"",
        "\"dpw\"",
        "\"lines\"",
        "\"arrangement\"",
        "\"checks\"",
    ];
    let pos: Vec<usize> = keys.iter().map(|k| text.find(k).expect(k)).collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]), "{pos:?}");
    let v = json(&o);
    assert_eq!(v["degree"], 5);
    assert_eq!(v["tau"], 11);
    assert_eq!(v["nu"], 1);
    assert_eq!(v["classification"], "nearly_free");
    assert_eq!(v["exponents"], serde_json::json!([2, 3]));
    assert_eq!(v["generic_splitting"], serde_json::json!([2, 2]));
    assert_eq!(v["arrangement"]["n"], 5);
    assert_eq!(v["arrangement"]["theorem456"]["witness_H"], 0);
    assert_eq!(v["lines"][0]["splitting"], serde_json::json!([1, 3]));
    assert_eq!(v["lines"][0]["I"], 13);
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
}

#[test]
fn splitting_command() {
    let o = run(&[
        "--json",
        "splitting",
        "curve",
        "x*y*z*(y-z)*(x+2*y+3*z)",
        "--line",
        "1,0,0",
        "--line",
        "0,1,0",
    ]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v[0]["splitting"], serde_json::json!([1, 3]));
    assert_eq!(v[1]["splitting"], serde_json::json!([2, 2]));
    assert_eq!(v[0]["line"], serde_json::json!(["1", "0", "0"]));
}

#[test]
fn addition_command() {
    let o = run(&["--json", "addition", &fixture("braid_plus.arr"), "--index", "6"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["h_index"], 6);
    assert_eq!(v["b"]["nu"], 0);
    assert_eq!(v["a"]["nu"], 1);
    assert!(v["records"].as_array().unwrap().iter().all(|r| r["implication_respected"] == true));
}

#[test]
fn input_errors_exit_one() {
    for args in [
        vec!["analyze", "curve", "x*y+"],
        vec!["analyze", "curve", "x*y+z"],
        vec!["analyze", "curve", "x^2*y"],
        vec!["analyze", "curve", "0"],
        vec!["--coeff-box", "0", "analyze", "curve", "x*y*z"],
        vec!["frobnicate"],
        vec!["splitting", "curve", "x*y*z"],
    ] {
        let o = run(&args);
        assert_eq!(code(&o), 1, "{args:?}");
    }
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.arr");
    std::fs::write(&bad, "1 0 0\n0 1 0\n2 0 0\n").unwrap();
    let o = run(&["analyze", "arrangement", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("proportional"));
    std::fs::write(&bad, "1 0\n").unwrap();
    assert_eq!(code(&run(&["analyze", "arrangement", bad.to_str().unwrap()])), 1);
    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn exhausted_box_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("box.arr");
    let mut rows = String::new();
    for a in -1i64..=1 {
        for b in -1i64..=1 {
            for c in -1i64..=1 {
                let first = [a, b, c].into_iter().find(|x| *x != 0);
                if first == Some(1) {
                    rows.push_str(&format!("{a} {b} {c}\n"));
                }
            }
        }
    }
    std::fs::write(&path, rows).unwrap();
    let o = run(&["--coeff-box", "1", "analyze", "arrangement", path.to_str().unwrap()]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("--coeff-box"));
}

#[test]
fn seed_from_environment() {
    let args = ["--json", "analyze", "curve", "x*y*z*(x+y+z)*(x-2*y+5*z)"];
    let flag = {
        let mut a = vec!["--seed", "41"];
        a.extend(args);
        stdout(&run(&a))
    };
    let env = Command::new(env!("CARGO_BIN_EXE_logsplit"))
        .args(args)
        .env("LOGSPLIT_SEED", "41")
        .output()
        .unwrap();
    assert_eq!(stdout(&env), flag);
}

#[test]
fn verify_accepts_expressions() {
    let o = run(&["--json", "verify", "x*y*z*(x-y)"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["classification"], "free");
    assert_eq!(v["exponents"], serde_json::json!([1, 2]));
    assert_eq!(v["tau"], 7);
}
