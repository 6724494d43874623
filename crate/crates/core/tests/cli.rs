use std::path::Path;
use std::process::{Command, Output};

use hyperalg::finite::{make_fp, make_krasner, FiniteMultistructure};

fn hyperalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperalg"))
        .args(args)
        .env_remove("HYPERALG_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_table(dir: &Path, name: &str, t: &FiniteMultistructure) -> String {
    let path = dir.join(name);
    std::fs::write(&path, t.to_json()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn add_prints_value_sets() {
    let o = hyperalg(&["add", "TC", "1∠0", "1∠1.5707963268"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "arc r=1 from=0 sweep=1.5707963268\n");
    assert_eq!(stdout(&hyperalg(&["add", "tri", "2", "1"])), "interval [1,3]\n");
    assert_eq!(stdout(&hyperalg(&["add", "K", "1", "1"])), "{0,1}\n");
    assert_eq!(stdout(&hyperalg(&["sum", "S", "1", "-1", "1"])), "{-1,0,1}\n");
}

#[test]
fn json_output_parses() {
    let o = hyperalg(&["--format", "json", "add", "tri", "2", "1"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["value"], "interval [1,3]");
}

#[test]
fn member_answers_without_failing() {
    let o = hyperalg(&["member", "TC", "0.5∠2", "disk r=1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "true\n");
    let o = hyperalg(&["member", "tri", "4", "interval [1,3]"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "false\n");
}

#[test]
fn verify_exit_codes() {
    assert_eq!(hyperalg(&["verify", "S", "--level", "hyperfield"]).status.code(), Some(0));
    let o = hyperalg(&["verify", "TC", "--level", "dd", "--budget", "1000"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("witness=(1∠0,1∠1.5707963268,1∠0,1∠4.7123889804)"));
    let o = hyperalg(&["verify", "M", "--level", "multigroup"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("axiom=inversion verdict=fail witness=(1,1,1)"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["add", "Q7", "1", "1"],
        vec!["add", "TC", "not-a-number", "1"],
        vec!["add", "padic:5:2", "1 + 5^3", "1"],
        vec!["verify", "TC", "--level", "hyperfield-search"],
        vec!["verify", "K", "--level", "ring"],
    ] {
        let o = hyperalg(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn multiplication_needs_a_multiring() {
    let o = hyperalg(&["verify", "M", "--level", "hyperfield"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn hyperfield_search_on_m() {
    let o = hyperalg(&["verify", "M", "--level", "hyperfield-search"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("no univalued multiplication admits hyperfield\n"));
}

#[test]
fn quotients_of_prime_fields() {
    let dir = tempfile::tempdir().unwrap();
    let f3 = write_table(dir.path(), "f3.json", &make_fp(3).unwrap());
    let out = dir.path().join("q.json");
    let o = hyperalg(&["quotient", &f3, "--by", "1,2", "-o", out.to_str().unwrap()]);
    assert!(o.status.success());
    let q = FiniteMultistructure::from_json(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(q.len(), 2);
    let k = make_krasner();
    for a in 0..2 {
        for b in 0..2 {
            assert_eq!(q.sum(a, b), k.sum(a, b));
            assert_eq!(q.product(a, b), k.product(a, b));
        }
    }

    let f5 = write_table(dir.path(), "f5.json", &make_fp(5).unwrap());
    let o = hyperalg(&["quotient", &f5, "--by", "1,4"]);
    let q = FiniteMultistructure::from_json(&stdout(&o)).unwrap();
    assert_eq!(q.len(), 3);

    let o = hyperalg(&["quotient", &f5, "--by", "0"]);
    assert!(o.status.success());
    let q = FiniteMultistructure::from_json(&stdout(&o)).unwrap();
    assert_eq!(q.len(), 1);

    let o = hyperalg(&["quotient", &f5, "--by", "7"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn characteristics() {
    assert_eq!(stdout(&hyperalg(&["char", "K"])), "chr=2 cchr=1\n");
    assert_eq!(stdout(&hyperalg(&["char", "S"])), "chr=0 cchr=1\n");
    assert_eq!(stdout(&hyperalg(&["char", "F5"])), "chr=5 cchr=5\n");
}

#[test]
fn named_maps() {
    assert_eq!(hyperalg(&["hom", "sign", "--budget", "500"]).status.code(), Some(0));
    let o = hyperalg(&["hom", "abs-maxtimes", "--budget", "500"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("property=additive verdict=fail"));
    let list = stdout(&hyperalg(&["hom", "--list"]));
    assert!(list.contains("w: C[X] -> TC"));
    assert_eq!(hyperalg(&["hom", "nope"]).status.code(), Some(2));
}

#[test]
fn polynomial_roots() {
    let o = hyperalg(&["poly", "TC", "X^2 + 1", "i"]);
    assert_eq!(stdout(&o), "disk r=1\nzero=true\n");
    let o = hyperalg(&["poly", "tri", "X + 1", "3"]);
    assert_eq!(stdout(&o), "interval [2,4]\nzero=false\n");
}

#[test]
fn dequantization_traces() {
    let o = hyperalg(&["deq", "complex", "--", "-1", "i", "--h", "0.1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut rows = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(rows.headers().unwrap(), vec!["h", "a", "b", "result", "reference", "error"]);
    assert_eq!(rows.records().count(), 1);

    let o = hyperalg(&["--format", "json", "deq", "tri", "2", "2", "--h", "0.01"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v[0]["reference"], "[0,2]");
    assert!(v[0]["error"].as_f64().unwrap() < 0.02);

    let o = hyperalg(&["deq", "lm", "1", "2"]);
    assert_eq!(stdout(&o).lines().count(), 5);
}

#[test]
fn spectrum_of_a_finite_ring() {
    let o = hyperalg(&["spectrum", "Z6"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "prime-ideal={0,3} map-to-K=hom\nprime-ideal={0,2,4} map-to-K=hom\n");
}

#[test]
fn seed_comes_from_the_environment() {
    let run = |seed: &str| {
        Command::new(env!("CARGO_BIN_EXE_hyperalg"))
            .args(["verify", "TC", "--level", "hyperfield", "--budget", "200"])
            .env("HYPERALG_SEED", seed)
            .output()
            .unwrap()
    };
    assert_eq!(run("7").stdout, run("7").stdout);
}
