use std::process::{Command, Output};

use circarray::oracle::WeightedGraph;
use circarray::Rational;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_circarray"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn array_markdown_has_printed_columns() {
    let o = run(&["array", "build", "--cols", "6"]);
    assert!(o.status.success());
    let text = stdout(&o);
    for frac in ["177146/177147", "1965403/1904448", "305041/380192", "18263/65536"] {
        assert!(text.contains(frac), "{frac} missing");
    }
}

#[test]
fn output_is_deterministic_and_can_go_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("array.csv");
    let o = run(&[
        "array",
        "build",
        "--cols",
        "4",
        "--format",
        "csv",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(
        written,
        stdout(&run(&["array", "build", "--cols", "4", "--format", "csv"]))
    );
    assert!(written.starts_with("i,j,value,"));
}

#[test]
fn array_json_keeps_fractions_as_strings() {
    let o = run(&["array", "build", "--cols", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v.to_string().contains("\"26/27\""));
}

#[test]
fn asymptotics_csv_reproduces_first_rows() {
    let o = run(&["asymptotics", "--rows", "1,2,3,4,5", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(
        text.lines().nth(3).unwrap(),
        "3,0.4063,0.3556,0.0507,1.1426,0.3411,0.0144,1.0424,0.0651,1.191"
    );
    assert_eq!(text.lines().count(), 6);
}

#[test]
fn row_ranges_with_steps() {
    let text = stdout(&run(&["asymptotics", "--rows", "8..24:8", "--format", "csv"]));
    let s: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(s, ["8", "16", "24"]);
}

#[test]
fn hankel_reports_powers_of_nine() {
    let o = run(&["hankel", "--max-k", "5"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("det_2 = 9 = 9^1"));
    assert!(text.contains("det_5 = 3486784401 = 9^10"));
}

#[test]
fn symbolic_report_as_json() {
    let o = run(&["symbolic", "--max-s", "4", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let findings = v[0]["findings"].as_array().unwrap();
    assert!(findings.iter().any(|f| f["status"] == "info"));
    assert!(findings.iter().all(|f| f["status"] != "fail"));
}

#[test]
fn diag_fractions() {
    let text = stdout(&run(&["diag", "--max-s", "5"]));
    assert_eq!(text, "1\t2/3\n2\t1/2\n3\t13/32\n4\t89/256\n5\t2521/8192\n");
}

#[test]
fn reduce_dump_json_round_trips() {
    let o = run(&["reduce", "--n", "8", "--steps", "2", "--dump-json"]);
    assert!(o.status.success());
    let g = circarray::Grid::<Rational>::from_json(&stdout(&o)).unwrap();
    assert_eq!(g.m(), 6);
    assert_eq!(g.label(3, 2, circarray::Side::L), &Rational::frac(26, 27));
}

#[test]
fn symbolic_reduce_accepts_expressions() {
    let o = run(&["reduce", "--n", "3", "--field", "symbolic", "--boundary", "1-3/x"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("x"));
}

#[test]
fn resistance_from_graph_file() {
    let mut g = WeightedGraph::new(3);
    for (u, v) in [(0, 1), (1, 2), (0, 2)] {
        g.add_edge(u, v, Rational::from(1)).unwrap();
    }
    let file = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(file.path(), g.to_json()).unwrap();
    let o = run(&[
        "resistance",
        "--graph",
        file.path().to_str().unwrap(),
        "--u",
        "0",
        "--v",
        "2",
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "2/3");
}

#[test]
fn oracle_suites_pass_with_a_seed() {
    for suite in ["transforms", "dual-pipeline", "fib", "2tree"] {
        let o = run(&["--seed", "5", "oracle", "verify", "--suite", suite, "--count", "10"]);
        assert!(o.status.success(), "{suite}: {}", stdout(&o));
    }
}

#[test]
fn array_verify_suites_pass() {
    for suite in ["recursions", "closed-forms", "lrcc", "uniform-center", "spotchecks"] {
        let o = run(&["array", "verify", "--suite", suite, "--cols", "6"]);
        assert!(o.status.success(), "{suite}: {}", stdout(&o));
    }
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["array", "build", "--cols", "0"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["asymptotics", "--rows", "5..1"]).status.code(), Some(2));
    assert_eq!(
        run(&["resistance", "--graph", "/nonexistent.json", "--u", "0", "--v", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["reduce", "--n", "3", "--steps", "3"]).status.code(), Some(2));
}

#[test]
fn thread_count_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_circarray"))
        .args(["diag", "--max-s", "3"])
        .env("CIRCARRAY_THREADS", "2")
        .output()
        .unwrap();
    assert!(o.status.success());
    let bad = Command::new(env!("CARGO_BIN_EXE_circarray"))
        .args(["diag", "--max-s", "3"])
        .env("CIRCARRAY_THREADS", "lots")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
