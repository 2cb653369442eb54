use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mengerian"))
        .args(args)
        .env_remove("MENGERIAN_MAX_VERTICES")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("mengerian-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn f1_is_non_mengerian() {
    let f1 = fixture("f1.graph");
    let o = run(&["recognize", f1.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    assert!(
        stdout(&o).starts_with("verdict: non-Mengerian (F1)"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn json_report_carries_a_verified_witness() {
    let f1 = fixture("f1.graph");
    let o = run(&["recognize", f1.to_str().unwrap(), "--proof", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["verdict"], "non_mengerian");
    assert_eq!(report["pattern"], "F1");
    assert_eq!(report["embedding"]["branch"]["w'"], "w'");
    let witness = &report["witness"];
    assert_eq!(witness["verification"]["status"], "verified");
    assert_eq!(witness["times"].as_object().unwrap().len(), 9);
    assert_eq!(
        (witness["claimed_p"].as_u64(), witness["claimed_c"].as_u64()),
        (Some(1), Some(2))
    );
}

#[test]
fn dot_output_highlights_the_embedding() {
    let f1 = fixture("f1.graph");
    let o = run(&["recognize", f1.to_str().unwrap(), "--dot", "-"]);
    assert_eq!(o.status.code(), Some(1));
    let dot = stdout(&o);
    assert!(dot.starts_with("graph"), "{dot}");
    assert!(dot.contains("color"), "{dot}");
}

#[test]
fn tree_is_mengerian() {
    let tree = fixture("tree.graph");
    let o = run(&["recognize", tree.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("verdict: Mengerian"));
}

#[test]
fn malformed_input_reports_the_line() {
    let bad = fixture("malformed.graph");
    let o = run(&["recognize", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 4"), "{}", stderr(&o));
    let o = run(&["recognize", "/nonexistent/graph"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn menger_on_labelled_f1() {
    let f1 = fixture("f1.graph");
    let path = f1.to_str().unwrap();
    let o = run(&["menger", path, "--source", "s", "--target", "t"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("p = 1\nc = 2\n"), "{}", stdout(&o));
    let o = run(&["menger", path, "--source", "s", "--target", "t", "--json"]);
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        (report["p"].as_u64(), report["c"].as_u64()),
        (Some(1), Some(2))
    );
    let o = run(&["menger", path, "--source", "s", "--target", "t", "--edge"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("p' = c' = 2\n"), "{}", stdout(&o));
}

#[test]
fn menger_rejects_adjacent_terminals_and_unlabelled_files() {
    let f1 = fixture("f1.graph");
    let o = run(&[
        "menger",
        f1.to_str().unwrap(),
        "--source",
        "s",
        "--target",
        "u",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("adjacent"), "{}", stderr(&o));
    let tree = fixture("tree.graph");
    let o = run(&[
        "menger",
        tree.to_str().unwrap(),
        "--source",
        "a",
        "--target",
        "c",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn oversized_graph_hits_the_guard() {
    let mut text = String::new();
    for i in 0..17 {
        text += &format!("v x{i}\n");
    }
    for i in 0..16 {
        text += &format!("e x{i} x{} {}\n", i + 1, i + 1);
    }
    let path = temp_file("path17.graph", &text);
    let args = [
        "menger",
        path.to_str().unwrap(),
        "--source",
        "x0",
        "--target",
        "x16",
    ];
    let o = run(&args);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("guard"), "{}", stderr(&o));
    let o = run(&[&args[..], &["--max-size", "17"]].concat());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("p = 1\nc = 1\n"));
    let o = Command::new(env!("CARGO_BIN_EXE_mengerian"))
        .args(args)
        .env("MENGERIAN_MAX_VERTICES", "20")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn falsify_finds_a_counterexample_for_f2() {
    let text = "v s\nv u\nv v\nv w\nv w'\nv t\n\
                e s u\ne u w\ne w w'\ne w' t\ne s w\ne w w'\ne u v\ne w' v\ne v t\n";
    let path = temp_file("f2.graph", text);
    let o = run(&[
        "falsify",
        path.to_str().unwrap(),
        "--samples",
        "20000",
        "--seed",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.starts_with("# counterexample: "), "{out}");
    // the fragment is a labelled graph file
    let labelled = path.with_file_name("f2-labelled.graph");
    std::fs::write(&labelled, &out).unwrap();
    let header = out.lines().next().unwrap();
    let field = |key: &str| {
        header
            .split_whitespace()
            .find_map(|f| f.strip_prefix(key))
            .unwrap()
            .to_string()
    };
    let (s, t) = (field("s="), field("t="));
    let o = run(&[
        "menger",
        labelled.to_str().unwrap(),
        "--source",
        &s,
        "--target",
        &t,
        "--json",
    ]);
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(report["p"].as_u64() < report["c"].as_u64(), "{report}");
}

#[test]
fn falsify_is_deterministic() {
    let f1 = fixture("f1.graph");
    let args = [
        "falsify",
        f1.to_str().unwrap(),
        "--samples",
        "3000",
        "--seed",
        "11",
    ];
    let a = run(&args);
    let b = run(&[&args[..], &["--threads", "1"]].concat());
    assert_eq!(a.status.code(), b.status.code());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn falsify_exhaustive_on_p3_and_guard() {
    let p3 = fixture("p3.graph");
    let o = run(&["falsify", p3.to_str().unwrap(), "--exhaustive"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("no counterexample"));
    let f1 = fixture("f1.graph");
    let o = run(&["falsify", f1.to_str().unwrap(), "--exhaustive"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("guard"), "{}", stderr(&o));
    let o = run(&["falsify", f1.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn generated_pattern_is_recognized() {
    let args = [
        "gen",
        "--model",
        "m-subdivided-pattern",
        "--pattern",
        "F1",
        "--ops",
        "3",
        "--seed",
        "4",
    ];
    let a = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, run(&args).stdout);
    let path = temp_file("gen-f1.graph", &stdout(&a));
    let o = run(&["recognize", path.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["pattern"], "F1");
}

#[test]
fn generated_multigraphs() {
    let args = [
        "gen",
        "--model",
        "multigraph",
        "--n",
        "8",
        "--m",
        "14",
        "--max-mult",
        "2",
        "--seed",
        "9",
    ];
    let a = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, run(&args).stdout);
    assert_eq!(
        stdout(&a).lines().filter(|l| l.starts_with("e ")).count(),
        14
    );
    let o = run(&["gen", "--model", "multigraph", "--n", "4", "--m", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 4);
    assert!(!text.lines().any(|l| l.starts_with("e ")));
}

#[test]
fn inconsistent_gen_parameters() {
    for args in [
        &["gen", "--model", "multigraph", "--n", "3", "--m", "7"][..],
        &[
            "gen",
            "--model",
            "multigraph",
            "--n",
            "3",
            "--m",
            "2",
            "--max-mult",
            "0",
        ],
        &["gen", "--model", "multigraph", "--n", "3"],
        &["gen", "--model", "m-subdivided-pattern"],
        &["gen", "--model", "m-subdivided-pattern", "--pattern", "F9"],
        &[
            "gen",
            "--model",
            "m-subdivided-pattern",
            "--pattern",
            "F1",
            "--n",
            "4",
        ],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn wheel_verdict_is_reported_unverified() {
    let wheel = fixture("wheel.graph");
    let o = run(&["recognize", wheel.to_str().unwrap(), "--proof"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.starts_with("verdict: non-Mengerian (F3)"), "{out}");
    assert!(out.contains("witness: unverified (vertex cut is undefined"), "{out}");
}
