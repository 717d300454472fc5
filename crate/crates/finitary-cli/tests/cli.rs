use finitary::examples::build;
use std::path::Path;
use std::process::{Command, Output};

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_finitary"))
        .current_dir(dir)
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn with_fig3() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["examples", "dump", "fig3"]);
    std::fs::write(dir.path().join("fig3.arena"), &o.stdout).unwrap();
    dir
}

#[test]
fn dump_matches_the_library() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["fig3", "uniparity", "adam-memory"] {
        let o = run(dir.path(), &["examples", "dump", name]);
        assert!(o.status.success());
        assert_eq!(stdout(&o), build(name, &[]).unwrap().arena().unwrap().to_text());
    }
    let o = run(dir.path(), &["examples", "dump", "switch"]);
    let b = build("switch", &[]).unwrap();
    assert!(stdout(&o).starts_with(&b.pushdown().unwrap().0.to_text()));
}

#[test]
fn solve_golden() {
    let dir = with_fig3();
    let args = [
        "solve", "--input", "fig3.arena", "--condition", "bnd-uniform-buchi", "--N", "0", "--start", "0",
    ];
    let o = run(dir.path(), &args);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.starts_with("condition bnd-uniform-buchi F=0,2 N=0\nregion E: 2\nregion A: 0,1\nstart 0: A\n"), "{out}");

    let o = run(dir.path(), &["solve", "--input", "fig3.arena", "--condition", "uniform-buchi", "--N", "0", "--start", "0", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["eve_region"], serde_json::json!([0, 1, 2]));
    assert_eq!(v["winner"], "E");
}

#[test]
fn emitted_strategy_verifies() {
    let dir = with_fig3();
    let o = run(dir.path(), &["solve", "--input", "fig3.arena", "--condition", "finitary-parity", "--start", "0", "--emit-strategy", "s.txt"]);
    assert_eq!(o.status.code(), Some(0));
    let ok = run(dir.path(), &["verify", "--input", "fig3.arena", "--strategy", "s.txt", "--condition", "finitary-parity", "--from", "0,1,2"]);
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));
    let bad = run(dir.path(), &["verify", "--input", "fig3.arena", "--strategy", "s.txt", "--condition", "bnd-uniform-buchi", "--N", "0", "--from", "0"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn exit_codes() {
    let dir = with_fig3();
    let d = dir.path();
    let code = |args: &[&str]| run(d, args).status.code();
    assert_eq!(code(&["solve", "--input", "nope.arena", "--condition", "buchi", "--start", "0"]), Some(2));
    assert_eq!(code(&["solve", "--input", "fig3.arena", "--condition", "nope", "--start", "0"]), Some(2));
    assert_eq!(code(&["solve", "--input", "fig3.arena", "--condition", "buchi", "--start", "9"]), Some(2));
    assert_eq!(code(&["solve", "--input", "fig3.arena", "--condition", "counter-parity", "--N", "1", "--start", "0"]), Some(2));
    assert_eq!(code(&["examples", "dump", "nope"]), Some(2));
    assert_eq!(code(&["examples", "dump", "bincounter", "--param", "n=99"]), Some(2));
    assert_eq!(code(&["frobnicate"]), Some(2));
    assert_eq!(code(&["--help"]), Some(0));
    // the oracle refuses a memory cap above its budget
    assert_eq!(code(&["experiment", "memory-bound", "--example", "adam-memory", "--player", "A", "--cap", "9"]), Some(3));
    assert_eq!(code(&["examples", "check", "bndparity-rounds"]), Some(1));
}

#[test]
fn unfold_writes_an_arena() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(d.join("sw.pd"), run(d, &["examples", "dump", "switch"]).stdout).unwrap();
    let o = run(d, &["unfold", "--pushdown", "sw.pd", "--height", "2", "--start", "q:⊥", "--out", "u.arena"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "vertices 9 edges 14 overflow 7 dropped 0\n");
    let text = std::fs::read_to_string(d.join("u.arena")).unwrap();
    let a = finitary::Arena::parse(&text).unwrap();
    assert_eq!(a.num_vertices(), 9);
    assert!(text.contains("# 4 q:aa⊥"));
}

#[test]
fn collapse_growth_table() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["experiment", "collapse-growth", "--n-range", "2..5", "--csv", "g.csv"]);
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(dir.path().join("g.csv")).unwrap();
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows[0], "n,k,states,period,max_gap,collapse_bound,ratio");
    assert_eq!(rows.len(), 5);
    let gaps: Vec<u64> = rows[1..].iter().map(|r| r.split(',').nth(4).unwrap().parse().unwrap()).collect();
    assert!(gaps.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn min_bound_reports_stabilization() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(d.join("sw.pd"), run(d, &["examples", "dump", "switch"]).stdout).unwrap();
    let o = run(d, &["experiment", "min-bound", "--pushdown", "sw.pd", "--start", "q:⊥", "--height-range", "1..5"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("height,vertices,min_bound\n1,6,2\n"), "{out}");
    assert!(out.ends_with("stable from H=1: 2 (window 3, a heuristic witness only)\n"), "{out}");
}
