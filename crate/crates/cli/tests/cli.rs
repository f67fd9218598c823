use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_lingrowth"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("lingrowth-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn generate_grid_header_and_edges() {
    let o = run(&["generate", "grid", "4"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("p 16 24"));
    assert_eq!(text.lines().count(), 25);
}

#[test]
fn growth_of_path_from_stdin() {
    let g = stdout(&run(&["generate", "path", "9"]));
    let o = run_stdin(&["growth", "-", "--r-max", "5"], &g);
    assert!(o.status.success());
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[..6], ["r,f", "1,3", "2,5", "3,7", "4,9", "5,9"]);
    assert!(text.contains("# c = 3 at r = 1"));
}

#[test]
fn growth_bound_violation_exits_one() {
    let g = stdout(&run(&["generate", "grid", "5"]));
    let o = run_stdin(&["growth", "-", "--bound", "1,2"], &g);
    assert_eq!(o.status.code(), Some(1));
    let o = run_stdin(&["growth", "-", "--bound", "1,2,2"], &g);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn treedecomp_then_check_then_stack() {
    let graph = scratch("grid.txt");
    let td = scratch("grid_td.json");
    std::fs::write(&graph, stdout(&run(&["generate", "grid", "5"]))).unwrap();
    let g = graph.to_str().unwrap();
    let t = td.to_str().unwrap();
    assert!(run(&["treedecomp", g, "-o", t]).status.success());
    let check = run(&["checktd", g, t]);
    assert!(check.status.success());
    assert!(stdout(&check).contains("\"valid\": true"));
    let o = run(&["stack", g, "--decomposition", t]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("\"stacks\""));
}

#[test]
fn checktd_rejects_bad_decomposition() {
    let graph = scratch("c4.txt");
    let td = scratch("c4_bad.json");
    std::fs::write(&graph, stdout(&run(&["generate", "cycle", "4"]))).unwrap();
    std::fs::write(&td, r#"{"nodes":[{"id":0,"bag":[0,1,2]}],"edges":[],"width":2}"#).unwrap();
    let o = run(&[
        "checktd",
        graph.to_str().unwrap(),
        td.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn exact_treewidth_budget_exit_three() {
    let g = stdout(&run(&["generate", "grid", "3"]));
    assert_eq!(run_stdin(&["tw-exact", "-", "--budget", "5"], &g).status.code(), Some(3));
    let o = run_stdin(&["tw-exact", "-"], &g);
    assert!(o.status.success());
    assert!(stdout(&o).contains("\"width\": 3"));
}

#[test]
fn separate_rebalance_is_balanced() {
    let g = stdout(&run(&["generate", "grid", "6"]));
    let o = run_stdin(&["separate", "-", "--rebalance"], &g);
    assert!(o.status.success());
    assert!(stdout(&o).contains("\"exclusive_balanced\": true"));
}

#[test]
fn subdivide_host_mode_certificate() {
    let graph = scratch("p2.txt");
    let emb = scratch("p2_emb.json");
    std::fs::write(&graph, "p 2 1\n0 1\n").unwrap();
    std::fs::write(
        &emb,
        r#"{"tree_edges":[[0,1]],"root":0,"k":1,"map":[{"v":0,"node":0,"copy":1},{"v":1,"node":1,"copy":1}]}"#,
    )
    .unwrap();
    let o = run(&[
        "subdivide",
        graph.to_str().unwrap(),
        "--mode",
        "host",
        "--embedding",
        emb.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn subdivide_uniform_rejects_linear_bound() {
    let g = stdout(&run(&["generate", "complete", "4"]));
    let o = run_stdin(&["subdivide", "-", "--mode", "uniform", "--f", "0,2"], &g);
    assert_eq!(o.status.code(), Some(2));
    let o = run_stdin(&["subdivide", "-", "--mode", "uniform", "--f", "1,3,1"], &g);
    assert!(o.status.success());
}

#[test]
fn expand3_bounds_degree() {
    let g = stdout(&run(&["generate", "complete", "5"]));
    let o = run_stdin(&["expand3", "-"], &g);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next(), Some("p 20 25"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["generate", "hexagon", "3"]).status.code(), Some(2));
    assert_eq!(run(&["growth", "/nonexistent/graph.txt"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn verify_rebalancing_suite_passes_as_json() {
    let o = run(&["verify", "--suite", "rebalance", "--format", "json"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.lines().count() > 10);
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["pass"], true);
    }
}

#[test]
fn explore_reports_rows() {
    let o = run(&["explore-lower-bound", "--sizes", "10", "--seeds", "1,2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 3);
}
