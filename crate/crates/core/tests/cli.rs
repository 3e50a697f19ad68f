//! End-to-end runs of the `cayley-chroma` binary.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_cayley-chroma"));
    c.env_remove("CAYLEY_CHROMA_BUDGET_NODES");
    c
}

fn run_with(mut cmd: Command, stdin: &str) -> Output {
    let mut child = cmd
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn");
    child
        .stdin
        .take()
        .expect("stdin")
        .write_all(stdin.as_bytes())
        .expect("write stdin");
    child.wait_with_output().expect("wait")
}

fn chi(input: &str, flags: &[&str]) -> Output {
    let mut cmd = bin();
    cmd.arg("chi").arg("-").args(flags);
    run_with(cmd, input)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    std::fs::create_dir_all(&dir).expect("tmpdir");
    dir.join(name)
}

#[test]
fn main_theorem_example_from_a_file() {
    let path = scratch("m.txt");
    std::fs::write(&path, "1 0\n1 0\n1 0\n1 0\n1 2\n").unwrap();
    let o = bin().arg("chi").arg(&path).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "chi = 3\n");
}

#[test]
fn four_chromatic_example_is_confirmed() {
    let o = chi("1 0\n0 1\n3 4\n", &["--verify"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("chi = 4\n"), "{text}");
    assert!(text.contains("verified: Confirmed(4)"), "{text}");
    assert!(!text.contains("contradiction"), "{text}");
}

#[test]
fn upper_bound_sources_can_be_restricted() {
    let text = stdout(&chi("1 0\n0 1\n3 4\n", &["--verify"]));
    assert!(text.contains("upper 4: cyclic image"), "{text}");
    let text = stdout(&chi("1 0\n0 1\n3 4\n", &["--verify", "--no-cyclic"]));
    assert!(text.contains("upper 4: quotient mod 7, Z_7"), "{text}");
    assert!(text.contains("verified: Confirmed(4)"), "{text}");
}

#[test]
fn loops_exit_with_two() {
    let o = chi("2 3\n", &[]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stdout(&o), "uncolorable (loops)\n");
}

#[test]
fn rank_three_exits_with_three_and_bounds() {
    let o = chi(
        "2 0 0\n0 2 0\n0 0 2\n1 1 1\n",
        &["--ball-radius", "2", "--moduli", "3"],
    );
    assert_eq!(o.status.code(), Some(3));
    let text = stdout(&o);
    assert!(text.starts_with("rank 3"), "{text}");
    assert!(text.contains("bounds:"), "{text}");
}

#[test]
fn bad_input_exits_with_one() {
    for input in ["1 0\n0\n", "", "1 x\n", "{\"matrix\": [[1.5]]}"] {
        let o = chi(input, &[]);
        assert_eq!(o.status.code(), Some(1), "{input:?}");
        assert!(
            String::from_utf8_lossy(&o.stderr).starts_with("error:"),
            "{input:?}"
        );
    }
    let o = bin()
        .arg("chi")
        .arg(scratch("missing.txt"))
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_with_one() {
    assert_eq!(
        bin()
            .arg("chi")
            .arg("-")
            .arg("--no-such-flag")
            .output()
            .unwrap()
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        bin().arg("frobnicate").output().unwrap().status.code(),
        Some(1)
    );
    assert_eq!(bin().arg("--help").output().unwrap().status.code(), Some(0));
}

#[test]
fn json_report_schema() {
    let o = chi(
        "{\"matrix\": [[1, 0], [0, 1], [3, 4]]}",
        &["--format", "json", "--certify", "--verify"],
    );
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["input"]["format"], "json");
    assert_eq!(
        v["input"]["matrix"],
        serde_json::json!([[1, 0], [0, 1], [3, 4]])
    );
    assert_eq!(v["result"], serde_json::json!({"kind": "chi", "k": 4}));
    assert_eq!(v["certificate"]["type"], "three_by_two_case");
    assert_eq!(v["verification"]["status"]["status"], "confirmed");
    assert!(v.get("timing_ms").is_none());

    let o = chi("2 3\n", &["--format", "json", "--certify"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["result"]["kind"], "uncolorable");
    assert_eq!(v["certificate"]["type"], "loop");
    assert!(v.get("verification").is_none());
}

#[test]
fn output_is_deterministic() {
    let flags = ["--format", "json", "--certify", "--verify"];
    let a = chi("1 1\n1 -1\n2 1\n1 0\n0 1\n", &flags);
    let b = chi("1 1\n1 -1\n2 1\n1 0\n0 1\n", &flags);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn dump_graph_writes_an_edge_list() {
    let path = scratch("k5.edges");
    let o = chi("5 -2\n0 1\n", &["--dump-graph", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "chi = 5\n");
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("5"));
    let edges: Vec<(usize, usize)> = lines
        .map(|l| {
            let mut it = l.split_whitespace().map(|t| t.parse::<usize>().unwrap());
            (it.next().unwrap(), it.next().unwrap())
        })
        .collect();
    assert_eq!(edges.len(), 10);
    assert!(edges.iter().all(|&(u, v)| u < v && v < 5));

    let path = scratch("ball.edges");
    let o = chi(
        "1 0\n0 1\n3 4\n",
        &["--dump-graph", path.to_str().unwrap(), "--ball-radius", "2"],
    );
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().next(), Some("17"));
}

#[test]
fn budget_comes_from_the_environment() {
    let mut cmd = bin();
    cmd.env("CAYLEY_CHROMA_BUDGET_NODES", "1")
        .args(["chi", "-", "--verify", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&run_with(cmd, "1 0\n0 1\n3 4\n"))).unwrap();
    assert_eq!(v["result"]["k"], 4);
    assert_ne!(v["verification"]["status"]["status"], "confirmed");
    assert_eq!(v["verification"]["contradiction"], false);

    let mut cmd = bin();
    cmd.env("CAYLEY_CHROMA_BUDGET_NODES", "lots")
        .args(["chi", "-"]);
    assert_eq!(run_with(cmd, "1 0\n").status.code(), Some(1));
}

#[test]
fn fuzz_examples_find_no_contradictions() {
    let sweep = bin()
        .args([
            "fuzz",
            "--rows",
            "2",
            "--cols",
            "2",
            "--entry-bound",
            "4",
            "--count",
            "all",
        ])
        .output()
        .unwrap();
    assert_eq!(sweep.status.code(), Some(0));
    let text = stdout(&sweep);
    assert!(text.contains("cases: 6561"), "{text}");
    assert!(text.contains("contradictions: 0"), "{text}");

    let args = [
        "fuzz",
        "--rows",
        "5",
        "--cols",
        "2",
        "--entry-bound",
        "3",
        "--count",
        "200",
        "--seed",
        "7",
    ];
    let a = bin().args(args).output().unwrap();
    let b = bin().args(args).output().unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert!(stdout(&a).contains("contradictions: 0"));
    assert_eq!(a.stdout, b.stdout);
}
