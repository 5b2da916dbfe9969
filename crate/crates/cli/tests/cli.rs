//! Exit-code contract and output goldens for the `bmnet` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    let args: Vec<String> =
        args.iter().map(|a| if a.ends_with(".json") || a.ends_with(".txt") { fixture(a) } else { a.to_string() }).collect();
    Command::new(env!("CARGO_BIN_EXE_bmnet")).args(&args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn golden_networks_verify() {
    for file in ["markov.json", "triangle.json", "arrow_removed.json", "five_node.json", "single_node.json"] {
        let out = run(&["total", file, "--method", "verify"]);
        assert_eq!(out.status.code(), Some(0), "{file}: {}", stderr(&out));
        assert!(stdout(&out).starts_with("EQUAL ("), "{file}");
        assert_eq!(run(&["validate", file]).status.code(), Some(0), "{file}");
    }
}

#[test]
fn expected_tensor_comparison() {
    let ok = run(&["total", "markov.json", "--method", "verify", "--expect", "markov_total.txt"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(stdout(&ok), "EQUAL (8 cells)\n");

    let bad = run(&["total", "markov.json", "--method", "verify", "--expect", "markov_total_mutated.txt"]);
    assert_eq!(bad.status.code(), Some(1));
    assert_eq!(stdout(&bad), "DIFFERENT at (2,1,2): expected = alpha^3, direct = beta^3, bmp = beta^3\n");
}

#[test]
fn malformed_inputs_exit_two() {
    let cyclic = run(&["order", "cyclic.json"]);
    assert_eq!(cyclic.status.code(), Some(2));
    assert!(stderr(&cyclic).contains("CycleDetected: y -> x -> y"));

    let validate = run(&["validate", "cyclic.json"]);
    assert_eq!(validate.status.code(), Some(2));
    assert!(stderr(&validate).lines().nth(1).unwrap().contains("CycleDetected"));

    let missing = run(&["total", "missing_parent.json", "--method", "bmp"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(stderr(&missing).contains("UnknownNodeId at nodes[1].parents[0]"));

    let mismatched = run(&["bmp", "matrix_2x3.txt", "matrix_2x3.txt"]);
    assert_eq!(mismatched.status.code(), Some(2));
    assert!(stdout(&mismatched).is_empty());

    let dir = tempfile::tempdir().unwrap();
    let broken = dir.path().join("broken.txt");
    std::fs::write(&broken, "shape: 2 x 2\n1,1 = 1\n1,3 = 2\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_bmnet")).args(["bmp", broken.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));

    assert_eq!(run(&["total", "markov.json", "--method", "sideways"]).status.code(), Some(2));
    assert_eq!(run(&["total", "markov.json", "--assign", "alpha=1,alpha=2"]).status.code(), Some(2));
}

#[test]
fn node_tensor_table() {
    let out = run(&["node-tensors", "five_node.json", "--node", "e"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("# node e (position 4): node tensor\nshape: 2 x 2 x 2 x 2 x 2\n"));
    let cells: Vec<&str> = text.lines().skip(2).collect();
    assert_eq!(cells.len(), 16);
    assert_eq!(cells[0], "1,1,1,1,1 = alpha");
    assert_eq!(cells[15], "2,2,2,2,2 = alpha");
}

#[test]
fn assignment_evaluates_cells() {
    let out = run(&["total", "markov.json", "--method", "bmp", "--assign", "alpha=1,beta=0"]);
    assert_eq!(stdout(&out), "shape: 2 x 2 x 2\n1,1,1 = 1\n");
    let out = run(&["total", "single_node.json", "--method", "direct"]);
    assert_eq!(stdout(&out), "shape: 2\n1 = 1/3\n2 = 2/3\n");
}

#[test]
fn order_and_matrix_product() {
    assert_eq!(stdout(&run(&["order", "five_node.json"])), "b,c,d,e,a\n");
    let out = run(&["bmp", "matrix_2x3.txt", "matrix_3x2.txt"]);
    assert_eq!(stdout(&out), "shape: 2 x 2\n1,1 = 58\n1,2 = 64\n2,1 = 139\n2,2 = 154\n");
}
