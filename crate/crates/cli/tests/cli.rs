//! End-to-end tests of the binary: exit-code contract, file formats, and
//! golden output.

use std::path::PathBuf;
use std::process::{Command, Output};

use minturn::Pseudotour;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_minturn"))
}

fn write(dir: &std::path::Path, name: &str, content: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path
}

fn tempdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("minturn-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

const IRREGULAR_4X4: &str =
    "0,0 1,0 2,0 3,0 3,1 2,1 2,2 3,2 3,3 2,3 1,3 0,3 0,2 1,2 1,1 0,1\n";

#[test]
fn check_exit_codes() {
    let dir = tempdir("check");
    let even = write(&dir, "even.region", "##\n##\n");
    let odd = write(&dir, "odd.region", "###\n###\n");
    let holed = write(&dir, "holed.region", "####\n#..#\n####\n");
    let bad = write(&dir, "bad.region", "#x#\n");

    let out = bin().arg("check").arg(&even).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("S = 1 cell"));

    let out = bin().arg("check").arg(&odd).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("not even"));

    let out = bin().arg("check").arg(&holed).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("not simply connected"));

    let out = bin().arg("check").arg(&bad).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn improve_reduces_turns_and_round_trips() {
    let dir = tempdir("improve");
    let tour = write(&dir, "irregular.pt", IRREGULAR_4X4);
    let out = bin().args(["improve", "--trace"]).arg(&tour).output().unwrap();
    assert_eq!(out.status.code(), Some(0));

    let before = Pseudotour::parse_tour_text(IRREGULAR_4X4).unwrap();
    let after = Pseudotour::parse_tour_text(&stdout(&out)).unwrap();
    assert!(after.is_tour());
    assert!(after.turns().len() <= before.turns().len() - 2);
    assert!(stderr(&out).lines().any(|l| l.starts_with("delete ")));
}

#[test]
fn improve_is_identity_on_regular_tours() {
    let dir = tempdir("improve-regular");
    let regular = "0,0 0,1 1,1 1,0\n";
    let tour = write(&dir, "regular.pt", regular);
    let out = bin().arg("improve").arg(&tour).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), regular);
    assert!(stderr(&out).contains("already regular"));
}

#[test]
fn improve_rejects_malformed_files() {
    let dir = tempdir("improve-bad");
    let tour = write(&dir, "bad.pt", "0,0 nonsense\n");
    let out = bin().arg("improve").arg(&tour).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn min_tour_methods_agree() {
    let dir = tempdir("min-tour");
    let r24 = write(&dir, "r24.region", "####\n####\n");
    let out = bin()
        .args(["min-tour", "--method", "oracle"])
        .arg(&r24)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(stderr(&out).contains("t_min 4"));

    let r44 = write(&dir, "r44.region", "####\n####\n####\n####\n");
    let mut t = Vec::new();
    for method in ["oracle", "regular"] {
        let out = bin()
            .args(["min-tour", "--method", method])
            .arg(&r44)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
        let tour = Pseudotour::parse_tour_text(&stdout(&out)).unwrap();
        assert!(tour.is_tour());
        t.push(tour.turns().len());
    }
    assert_eq!(t[0], t[1]);
}

#[test]
fn min_tour_budget_behavior_on_large_region() {
    let dir = tempdir("min-tour-large");
    // 2 x 50 region: 100 cells
    let rows = format!("{}\n{}\n", "#".repeat(50), "#".repeat(50));
    let big = write(&dir, "big.region", &rows);

    let out = bin()
        .args(["min-tour", "--method", "regular"])
        .arg(&big)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(stderr(&out).contains("t_min 4"));

    let out = bin()
        .args(["min-tour", "--method", "oracle"])
        .arg(&big)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_small_corpus_passes() {
    let dir = tempdir("verify");
    let report = dir.join("report.txt");
    let out = bin()
        .args(["verify", "--max-cells", "2", "--out"])
        .arg(&report)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.matches("result=pass").count(), 4);
    assert!(text.contains("summary instances=4 failures=0"));
    let written = std::fs::read_to_string(&report).unwrap();
    assert_eq!(written, text);
}

#[test]
fn verify_refuses_above_cap() {
    let out = bin().args(["verify", "--max-cells", "50"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn render_golden_ascii() {
    let dir = tempdir("render-ascii");
    let tour = write(&dir, "sq.pt", "0,0 0,1 1,1 1,0\n");
    let out = bin()
        .args(["render", "--layers", "tour", "--tour"])
        .arg(&tour)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "\n +-+\n | |\n +-+\n\n");
}

#[test]
fn render_svg_two_rings() {
    let dir = tempdir("render-svg");
    let tour = write(
        &dir,
        "rings.pt",
        "0,0 1,0 2,0 3,0 3,1 3,2 3,3 2,3 1,3 0,3 0,2 0,1\n1,1 2,1 2,2 1,2\n",
    );
    let run = || {
        bin()
            .args(["render", "--format", "svg", "--layers", "tour,turn-graph", "--tour"])
            .arg(&tour)
            .output()
            .unwrap()
    };
    let out = run();
    assert_eq!(out.status.code(), Some(0));
    let svg = stdout(&out);
    assert_eq!(svg.matches("<polyline").count(), 2);
    assert_eq!(svg.matches("<line").count(), 8);
    // byte-identical on a second run
    assert_eq!(stdout(&run()), svg);
}

#[test]
fn render_rejects_layer_without_input() {
    let dir = tempdir("render-missing");
    let region = write(&dir, "sq.region", "##\n##\n");
    let out = bin()
        .args(["render", "--layers", "tour", "--region"])
        .arg(&region)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn render_tree_layer() {
    let dir = tempdir("render-tree");
    let tree = write(
        &dir,
        "domino.tree",
        "cell 0 0\ncell 1 0\nedge 0 0 1 0\n",
    );
    let out = bin()
        .args(["render", "--layers", "tree", "--tree"])
        .arg(&tree)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("+ - +"));
}
