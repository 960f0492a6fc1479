use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use basis_core::conditions::Violation;
use basis_core::graph::{read_graph, write_graph};
use basis_core::matroid::{read_bases, verify_matroid};
use basis_core::{Graph, SetSystem64};
use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_basisgraph")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON report")
}

fn graph_file(dir: &TempDir, name: &str, g: &Graph) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, write_graph(g)).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn data_lines(text: &str) -> Vec<&str> {
    text.lines().filter(|l| !l.trim().is_empty() && !l.starts_with('#')).collect()
}

#[test]
fn gen_counts() {
    let out = run(&["gen", "complete", "3"]);
    assert!(out.status.success());
    let ss: SetSystem64 = read_bases(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    assert_eq!((ss.ground(), ss.len()), (6, 20));
    assert!(String::from_utf8_lossy(&out.stderr).contains("20 bases over ground 6"));

    let dir = TempDir::new().unwrap();
    let p = dir.path().join("u42.txt");
    let out = run(&["gen", "uniform", "4", "2", "--out", s(&p)]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["schema"], 1);
    assert_eq!(report["result"]["bases"], 6);
    let ss: SetSystem64 = read_bases(&std::fs::read_to_string(&p).unwrap()).unwrap();
    assert_eq!(ss.len(), 6);
}

#[test]
fn gen_hn_8() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("h8.txt");
    let out = run(&["gen", "hn", "8", "--out", s(&p)]);
    assert_eq!(out.status.code(), Some(0));
    let g = read_graph(&std::fs::read_to_string(&p).unwrap()).unwrap();
    // C(16,8) / 2 vertices, each of degree 8 * 8.
    assert_eq!(g.n(), 6435);
    assert_eq!(g.min_degree(), Some(64));
    assert_eq!(json(&out)["result"]["vertices"], 6435);
}

#[test]
fn gen_graphic() {
    let dir = TempDir::new().unwrap();
    let k4 = graph_file(&dir, "k4.txt", &Graph::complete(4));
    let out = run(&["gen", "graphic", s(&k4)]);
    assert!(out.status.success());
    let ss: SetSystem64 = read_bases(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    // Cayley: 4^2 spanning trees.
    assert_eq!((ss.ground(), ss.len()), (6, 16));
    assert!(verify_matroid(&ss).holds());
}

#[test]
fn check_octahedron_passes() {
    let dir = TempDir::new().unwrap();
    let p = graph_file(&dir, "oct.txt", &Graph::octahedron());
    let out = run(&["check", s(&p), "--basepoint", "0"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let report = json(&out);
    assert_eq!(report["pass"], true);
    assert_eq!(report["seed"], 0);
    assert_eq!(report["inputs"][0]["sha256"].as_str().unwrap().len(), 64);
    let names: Vec<_> = report["result"]["reports"].as_array().unwrap().iter().map(|r| r["condition"].clone()).collect();
    for c in ["IC", "LPC", "PC", "TC(v)", "SPC(v)", "LC(v)"] {
        assert!(names.contains(&Value::from(c)), "{c} missing");
    }
}

#[test]
fn check_k23_fails_with_revalidating_witnesses() {
    let dir = TempDir::new().unwrap();
    let g = Graph::complete_bipartite(2, 3);
    let p = graph_file(&dir, "k23.txt", &g);
    let out = run(&["check", s(&p)]);
    assert_eq!(out.status.code(), Some(1));
    let report = json(&out);
    assert_eq!(report["pass"], false);
    let reports = report["result"]["reports"].as_array().unwrap();
    for c in ["IC", "LPC"] {
        let r = reports.iter().find(|r| r["condition"] == c).unwrap();
        assert_eq!(r["pass"], false);
        let witnesses = r["witnesses"].as_array().unwrap();
        assert!(!witnesses.is_empty());
        for w in witnesses {
            let v: Violation = serde_json::from_value(w.clone()).unwrap();
            assert!(v.revalidate(&g), "{c} witness {w} does not revalidate");
        }
    }
}

#[test]
fn check_even_subsets_in_even_delta_mode() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("even4.txt");
    assert!(run(&["gen", "even-delta-free", "4", "--out", s(&p)]).status.success());
    let out = run(&["check", s(&p), "--mode", "even-delta"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(json(&out)["result"]["mode"], "even-delta");
}

#[test]
fn check_disconnected_fails() {
    let dir = TempDir::new().unwrap();
    let p = graph_file(&dir, "two.txt", &Graph::empty(2));
    let out = run(&["check", s(&p)]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["result"]["disconnected"], true);
}

#[test]
fn input_errors_exit_3_with_line_numbers() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("bad.txt");
    std::fs::write(&p, "# header\ngraph 3\n0 1\n1 x\n").unwrap();
    let out = run(&["check", s(&p)]);
    assert_eq!(out.status.code(), Some(3));
    let report = json(&out);
    assert_eq!(report["error"]["kind"], "input");
    assert!(report["error"]["message"].as_str().unwrap().contains("line 4"));

    let missing = dir.path().join("missing.txt");
    assert_eq!(run(&["cover", s(&missing)]).status.code(), Some(3));
    let oct = graph_file(&dir, "oct.txt", &Graph::octahedron());
    assert_eq!(run(&["check", s(&oct), "--basepoint", "6"]).status.code(), Some(3));
    assert_eq!(run(&["cover", s(&oct), "--basepoint", "6"]).status.code(), Some(3));
}

#[test]
fn cover_budget_exhaustion_exits_2() {
    let dir = TempDir::new().unwrap();
    let p = graph_file(&dir, "c5.txt", &Graph::cycle(5));
    let out = run(&["cover", s(&p), "--budget", "100"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["kind"], "resource");
}

#[test]
fn cover_m33_is_one_sheet() {
    let dir = TempDir::new().unwrap();
    let bases = dir.path().join("m33.txt");
    assert!(run(&["gen", "complete", "3", "--out", s(&bases)]).status.success());
    let export = dir.path().join("cover.txt");
    let out = run(&["cover", s(&bases), "--verify", "--checked", "--export", s(&export)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let report = json(&out);
    let verdict = &report["result"]["verdict"];
    assert_eq!(verdict["sheets"], 1);
    assert_eq!(verdict["simply_connected"], true);
    assert_eq!(verdict["level_sizes"], serde_json::json!([1, 9, 9, 1]));
    assert_eq!(report["result"]["verification"]["pass"], true);

    let text = std::fs::read_to_string(&export).unwrap();
    let graph_part = &text[..text.find("map\n").unwrap()];
    assert_eq!(read_graph(graph_part).unwrap().n(), 20);
    assert_eq!(text.lines().filter(|l| l.starts_with("f ")).count(), 20);
    assert_eq!(text.lines().filter(|l| l.starts_with("level ")).count(), 20);
}

#[test]
fn reconstruct_outputs() {
    let dir = TempDir::new().unwrap();
    let oct = graph_file(&dir, "oct.txt", &Graph::octahedron());
    let out_path = dir.path().join("oct-bases.txt");
    let out = run(&["reconstruct", s(&oct), "--out", s(&out_path)]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&out_path).unwrap();
    // Header plus six bases.
    assert_eq!(data_lines(&text).len(), 1 + 6);
    let ss: SetSystem64 = read_bases(&text).unwrap();
    assert!(verify_matroid(&ss).holds());

    let m33 = dir.path().join("m33.txt");
    assert!(run(&["gen", "complete", "3", "--out", s(&m33)]).status.success());
    let rec = dir.path().join("m33-rec.txt");
    let out = run(&["reconstruct", s(&m33), "--out", s(&rec)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["exchange_axiom"], true);
    let ss: SetSystem64 = read_bases(&std::fs::read_to_string(&rec).unwrap()).unwrap();
    assert_eq!(ss.len(), 20);

    let k23 = graph_file(&dir, "k23.txt", &Graph::complete_bipartite(2, 3));
    let out = run(&["reconstruct", s(&k23)]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["result"]["not_a_basis_graph"]["stage"], "conditions");
}

#[test]
fn reports_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let bases = dir.path().join("u63.txt");
    assert!(run(&["gen", "uniform", "6", "3", "--out", s(&bases)]).status.success());
    let g = graph_file(&dir, "w6.txt", &Graph::wheel(6));
    for args in [
        vec!["check", s(&bases), "--sample", "50", "--seed", "9"],
        vec!["check", s(&g), "--basepoint", "1"],
        vec!["cover", s(&bases), "--verify"],
        vec!["reconstruct", s(&bases)],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.status.code(), b.status.code());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let a = json(&run(&["check", s(&bases), "--sample", "50", "--seed", "9"]));
    assert_eq!(a["seed"], 9);
    assert_eq!(a["result"]["reports"][0]["exhaustive"], false);
    assert_eq!(a["result"]["reports"][0]["seed"], 9);
}
