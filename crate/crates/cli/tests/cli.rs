use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

const OUT_DIR_ENV: &str = "RGM_OUT_DIR";

fn rgm(out: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rgm"))
        .args(args)
        .env_remove(OUT_DIR_ENV)
        .env_remove("RUST_LOG")
        .arg("--out-dir")
        .arg(out)
        .output()
        .expect("rgm runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[track_caller]
fn assert_exit(o: &Output, code: i32) {
    assert_eq!(o.status.code(), Some(code), "stdout:\n{}\nstderr:\n{}", stdout(o), stderr(o));
}

fn objective(o: &Output) -> f64 {
    let line = stdout(o).lines().find(|l| l.starts_with("objective ")).expect("objective line").to_owned();
    line["objective ".len()..].parse().unwrap()
}

#[test]
fn bound_solves_tightened_and_franking() {
    let dir = TempDir::new().unwrap();
    let o = rgm(dir.path(), &["bound", "--variant", "tightened", "--n", "3", "--solve"]);
    assert_exit(&o, 0);
    assert!((objective(&o) - 0.51391).abs() <= 5e-5);
    let o = rgm(dir.path(), &["bound", "--variant", "franking", "--n", "4", "--solve"]);
    assert_exit(&o, 0);
    assert!((objective(&o) - 0.51153).abs() <= 5e-5);
}

#[test]
fn bound_golden_match_and_refusal() {
    let dir = TempDir::new().unwrap();
    let o = rgm(dir.path(), &["bound", "--variant", "tightened", "--n", "4", "--golden"]);
    assert_exit(&o, 0);
    assert!(stdout(&o).contains("golden 0.52480: match"));
    let o = rgm(dir.path(), &["bound", "--variant", "tightened", "--n", "2", "--golden", "--tol", "1e-12"]);
    assert_exit(&o, 4);
    for args in [
        &["bound", "--variant", "ranking", "--n", "3", "--golden"][..],
        &["bound", "--variant", "tightened", "--n", "21", "--golden"],
        &["bound", "--variant", "oddgirth", "--k", "2", "--n", "8", "--golden"],
    ] {
        assert_exit(&rgm(dir.path(), args), 2);
    }
}

#[test]
fn bound_rejects_bad_odd_girth_parameters() {
    let dir = TempDir::new().unwrap();
    for args in [
        &["bound", "--variant", "oddgirth", "--n", "3", "--k", "1"][..],
        &["bound", "--variant", "oddgirth", "--n", "3"],
        &["bound", "--variant", "tightened", "--n", "3", "--k", "2"],
        &["bound", "--variant", "tightened", "--n", "0"],
    ] {
        let o = rgm(dir.path(), args);
        assert_exit(&o, 2);
    }
}

#[test]
fn bound_exports_reparse_and_write_solution() {
    let dir = TempDir::new().unwrap();
    let o = rgm(dir.path(), &["bound", "--variant", "oddgirth", "--k", "2", "--n", "2", "--export", "lp", "--export", "mps", "--solve"]);
    assert_exit(&o, 0);
    let lp = std::fs::read_to_string(dir.path().join("oddgirth2_n2.lp")).unwrap();
    let mps = std::fs::read_to_string(dir.path().join("oddgirth2_n2.mps")).unwrap();
    let a = rgm_core::lp::parse_model(&lp).unwrap();
    let b = rgm_core::lp::parse_model(&mps).unwrap();
    assert_eq!(a, b);
    let sol = std::fs::read_to_string(dir.path().join("oddgirth2_n2.sol")).unwrap();
    let x = rgm_core::lp::parse_solution(&sol).unwrap();
    assert!(rgm_core::lp::verify_solution(&a, &x, 1e-8).unwrap().passed());
}

#[test]
fn simulate_writes_csv() {
    let dir = TempDir::new().unwrap();
    let o = rgm(dir.path(), &["simulate", "--kind", "ranking", "--pairs", "2", "--exact"]);
    assert_exit(&o, 0);
    let csv = std::fs::read_to_string(dir.path().join("simulate-ranking.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("instance_id,algorithm,ratio,std_error,bound,margin"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    let expected = rgm_core::graph::perfect_matching_graphs(1).unwrap().len()
        + rgm_core::graph::perfect_matching_graphs(2).unwrap().len();
    assert_eq!(rows.len(), expected);
    assert_eq!(rows[0][0], "pm1-0");
    assert_eq!(rows[0][2].parse::<f64>().unwrap(), 1.0);
    assert!(rows.iter().all(|r| r[2].parse::<f64>().unwrap() >= 0.5 && r[3].parse::<f64>().unwrap() == 0.0));
}

#[test]
fn simulate_bounds() {
    let dir = TempDir::new().unwrap();
    let o = rgm(dir.path(), &["simulate", "--kind", "franking", "--pairs", "3", "--exact", "--worst-pi", "--bound", "0.5"]);
    assert_exit(&o, 0);
    let o = rgm(dir.path(), &["simulate", "--kind", "ranking", "--pairs", "3", "--exact", "--bound", "0.53247"]);
    assert_exit(&o, 0);
    let o = rgm(dir.path(), &["simulate", "--kind", "uur", "--pairs", "2", "--exact", "--bound", "0.9"]);
    assert_exit(&o, 4);
}

#[test]
fn simulate_usage_errors() {
    let dir = TempDir::new().unwrap();
    for args in [
        &["simulate", "--kind", "franking", "--pairs", "2", "--exact"][..],
        &["simulate", "--kind", "ranking", "--pairs", "2", "--exact", "--worst-pi"],
        &["simulate", "--kind", "ranking", "--pairs", "2"],
        &["simulate", "--kind", "ranking", "--exact"],
        &["simulate", "--kind", "bogus", "--pairs", "2", "--exact"],
        &["simulate", "--kind", "ranking", "--pairs", "9", "--exact"],
    ] {
        let o = rgm(dir.path(), args);
        assert_exit(&o, 2);
    }
}

#[test]
fn simulate_sampled_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let args = ["simulate", "--kind", "mrg", "--pairs", "4", "--random", "5", "--trials", "200", "--seed", "9"];
    let (pa, pb) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    let a = rgm(dir.path(), &[&args[..], &["--output", pa.to_str().unwrap()]].concat());
    let b = rgm(dir.path(), &[&args[..], &["--output", pb.to_str().unwrap(), "--jobs", "1"]].concat());
    assert_exit(&a, 0);
    assert_exit(&b, 0);
    let read = |p: &Path| std::fs::read_to_string(p).unwrap();
    assert_eq!(read(&pa), read(&pb));
    assert!(read(&pa).lines().count() == 6);
}

#[test]
fn simulate_reads_graph_files_and_odd_girth_families() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("c5.txt");
    let c5 = rgm_core::graph::Graph::new(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
    std::fs::write(&path, c5.to_text()).unwrap();
    let o = rgm(dir.path(), &["simulate", "--kind", "ranking", "--graph", path.to_str().unwrap(), "--exact"]);
    assert_exit(&o, 0);
    let expected = rgm_core::harness::exact_expected_ratio(&c5, rgm_core::greedy::AlgorithmKind::Ranking, None).unwrap();
    assert!(stdout(&o).contains(&format!("minimum ratio {:.6} on g0", expected.mean)));

    let o = rgm(
        dir.path(),
        &["simulate", "--kind", "ranking", "--pairs", "4", "--random", "10", "--min-odd-girth", "5", "--exact", "--bound", "0.5"],
    );
    assert_exit(&o, 0);
    let csv = std::fs::read_to_string(dir.path().join("simulate-ranking.csv")).unwrap();
    assert_eq!(csv.lines().filter(|l| l.starts_with("og5-4-")).count(), 10);
}

#[test]
fn verify_ci_gate_passes() {
    let dir = TempDir::new().unwrap();
    let o = rgm(dir.path(), &["verify", "--all", "--budget", "200", "--seed", "1"]);
    assert_exit(&o, 0);
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("verify-report.json")).unwrap()).unwrap();
    let checks = report["checks"].as_array().unwrap();
    assert_eq!(checks.len(), rgm_core::harness::lemma_names().len());
    assert!(checks.iter().all(|c| c["failures"] == 0 && c["assertions"].as_u64().unwrap() > 0));
}

#[test]
fn verify_single_check_and_unknown_name() {
    let dir = TempDir::new().unwrap();
    let o = rgm(dir.path(), &["verify", "--only", "alternating-path", "--budget", "50"]);
    assert_exit(&o, 0);
    assert!(stdout(&o).contains("PASS alternating-path"));
    let o = rgm(dir.path(), &["verify", "--only", "no-such-check"]);
    assert_exit(&o, 2);
    assert!(stderr(&o).contains("alternating-path"));
    assert_exit(&rgm(dir.path(), &["verify"]), 2);
}

#[test]
fn verify_replays_witness_files() {
    let dir = TempDir::new().unwrap();
    let witness = r#"{"check":"alternating-path","message":"","seed":1,"instance_index":0,"origin":"random",
        "instance":{"graph":{"vertex_count":3,"edges":[[0,1],[1,2]]},"list":{"kind":"ranking","ranks":[0.3,0.1,0.7]}},
        "graph_text":""}"#;
    let path = dir.path().join("w.json");
    std::fs::write(&path, witness).unwrap();
    let o = rgm(dir.path(), &["verify", "--replay", path.to_str().unwrap()]);
    assert_exit(&o, 0);
    assert!(stdout(&o).contains("PASS alternating-path"));
    let analysis: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("replay-alternating-path.json")).unwrap()).unwrap();
    assert_eq!(analysis["paths"].as_array().unwrap().len(), 3);
    assert_eq!(analysis["pairs"].as_array().unwrap().len(), 4);
    assert!(analysis["trace"].is_object());

    std::fs::write(&path, witness.replace("alternating-path", "fully-online")).unwrap();
    assert_exit(&rgm(dir.path(), &["verify", "--replay", path.to_str().unwrap()]), 2);
    std::fs::write(&path, "not json").unwrap();
    assert_exit(&rgm(dir.path(), &["verify", "--replay", path.to_str().unwrap()]), 2);
}

#[test]
fn out_dir_comes_from_environment() {
    let dir = TempDir::new().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_rgm"))
        .args(["bound", "--variant", "franking", "--n", "1", "--export", "lp"])
        .env(OUT_DIR_ENV, dir.path())
        .output()
        .unwrap();
    assert_exit(&o, 0);
    let text = std::fs::read_to_string(dir.path().join("franking_n1.lp")).unwrap();
    assert_eq!(text, rgm_core::lp::export_model(&rgm_core::lp::build_franking_lp(1).unwrap(), rgm_core::lp::Format::LpText));
}

#[test]
fn help_text_is_stable() {
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/help");
    for (file, args) in [
        ("rgm.txt", &["--help"][..]),
        ("bound.txt", &["bound", "--help"]),
        ("simulate.txt", &["simulate", "--help"]),
        ("verify.txt", &["verify", "--help"]),
    ] {
        let o = Command::new(env!("CARGO_BIN_EXE_rgm")).args(args).env_remove(OUT_DIR_ENV).output().unwrap();
        assert_exit(&o, 0);
        let expected = std::fs::read_to_string(golden.join(file)).unwrap();
        assert_eq!(stdout(&o), expected, "{file}");
    }
}
