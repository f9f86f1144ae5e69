use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cellspan"))
        .args(args)
        .env_remove("CELLSPAN_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn spectrum_json_is_exact() {
    let o = run(&["spectrum", "--input", "cube:2", "--dim", "1", "--family", "tot", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), r#"{"spectrum":[[2,2],[4,2]]}"#);
}

#[test]
fn trees_table() {
    let o = run(&["trees", "--input", "cube:3", "--k", "1", "--method", "matrix-tree", "--format", "table"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l.starts_with("tau") && l.trim_end().ends_with("384")), "{out}");
}

#[test]
fn torsion_counts_through_the_cli() {
    let o = run(&["trees", "--input", "rp2", "--k", "2", "--method", "brute"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["tau"], "4");
    assert_eq!(v["per_tree"][0]["torsion"], "2");
}

#[test]
fn conjecture_reports_equal() {
    let o = run(&["conjecture", "--n", "3", "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "equal");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["spectrum", "--input", "cube:2", "--dim", "9"]).status.code(), Some(2));
    assert_eq!(run(&["spectrum", "--input", "nowhere.json"]).status.code(), Some(2));
    assert_eq!(run(&["trees", "--input", "cube:4", "--k", "1", "--method", "brute", "--cap", "5"]).status.code(), Some(3));
    let capped = Command::new(env!("CARGO_BIN_EXE_cellspan"))
        .args(["trees", "--input", "cube:4", "--k", "1", "--method", "brute"])
        .env("CELLSPAN_CAP", "5")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(3));
}

#[test]
fn output_is_deterministic() {
    let args = ["weighted-trees", "--input", "cube:2", "--k", "1", "--method", "brute"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_duality_suite() {
    let o = run(&["verify", "duality", "--format", "table"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS"));
}

#[test]
fn files_round_trip() {
    let dir = std::env::temp_dir().join(format!("cellspan-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mirror_file = dir.join("path.json");
    std::fs::write(&mirror_file, r#"{"vertices": 3, "facets": [[1, 2], [1, 3]]}"#).unwrap();
    let m = run(&["mirror", "--input", mirror_file.to_str().unwrap()]);
    assert_eq!(m.status.code(), Some(0));
    let cubical_file = dir.join("mirror.json");
    std::fs::write(&cubical_file, stdout(&m)).unwrap();
    let h = run(&["homology", "--input", cubical_file.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&h)).unwrap();
    assert_eq!(v["apc"], false);
    let spec = format!("mirror:{}", mirror_file.to_str().unwrap());
    let s = run(&["shifted-check", "--input", &spec]);
    assert_eq!(s.status.code(), Some(0));
    let d = run(&["dual", "--input", "rp2"]);
    let dual: serde_json::Value = serde_json::from_str(&stdout(&d)).unwrap();
    let complex_file = dir.join("dual.json");
    std::fs::write(&complex_file, dual["complex"].to_string()).unwrap();
    let h = run(&["homology", "--input", complex_file.to_str().unwrap(), "--format", "table"]);
    assert_eq!(h.status.code(), Some(0));
    std::fs::remove_dir_all(&dir).unwrap();
}
