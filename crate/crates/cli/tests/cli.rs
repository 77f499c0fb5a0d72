use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn lichlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lichlab")).args(args).output().expect("binary runs")
}

fn config(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(name).display().to_string()
}

fn dir(t: &tempfile::TempDir, name: &str) -> String {
    t.path().join(name).display().to_string()
}

fn read_csv(p: &Path) -> Vec<(f64, f64)> {
    let text = std::fs::read_to_string(p).unwrap();
    text.lines()
        .skip(1)
        .map(|l| {
            let mut it = l.split(',').map(|x| x.parse::<f64>().unwrap());
            (it.next().unwrap(), it.next().unwrap())
        })
        .collect()
}

fn report(p: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn pinched_solve_is_identically_one() {
    let t = tempfile::tempdir().unwrap();
    let out = dir(&t, "solve");
    let o = lichlab(&["--config", &config("pinched.json"), "--out", &out, "--grid-n", "400", "--quiet", "solve"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let u = read_csv(&PathBuf::from(&out).join("solution.csv"));
    assert_eq!(u.len(), 401);
    assert!(u.iter().all(|&(_, v)| (v - 1.0).abs() < 1e-12));
    let rep = report(&PathBuf::from(&out).join("report.json"));
    assert!(rep["report"]["residual_max"].as_f64().unwrap() < 1e-8);
    assert_eq!(rep["command"], "solve");
    assert_eq!(rep["config_hash"].as_str().unwrap().len(), 64);
}

#[test]
fn theorem_a_hypotheses_hold() {
    let t = tempfile::tempdir().unwrap();
    let out = dir(&t, "hyp");
    let o = lichlab(&["--config", &config("theorem_a.json"), "--out", &out, "--quiet", "hypotheses"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(report(&PathBuf::from(&out).join("hypotheses.json"))["report"]["all_hold"], true);
}

#[test]
fn hypothesis_failure_exits_two_with_report() {
    let t = tempfile::tempdir().unwrap();
    let cfg = t.path().join("neg.json");
    std::fs::write(
        &cfg,
        r#"{"model":{"kind":"euclidean","m":3,"r_max":4},"coefficients":{"a":1,"b":0,"c":1,"sigma":3,"tau":-1},"params":{"theorem":"bilateral"}}"#,
    )
    .unwrap();
    let out = dir(&t, "hyp");
    let o = lichlab(&["--config", cfg.to_str().unwrap(), "--out", &out, "--grid-n", "200", "--quiet", "hypotheses"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(report(&PathBuf::from(&out).join("hypotheses.json"))["report"]["all_hold"], false);
}

#[test]
fn sigma_below_one_is_a_config_error() {
    let t = tempfile::tempdir().unwrap();
    let cfg = t.path().join("bad.json");
    std::fs::write(&cfg, r#"{"coefficients":{"a":0,"b":1,"c":1,"sigma":0.5,"tau":-1}}"#).unwrap();
    let o = lichlab(&["--config", cfg.to_str().unwrap(), "solve"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("sigma > 1"));
}

#[test]
fn unknown_config_field_is_rejected() {
    let t = tempfile::tempdir().unwrap();
    let cfg = t.path().join("typo.json");
    std::fs::write(&cfg, r#"{"modle":{}}"#).unwrap();
    assert_eq!(lichlab(&["--config", cfg.to_str().unwrap(), "model"]).status.code(), Some(4));
}

#[test]
fn missing_constant_barriers_is_a_hypothesis_failure() {
    let t = tempfile::tempdir().unwrap();
    let o = lichlab(&["--config", &config("theorem_a.json"), "--out", &dir(&t, "s"), "--grid-n", "200", "solve"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no constant barriers"));
}

#[test]
fn artifacts_are_byte_identical_across_runs() {
    let t = tempfile::tempdir().unwrap();
    for cmd in ["solve", "spectrum", "oscillate"] {
        let (a, b) = (dir(&t, &format!("{cmd}-a")), dir(&t, &format!("{cmd}-b")));
        for d in [&a, &b] {
            let o = lichlab(&["--config", &config("pinched.json"), "--out", d, "--grid-n", "200", "--quiet", cmd]);
            assert!(o.status.success(), "{cmd}: {}", String::from_utf8_lossy(&o.stderr));
        }
        let mut names: Vec<_> = std::fs::read_dir(&a).unwrap().map(|e| e.unwrap().file_name()).collect();
        names.sort();
        assert!(!names.is_empty());
        for n in names {
            let x = std::fs::read(Path::new(&a).join(&n)).unwrap();
            let y = std::fs::read(Path::new(&b).join(&n)).unwrap();
            assert!(x == y, "{cmd}: {n:?} differs");
        }
    }
}

#[test]
fn bounds_reads_a_solution_csv() {
    let t = tempfile::tempdir().unwrap();
    let s = dir(&t, "s");
    assert!(lichlab(&["--config", &config("pinched.json"), "--out", &s, "--grid-n", "400", "--quiet", "solve"]).status.success());
    let cfg = t.path().join("b.json");
    let text = std::fs::read_to_string(config("pinched.json")).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v["params"]["solution"] = serde_json::json!(format!("{s}/solution.csv"));
    std::fs::write(&cfg, v.to_string()).unwrap();
    let out = dir(&t, "b");
    let o = lichlab(&["--config", cfg.to_str().unwrap(), "--out", &out, "--grid-n", "400", "--quiet", "bounds"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let rep = report(&PathBuf::from(&out).join("verdict.json"));
    assert_eq!(rep["report"]["bounds_hold"], true);
}

#[test]
fn plot_is_deterministic_and_rejects_empty_input() {
    let t = tempfile::tempdir().unwrap();
    let osc = dir(&t, "osc");
    assert!(lichlab(&["--out", &osc, "--quiet", "oscillate"]).status.success());
    let trace = format!("{osc}/trace.csv");
    let (a, b) = (dir(&t, "a.svg"), dir(&t, "b.svg"));
    for p in [&a, &b] {
        let o = lichlab(&["--out", p, "--quiet", "plot", &trace, "--logx", "--envelope"]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let svg = std::fs::read(&a).unwrap();
    assert_eq!(svg, std::fs::read(&b).unwrap());
    assert!(String::from_utf8_lossy(&svg).contains("stroke-dasharray"));

    let empty = t.path().join("empty.csv");
    std::fs::write(&empty, "r,u\n").unwrap();
    let o = lichlab(&["--out", &dir(&t, "e.svg"), "plot", empty.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn plot_rejects_mixed_schemas() {
    let t = tempfile::tempdir().unwrap();
    let (x, y) = (t.path().join("x.csv"), t.path().join("y.csv"));
    std::fs::write(&x, "r,u\n0,1\n1,1\n").unwrap();
    std::fs::write(&y, "t,beta\n1,1\n2,0\n").unwrap();
    let o = lichlab(&["--out", &dir(&t, "m.svg"), "plot", x.to_str().unwrap(), y.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
}
