use std::path::Path;
use std::process::{Command, Output};

fn qcoinv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcoinv")).args(args).output().expect("binary runs")
}

fn small(extra: &[&str]) -> Output {
    let mut args = vec!["--m", "2", "--t", "1", "--n", "2", "--max-degree", "2"];
    args.extend_from_slice(extra);
    qcoinv(&args)
}

fn verdicts(json: &str) -> Vec<(String, String, String)> {
    let v: serde_json::Value = serde_json::from_str(json).unwrap();
    let mut out = Vec::new();
    for s in v["suites"].as_array().unwrap() {
        for c in s["components"].as_array().unwrap() {
            out.push((
                s["name"].as_str().unwrap().to_string(),
                c["index"].as_str().unwrap().to_string(),
                format!("{}{}", c["verdict"], c["dims"]),
            ));
        }
    }
    out
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(qcoinv(&["--m", "2", "--t", "0", "--n", "2"]).status.code(), Some(2));
    assert_eq!(small(&["--q", "1"]).status.code(), Some(2));
    assert_eq!(small(&["--q", "-1"]).status.code(), Some(2));
    assert_eq!(small(&["--q", "0"]).status.code(), Some(2));
    assert_eq!(small(&["--suite", "nonsense"]).status.code(), Some(2));
    assert_eq!(qcoinv(&["--m", "2", "--t", "1", "--n", "3", "--suite", "preimage"]).status.code(), Some(2));
}

#[test]
fn passing_run_writes_report_and_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = small(&["--suite", "sft,fft", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["config"]["q"], "symbolic");
    assert_eq!(v["suites"].as_array().unwrap().len(), 2);
    assert!(out.with_extension("txt").exists());
}

#[test]
fn classical_q_is_allowed_when_forced() {
    let o = small(&["--suite", "sft", "--q", "1", "--force-classical-q"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

fn cache_files(dir: &Path) -> Vec<std::path::PathBuf> {
    std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect()
}

#[test]
fn cache_hits_match_fresh_runs_and_corruption_is_ignored() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let out = dir.path().join("r.json");
    let args = |extra: &[&str]| {
        let mut a = vec!["--suite", "sft,fft,slfft", "--omit-timing", "--out", out.to_str().unwrap()];
        a.extend_from_slice(extra);
        a.into_iter().map(String::from).collect::<Vec<_>>()
    };
    let run = |extra: &[&str]| {
        let a = args(extra);
        let o = small(&a.iter().map(String::as_str).collect::<Vec<_>>());
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        (std::fs::read_to_string(&out).unwrap(), String::from_utf8_lossy(&o.stderr).into_owned())
    };

    let (fresh, _) = run(&[]);
    let (miss, _) = run(&["--cache", cache.to_str().unwrap()]);
    assert!(!cache_files(&cache).is_empty());
    let (hit, warn) = run(&["--cache", cache.to_str().unwrap()]);
    assert!(!warn.contains("warning"), "{warn}");
    assert_eq!(verdicts(&fresh), verdicts(&miss));
    assert_eq!(verdicts(&fresh), verdicts(&hit));

    for f in cache_files(&cache) {
        std::fs::write(f, "{ not json").unwrap();
    }
    let (recovered, warn) = run(&["--cache", cache.to_str().unwrap()]);
    assert!(warn.contains("ignoring corrupt cache entry"), "{warn}");
    assert_eq!(verdicts(&fresh), verdicts(&recovered));
}

#[test]
fn omitted_timing_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let o = small(&["--suite", "structure", "--seed", "5", "--omit-timing", "--out", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let ja = std::fs::read_to_string(&a).unwrap();
    assert!(!ja.contains("timing_ms"));
    assert_eq!(ja, std::fs::read_to_string(&b).unwrap());
}
