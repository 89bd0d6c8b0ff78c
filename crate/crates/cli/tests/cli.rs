use std::path::Path;
use std::process::{Command, Output};

fn syzlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_syzlab")).args(args).output().expect("run syzlab")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn read_json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Timing fields are the only part of a report allowed to vary between runs.
fn strip_timing(v: &mut serde_json::Value) {
    match v {
        serde_json::Value::Object(map) => {
            map.remove("ms");
            map.remove("total_ms");
            map.values_mut().for_each(strip_timing);
        }
        serde_json::Value::Array(list) => list.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

#[test]
fn verify_class_exit_codes() {
    assert_eq!(code(&syzlab(&["verify-class", "--kmax", "2"])), 3);
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("class.json");
    let o = syzlab(&["verify-class", "--kmax", "10", "--json", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let v = read_json(&out);
    assert_eq!(v["schema"], "syzlab-report/1");
    let results = v["results"].as_array().unwrap();
    assert_eq!(results.len(), 8);
    for r in results {
        let k = r["k"].as_i64().unwrap();
        assert_eq!(r["ratio"], serde_json::json!((k - 1).to_string()));
    }
}

#[test]
fn usage_errors_exit_3() {
    assert_eq!(code(&syzlab(&[])), 3);
    assert_eq!(code(&syzlab(&["scroll"])), 3);
    assert_eq!(code(&syzlab(&["scroll", "--k", "2"])), 3);
    assert_eq!(code(&syzlab(&["ci", "--genus", "6", "--prime", "31991", "--seed", "1"])), 3);
    assert_eq!(code(&syzlab(&["gonal", "--k", "3", "--prime", "1000", "--seed", "1"])), 3);
    assert_eq!(code(&syzlab(&["gonal", "--k", "3", "--route", "sideways"])), 3);
    assert_eq!(code(&syzlab(&["dvr-demo", "--size", "0", "--seed", "1"])), 3);
    assert_eq!(code(&syzlab(&["--help"])), 0);
}

#[test]
fn scroll_report_and_dump() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("scroll.json");
    let dump = dir.path().join("mtx");
    let o = syzlab(&[
        "scroll",
        "--k",
        "4",
        "--json",
        out.to_str().unwrap(),
        "--dump-matrices",
        dump.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let v = read_json(&out);
    assert_eq!(v["extra_syzygies"], 3);
    let dims: Vec<u64> = v["routes"][0]["strand"].as_array().unwrap().iter().map(|r| r["dim"].as_u64().unwrap()).collect();
    assert_eq!(dims, vec![6, 8, 3, 0, 0]);
    let files: Vec<_> = std::fs::read_dir(&dump).unwrap().map(|e| e.unwrap().path()).collect();
    assert!(!files.is_empty());
    for f in &files {
        assert_eq!(f.extension().unwrap(), "mtx");
        let text = std::fs::read_to_string(f).unwrap();
        assert!(text.starts_with("%%MatrixMarket"));
    }
}

#[test]
fn gonal_report_is_deterministic_and_thread_independent() {
    let dir = tempfile::tempdir().unwrap();
    let mut reports = Vec::new();
    for (i, threads) in ["1", "1", "3"].iter().enumerate() {
        let out = dir.path().join(format!("gonal{i}.json"));
        let o = Command::new(env!("CARGO_BIN_EXE_syzlab"))
            .args(["gonal", "--k", "4", "--prime", "31991", "--seed", "7", "--json", out.to_str().unwrap()])
            .env("SYZLAB_THREADS", threads)
            .output()
            .unwrap();
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
        let mut v = read_json(&out);
        strip_timing(&mut v);
        reports.push(serde_json::to_string(&v).unwrap());
    }
    assert_eq!(reports[0], reports[1]);
    assert_eq!(reports[0], reports[2]);
    let v: serde_json::Value = serde_json::from_str(&reports[0]).unwrap();
    assert_eq!(v["extra_syzygies"], 3);
    assert_eq!(v["model"]["schema"], "syzlab-model/1");
    assert_eq!(v["rng"], "xoshiro256++/splitmix64");
}

#[test]
fn ci_and_dvr_demo() {
    assert_eq!(code(&syzlab(&["ci", "--genus", "5", "--prime", "31991", "--seed", "1"])), 0);
    assert_eq!(code(&syzlab(&["dvr-demo", "--size", "3", "--seed", "11"])), 0);
}

#[test]
fn bad_thread_cap_is_usage_error() {
    let o = Command::new(env!("CARGO_BIN_EXE_syzlab"))
        .args(["scroll", "--k", "3"])
        .env("SYZLAB_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);
}

#[test]
fn suite_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, text: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p
    };

    let empty = write("empty.json", "[]");
    let out = dir.path().join("summary.json");
    let o = syzlab(&["suite", "--config", empty.to_str().unwrap(), "--json", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(read_json(&out)["entries"].as_array().unwrap().is_empty());

    let failing = write(
        "failing.json",
        r#"[{"command": "scroll", "k": 3}, {"command": "scroll", "k": 3, "expect_extra": 5}]"#,
    );
    assert_eq!(code(&syzlab(&["suite", "--config", failing.to_str().unwrap()])), 1);

    let malformed = write("malformed.json", r#"[{"command": "scroll"}"#);
    assert_eq!(code(&syzlab(&["suite", "--config", malformed.to_str().unwrap()])), 3);
    let missing = dir.path().join("missing.json");
    assert_eq!(code(&syzlab(&["suite", "--config", missing.to_str().unwrap()])), 3);
}

#[test]
fn shipped_suite_passes() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../suites/acceptance.json");
    let o = syzlab(&["suite", "--config", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
}
