use std::path::{Path, PathBuf};
use std::process::Command;

use scrollkit::cli::{execute, CliError, Overrides, RunConfig};

fn default_config() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs/default.json")
}

fn run_bin(config: &Path, out: &Path, extra: &[&str]) -> i32 {
    Command::new(env!("CARGO_BIN_EXE_scrollkit"))
        .arg("run")
        .arg("--config")
        .arg(config)
        .arg("--out")
        .arg(out)
        .args(extra)
        .output()
        .unwrap()
        .status
        .code()
        .unwrap()
}

fn write_config(dir: &Path, body: &str) -> PathBuf {
    let path = dir.join("config.json");
    std::fs::write(&path, body).unwrap();
    path
}

const SMALL: &str = r#"{
  "seed": 3,
  "curves": [{ "name": "c", "p": 7, "kind": "hyperelliptic", "f": [0, -1, 0, 0, 0, 1] }],
  "divisors": [{ "name": "b", "curve": "c", "points": [{ "at": "inf", "mult": 4 }] }],
  "suites": [
    { "suite": "rr", "curves": ["c"], "trials": 20 },
    { "suite": "canonical", "divisors": ["b"] }
  ]
}"#;

#[test]
fn default_suite_is_clean_and_stable() {
    let text = std::fs::read_to_string(default_config()).unwrap();
    let a = execute(RunConfig::parse(&text).unwrap(), &Overrides::default()).unwrap();
    let b = execute(RunConfig::parse(&text).unwrap(), &Overrides::default()).unwrap();
    assert_eq!(a.summary.fail, 0, "{}", a.to_csv().unwrap());
    assert_eq!(a.to_json(), b.to_json());
    assert_eq!(a.to_csv().unwrap(), b.to_csv().unwrap());
    assert!(a.suites.iter().all(|s| s.records.iter().all(|r| !r.anchor.is_empty())));
}

#[test]
fn binary_writes_identical_reports() {
    let dir = tempfile::tempdir().unwrap();
    let (o1, o2) = (dir.path().join("a"), dir.path().join("b"));
    let cfg = write_config(dir.path(), SMALL);
    assert_eq!(run_bin(&cfg, &o1, &[]), 0);
    assert_eq!(run_bin(&cfg, &o2, &[]), 0);
    for f in ["report.json", "summary.csv"] {
        assert_eq!(std::fs::read(o1.join(f)).unwrap(), std::fs::read(o2.join(f)).unwrap());
    }
    let csv = std::fs::read_to_string(o1.join("summary.csv")).unwrap();
    assert!(csv.starts_with("suite,check,expected,observed,verdict\n"));
    assert!(csv.contains("canonical,canonical-pair[b],holds,holds,pass"));
}

#[test]
fn schema_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let cases = [
        SMALL.replace("\"seed\": 3,", ""),
        SMALL.replace("\"trials\": 20", "\"trials\": 20, \"bogus\": 1"),
        SMALL.replace("{ \"at\": \"inf\", \"mult\": 4 }", "{ \"at\": [1, 1], \"mult\": 4 }"),
        SMALL.replace("\"p\": 7", "\"p\": 9"),
        SMALL.replace("\"divisors\": [\"b\"]", "\"divisors\": [\"missing\"]"),
        "not json".to_string(),
    ];
    for body in cases {
        let cfg = write_config(dir.path(), &body);
        assert_eq!(run_bin(&cfg, &out, &[]), 2, "{body}");
    }
    let cfg = write_config(dir.path(), SMALL);
    assert_eq!(run_bin(&cfg, &out, &["--suite", "nonsense"]), 2);
    assert_eq!(run_bin(&cfg, &out, &["--suite", "cover"]), 2);
    assert_eq!(run_bin(&dir.path().join("absent.json"), &out, &[]), 2);
}

#[test]
fn failing_verdicts_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let body = r#"{
      "seed": 1,
      "curves": [{ "name": "c", "p": 101, "kind": "hyperelliptic", "f": [3, 1, 0, 0, 0, 1] }],
      "suites": [{ "suite": "existence", "curve": "c", "degrees": [3], "trials": 100, "min_fraction": 1.0 }]
    }"#;
    let cfg = write_config(dir.path(), body);
    assert_eq!(run_bin(&cfg, &dir.path().join("out"), &[]), 1);
    let csv = std::fs::read_to_string(dir.path().join("out/summary.csv")).unwrap();
    assert!(csv.lines().any(|l| l.ends_with(",fail")));
}

#[test]
fn consistency_failures_map_to_three() {
    assert_eq!(CliError::Consistency("x".into()).exit_code(), 3);
    assert_eq!(CliError::Schema("x".into()).exit_code(), 2);
}

#[test]
fn overrides_reach_the_config_echo() {
    let ov = Overrides { suite: Some("rr".into()), seed: Some(99), p: Some(11) };
    let rep = execute(RunConfig::parse(SMALL).unwrap(), &ov).unwrap();
    assert_eq!(rep.config.seed, 99);
    assert_eq!(rep.config.curves[0].p, 11);
    assert_eq!(rep.suites.len(), 1);
    assert_eq!(rep.suites[0].suite, "rr");
    let other = execute(RunConfig::parse(SMALL).unwrap(), &Overrides { seed: Some(100), ..ov }).unwrap();
    assert_eq!(other.suites[0].summary, rep.suites[0].summary);
}
