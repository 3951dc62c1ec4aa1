//! Report records and their JSON / CSV renderings.

use std::path::Path;

use serde::Serialize;

use super::config::RunConfig;
use super::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail,
    #[serde(rename = "indeterminate-over-F_p")]
    Indeterminate,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Indeterminate => "indeterminate-over-F_p",
        }
    }

    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub check: String,
    pub expected: String,
    pub observed: String,
    pub verdict: Verdict,
    /// Identifier of the mathematical claim the check exercises.
    pub anchor: String,
}

impl Record {
    pub fn new(check: impl Into<String>, expected: impl ToString, observed: impl ToString, verdict: Verdict, anchor: &str) -> Self {
        Record {
            check: check.into(),
            expected: expected.to_string(),
            observed: observed.to_string(),
            verdict,
            anchor: anchor.into(),
        }
    }

    /// A record that passes when `expected == observed`.
    pub fn compare(check: impl Into<String>, expected: impl ToString, observed: impl ToString, anchor: &str) -> Self {
        let (e, o) = (expected.to_string(), observed.to_string());
        let v = Verdict::from_bool(e == o);
        Record { check: check.into(), expected: e, observed: o, verdict: v, anchor: anchor.into() }
    }
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub indeterminate: usize,
}

impl Counts {
    fn of<'a>(records: impl Iterator<Item = &'a Record>) -> Self {
        let mut c = Counts::default();
        for r in records {
            match r.verdict {
                Verdict::Pass => c.pass += 1,
                Verdict::Fail => c.fail += 1,
                Verdict::Indeterminate => c.indeterminate += 1,
            }
        }
        c
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub records: Vec<Record>,
    pub summary: Counts,
}

impl SuiteReport {
    pub fn new(suite: &str, records: Vec<Record>) -> Self {
        let summary = Counts::of(records.iter());
        SuiteReport { suite: suite.into(), records, summary }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub version: String,
    pub config: RunConfig,
    pub suites: Vec<SuiteReport>,
    pub summary: Counts,
}

impl Report {
    pub fn new(config: RunConfig, suites: Vec<SuiteReport>) -> Self {
        let summary = Counts::of(suites.iter().flat_map(|s| s.records.iter()));
        Report { version: env!("CARGO_PKG_VERSION").into(), config, suites, summary }
    }

    pub fn has_failures(&self) -> bool {
        self.summary.fail > 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["suite", "check", "expected", "observed", "verdict"]).map_err(io_err)?;
        for s in &self.suites {
            for r in &s.records {
                w.write_record([s.suite.as_str(), &r.check, &r.expected, &r.observed, r.verdict.as_str()]).map_err(io_err)?;
            }
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
    }

    /// Writes `report.json` and `summary.csv` into `dir`.
    pub fn write(&self, dir: &Path) -> Result<(), CliError> {
        std::fs::create_dir_all(dir).map_err(io_err)?;
        std::fs::write(dir.join("report.json"), self.to_json()).map_err(io_err)?;
        std::fs::write(dir.join("summary.csv"), self.to_csv()?).map_err(io_err)?;
        Ok(())
    }
}

fn io_err(e: impl std::fmt::Display) -> CliError {
    CliError::Io(e.to_string())
}
