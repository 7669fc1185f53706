use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::config::OutputFormat;
use super::HubError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// One check: its inputs, the value each engine produced, and the verdict.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub check: String,
    pub inputs: BTreeMap<String, String>,
    pub values: BTreeMap<String, String>,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Record {
    pub fn new(check: &str) -> Self {
        Self {
            check: check.into(),
            inputs: BTreeMap::new(),
            values: BTreeMap::new(),
            verdict: Verdict::Pass,
            detail: String::new(),
        }
    }

    pub fn input(mut self, k: &str, v: impl ToString) -> Self {
        self.inputs.insert(k.into(), v.to_string());
        self
    }

    pub fn value(mut self, k: &str, v: impl ToString) -> Self {
        self.values.insert(k.into(), v.to_string());
        self
    }

    /// Pass iff every recorded value is the same string.
    pub fn agree(mut self) -> Self {
        let mut it = self.values.values();
        let first = it.next().cloned();
        if it.any(|v| Some(v) != first.as_ref()) {
            self.verdict = Verdict::Fail;
            if self.detail.is_empty() {
                self.detail = "engine values differ".into();
            }
        }
        self
    }

    pub fn holds(mut self, ok: bool, why: &str) -> Self {
        if !ok {
            self.verdict = Verdict::Fail;
            self.detail = why.into();
        }
        self
    }

    pub fn failed(mut self, why: impl ToString) -> Self {
        self.verdict = Verdict::Fail;
        self.detail = why.to_string();
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub config: BTreeMap<String, String>,
    pub summary: Summary,
    pub records: Vec<Record>,
}

impl Report {
    pub fn new(config: BTreeMap<String, String>, records: Vec<Record>) -> Self {
        let passed = records.iter().filter(|r| r.passed()).count();
        Self {
            version: env!("CARGO_PKG_VERSION").into(),
            config,
            summary: Summary {
                total: records.len(),
                passed,
                failed: records.len() - passed,
            },
            records,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| !r.passed())
    }
}

fn join(m: &BTreeMap<String, String>) -> String {
    m.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";")
}

/// Serializes `report`; `format` is `"json"` or `"csv"`.
pub fn emit(report: &Report, format: &str) -> Result<Vec<u8>, HubError> {
    emit_as(report, format.parse()?)
}

pub fn emit_as(report: &Report, format: OutputFormat) -> Result<Vec<u8>, HubError> {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_vec_pretty(report).map_err(|e| HubError::Emit(e.to_string()))?;
            s.push(b'\n');
            Ok(s)
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let em = |e: csv::Error| HubError::Emit(e.to_string());
            w.write_record(["check", "inputs", "values", "verdict", "detail"]).map_err(em)?;
            for r in &report.records {
                let verdict = if r.passed() { "pass" } else { "fail" };
                w.write_record([r.check.as_str(), &join(&r.inputs), &join(&r.values), verdict, &r.detail])
                    .map_err(em)?;
            }
            w.into_inner().map_err(|e| HubError::Emit(e.to_string()))
        }
    }
}
