//! Verification reports and their aggregation.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn is_pass(self) -> bool {
        self == Verdict::Pass
    }
}

/// One graded component (or one named property) of a suite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentRecord {
    pub index: String,
    pub dims: BTreeMap<String, usize>,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl ComponentRecord {
    pub fn check(index: impl Into<String>, ok: bool, witness: Option<String>) -> Self {
        ComponentRecord {
            index: index.into(),
            dims: BTreeMap::new(),
            verdict: Verdict::from_bool(ok),
            witness: if ok { None } else { witness },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub name: String,
    pub params: BTreeMap<String, serde_json::Value>,
    pub q_mode: String,
    /// Set when coefficients were specialized or `q = ±1` was forced.
    pub advisory: bool,
    pub components: Vec<ComponentRecord>,
    pub pass: bool,
    pub timing_ms: u64,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &ComponentRecord> {
        self.components.iter().filter(|c| !c.verdict.is_pass())
    }

    /// Plain-text table, one line per component.
    pub fn table(&self) -> String {
        let mut out = format!(
            "suite {} [{}{}]: {}\n",
            self.name,
            self.q_mode,
            if self.advisory { ", advisory" } else { "" },
            if self.pass { "PASS" } else { "FAIL" }
        );
        let width = self.components.iter().map(|c| c.index.len()).max().unwrap_or(0);
        for c in &self.components {
            let dims: Vec<String> = c.dims.iter().map(|(k, v)| format!("{k}={v}")).collect();
            out.push_str(&format!(
                "  {:<width$}  {}  {}\n",
                c.index,
                if c.verdict.is_pass() { "PASS" } else { "FAIL" },
                dims.join(" ")
            ));
            if let Some(w) = &c.witness {
                out.push_str(&format!("  {:<width$}    witness: {w}\n", ""));
            }
        }
        out
    }
}

/// Collects per-block comparisons into one component record.
#[derive(Debug, Default)]
pub(crate) struct Tally {
    dims: BTreeMap<String, usize>,
    pass: bool,
    witness: Option<String>,
    started: bool,
}

impl Tally {
    pub(crate) fn new() -> Self {
        Tally { pass: true, ..Default::default() }
    }

    pub(crate) fn add_dim(&mut self, name: &str, d: usize) {
        *self.dims.entry(name.to_string()).or_default() += d;
    }

    pub(crate) fn record(&mut self, block: &str, ok: bool, witness: Option<String>) {
        self.started = true;
        if !ok {
            self.pass = false;
            if self.witness.is_none() {
                self.witness = Some(match witness {
                    Some(w) => format!("block {block}: {w}"),
                    None => format!("block {block}"),
                });
            }
        }
    }

    pub(crate) fn finish(self, index: String) -> ComponentRecord {
        ComponentRecord { index, dims: self.dims, verdict: Verdict::from_bool(self.pass), witness: self.witness }
    }
}
