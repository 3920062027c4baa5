//! Deterministic verification reports: one record per check, a summary, and
//! two renderings (human text, machine JSON) of the same structure. Reports
//! are byte-identical across runs with the same inputs and seed.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use clap::ValueEnum;
use serde::Serialize;

use crate::cohomology::TateReport;
use crate::cyclic::CyclicRing;
use crate::operators::{CheckResult, Witness};
use crate::rings::RingInstance;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Serialize)]
pub struct TateSummary {
    pub even_order: usize,
    pub even_census: BTreeMap<u64, usize>,
    pub odd_order: usize,
    pub odd_census: BTreeMap<u64, usize>,
    pub norm_one: Option<String>,
    pub invariants_order: usize,
    pub coinvariants_order: usize,
}

impl TateSummary {
    pub fn from_report(ring: &RingInstance, report: &TateReport) -> Self {
        TateSummary {
            even_order: report.even_quotient.order,
            even_census: report.even_quotient.census.clone(),
            odd_order: report.odd_quotient.order,
            odd_census: report.odd_quotient.census.clone(),
            norm_one: report.norm_one.as_ref().map(|x| ring.fmt_elem(x)),
            invariants_order: report.invariants_order,
            coinvariants_order: report.coinvariants_order,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub ring: String,
    pub policy: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tate: Option<TateSummary>,
}

impl CheckRecord {
    pub fn from_check(result: CheckResult, ring: impl Into<String>, policy: impl Into<String>) -> Self {
        CheckRecord {
            name: result.name,
            ring: ring.into(),
            policy: policy.into(),
            pass: result.pass,
            witness: result.witness,
            detail: None,
            tate: None,
        }
    }

    pub fn failure(
        name: impl Into<String>,
        ring: impl Into<String>,
        explanation: impl Into<String>,
    ) -> Self {
        CheckRecord {
            name: name.into(),
            ring: ring.into(),
            policy: "n/a".into(),
            pass: false,
            witness: None,
            detail: Some(explanation.into()),
            tate: None,
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub version: String,
    pub campaign: String,
    pub seed: u64,
    pub records: Vec<CheckRecord>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn new(campaign: impl Into<String>, seed: u64) -> Self {
        VerificationReport {
            version: env!("CARGO_PKG_VERSION").to_string(),
            campaign: campaign.into(),
            seed,
            records: Vec::new(),
            summary: Summary {
                passed: 0,
                failed: 0,
            },
        }
    }

    pub fn push(&mut self, record: CheckRecord) {
        if record.pass {
            self.summary.passed += 1;
        } else {
            self.summary.failed += 1;
        }
        self.records.push(record);
    }

    pub fn all_pass(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("report serializes"),
            Format::Text => self.render_text(),
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "cychom {}", self.version);
        let _ = writeln!(out, "campaign: {}", self.campaign);
        let _ = writeln!(out, "seed: {}", self.seed);
        for rec in &self.records {
            let verdict = if rec.pass { "pass" } else { "FAIL" };
            let _ = writeln!(
                out,
                "[{verdict}] {} | {} | {}",
                rec.name, rec.ring, rec.policy
            );
            if let Some(w) = &rec.witness {
                let _ = writeln!(out, "        identity: {}", w.identity);
                let _ = writeln!(out, "        at: {}", w.inputs);
                let _ = writeln!(out, "        lhs: {}", w.lhs);
                let _ = writeln!(out, "        rhs: {}", w.rhs);
            }
            if let Some(d) = &rec.detail {
                let _ = writeln!(out, "        {d}");
            }
            if let Some(t) = &rec.tate {
                let _ = writeln!(
                    out,
                    "        ker T / im N: order {}, census {:?}",
                    t.even_order, t.even_census
                );
                let _ = writeln!(
                    out,
                    "        ker N / im T: order {}, census {:?}",
                    t.odd_order, t.odd_census
                );
                let _ = writeln!(
                    out,
                    "        norm-one element: {}",
                    t.norm_one.as_deref().unwrap_or("none")
                );
                let _ = writeln!(
                    out,
                    "        degree 0 (informational): |R^t| = {}, |R / im T| = {}",
                    t.invariants_order, t.coinvariants_order
                );
            }
        }
        let _ = writeln!(
            out,
            "summary: {} passed, {} failed",
            self.summary.passed, self.summary.failed
        );
        out
    }
}
